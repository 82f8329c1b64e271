#include "doctest.h"
#include "fakeplane/error.hpp"
#include "fakeplane/topocheck.hpp"

using namespace fakeplane;

namespace {

BaseCurve curve(const std::string& name, std::initializer_list<long long> cls, Field f = Field::Real,
                bool real_points = true) {
    BaseCurve c;
    c.name = name;
    c.base_class = make_vector(cls);
    c.field = f;
    c.has_real_points = real_points;
    return c;
}

NodeRef node(const SurfacePair& s, const std::string& name, int half = 0) { return {s.find(name), half}; }

SurfacePair blow(const SurfacePair& s, std::vector<std::pair<std::string, int>> through, const std::string& name,
                 Field f = Field::Real) {
    std::vector<Incidence> inc;
    for (const auto& [n, half] : through) inc.push_back({node(s, n, half), 1});
    return blow_up(s, Center::point(inc, f, name));
}

SurfacePair only_boundary(SurfacePair s, const std::vector<std::string>& names) {
    const std::vector<Component> comps = s.components();
    for (const auto& c : comps) {
        bool in = std::find(names.begin(), names.end(), c.name) != names.end();
        s = set_role(s, c.id, in ? Role::Boundary : Role::Interior);
    }
    return s;
}

std::vector<int> ids(const SurfacePair& s, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(s.find(n));
    return out;
}

std::vector<BigInt> big(std::initializer_list<long long> v) { return make_vector(v); }

SurfacePair y333() {
    auto s = SurfacePair::from_base(
        {BaseKind::P2, 0, {curve("l0", {1}), curve("l1", {1}), curve("l2", {1}), curve("l3", {1})}});
    s = blow(s, {{"l1", 0}, {"l2", 0}}, "E12");
    s = blow(s, {{"l1", 0}, {"l3", 0}}, "E13");
    s = blow(s, {{"l2", 0}, {"l3", 0}}, "E23");
    s = blow(s, {{"l1", 0}, {"E12", 0}}, "E1");
    s = blow(s, {{"l2", 0}, {"E23", 0}}, "E2");
    s = blow(s, {{"l3", 0}, {"E13", 0}}, "E3");
    return only_boundary(s, {"l0", "l1", "l2", "l3", "E12", "E23", "E13"});
}

std::vector<BaseCurve> ruled_lines() {
    return {curve("l1", {1, 0}), curve("l2", {1, 0}), curve("l3", {1, 0}),
            curve("M1", {0, 1}), curve("M2", {0, 1}), curve("M3", {0, 1})};
}

SurfacePair y244_real() {
    auto s = SurfacePair::from_base({BaseKind::P1xP1, 0, ruled_lines()});
    s = blow(s, {{"M1", 0}, {"l2", 0}}, "E12");
    s = blow(s, {{"M1", 0}, {"l3", 0}}, "E13");
    s = blow(s, {{"M2", 0}, {"l3", 0}}, "E23");
    s = blow(s, {{"M3", 0}, {"l2", 0}}, "E32");
    s = blow(s, {{"M2", 0}, {"E23", 0}}, "F23");
    s = blow(s, {{"M3", 0}, {"E32", 0}}, "F32");
    return only_boundary(s, {"M1", "M2", "M3", "l1", "l2", "l3", "E23", "E32"});
}

SurfacePair y244_complex() {
    auto s = SurfacePair::from_base({BaseKind::P1xP1, 0,
                                     {curve("l1", {1, 0}), curve("l", {1, 0}, Field::ComplexPair),
                                      curve("M1", {0, 1}), curve("M", {0, 1}, Field::ComplexPair)}});
    s = blow(s, {{"M1", 0}, {"l", 0}}, "E1", Field::ComplexPair);
    s = blow(s, {{"M", 0}, {"l", 1}}, "E", Field::ComplexPair);
    s = blow(s, {{"M", 0}, {"E", 0}}, "F", Field::ComplexPair);
    return only_boundary(s, {"M1", "M", "l1", "l", "E"});
}

SurfacePair y236() {
    auto s = SurfacePair::from_base({BaseKind::P1xP1, 0, ruled_lines()});
    s = blow(s, {{"M1", 0}, {"l3", 0}}, "E13");
    s = blow(s, {{"M3", 0}, {"l1", 0}}, "E31");
    s = blow(s, {{"M2", 0}, {"l2", 0}}, "E22");
    s = blow(s, {{"M2", 0}, {"l3", 0}}, "E23");
    s = blow(s, {{"E22", 0}, {"l2", 0}}, "F22");
    s = blow(s, {{"M1", 0}, {"E13", 0}}, "F13");
    s = blow(s, {{"M3", 0}, {"E31", 0}}, "F31");
    return only_boundary(s, {"M1", "M2", "M3", "l1", "l2", "l3", "E22", "E13", "E31"});
}

SurfacePair ramanujam_11() {
    auto s = SurfacePair::from_base({BaseKind::P2, 0, {curve("C", {3}), curve("Q", {2})}});
    s = blow_up(s, Center::point({{node(s, "C"), 2}}, Field::Real, "E1"));
    s = blow(s, {{"C", 0}, {"E1", 0}}, "E2");
    s = blow(s, {{"C", 0}, {"E1", 0}, {"E2", 0}}, "E3");
    s = blow(s, {{"C", 0}, {"Q", 0}}, "T1");
    for (int i = 2; i <= 5; ++i)
        s = blow(s, {{"C", 0}, {"Q", 0}, {"T" + std::to_string(i - 1), 0}}, "T" + std::to_string(i));
    s = subdivisorial_expansion(s, node(s, "C"), node(s, "Q"), 1, 1, "X");
    return set_role(s, s.find("X.A0"), Role::Interior);
}

void check_invariants(const TopologyReport& r) {
    if (r.z_acyclic) CHECK(r.q_acyclic);
    if (r.q_acyclic) {
        CHECK(r.h1_free_rank == 0);
        CHECK(r.h2_free_rank == 0);
    }
    if (r.real_locus == RealVerdict::R2) {
        REQUIRE(r.boundary_real_locus.has_value());
        CHECK(*r.boundary_real_locus != RealLocus::Empty);
    }
}

void check_agree(const TopologyReport& a, const TopologyReport& b) {
    CHECK(a.q_acyclic == b.q_acyclic);
    CHECK(a.z_acyclic == b.z_acyclic);
    CHECK(a.h1_invariants == b.h1_invariants);
    CHECK(a.real_locus == b.real_locus);
    check_invariants(a);
    check_invariants(b);
}

}  // namespace

TEST_CASE("the affine plane from F1") {
    BaseCurve c0 = curve("C0", {1, 0});
    BaseCurve f = curve("F", {0, 1});
    auto s = SurfacePair::from_base({BaseKind::Fn, 1, {c0, f}});
    auto r = boundary_report(s);
    CHECK(r.boundary_is_tree);
    CHECK(r.q_acyclic);
    CHECK(r.z_acyclic);
    CHECK(r.h1_invariants.empty());
    CHECK(r.real_locus == RealVerdict::R2);
    CHECK(r.witness("j") != nullptr);
    CHECK(r.witness("H2(j)") != nullptr);
}

TEST_CASE("boundary must be SNC") {
    auto s = SurfacePair::from_base({BaseKind::P2, 0, {curve("L", {1}), curve("Q", {2})}});
    CHECK_THROWS_WITH_AS(boundary_report(s), doctest::Contains("BoundaryNotSNC"), Error);
}

TEST_CASE("non-tree boundary is neither acyclic nor R2") {
    auto s = SurfacePair::from_base({BaseKind::P2, 0, {curve("A", {1}), curve("B", {1}), curve("C", {1})}});
    auto r = boundary_report(s);
    CHECK_FALSE(r.boundary_is_tree);
    CHECK_FALSE(r.q_acyclic);
    CHECK(r.real_locus == RealVerdict::NotR2);
    CHECK(r.h1_free_rank == 2);
    check_invariants(r);
}

TEST_CASE("empty real boundary skips the H2 test") {
    auto s = SurfacePair::from_base({BaseKind::P2, 0, {curve("Q", {2}, Field::Real, false)}});
    auto r = boundary_report(s);
    CHECK(r.q_acyclic);
    CHECK(r.h1_invariants == big({2}));
    CHECK(r.real_locus == RealVerdict::BoundaryRealLocusEmpty);
    CHECK(r.witness("H2(j)") == nullptr);
}

TEST_CASE("Y(3,3,3)") {
    auto s = y333();
    auto a = arrangement_report(s, {ids(s, {"l0", "l1", "l2", "l3"}), s.boundary_ids(), std::nullopt});
    // Relations l_i - l_0, as columns over (l0, l1, l2, l3).
    IntMatrix rel{{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto p = arrangement_report(s, {ids(s, {"l0", "l1", "l2", "l3"}), s.boundary_ids(), rel});
    const Witness* phi = p.witness("phi");
    REQUIRE(phi != nullptr);
    CHECK(phi->row_labels == std::vector<std::string>{"E1", "E2", "E3"});
    CHECK(phi->matrix == (IntMatrix{{2, 1, 0}, {0, 2, 1}, {1, 0, 2}}));
    CHECK(determinant(phi->matrix) == 9);
    CHECK(p.h1_invariants == big({9}));
    CHECK(p.q_acyclic);
    CHECK_FALSE(p.z_acyclic);
    CHECK(p.real_locus == RealVerdict::R2);
    check_agree(a, p);
    check_agree(boundary_report(s), p);
}

TEST_CASE("Y(2,4,4) real form") {
    auto s = y244_real();
    auto b = boundary_report(s);
    IntMatrix rel{{-1, -1, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, -1}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    auto a = arrangement_report(s, {ids(s, {"l1", "l2", "l3", "M1", "M2", "M3"}), s.boundary_ids(), rel});
    const Witness* phi = a.witness("phi");
    REQUIRE(phi != nullptr);
    CHECK(phi->row_labels == std::vector<std::string>{"E12", "E13", "F23", "F32"});
    CHECK(phi->matrix == (IntMatrix{{1, 0, -1, -1}, {0, 1, -1, -1}, {0, 1, 2, 0}, {1, 0, 0, 2}}));
    CHECK(determinant(phi->matrix) == 8);
    CHECK(a.h1_invariants == big({8}));
    CHECK(a.real_locus == RealVerdict::NotR2);
    CHECK(rank_mod2(phi->matrix) < 4);
    check_agree(b, a);
}

TEST_CASE("Y(2,4,4) complex form") {
    auto s = y244_complex();
    auto b = boundary_report(s);
    CHECK(b.boundary_is_tree);
    CHECK(b.q_acyclic);
    CHECK(b.h1_invariants == big({8}));
    CHECK(b.real_locus == RealVerdict::R2);
    auto a = arrangement_report(s, {ids(s, {"l1", "l", "M1", "M"}), s.boundary_ids(), std::nullopt});
    check_agree(b, a);
}

TEST_CASE("Y(2,3,6)") {
    auto s = y236();
    auto b = boundary_report(s);
    auto a = arrangement_report(s, {ids(s, {"l1", "l2", "l3", "M1", "M2", "M3"}), s.boundary_ids(), std::nullopt});
    CHECK(a.h1_invariants == big({6}));
    CHECK(a.real_locus == RealVerdict::NotR2);
    check_agree(b, a);
}

TEST_CASE("Ramanujam surface with (1,1)") {
    auto s = ramanujam_11();
    auto b = boundary_report(s);
    CHECK(b.boundary_is_tree);
    CHECK(b.z_acyclic);
    CHECK(b.real_locus == RealVerdict::R2);
    auto a = arrangement_report(s, {ids(s, {"C", "Q"}), s.boundary_ids(), std::nullopt});
    const Witness* phi = a.witness("phi");
    REQUIRE(phi != nullptr);
    CHECK(abs(phi->matrix(0, 0)) == 1);
    check_agree(b, a);
}

TEST_CASE("arrangement input errors") {
    auto s = y333();
    std::vector<int> b = s.boundary_ids();
    std::vector<int> d = ids(s, {"l0", "l1", "l2", "l3"});
    auto no_l3 = b;
    no_l3.erase(std::find(no_l3.begin(), no_l3.end(), s.find("l3")));
    CHECK_THROWS_WITH_AS(arrangement_report(s, {d, no_l3, std::nullopt}), doctest::Contains("BNotContaining"), Error);
    CHECK_THROWS_WITH_AS(arrangement_report(s, {ids(s, {"l0", "l1", "l2"}), b, std::nullopt}),
                         doctest::Contains("RankMismatch"), Error);
    IntMatrix twice{{-2, -1, -1}, {2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK_THROWS_WITH_AS(arrangement_report(s, {d, b, twice}), doctest::Contains("RankMismatch"), Error);
}

TEST_CASE("kernel basis choice does not change verdicts") {
    auto s = y333();
    std::vector<int> d = ids(s, {"l0", "l1", "l2", "l3"});
    IntMatrix rel{{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    IntMatrix change{{1, 1, 0}, {0, 1, 0}, {0, 2, 1}};
    auto a = arrangement_report(s, {d, s.boundary_ids(), rel});
    auto b = arrangement_report(s, {d, s.boundary_ids(), rel * change});
    check_agree(a, b);
}
