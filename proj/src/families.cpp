#include "fakeplane/families.hpp"

#include "fakeplane/error.hpp"

#include <algorithm>
#include <numeric>

namespace fakeplane {

namespace {

BaseCurve line(const std::string& name, std::initializer_list<long long> cls, Field f = Field::Real) {
    BaseCurve c;
    c.name = name;
    c.base_class = make_vector(cls);
    c.field = f;
    return c;
}

NodeRef node(const SurfacePair& s, const std::string& name, int half = 0) {
    int id = s.find(name);
    if (id < 0) throw std::logic_error("no curve named " + name);
    return {id, half};
}

SurfacePair blow(const SurfacePair& s, const std::vector<std::pair<std::string, int>>& through, const std::string& name,
                 Field f = Field::Real, int first_mult = 1) {
    std::vector<Incidence> inc;
    for (const auto& [n, half] : through) inc.push_back({node(s, n, half), inc.empty() ? first_mult : 1});
    return blow_up(s, Center::point(inc, f, name));
}

SurfacePair only_boundary(SurfacePair s, const std::vector<std::string>& names) {
    const std::vector<Component> comps = s.components();
    for (const auto& c : comps) {
        const bool in = std::find(names.begin(), names.end(), c.name) != names.end();
        if (c.role != (in ? Role::Boundary : Role::Interior)) s = set_role(s, c.id, in ? Role::Boundary : Role::Interior);
    }
    return s;
}

SurfacePair make_interior(SurfacePair s, const std::string& name) {
    return set_role(s, s.find(name), Role::Interior);
}

std::vector<int> ids(const SurfacePair& s, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(node(s, n).id);
    return out;
}

Construction finish(SurfacePair s, const std::vector<std::string>& d, std::optional<IntMatrix> relations) {
    Construction c;
    c.arrangement.d = ids(s, d);
    c.arrangement.b = s.boundary_ids();
    c.arrangement.relations = std::move(relations);
    c.surface = std::move(s);
    return c;
}

void check_pair(const ExpansionMultiplicity& m, const std::string& what) {
    if (m.mu_minus < 1 || m.mu_minus >= m.mu_plus || std::gcd(m.mu_minus, m.mu_plus) != 1)
        throw Error(ErrorKind::BadParams, what + " (" + std::to_string(m.mu_minus) + ", " + std::to_string(m.mu_plus) +
                                              ") must be coprime with 1 <= mu_minus < mu_plus");
}

std::string cusp(int i) { return "q" + std::to_string(i); }

}  // namespace

BigRational kod1_eta(const Kod1Params& p) {
    BigRational eta = p.n - 1 + 2 * static_cast<long long>(p.complex_pairs.size());
    for (const auto& m : p.pairs) eta -= BigRational(1, m.mu_plus);
    for (const auto& m : p.complex_pairs) eta -= BigRational(2, m.mu_plus);
    return eta;
}

IntMatrix kod1_matrix(const Kod1Params& p) {
    std::vector<ExpansionMultiplicity> rows = p.pairs;
    for (int copy = 0; copy < 2; ++copy)
        for (const auto& m : p.complex_pairs) rows.push_back(m);
    const std::size_t size = rows.size() + 1;
    IntMatrix n(size, size);
    for (std::size_t j = 0; j < size; ++j) n(0, j) = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        n(i + 1, 0) = rows[i].mu_minus;
        n(i + 1, i + 1) = rows[i].mu_plus;
    }
    return n;
}

Construction kod1_surface(const Kod1Params& p) {
    if (p.n < 2) throw Error(ErrorKind::BadParams, "n must be at least 2");
    if (p.pairs.size() != static_cast<std::size_t>(p.n))
        throw Error(ErrorKind::BadParams, "expected " + std::to_string(p.n) + " expansion pairs");
    if (p.r0 < 1) throw Error(ErrorKind::BadParams, "r0 must be at least 1");
    for (const auto& m : p.pairs) check_pair(m, "pair");
    for (const auto& m : p.complex_pairs) check_pair(m, "complex pair");

    const int m = static_cast<int>(p.complex_pairs.size());
    BaseSpec spec{BaseKind::P2, 0, {line("C1", {1})}};
    for (int i = 0; i <= p.n; ++i) spec.curves.push_back(line("E" + std::to_string(i), {1}));
    for (int k = 1; k <= m; ++k) spec.curves.push_back(line("G" + std::to_string(k), {1}, Field::ComplexPair));
    SurfacePair s = SurfacePair::from_base(spec);

    std::vector<std::pair<std::string, int>> through_x;
    for (int i = 0; i <= p.n; ++i) through_x.push_back({"E" + std::to_string(i), 0});
    for (int k = 1; k <= m; ++k) {
        through_x.push_back({"G" + std::to_string(k), 0});
        through_x.push_back({"G" + std::to_string(k), 1});
    }
    s = blow(s, through_x, "C0");

    std::string last = "E0";
    for (int j = 1; j <= p.r0; ++j) {
        const std::string nm = j == p.r0 ? "p0.A0" : "p0." + std::to_string(j);
        s = blow_up(s, Center::free_point(node(s, last), Field::Real, nm));
        last = nm;
    }
    s = make_interior(s, "p0.A0");
    for (int i = 1; i <= p.n; ++i) {
        const std::string stem = "p" + std::to_string(i);
        const auto& mu = p.pairs[i - 1];
        s = subdivisorial_expansion(s, node(s, "C1"), node(s, "E" + std::to_string(i)), mu.mu_minus, mu.mu_plus, stem);
        s = make_interior(s, stem + ".A0");
    }
    for (int k = 1; k <= m; ++k) {
        const std::string stem = "q" + std::to_string(k);
        const auto& nu = p.complex_pairs[k - 1];
        s = subdivisorial_expansion(s, node(s, "C1"), node(s, "G" + std::to_string(k)), nu.mu_minus, nu.mu_plus, stem);
        s = make_interior(s, stem + ".A0");
    }

    std::vector<std::string> d{"C1"};
    for (int i = 0; i <= p.n; ++i) d.push_back("E" + std::to_string(i));
    for (int k = 1; k <= m; ++k) d.push_back("G" + std::to_string(k));
    Construction c = finish(std::move(s), d, std::nullopt);

    // Relations node - E0 over the nodes of d, in node order, skipping E0 itself.
    const std::vector<NodeRef> nodes = c.surface.nodes_of(c.arrangement.d);
    const NodeRef e0 = node(c.surface, "E0");
    IntMatrix rel(nodes.size(), nodes.size() - 1);
    std::size_t e0_row = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == e0) e0_row = i;
    std::size_t col = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i == e0_row) continue;
        rel(i, col) = 1;
        rel(e0_row, col) = -1;
        ++col;
    }
    c.arrangement.relations = rel;
    return c;
}

Construction kod1(const Kod1Params& p) {
    Construction c = kod1_surface(p);
    const BigRational eta = kod1_eta(p);
    if (eta <= 0) throw Error(ErrorKind::EtaNonPositive, "eta = " + eta.str());
    if (p.complex_pairs.empty()) {
        const BigInt det = determinant(kod1_matrix(p));
        if (abs(det) != 1) throw Error(ErrorKind::MatrixNotUnimodular, "det N = " + det.str());
    }
    return c;
}

Construction ramanujam(int mu_minus, int mu_plus) {
    if (mu_minus < 1 || mu_plus < 1 || std::abs(2 * mu_minus - 3 * mu_plus) != 1)
        throw Error(ErrorKind::ConstraintViolated, "2 * " + std::to_string(mu_minus) + " - 3 * " +
                                                       std::to_string(mu_plus) + " = " +
                                                       std::to_string(2 * mu_minus - 3 * mu_plus));
    SurfacePair s = SurfacePair::from_base({BaseKind::P2, 0, {line("C", {3}), line("Q", {2})}});
    s = blow(s, {{"C", 0}}, "c.1", Field::Real, 2);
    s = blow(s, {{"C", 0}, {"c.1", 0}}, "c.2");
    s = blow(s, {{"C", 0}, {"c.1", 0}, {"c.2", 0}}, "c.3");
    s = blow(s, {{"C", 0}, {"Q", 0}}, "t.1");
    for (int i = 2; i <= 5; ++i)
        s = blow(s, {{"C", 0}, {"Q", 0}, {"t." + std::to_string(i - 1), 0}}, "t." + std::to_string(i));
    s = subdivisorial_expansion(s, node(s, "C"), node(s, "Q"), mu_minus, mu_plus, "p");
    s = make_interior(s, "p.A0");
    return finish(std::move(s), {"C", "Q"}, IntMatrix{{2}, {-3}});
}

std::string to_string(QuarticForm f) { return f == QuarticForm::AllRealCusps ? "AllRealCusps" : "ConjugateCusps"; }

Construction tricuspidal(QuarticForm form, int mu_minus, int mu_plus) {
    if (mu_minus < 1 || mu_plus < 1 || std::abs(mu_minus - 4 * mu_plus) != 1)
        throw Error(ErrorKind::ConstraintViolated, std::to_string(mu_minus) + " - 4 * " + std::to_string(mu_plus) +
                                                       " = " + std::to_string(mu_minus - 4 * mu_plus));
    SurfacePair s = SurfacePair::from_base({BaseKind::P2, 0, {line("Gamma", {4}), line("L", {1})}});
    s = blow_up(s, Center::point({{node(s, "Gamma"), 2}, {node(s, "L"), 1}}, Field::Real, "q0.1"));
    s = blow(s, {{"Gamma", 0}, {"q0.1", 0}, {"L", 0}}, "q0.2");
    s = blow(s, {{"Gamma", 0}, {"q0.1", 0}, {"q0.2", 0}}, "q0.3");
    const bool real = form == QuarticForm::AllRealCusps;
    const Field f = real ? Field::Real : Field::ComplexPair;
    for (int i = 1; i <= (real ? 2 : 1); ++i) {
        const std::string q = real ? cusp(i) : "q";
        s = blow(s, {{"Gamma", 0}}, q + ".1", f, 2);
        s = blow(s, {{"Gamma", 0}, {q + ".1", 0}}, q + ".2", f);
        s = blow(s, {{"Gamma", 0}, {q + ".1", 0}, {q + ".2", 0}}, q + ".3", f);
    }
    s = subdivisorial_expansion(s, node(s, "Gamma"), node(s, "L"), mu_minus, mu_plus, "p");
    s = make_interior(s, "p.A0");
    return finish(std::move(s), {"Gamma", "L"}, IntMatrix{{1}, {-4}});
}

std::string to_string(Exceptional e) {
    switch (e) {
        case Exceptional::Y333: return "Y333";
        case Exceptional::Y244Real: return "Y244_real";
        case Exceptional::Y244Complex: return "Y244_complex";
        case Exceptional::Y236: return "Y236";
    }
    return "?";
}

namespace {

std::vector<BaseCurve> ruled_lines() {
    return {line("l1", {1, 0}), line("l2", {1, 0}), line("l3", {1, 0}),
            line("M1", {0, 1}), line("M2", {0, 1}), line("M3", {0, 1})};
}

Construction y333() {
    auto s = SurfacePair::from_base({BaseKind::P2, 0, {line("l0", {1}), line("l1", {1}), line("l2", {1}), line("l3", {1})}});
    s = blow(s, {{"l1", 0}, {"l2", 0}}, "E12");
    s = blow(s, {{"l1", 0}, {"l3", 0}}, "E13");
    s = blow(s, {{"l2", 0}, {"l3", 0}}, "E23");
    s = blow(s, {{"l1", 0}, {"E12", 0}}, "E1");
    s = blow(s, {{"l2", 0}, {"E23", 0}}, "E2");
    s = blow(s, {{"l3", 0}, {"E13", 0}}, "E3");
    s = only_boundary(s, {"l0", "l1", "l2", "l3", "E12", "E23", "E13"});
    return finish(std::move(s), {"l0", "l1", "l2", "l3"}, IntMatrix{{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

Construction y244_real() {
    auto s = SurfacePair::from_base({BaseKind::P1xP1, 0, ruled_lines()});
    s = blow(s, {{"M1", 0}, {"l2", 0}}, "E12");
    s = blow(s, {{"M1", 0}, {"l3", 0}}, "E13");
    s = blow(s, {{"M2", 0}, {"l3", 0}}, "E23");
    s = blow(s, {{"M3", 0}, {"l2", 0}}, "E32");
    s = blow(s, {{"M2", 0}, {"E23", 0}}, "F23");
    s = blow(s, {{"M3", 0}, {"E32", 0}}, "F32");
    s = only_boundary(s, {"M1", "M2", "M3", "l1", "l2", "l3", "E23", "E32"});
    return finish(std::move(s), {"l1", "l2", "l3", "M1", "M2", "M3"},
                  IntMatrix{{-1, -1, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, -1}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

Construction y244_complex() {
    auto s = SurfacePair::from_base({BaseKind::P1xP1, 0,
                                     {line("l1", {1, 0}), line("l", {1, 0}, Field::ComplexPair), line("M1", {0, 1}),
                                      line("M", {0, 1}, Field::ComplexPair)}});
    s = blow(s, {{"M1", 0}, {"l", 0}}, "E1", Field::ComplexPair);
    s = blow(s, {{"M", 0}, {"l", 1}}, "E", Field::ComplexPair);
    s = blow(s, {{"M", 0}, {"E", 0}}, "F", Field::ComplexPair);
    s = only_boundary(s, {"M1", "M", "l1", "l", "E"});
    return finish(std::move(s), {"l1", "l", "M1", "M"}, std::nullopt);
}

Construction y236() {
    auto s = SurfacePair::from_base({BaseKind::P1xP1, 0, ruled_lines()});
    s = blow(s, {{"M1", 0}, {"l3", 0}}, "E13");
    s = blow(s, {{"M3", 0}, {"l1", 0}}, "E31");
    s = blow(s, {{"M2", 0}, {"l2", 0}}, "E22");
    s = blow(s, {{"M2", 0}, {"l3", 0}}, "E23");
    s = blow(s, {{"E22", 0}, {"l2", 0}}, "F22");
    s = blow(s, {{"M1", 0}, {"E13", 0}}, "F13");
    s = blow(s, {{"M3", 0}, {"E31", 0}}, "F31");
    s = only_boundary(s, {"M1", "M2", "M3", "l1", "l2", "l3", "E22", "E13", "E31"});
    return finish(std::move(s), {"l1", "l2", "l3", "M1", "M2", "M3"}, std::nullopt);
}

}  // namespace

Construction exceptional(Exceptional e) {
    switch (e) {
        case Exceptional::Y333: return y333();
        case Exceptional::Y244Real: return y244_real();
        case Exceptional::Y244Complex: return y244_complex();
        case Exceptional::Y236: return y236();
    }
    throw Error(ErrorKind::BadParams, "unknown exceptional surface");
}

std::vector<ProgramStep> xnz_program(int n, int r) {
    if (n < 2) throw Error(ErrorKind::BadParams, "n must be at least 2");
    if (r < 3 || r % 2 == 0) throw Error(ErrorKind::BadParams, "r must be odd and at least 3");
    std::vector<ProgramStep> prog{ProgramStep::free_point(kFiberOverZero, "E0"),
                                  ProgramStep::expansion("E0", kFiberOverZero, 1, r - 1, "X")};
    const int tail = (n - 1) * r;
    std::string last = "X.A0";
    for (int i = 1; i <= tail; ++i) {
        const std::string nm = i == tail ? "A0" : "T" + std::to_string(i);
        prog.push_back(ProgramStep::free_point(last, nm));
        last = nm;
    }
    return prog;
}

RStandardPair xnz_family(int n, int r) { return build_r_standard(xnz_program(n, r)); }

bool moduli_iso(int n, int r, const std::vector<BigRational>& p, const std::vector<BigRational>& q) {
    if (n < 3) throw Error(ErrorKind::BadParams, "n must be at least 3");
    if (r < 3 || r % 2 == 0) throw Error(ErrorKind::BadParams, "r must be odd and at least 3");
    const std::size_t size = static_cast<std::size_t>(n - 1);
    if (p.size() != size || q.size() != size)
        throw Error(ErrorKind::BadParams, "expected the " + std::to_string(size) + " coefficients a_2, ..., a_n");
    // Comparing the coefficients of x and x^2 gives lambda = mu and lambda^2 = mu, and the
    // coefficient of y^(r-1) gives beta = 0; the remaining identities are a_i lambda^(i+1) = mu a'_i.
    const BigRational lambda = 1, mu = 1;
    for (std::size_t k = 0; k < size; ++k) {
        BigRational power = 1;
        for (std::size_t e = 0; e < k + 3; ++e) power *= lambda;
        if (p[k] * power != mu * q[k]) return false;
    }
    return true;
}

}  // namespace fakeplane
