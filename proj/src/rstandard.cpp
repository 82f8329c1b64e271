#include "fakeplane/rstandard.hpp"

#include "fakeplane/error.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fakeplane {

ProgramStep ProgramStep::free_point(std::string on, std::string name) {
    return {Kind::FreePoint, std::move(on), "", 1, 1, std::move(name)};
}

ProgramStep ProgramStep::double_point(std::string on, std::string other, std::string name) {
    return {Kind::DoublePoint, std::move(on), std::move(other), 1, 1, std::move(name)};
}

ProgramStep ProgramStep::expansion(std::string minus, std::string plus, int mu_minus, int mu_plus,
                                   std::string name) {
    return {Kind::Expansion, std::move(minus), std::move(plus), mu_minus, mu_plus, std::move(name)};
}

std::string to_string(LinkCertificate::Parity p) { return p == LinkCertificate::Parity::Even ? "even" : "odd"; }

namespace {

NodeRef half0(int id) { return {id, 0}; }

BigInt meet(const SurfacePair& s, int a, int b) { return s.pairing(half0(a), half0(b)); }

std::vector<int> neighbours(const SurfacePair& s, int id, const std::vector<int>& among) {
    std::vector<int> out;
    for (int other : among)
        if (other != id && meet(s, id, other) != 0) out.push_back(other);
    return out;
}

SurfacePair f1_base(Role fiber_role) {
    BaseSpec spec{BaseKind::Fn, 1, {}};
    spec.curves.push_back({kFiberAtInfinity, Field::Real, make_vector({0, 1}), true, Role::Boundary});
    spec.curves.push_back({kSection, Field::Real, make_vector({1, 0}), true, Role::Boundary});
    spec.curves.push_back({kFiberOverZero, Field::Real, make_vector({0, 1}), true, fiber_role});
    return SurfacePair::from_base(spec);
}

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::BadGrammar, why); }

// Coefficient of a0 in the pull-back of the image of x under the contraction of `contracted`.
BigInt a0_coefficient(const SurfacePair& s, int x, const std::vector<int>& contracted, int a0) {
    std::vector<NodeRef> z = s.nodes_of(contracted);
    IntMatrix g = s.gram(z);
    IntMatrix rhs(z.size(), 1);
    for (std::size_t i = 0; i < z.size(); ++i) rhs(i, 0) = -s.pairing(half0(x), z[i]);
    auto c = solve_exact(g, rhs);
    if (!c) throw std::logic_error("contracted curves do not form an exceptional configuration");
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i].id == a0) return (*c)(i, 0);
    throw std::logic_error("a0 is not among the contracted curves");
}

CoefficientTriple coefficient_triple(const SurfacePair& s, const RStandardPair& p) {
    const int em1 = p.fiber_root(), e0 = p.first_exceptional();
    std::vector<int> contracted{p.c0, p.a0};
    for (int id : p.e_tree)
        if (id != em1 && id != e0) contracted.push_back(id);
    return {a0_coefficient(s, p.f_inf, contracted, p.a0), a0_coefficient(s, e0, contracted, p.a0),
            a0_coefficient(s, em1, contracted, p.a0)};
}

std::string tag(const SurfacePair& s, const std::string& stem) {
    return stem + "." + std::to_string(s.history().size());
}

}  // namespace

int RStandardPair::fiber_root() const {
    for (int id : e_tree)
        if (meet(surface, id, c0) != 0) return id;
    return -1;
}

int RStandardPair::first_exceptional() const {
    const int root = fiber_root();
    for (int id : e_tree)
        if (id != root && mult.at(id) == 1) return id;
    return -1;
}

SurfacePair r_standard_base() { return f1_base(Role::Interior); }

RStandardPair make_r_standard(SurfacePair s, int f_inf, int c0, int a0) {
    for (int id : {f_inf, c0, a0})
        if (!s.has_component(id)) bad("role refers to missing component " + std::to_string(id));
    if (s.component(a0).role != Role::Interior) bad(s.component(a0).name + " must be interior");
    std::vector<int> boundary = s.boundary_ids();
    for (const auto& c : s.components()) {
        if (c.field != Field::Real) bad(c.name + " is not defined over R");
        if (c.role == Role::Interior && c.id != a0) bad("unexpected interior curve " + c.name);
    }
    if (s.component(f_inf).role != Role::Boundary || s.component(c0).role != Role::Boundary)
        bad("the fiber at infinity and the section must be boundary curves");
    if (s.self_int(f_inf) != 0) bad("fiber at infinity has self-intersection " + s.self_int(f_inf).str());
    if (s.self_int(c0) != -1) bad("section has self-intersection " + s.self_int(c0).str());
    if (meet(s, f_inf, c0) != 1) bad("section does not meet the fiber at infinity once");
    if (!is_tree(s, s.boundary_nodes())) bad("boundary is not a tree");

    RStandardPair p;
    for (int id : boundary)
        if (id != f_inf && id != c0) p.e_tree.push_back(id);
    std::sort(p.e_tree.begin(), p.e_tree.end());
    if (neighbours(s, f_inf, boundary) != std::vector<int>{c0}) bad("fiber at infinity meets the tree E");
    for (int id : p.e_tree)
        if (s.self_int(id) > -2)
            bad(s.component(id).name + " in E has self-intersection " + s.self_int(id).str());

    const IntVector fiber_class = s.component(f_inf).cls;
    if (p.e_tree.empty()) {
        if (s.component(a0).cls != fiber_class) bad("without E the interior curve must be a fiber");
        if (meet(s, a0, c0) != 1) bad("interior fiber does not meet the section once");
        p.mult[a0] = 1;
    } else {
        std::vector<int> fiber = p.e_tree;
        fiber.push_back(a0);
        try {
            p.mult = fiber_multiplicities(s, fiber, fiber_class);
        } catch (const Error& e) {
            bad(std::string("E and the interior curve do not form the degenerate fiber: ") + e.what());
        }
        if (s.self_int(a0) != -1) bad("interior curve has self-intersection " + s.self_int(a0).str());
        auto touch = neighbours(s, a0, boundary);
        if (touch.size() != 1 || meet(s, a0, touch[0]) != 1) bad("interior curve must meet the boundary once");
        if (neighbours(s, c0, p.e_tree).size() != 1) bad("section must meet exactly one curve of E");
        for (int id : p.e_tree)
            if (neighbours(s, id, p.e_tree).size() >= 3 && p.mult.at(id) % 2 == 0)
                throw Error(ErrorKind::EvenBranch, s.component(id).name + " branches with multiplicity " +
                                                       p.mult.at(id).str());
        int ones = 0;
        for (int id : p.e_tree)
            if (p.mult.at(id) == 1) ++ones;
        if (ones != 2) bad("degenerate fiber must have exactly two curves of multiplicity one in E");
    }
    if (p.mult.at(a0) % 2 == 0)
        throw Error(ErrorKind::EvenMultiplicity, "interior curve has multiplicity " + p.mult.at(a0).str());
    p.surface = std::move(s);
    p.f_inf = f_inf;
    p.c0 = c0;
    p.a0 = a0;
    return p;
}

RStandardPair build_r_standard(const std::vector<ProgramStep>& program) {
    if (program.empty()) {
        SurfacePair s = r_standard_base();
        return make_r_standard(s, s.find(kFiberAtInfinity), s.find(kSection), s.find(kFiberOverZero));
    }
    SurfacePair s = f1_base(Role::Boundary);
    const int em1 = s.find(kFiberOverZero);
    int last = -1;
    auto resolve = [&](const std::string& name) {
        int id = s.find(name);
        if (id < 0) bad("program refers to unknown curve " + name);
        return id;
    };
    for (std::size_t i = 0; i < program.size(); ++i) {
        const ProgramStep& st = program[i];
        const bool final_step = i + 1 == program.size();
        const Role role = final_step ? Role::Interior : Role::Boundary;
        if (i == 0) {
            if (st.kind != ProgramStep::Kind::FreePoint || resolve(st.on) != em1)
                bad("the first center must be a free point of " + std::string(kFiberOverZero));
        } else if (i == 1) {
            bool ok = st.kind != ProgramStep::Kind::FreePoint;
            if (ok) {
                std::set<int> pair{resolve(st.on), resolve(st.other)};
                ok = pair == std::set<int>{em1, last};
            }
            if (!ok) bad("the second center must be the meeting point of the first exceptional curve and " +
                         std::string(kFiberOverZero));
        } else {
            bool on_last = resolve(st.on) == last ||
                           (st.kind != ProgramStep::Kind::FreePoint && resolve(st.other) == last);
            if (!on_last) bad("center " + std::to_string(i) + " does not lie on the last exceptional curve");
        }
        if (final_step && st.kind != ProgramStep::Kind::FreePoint)
            bad("the last center must be a free point of the last exceptional curve");
        Center c;
        switch (st.kind) {
            case ProgramStep::Kind::FreePoint: c = Center::free_point(half0(resolve(st.on)), Field::Real, st.name); break;
            case ProgramStep::Kind::DoublePoint:
                c = Center::double_point(half0(resolve(st.on)), half0(resolve(st.other)), Field::Real, st.name);
                break;
            case ProgramStep::Kind::Expansion:
                c = Center::expansion(half0(resolve(st.on)), half0(resolve(st.other)), st.mu_minus, st.mu_plus,
                                      st.name);
                break;
        }
        c.role = role;
        s = blow_up(s, c);
        last = s.last_created();
    }
    return make_r_standard(s, s.find(kFiberAtInfinity), s.find(kSection), last);
}

std::vector<ProgramStep> minimal_program(int m) {
    if (m < 3 || m % 2 == 0) throw Error(ErrorKind::BadParams, "minimal program needs an odd multiplicity >= 3");
    return {ProgramStep::free_point(kFiberOverZero, "E0"),
            ProgramStep::expansion("E0", kFiberOverZero, 1, m - 1, "E"),
            ProgramStep::free_point("E.A0", "A0")};
}

RStandardPair reduce_to_r_standard(const FiberedSurfaceData& d) {
    const DegenerateFiber* survivor = nullptr;
    for (const auto& f : d.fibers) {
        if (f.base_point != Field::Real) continue;
        if (f.multiplicity < 1) throw Error(ErrorKind::BadParams, "fiber multiplicity must be positive");
        if (f.multiplicity % 2 == 0)
            throw Error(ErrorKind::EvenMultiplicity,
                        "real fiber component of multiplicity " + std::to_string(f.multiplicity));
        if (f.multiplicity == 1) continue;
        if (survivor) throw Error(ErrorKind::TwoRealDegenerateFibers, "two real fibers without a reduced real component");
        survivor = &f;
    }
    if (!survivor) return build_r_standard({});
    RStandardPair p = build_r_standard(survivor->program.empty() ? minimal_program(survivor->multiplicity)
                                                                 : survivor->program);
    if (p.multiplicity() != survivor->multiplicity)
        bad("program yields multiplicity " + p.multiplicity().str() + ", the fiber declares " +
            std::to_string(survivor->multiplicity));
    return p;
}

LinkResult elementary_link(const RStandardPair& p) {
    if (p.e_tree.empty()) throw Error(ErrorKind::EmptyE, "the pair is already trivial");
    const int em1 = p.fiber_root(), e0 = p.first_exceptional();
    if (em1 < 0 || e0 < 0) bad("cannot locate the first exceptional curve");
    auto touching_e0 = neighbours(p.surface, e0, p.e_tree);
    if (touching_e0.size() != 1) bad("first exceptional curve must be a tip of E");
    const int i1 = touching_e0[0];

    LinkCertificate cert;
    const long long w = -static_cast<long long>(p.surface.self_int(e0));
    cert.parity = w % 2 == 0 ? LinkCertificate::Parity::Even : LinkCertificate::Parity::Odd;
    cert.s = w / 2;
    cert.pairs = cert.parity == LinkCertificate::Parity::Even ? cert.s : cert.s + 1;
    cert.before = coefficient_triple(p.surface, p);
    cert.old_relation = cert.before.f_inf - cert.before.e0 - cert.before.e_minus1;
    cert.m_before = p.multiplicity();
    cert.e_before = p.e_tree.size();
    if (cert.old_relation != cert.m_before && cert.old_relation != -cert.m_before)
        throw std::logic_error("coefficient relation does not recover the multiplicity");

    SurfacePair s = p.surface;
    std::vector<int> pencil_fiber{p.c0, p.a0};
    for (int id : p.e_tree)
        if (id != e0) pencil_fiber.push_back(id);

    // Elementary transformations along conjugate pairs of smooth members of the pencil.
    for (long long i = 0; i < cert.pairs; ++i) {
        auto m = fiber_multiplicities(s, pencil_fiber);
        IntVector cls(s.cl_rank(), BigInt(0));
        for (NodeRef n : s.nodes_of(pencil_fiber)) cls = add(cls, scale(m.at(n.id), s.node_class(n)));
        if (bilinear(cls, s.form(), cls) != 0 || bilinear(cls, s.form(), s.component(p.f_inf).cls) != 1 ||
            bilinear(cls, s.form(), s.component(e0).cls) != 1)
            throw std::logic_error("pencil member does not meet both sections once");
        s = add_curve(s, cls, Field::ComplexPair, tag(s, "L"), Role::Interior, false);
        const int line = s.last_created();
        Center c = Center::point({{half0(line), 1}, {half0(p.f_inf), 1}}, Field::ComplexPair, tag(s, "Lx"));
        c.role = Role::Interior;
        s = blow_up(s, c);
        const int lx = s.last_created();
        s = contract(s, line);
        s = forget(s, lx);
    }
    cert.after = coefficient_triple(s, p);
    cert.new_relation = cert.after.f_inf + BigInt(2 * cert.pairs - 1) * cert.after.e_minus1 - cert.after.e0;

    std::vector<int> rest;
    int f_new, c_new;
    if (cert.parity == LinkCertificate::Parity::Even) {
        for (int id : s.boundary_ids())
            if (id != e0 && id != i1) rest.push_back(id);
        const long long k = -1 - static_cast<long long>(s.self_int(i1));
        std::vector<int> chain;
        int on = e0;
        for (long long j = 0; j < k; ++j) {
            s = blow_up(s, Center::free_point(half0(on), Field::Real, tag(s, "X")));
            on = s.last_created();
            chain.push_back(on);
        }
        s = contract(s, e0);
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) s = contract(s, chain[j]);
        f_new = chain.back();
        c_new = i1;
    } else {
        for (int id : s.boundary_ids())
            if (id != e0) rest.push_back(id);
        s = blow_up(s, Center::double_point(half0(e0), half0(i1), Field::Real, tag(s, "S")));
        f_new = e0;
        c_new = s.last_created();
    }

    // Contract the (-1)-curves of the remaining boundary, the old section first.
    std::set<int> alive(rest.begin(), rest.end());
    s = contract(s, p.c0);
    alive.erase(p.c0);
    for (;;) {
        std::vector<int> minus_one;
        for (int id : alive)
            if (s.self_int(id) == -1) minus_one.push_back(id);
        if (minus_one.empty()) break;
        for (std::size_t a = 0; a < minus_one.size(); ++a)
            for (std::size_t b = a + 1; b < minus_one.size(); ++b)
                if (meet(s, minus_one[a], minus_one[b]) != 0)
                    throw Error(ErrorKind::AmbiguousCascade, s.component(minus_one[a]).name + " and " +
                                                                 s.component(minus_one[b]).name +
                                                                 " are adjacent (-1)-curves");
        s = contract(s, minus_one.front());
        alive.erase(minus_one.front());
    }

    // Bring the new section back to self-intersection -1 along the new fiber at infinity.
    while (s.self_int(c_new) > -1) {
        s = blow_up(s, Center::double_point(half0(f_new), half0(c_new), Field::Real, tag(s, "F")));
        const int x = s.last_created();
        s = contract(s, f_new);
        f_new = x;
    }
    while (s.self_int(c_new) < -1) {
        s = blow_up(s, Center::free_point(half0(f_new), Field::Real, tag(s, "F")));
        const int x = s.last_created();
        s = contract(s, f_new);
        f_new = x;
    }

    cert.steps.assign(s.history().begin() + static_cast<std::ptrdiff_t>(p.surface.history().size()),
                      s.history().end());
    RStandardPair out = make_r_standard(std::move(s), f_new, c_new, p.a0);
    cert.m_after = out.multiplicity();
    cert.e_after = out.e_tree.size();
    cert.f_inf = out.f_inf;
    cert.c0 = out.c0;
    cert.a0 = out.a0;
    if (cert.e_after >= cert.e_before) throw std::logic_error("elementary link did not shrink E");
    if (cert.new_relation != cert.m_after && cert.new_relation != -cert.m_after)
        throw std::logic_error("coefficient relation does not predict the new multiplicity");
    return {std::move(out), std::move(cert)};
}

RStandardPair replay_link(const RStandardPair& p, const LinkCertificate& c) {
    SurfacePair s = p.surface;
    for (const Step& st : c.steps) s = apply_step(s, st);
    return make_r_standard(std::move(s), c.f_inf, c.c0, c.a0);
}

std::vector<LinkCertificate> rectify(const RStandardPair& p) {
    std::vector<LinkCertificate> out;
    RStandardPair cur = p;
    while (!cur.e_tree.empty()) {
        LinkResult r = elementary_link(cur);
        out.push_back(std::move(r.certificate));
        cur = std::move(r.pair);
    }
    return out;
}

}  // namespace fakeplane
