#include "fakeplane/surfgraph.hpp"

#include "fakeplane/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fakeplane {

std::string to_string(Field f) { return f == Field::Real ? "Real" : "ComplexPair"; }
std::string to_string(Role r) { return r == Role::Boundary ? "Boundary" : "Interior"; }

std::string to_string(BaseKind k) {
    switch (k) {
        case BaseKind::P2: return "P2";
        case BaseKind::P1xP1: return "P1xP1";
        case BaseKind::Fn: return "Fn";
        case BaseKind::Quadric: return "Quadric";
    }
    return "?";
}

std::string to_string(RealLocus r) {
    switch (r) {
        case RealLocus::Empty: return "Empty";
        case RealLocus::Point: return "Point";
        case RealLocus::OneDimConnected: return "OneDimConnected";
    }
    return "?";
}

Center Center::free_point(NodeRef on, Field rationality, std::string name) {
    Center c;
    c.kind = Kind::FreePointOn;
    c.a = on;
    c.rationality = rationality;
    c.name = std::move(name);
    return c;
}

Center Center::double_point(NodeRef a, NodeRef b, Field rationality, std::string name) {
    Center c;
    c.kind = Kind::DoublePoint;
    c.a = a;
    c.b = b;
    c.rationality = rationality;
    c.name = std::move(name);
    return c;
}

Center Center::point(std::vector<Incidence> inc, Field rationality, std::string name) {
    Center c;
    c.kind = Kind::Point;
    c.incidence = std::move(inc);
    c.rationality = rationality;
    c.name = std::move(name);
    return c;
}

Center Center::expansion(NodeRef minus, NodeRef plus, int mu_minus, int mu_plus, std::string name) {
    Center c;
    c.kind = Kind::SubdivExpansion;
    c.a = minus;
    c.b = plus;
    c.mu_minus = mu_minus;
    c.mu_plus = mu_plus;
    c.name = std::move(name);
    return c;
}

namespace {

bool same_incidence(const std::vector<Incidence>& a, const std::vector<Incidence>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].node != b[i].node || a[i].mult != b[i].mult) return false;
    return true;
}

bool same_center(const Center& x, const Center& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b && same_incidence(x.incidence, y.incidence) &&
           x.mu_minus == y.mu_minus && x.mu_plus == y.mu_plus && x.rationality == y.rationality &&
           x.name == y.name && x.role == y.role;
}

IntVector padded(const IntVector& v, std::size_t n) {
    IntVector out = v;
    out.resize(n, BigInt(0));
    return out;
}

}  // namespace

bool Step::operator==(const Step& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::BlowUp: return same_center(center, o.center);
        case Kind::Contract:
        case Kind::Forget: return target == o.target;
        case Kind::SetRole: return target == o.target && role == o.role;
        case Kind::AddCurve:
            return cls == o.cls && field == o.field && has_real_points == o.has_real_points && name == o.name &&
                   role == o.role;
    }
    return false;
}

// Mutating helpers behind the value-semantics API.
class SurfaceEditor {
public:
    static int add_component(SurfacePair& s, Component c) {
        c.id = s.next_id_++;
        s.components_.push_back(c);
        for (NodeRef n : s.nodes_of(c.id)) s.tt_[n] = {{n, BigInt(1)}};
        s.last_created_ = c.id;
        s.created_last_.push_back(c.id);
        return c.id;
    }

    static Component& comp(SurfacePair& s, int id) {
        for (auto& c : s.components_)
            if (c.id == id) return c;
        throw std::out_of_range("no component with id " + std::to_string(id));
    }

    static void require_node(const SurfacePair& s, NodeRef n, const char* what) {
        if (!s.node_exists(n))
            throw Error(ErrorKind::InvalidCenter, std::string(what) + " references a missing component node " +
                                                      std::to_string(n.id) + "/" + std::to_string(n.half));
    }

    static void blow_up_point(SurfacePair& s, const std::vector<Incidence>& inc, Field rat, std::string name,
                              Role role) {
        if (inc.empty()) throw Error(ErrorKind::InvalidCenter, "center lies on no component");
        std::map<NodeRef, int> at_p;
        for (const auto& i : inc) {
            require_node(s, i.node, "center");
            if (i.mult < 1) throw Error(ErrorKind::InvalidCenter, "multiplicity must be positive");
            if (at_p.count(i.node)) throw Error(ErrorKind::InvalidCenter, "node listed twice in center");
            at_p[i.node] = i.mult;
        }
        auto mult_p = [&](NodeRef x) {
            auto it = at_p.find(x);
            return it == at_p.end() ? 0 : it->second;
        };
        auto mult_q = [&](NodeRef x) { return mult_p(s.sigma_node(x)); };  // at the conjugate point

        if (rat == Field::Real) {
            for (const auto& [x, m] : at_p)
                if (mult_p(s.sigma_node(x)) != m)
                    throw Error(ErrorKind::RationalityMismatch,
                                "a real center must be conjugation-invariant; " + s.node_name(x) +
                                    " passes through it but its conjugate does not");
        }
        const bool pair = rat == Field::ComplexPair;

        std::set<NodeRef> involved;
        for (const auto& [x, m] : at_p) {
            involved.insert(x);
            involved.insert(s.sigma_node(x));
        }
        std::vector<NodeRef> inv(involved.begin(), involved.end());
        IntMatrix g = s.gram(inv);
        for (std::size_t i = 0; i < inv.size(); ++i)
            for (std::size_t j = i + 1; j < inv.size(); ++j) {
                long long local = static_cast<long long>(mult_p(inv[i])) * mult_p(inv[j]);
                if (pair) local += static_cast<long long>(mult_q(inv[i])) * mult_q(inv[j]);
                if (g(i, j) < local)
                    throw Error(ErrorKind::InvalidCenter, s.node_name(inv[i]) + " and " + s.node_name(inv[j]) +
                                                              " do not meet at the requested center");
            }

        const std::size_t n = s.cl_rank();
        const std::size_t add = pair ? 2 : 1;
        IntMatrix form(n + add, n + add), sigma(n + add, n + add);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                form(i, j) = s.form_(i, j);
                sigma(i, j) = s.sigma_(i, j);
            }
        form(n, n) = -1;
        if (pair) {
            form(n + 1, n + 1) = -1;
            sigma(n + 1, n) = 1;
            sigma(n, n + 1) = 1;
        } else {
            sigma(n, n) = 1;
        }
        s.form_ = form;
        s.sigma_ = sigma;

        for (auto& c : s.components_) {
            NodeRef x0{c.id, 0};
            c.cls = padded(c.cls, n + add);
            c.cls[n] -= mult_p(x0);
            if (pair) c.cls[n + 1] -= mult_q(x0);
        }

        s.created_last_.clear();
        Component e;
        e.name = name;
        e.field = rat;
        e.has_real_points = true;
        e.cls = IntVector(n + add, BigInt(0));
        e.cls[n] = 1;
        e.role = role;
        // Total transforms pick up the exceptional curve with the multiplicity of the
        // divisor at the center.
        std::vector<std::pair<NodeRef, std::map<NodeRef, BigInt>*>> tracked;
        for (auto& [key, coeffs] : s.tt_) tracked.emplace_back(key, &coeffs);
        std::vector<std::pair<BigInt, BigInt>> gains;
        for (auto& [key, coeffs] : tracked) {
            BigInt gp = 0, gq = 0;
            for (const auto& [x, cx] : *coeffs) {
                gp += cx * mult_p(x);
                if (pair) gq += cx * mult_q(x);
            }
            gains.emplace_back(gp, gq);
        }
        int id = add_component(s, e);
        if (name.empty()) comp(s, id).name = "E" + std::to_string(id);
        for (std::size_t k = 0; k < tracked.size(); ++k) {
            auto& coeffs = *tracked[k].second;
            if (gains[k].first != 0) coeffs[NodeRef{id, 0}] = gains[k].first;
            if (pair && gains[k].second != 0) coeffs[NodeRef{id, 1}] = gains[k].second;
        }
        s.check_invariants();
    }

    static void expansion(SurfacePair& s, NodeRef minus, NodeRef plus, int mu_minus, int mu_plus,
                          const std::string& name, Role role) {
        require_node(s, minus, "expansion");
        require_node(s, plus, "expansion");
        if (mu_minus < 1 || mu_plus < 1) throw Error(ErrorKind::InvalidCenter, "expansion multiplicities must be >= 1");
        if (std::gcd(mu_minus, mu_plus) != 1)
            throw Error(ErrorKind::NotCoprime, "(" + std::to_string(mu_minus) + ", " + std::to_string(mu_plus) + ")");
        if (minus == plus) throw Error(ErrorKind::InvalidCenter, "expansion needs two distinct curves");
        BigInt e = s.pairing(minus, plus);
        if (e == 0) throw Error(ErrorKind::InvalidCenter, s.node_name(minus) + " and " + s.node_name(plus) + " do not meet");
        if (e > 1)
            throw Error(ErrorKind::NotTransversal,
                        s.node_name(minus) + " and " + s.node_name(plus) + " meet with multiplicity " + e.str());
        NodeRef sm = s.sigma_node(minus), sp = s.sigma_node(plus);
        Field rat;
        if (sm == minus && sp == plus) {
            rat = Field::Real;
        } else if (sm == plus && sp == minus) {
            if (mu_minus != mu_plus)
                throw Error(ErrorKind::RationalityMismatch,
                            "expansion at a real point of two conjugate curves must be symmetric");
            rat = Field::Real;
        } else {
            rat = Field::ComplexPair;
        }

        std::string base = name.empty() ? "X" + std::to_string(s.next_id_) : name;
        NodeRef left = minus, right = plus;
        BigInt l1 = 1, l2 = 0, r1 = 0, r2 = 1;
        std::vector<int> created;
        for (int step = 1;; ++step) {
            BigInt m1 = l1 + r1, m2 = l2 + r2;
            bool last = (m1 == mu_minus && m2 == mu_plus);
            std::string nm = base + (last ? ".A0" : "." + std::to_string(step));
            blow_up_point(s, {{left, 1}, {right, 1}}, rat, nm, role);
            created.push_back(s.last_created_);
            if (last) break;
            NodeRef mid{s.last_created_, 0};
            if (BigInt(mu_minus) * m2 > BigInt(mu_plus) * m1) {
                right = mid;
                r1 = m1;
                r2 = m2;
            } else {
                left = mid;
                l1 = m1;
                l2 = m2;
            }
        }
        s.created_last_ = created;
    }

    static void contract(SurfacePair& s, int id) {
        const Component& k = comp(s, id);
        const bool pair = k.field == Field::ComplexPair;
        std::vector<NodeRef> kn = s.nodes_of(id);
        if (s.pairing(kn[0], kn[0]) != -1)
            throw Error(ErrorKind::NotMinusOne, k.name + " has self-intersection " + s.pairing(kn[0], kn[0]).str());
        if (pair && s.pairing(kn[0], kn[1]) != 0)
            throw Error(ErrorKind::ConjugatesMeet, k.name + " meets its conjugate");

        std::vector<NodeRef> others;
        for (NodeRef n : s.boundary_nodes())
            if (n.id != id) others.push_back(n);
        for (NodeRef kk : kn) {
            std::vector<NodeRef> nb;
            for (NodeRef n : others) {
                BigInt p = s.pairing(n, kk);
                if (p == 0) continue;
                if (p > 1)
                    throw Error(ErrorKind::NonSNCResult,
                                s.node_name(n) + " meets " + k.name + " with multiplicity " + p.str());
                nb.push_back(n);
            }
            if (nb.size() > 2)
                throw Error(ErrorKind::NonSNCResult, k.name + " meets " + std::to_string(nb.size()) + " boundary curves");
            if (nb.size() == 2 && s.pairing(nb[0], nb[1]) != 0)
                throw Error(ErrorKind::NonSNCResult,
                            s.node_name(nb[0]) + " and " + s.node_name(nb[1]) + " already meet");
        }

        const std::size_t n = s.cl_rank();
        IntVector c = s.node_class(kn[0]);
        IntVector cq = pair ? s.node_class(kn[1]) : IntVector{};
        IntVector qc = s.form_ * c;
        IntVector qcq = pair ? s.form_ * cq : IntVector{};
        auto project = [&](const IntVector& x) {
            IntVector out = add(x, scale(dot(x, qc), c));
            if (pair) out = add(out, scale(dot(x, qcq), cq));
            return out;
        };

        IntMatrix b;
        bool have_basis = false;
        if (!pair) {
            for (std::size_t kk = n; kk-- > 0;) {
                if (c[kk] == 1 || c[kk] == -1) {
                    std::vector<IntVector> cols;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j == kk) continue;
                        IntVector ej(n, BigInt(0));
                        ej[j] = 1;
                        cols.push_back(project(ej));
                    }
                    b = IntMatrix::from_columns(cols, n);
                    have_basis = true;
                    break;
                }
            }
        } else {
            for (std::size_t k2 = n; k2-- > 0 && !have_basis;)
                for (std::size_t k1 = k2; k1-- > 0 && !have_basis;) {
                    BigInt det = c[k1] * cq[k2] - c[k2] * cq[k1];
                    if (det != 1 && det != -1) continue;
                    std::vector<IntVector> cols;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j == k1 || j == k2) continue;
                        IntVector ej(n, BigInt(0));
                        ej[j] = 1;
                        cols.push_back(project(ej));
                    }
                    b = IntMatrix::from_columns(cols, n);
                    have_basis = true;
                }
        }
        if (!have_basis) {
            std::vector<IntVector> rows{qc};
            if (pair) rows.push_back(qcq);
            b = kernel_basis(IntMatrix::from_rows(rows));
        }
        IntMatrix l = left_inverse(b);
        IntMatrix new_form = b.transpose() * s.form_ * b;
        IntMatrix new_sigma = l * s.sigma_ * b;
        if (!(s.sigma_ * b == b * new_sigma)) throw std::logic_error("contract: complement is not sigma-stable");

        std::vector<Component> kept;
        for (const auto& comp_ : s.components_) {
            if (comp_.id == id) continue;
            Component cc = comp_;
            IntVector p = project(cc.cls);
            cc.cls = l * p;
            if (b * cc.cls != p) throw std::logic_error("contract: projected class outside the complement");
            kept.push_back(cc);
        }
        s.components_ = kept;
        s.form_ = new_form;
        s.sigma_ = new_sigma;
        for (NodeRef kk : kn) s.tt_.erase(kk);
        for (auto& [key, coeffs] : s.tt_)
            for (NodeRef kk : kn) coeffs.erase(kk);
        s.created_last_.clear();
        s.check_invariants();
    }

    static void add_curve(SurfacePair& s, const IntVector& cls, Field field, const std::string& name, Role role,
                          bool has_real_points) {
        if (cls.size() != s.cl_rank())
            throw Error(ErrorKind::InvalidCenter, "curve class has length " + std::to_string(cls.size()) +
                                                      ", lattice rank is " + std::to_string(s.cl_rank()));
        if (field == Field::Real && s.sigma_ * cls != cls)
            throw Error(ErrorKind::RationalityMismatch, "real curve " + name + " must have a conjugation-invariant class");
        std::vector<IntVector> halves{cls};
        if (field == Field::ComplexPair) halves.push_back(s.sigma_ * cls);
        for (const IntVector& h : halves)
            for (NodeRef n : s.nodes())
                if (bilinear(h, s.form_, s.node_class(n)) < 0)
                    throw Error(ErrorKind::InvalidCenter, "new curve " + name + " would pair negatively with " +
                                                              s.node_name(n));
        s.created_last_.clear();
        Component c;
        c.name = name;
        c.field = field;
        c.has_real_points = has_real_points;
        c.cls = cls;
        c.role = role;
        int id = add_component(s, c);
        if (name.empty()) comp(s, id).name = "G" + std::to_string(id);
        s.check_invariants();
    }

    static void forget(SurfacePair& s, int id) {
        std::vector<NodeRef> kn = s.nodes_of(id);
        s.components_.erase(std::remove_if(s.components_.begin(), s.components_.end(),
                                           [&](const Component& c) { return c.id == id; }),
                            s.components_.end());
        for (NodeRef kk : kn) s.tt_.erase(kk);
        for (auto& [key, coeffs] : s.tt_)
            for (NodeRef kk : kn) coeffs.erase(kk);
        s.created_last_.clear();
    }

    static void set_role(SurfacePair& s, int id, Role role) {
        comp(s, id).role = role;
        s.created_last_.clear();
    }

    static void record(SurfacePair& s, Step st) { s.history_.push_back(std::move(st)); }

    static SurfacePair from_base(const BaseSpec& spec) {
        SurfacePair s;
        s.spec_ = spec;
        switch (spec.kind) {
            case BaseKind::P2:
                s.base_form_ = IntMatrix{{1}};
                s.base_sigma_ = IntMatrix{{1}};
                break;
            case BaseKind::P1xP1:
                s.base_form_ = IntMatrix{{0, 1}, {1, 0}};
                s.base_sigma_ = IntMatrix::identity(2);
                break;
            case BaseKind::Fn:
                if (spec.n < 0) throw Error(ErrorKind::BadParams, "Hirzebruch index must be >= 0");
                s.base_form_ = IntMatrix{{-spec.n, 1}, {1, 0}};
                s.base_sigma_ = IntMatrix::identity(2);
                break;
            case BaseKind::Quadric:
                s.base_form_ = IntMatrix{{0, 1}, {1, 0}};
                s.base_sigma_ = IntMatrix{{0, 1}, {1, 0}};
                break;
        }
        s.form_ = s.base_form_;
        s.sigma_ = s.base_sigma_;
        for (const auto& bc : spec.curves) {
            if (bc.base_class.size() != s.cl_rank())
                throw Error(ErrorKind::InvalidCenter, "base curve " + bc.name + " has a class of the wrong length");
            if (bc.field == Field::Real && s.sigma_ * bc.base_class != bc.base_class)
                throw Error(ErrorKind::RationalityMismatch, "real base curve " + bc.name + " has a non-invariant class");
            Component c;
            c.name = bc.name;
            c.field = bc.field;
            c.has_real_points = bc.has_real_points;
            c.cls = bc.base_class;
            c.role = bc.role;
            c.original = true;
            c.base_class = bc.base_class;
            add_component(s, c);
        }
        s.created_last_.clear();
        s.check_invariants();
        return s;
    }
};

SurfacePair SurfacePair::from_base(const BaseSpec& spec) { return SurfaceEditor::from_base(spec); }

bool SurfacePair::has_component(int id) const {
    return std::any_of(components_.begin(), components_.end(), [&](const Component& c) { return c.id == id; });
}

const Component& SurfacePair::component(int id) const {
    for (const auto& c : components_)
        if (c.id == id) return c;
    throw std::out_of_range("no component with id " + std::to_string(id));
}

int SurfacePair::find(const std::string& name) const {
    for (const auto& c : components_)
        if (c.name == name) return c.id;
    return -1;
}

std::vector<NodeRef> SurfacePair::nodes() const {
    std::vector<NodeRef> out;
    for (const auto& c : components_) {
        out.push_back({c.id, 0});
        if (c.field == Field::ComplexPair) out.push_back({c.id, 1});
    }
    return out;
}

std::vector<NodeRef> SurfacePair::nodes_of(int id) const {
    const Component& c = component(id);
    if (c.field == Field::ComplexPair) return {{id, 0}, {id, 1}};
    return {{id, 0}};
}

std::vector<NodeRef> SurfacePair::nodes_of(const std::vector<int>& ids) const {
    std::vector<NodeRef> out;
    for (int id : ids)
        for (NodeRef n : nodes_of(id)) out.push_back(n);
    return out;
}

std::vector<int> SurfacePair::boundary_ids() const {
    std::vector<int> out;
    for (const auto& c : components_)
        if (c.role == Role::Boundary) out.push_back(c.id);
    return out;
}

std::vector<NodeRef> SurfacePair::boundary_nodes() const { return nodes_of(boundary_ids()); }

bool SurfacePair::node_exists(NodeRef n) const {
    if (!has_component(n.id)) return false;
    if (n.half == 0) return true;
    return n.half == 1 && component(n.id).field == Field::ComplexPair;
}

std::string SurfacePair::node_name(NodeRef n) const {
    if (!has_component(n.id)) return "#" + std::to_string(n.id);
    const Component& c = component(n.id);
    return n.half == 0 ? c.name : c.name + "'";
}

IntVector SurfacePair::node_class(NodeRef n) const {
    const Component& c = component(n.id);
    if (n.half == 0) return c.cls;
    if (c.field != Field::ComplexPair) throw std::out_of_range("real component has no conjugate half");
    return sigma_ * c.cls;
}

NodeRef SurfacePair::sigma_node(NodeRef n) const {
    if (component(n.id).field == Field::ComplexPair) return {n.id, 1 - n.half};
    return n;
}

BigInt SurfacePair::pairing(NodeRef a, NodeRef b) const { return bilinear(node_class(a), form_, node_class(b)); }

BigInt SurfacePair::self_int(int id) const { return pairing({id, 0}, {id, 0}); }

IntMatrix SurfacePair::gram(const std::vector<NodeRef>& among) const {
    std::vector<IntVector> cls, qcls;
    for (NodeRef n : among) {
        cls.push_back(node_class(n));
        qcls.push_back(form_ * cls.back());
    }
    IntMatrix g(among.size(), among.size());
    for (std::size_t i = 0; i < among.size(); ++i)
        for (std::size_t j = i; j < among.size(); ++j) {
            g(i, j) = dot(cls[i], qcls[j]);
            g(j, i) = g(i, j);
        }
    return g;
}

std::vector<SurfacePair::Edge> SurfacePair::edges(const std::vector<NodeRef>& among) const {
    std::vector<NodeRef> sorted = among;
    std::sort(sorted.begin(), sorted.end());
    IntMatrix g = gram(sorted);
    std::vector<Edge> out;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (g(i, j) > 0) out.push_back({sorted[i], sorted[j], g(i, j)});
    return out;
}

std::map<NodeRef, BigInt> SurfacePair::total_transform(NodeRef n) const {
    auto it = tt_.find(n);
    if (it == tt_.end()) throw std::out_of_range("no total transform tracked for " + node_name(n));
    return it->second;
}

void SurfacePair::check_invariants() const {
    const std::size_t n = cl_rank();
    if (!(sigma_ * sigma_ == IntMatrix::identity(n))) throw std::logic_error("sigma is not an involution");
    if (!(sigma_.transpose() * form_ * sigma_ == form_)) throw std::logic_error("sigma does not preserve the form");
    for (const auto& c : components_) {
        if (c.cls.size() != n) throw std::logic_error("class of " + c.name + " has the wrong length");
        if (c.field == Field::Real && sigma_ * c.cls != c.cls)
            throw std::logic_error("real component " + c.name + " has a non-invariant class");
    }
    std::vector<NodeRef> all = nodes();
    IntMatrix g = gram(all);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (g(i, j) < 0)
                throw std::logic_error(node_name(all[i]) + " and " + node_name(all[j]) + " pair negatively");
}

std::string SurfacePair::to_dot() const {
    std::ostringstream os;
    auto key = [](NodeRef n) { return "\"n" + std::to_string(n.id) + (n.half ? "b" : "a") + "\""; };
    os << "graph surface {\n";
    os << "  node [shape=circle];\n";
    for (const auto& c : components_) {
        BigInt w = self_int(c.id);
        for (NodeRef n : nodes_of(c.id)) {
            os << "  " << key(n) << " [label=\"" << node_name(n) << "\\n" << w << "\", id=" << c.id
               << ", weight=" << w << ", field=\"" << to_string(c.field) << "\", role=\"" << to_string(c.role)
               << "\"";
            if (c.field == Field::ComplexPair) os << ", style=dashed";
            if (c.role == Role::Interior) os << ", shape=box";
            os << "];\n";
        }
        if (c.field == Field::ComplexPair)
            os << "  { rank=same; " << key({c.id, 0}) << "; " << key({c.id, 1}) << "; }\n";
    }
    for (const auto& e : edges()) {
        os << "  " << key(e.a) << " -- " << key(e.b);
        if (e.mult > 1) os << " [label=\"" << e.mult << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

SurfacePair blow_up(const SurfacePair& s, const Center& c) {
    SurfacePair out = s;
    switch (c.kind) {
        case Center::Kind::FreePointOn:
            SurfaceEditor::blow_up_point(out, {{c.a, 1}}, c.rationality, c.name, c.role);
            break;
        case Center::Kind::DoublePoint:
            SurfaceEditor::require_node(s, c.a, "double point");
            SurfaceEditor::require_node(s, c.b, "double point");
            if (c.a == c.b || s.pairing(c.a, c.b) < 1)
                throw Error(ErrorKind::InvalidCenter, s.node_name(c.a) + " and " + s.node_name(c.b) + " do not meet");
            SurfaceEditor::blow_up_point(out, {{c.a, 1}, {c.b, 1}}, c.rationality, c.name, c.role);
            break;
        case Center::Kind::Point:
            SurfaceEditor::blow_up_point(out, c.incidence, c.rationality, c.name, c.role);
            break;
        case Center::Kind::SubdivExpansion:
            SurfaceEditor::expansion(out, c.a, c.b, c.mu_minus, c.mu_plus, c.name, c.role);
            break;
    }
    Step st;
    st.kind = Step::Kind::BlowUp;
    st.center = c;
    SurfaceEditor::record(out, st);
    return out;
}

SurfacePair subdivisorial_expansion(const SurfacePair& s, NodeRef minus, NodeRef plus, int mu_minus, int mu_plus,
                                    const std::string& name) {
    return blow_up(s, Center::expansion(minus, plus, mu_minus, mu_plus, name));
}

SurfacePair contract(const SurfacePair& s, int id) {
    if (!s.has_component(id)) throw Error(ErrorKind::InvalidCenter, "no component with id " + std::to_string(id));
    SurfacePair out = s;
    SurfaceEditor::contract(out, id);
    Step st;
    st.kind = Step::Kind::Contract;
    st.target = id;
    SurfaceEditor::record(out, st);
    return out;
}

SurfacePair add_curve(const SurfacePair& s, const IntVector& cls, Field field, const std::string& name, Role role,
                      bool has_real_points) {
    SurfacePair out = s;
    SurfaceEditor::add_curve(out, cls, field, name, role, has_real_points);
    Step st;
    st.kind = Step::Kind::AddCurve;
    st.cls = cls;
    st.field = field;
    st.name = name;
    st.role = role;
    st.has_real_points = has_real_points;
    SurfaceEditor::record(out, st);
    return out;
}

SurfacePair forget(const SurfacePair& s, int id) {
    if (!s.has_component(id)) throw Error(ErrorKind::InvalidCenter, "no component with id " + std::to_string(id));
    SurfacePair out = s;
    SurfaceEditor::forget(out, id);
    Step st;
    st.kind = Step::Kind::Forget;
    st.target = id;
    SurfaceEditor::record(out, st);
    return out;
}

SurfacePair set_role(const SurfacePair& s, int id, Role role) {
    if (!s.has_component(id)) throw Error(ErrorKind::InvalidCenter, "no component with id " + std::to_string(id));
    SurfacePair out = s;
    SurfaceEditor::set_role(out, id, role);
    Step st;
    st.kind = Step::Kind::SetRole;
    st.target = id;
    st.role = role;
    SurfaceEditor::record(out, st);
    return out;
}

SurfacePair apply_step(const SurfacePair& s, const Step& step) {
    switch (step.kind) {
        case Step::Kind::BlowUp: return blow_up(s, step.center);
        case Step::Kind::Contract: return contract(s, step.target);
        case Step::Kind::AddCurve: return add_curve(s, step.cls, step.field, step.name, step.role, step.has_real_points);
        case Step::Kind::Forget: return forget(s, step.target);
        case Step::Kind::SetRole: return set_role(s, step.target, step.role);
    }
    throw std::logic_error("unknown step kind");
}

SurfacePair replay(const BaseSpec& base, const std::vector<Step>& steps) {
    SurfacePair s = SurfacePair::from_base(base);
    for (const auto& st : steps) s = apply_step(s, st);
    return s;
}

Minimization snc_minimize(const SurfacePair& s) {
    Minimization out{s, {}};
    for (;;) {
        bool progressed = false;
        std::vector<NodeRef> bnodes = out.result.boundary_nodes();
        for (int id : out.result.boundary_ids()) {
            const SurfacePair& cur = out.result;
            std::vector<NodeRef> kn = cur.nodes_of(id);
            if (cur.pairing(kn[0], kn[0]) != -1) continue;
            if (kn.size() == 2 && cur.pairing(kn[0], kn[1]) != 0) continue;
            bool ok = true;
            for (NodeRef k : kn) {
                std::vector<NodeRef> nb;
                for (NodeRef n : bnodes) {
                    if (n.id == id) continue;
                    BigInt p = cur.pairing(n, k);
                    if (p == 0) continue;
                    if (p != 1) ok = false;
                    nb.push_back(n);
                }
                if (nb.size() > 2) ok = false;
                if (nb.size() == 2 && cur.pairing(nb[0], nb[1]) != 0) ok = false;
            }
            if (!ok) continue;
            try {
                out.result = contract(cur, id);
            } catch (const Error&) {
                continue;
            }
            out.contracted.push_back(id);
            progressed = true;
            break;
        }
        if (!progressed) return out;
    }
}

bool is_tree(const SurfacePair& s, const std::vector<NodeRef>& nodes) {
    if (nodes.empty()) return false;
    std::vector<NodeRef> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    IntMatrix g = s.gram(sorted);
    const std::size_t n = sorted.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (g(i, j) < 0 || g(i, j) > 1) return false;
            if (g(i, j) == 1) {
                ++edges;
                std::size_t a = root(i), b = root(j);
                if (a == b) return false;
                parent[a] = b;
            }
        }
    return edges + 1 == n;
}

RealLocus real_locus_of_tree(const SurfacePair& s, const std::vector<NodeRef>& tree) {
    std::set<NodeRef> members(tree.begin(), tree.end());
    for (NodeRef n : tree) {
        if (!s.node_exists(n)) throw Error(ErrorKind::InvalidCenter, "missing node in tree");
        if (!members.count(s.sigma_node(n)))
            throw Error(ErrorKind::NotSigmaStable, "conjugate of " + s.node_name(n) + " is not in the tree");
    }
    if (!is_tree(s, tree)) throw Error(ErrorKind::NotATree, "complexified graph is not a tree");
    for (NodeRef n : tree) {
        const Component& c = s.component(n.id);
        if (c.field == Field::Real && c.has_real_points) return RealLocus::OneDimConnected;
    }
    for (const auto& e : s.edges(tree))
        if (s.sigma_node(e.a) == e.b) return RealLocus::Point;
    return RealLocus::Empty;
}

RealLocus real_locus_of_tree(const SurfacePair& s, const std::vector<int>& component_ids) {
    return real_locus_of_tree(s, s.nodes_of(component_ids));
}

std::map<int, BigInt> fiber_multiplicities(const SurfacePair& s, const std::vector<int>& fiber,
                                           const std::optional<IntVector>& fiber_class) {
    std::vector<NodeRef> nodes = s.nodes_of(fiber);
    const std::size_t n = nodes.size();
    if (n == 0) throw Error(ErrorKind::NotAFiber, "empty fiber");
    IntMatrix m = s.gram(nodes);
    std::vector<bool> alive(n, true);
    struct Contraction {
        std::size_t k;
        std::vector<std::pair<std::size_t, BigInt>> nb;
    };
    std::vector<Contraction> order;
    for (std::size_t remaining = n; remaining > 1; --remaining) {
        std::size_t k = n;
        for (std::size_t i = 0; i < n && k == n; ++i)
            if (alive[i] && m(i, i) == -1) k = i;
        if (k == n) throw Error(ErrorKind::NotAFiber, "no (-1)-curve left to contract");
        Contraction c{k, {}};
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && i != k && m(i, k) != 0) c.nb.emplace_back(i, m(i, k));
        for (const auto& [a, pa] : c.nb)
            for (const auto& [b, pb] : c.nb) m(a, b) += pa * pb;
        alive[k] = false;
        order.push_back(c);
    }
    std::size_t last = 0;
    while (!alive[last]) ++last;
    if (m(last, last) != 0) throw Error(ErrorKind::NotAFiber, "contraction ends with a curve of nonzero square");
    std::vector<BigInt> mult(n, BigInt(0));
    mult[last] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        BigInt total = 0;
        for (const auto& [i, p] : it->nb) total += mult[i] * p;
        if (total <= 0) throw Error(ErrorKind::NotAFiber, "nonpositive multiplicity");
        mult[it->k] = total;
    }
    std::map<int, BigInt> out;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = out.emplace(nodes[i].id, mult[i]);
        if (!inserted && it->second != mult[i])
            throw Error(ErrorKind::NotAFiber, "conjugate curves received different multiplicities");
    }
    if (fiber_class) {
        IntVector total(s.cl_rank(), BigInt(0));
        for (std::size_t i = 0; i < n; ++i) total = add(total, scale(mult[i], s.node_class(nodes[i])));
        if (total != *fiber_class) throw Error(ErrorKind::NotAFiber, "multiplicities do not sum to the fiber class");
    }
    return out;
}

std::string tree_signature(const SurfacePair& s, const std::vector<NodeRef>& nodes) {
    std::vector<NodeRef> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    IntMatrix g = s.gram(sorted);
    std::vector<std::string> label(n);
    for (std::size_t i = 0; i < n; ++i)
        label[i] = g(i, i).str() + (s.component(sorted[i].id).field == Field::ComplexPair ? "c" : "r");
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && g(i, j) > 0) adj[i].push_back(j);
    if (!is_tree(s, sorted)) {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < n; ++i) parts.push_back(label[i] + "/" + std::to_string(adj[i].size()));
        std::sort(parts.begin(), parts.end());
        std::string out = "nontree:";
        for (const auto& p : parts) out += p + ",";
        return out;
    }
    // centers of the tree by repeated leaf removal
    std::vector<std::size_t> deg(n);
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] = adj[i].size();
        if (deg[i] <= 1) layer.push_back(i);
    }
    std::size_t left = n;
    while (left > 2) {
        std::vector<std::size_t> next;
        left -= layer.size();
        for (std::size_t v : layer)
            for (std::size_t w : adj[v])
                if (--deg[w] == 1) next.push_back(w);
        layer = next;
    }
    std::function<std::string(std::size_t, std::size_t)> encode = [&](std::size_t v, std::size_t parent) {
        std::vector<std::string> kids;
        for (std::size_t w : adj[v])
            if (w != parent) kids.push_back(encode(w, v));
        std::sort(kids.begin(), kids.end());
        std::string out = "(" + label[v];
        for (const auto& k : kids) out += k;
        return out + ")";
    };
    std::string best;
    for (std::size_t c : layer) {
        std::string e = encode(c, n);
        if (best.empty() || e < best) best = e;
    }
    return best;
}

}  // namespace fakeplane
