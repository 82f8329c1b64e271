#pragma once

#include "fakeplane/intlat.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fakeplane {

enum class Field { Real, ComplexPair };
enum class Role { Boundary, Interior };
enum class BaseKind { P2, P1xP1, Fn, Quadric };

std::string to_string(Field f);
std::string to_string(Role r);
std::string to_string(BaseKind k);

// A geometric component over C: half 0 of a component, or half 1 (the conjugate) of a
// ComplexPair component.
struct NodeRef {
    int id = -1;
    int half = 0;
    auto operator<=>(const NodeRef&) const = default;
};

struct BaseCurve {
    std::string name;
    Field field = Field::Real;
    IntVector base_class;  // class of half 0 in Cl of the base over C
    bool has_real_points = true;
    Role role = Role::Boundary;
};

struct BaseSpec {
    BaseKind kind = BaseKind::P2;
    int n = 0;  // Hirzebruch index for Fn
    std::vector<BaseCurve> curves;
};

struct Component {
    int id = -1;
    std::string name;
    Field field = Field::Real;
    bool has_real_points = true;
    IntVector cls;  // class of half 0 in Cl(V_C); half 1 has class sigma * cls
    Role role = Role::Boundary;
    bool original = false;
    IntVector base_class;  // for original components only
};

struct Incidence {
    NodeRef node;
    int mult = 1;
};

struct Center {
    enum class Kind { FreePointOn, DoublePoint, Point, SubdivExpansion };
    Kind kind = Kind::FreePointOn;
    NodeRef a;                         // FreePointOn, DoublePoint, SubdivExpansion (C-)
    NodeRef b;                         // DoublePoint, SubdivExpansion (C+)
    std::vector<Incidence> incidence;  // Point: curves through the point with their multiplicities
    int mu_minus = 1;
    int mu_plus = 1;
    Field rationality = Field::Real;   // ignored for SubdivExpansion, which detects it
    std::string name;
    Role role = Role::Boundary;

    static Center free_point(NodeRef on, Field rationality = Field::Real, std::string name = "");
    static Center double_point(NodeRef a, NodeRef b, Field rationality = Field::Real, std::string name = "");
    static Center point(std::vector<Incidence> inc, Field rationality = Field::Real, std::string name = "");
    static Center expansion(NodeRef minus, NodeRef plus, int mu_minus, int mu_plus, std::string name = "");
};

struct Step {
    enum class Kind { BlowUp, Contract, AddCurve, Forget, SetRole };
    Kind kind = Kind::BlowUp;
    Center center;  // BlowUp
    int target = -1;  // Contract, Forget, SetRole
    Role role = Role::Boundary;  // SetRole, AddCurve
    IntVector cls;  // AddCurve
    Field field = Field::Real;  // AddCurve
    bool has_real_points = true;  // AddCurve
    std::string name;  // AddCurve

    bool operator==(const Step& o) const;
};

class SurfacePair {
public:
    static SurfacePair from_base(const BaseSpec& spec);

    BaseKind base_kind() const { return spec_.kind; }
    const BaseSpec& base_spec() const { return spec_; }
    const IntMatrix& base_form() const { return base_form_; }
    const IntMatrix& base_sigma() const { return base_sigma_; }

    std::size_t cl_rank() const { return form_.rows(); }
    const IntMatrix& form() const { return form_; }
    const IntMatrix& sigma() const { return sigma_; }

    const std::vector<Component>& components() const { return components_; }
    bool has_component(int id) const;
    const Component& component(int id) const;
    int find(const std::string& name) const;  // -1 if absent
    int last_created() const { return last_created_; }
    std::vector<int> created_by_last_step() const { return created_last_; }

    std::vector<NodeRef> nodes() const;
    std::vector<NodeRef> nodes_of(int id) const;
    std::vector<NodeRef> nodes_of(const std::vector<int>& ids) const;
    std::vector<int> boundary_ids() const;
    std::vector<NodeRef> boundary_nodes() const;
    bool node_exists(NodeRef n) const;
    std::string node_name(NodeRef n) const;
    IntVector node_class(NodeRef n) const;
    NodeRef sigma_node(NodeRef n) const;
    BigInt pairing(NodeRef a, NodeRef b) const;
    BigInt self_int(int id) const;

    struct Edge {
        NodeRef a;
        NodeRef b;
        BigInt mult;
    };
    // Pairs of distinct nodes with positive pairing, each listed once with a < b.
    std::vector<Edge> edges(const std::vector<NodeRef>& among) const;
    std::vector<Edge> edges() const { return edges(nodes()); }

    // Total transform of every node ever created that still has one, as coefficients
    // over current nodes.
    const std::map<NodeRef, std::map<NodeRef, BigInt>>& total_transforms() const { return tt_; }
    std::map<NodeRef, BigInt> total_transform(NodeRef n) const;

    const std::vector<Step>& history() const { return history_; }

    // Throws std::logic_error unless sigma is an involution preserving the form, every Real
    // component has a sigma-invariant class and distinct nodes pair nonnegatively.
    void check_invariants() const;

    // Pairing matrix of the given nodes.
    IntMatrix gram(const std::vector<NodeRef>& among) const;

    std::string to_dot() const;

private:
    friend class SurfaceEditor;
    BaseSpec spec_;
    IntMatrix base_form_;
    IntMatrix base_sigma_;
    IntMatrix form_;
    IntMatrix sigma_;
    std::vector<Component> components_;
    std::map<NodeRef, std::map<NodeRef, BigInt>> tt_;
    std::vector<Step> history_;
    int next_id_ = 0;
    int last_created_ = -1;
    std::vector<int> created_last_;
};

SurfacePair blow_up(const SurfacePair& s, const Center& c);
SurfacePair subdivisorial_expansion(const SurfacePair& s, NodeRef minus, NodeRef plus, int mu_minus, int mu_plus,
                                    const std::string& name = "");
SurfacePair contract(const SurfacePair& s, int id);
SurfacePair add_curve(const SurfacePair& s, const IntVector& cls, Field field, const std::string& name,
                      Role role = Role::Interior, bool has_real_points = true);
SurfacePair forget(const SurfacePair& s, int id);
SurfacePair set_role(const SurfacePair& s, int id, Role role);

SurfacePair apply_step(const SurfacePair& s, const Step& step);
SurfacePair replay(const BaseSpec& base, const std::vector<Step>& steps);

struct Minimization {
    SurfacePair result;
    std::vector<int> contracted;
};
Minimization snc_minimize(const SurfacePair& s);

enum class RealLocus { Empty, Point, OneDimConnected };
std::string to_string(RealLocus r);

RealLocus real_locus_of_tree(const SurfacePair& s, const std::vector<NodeRef>& tree);
RealLocus real_locus_of_tree(const SurfacePair& s, const std::vector<int>& component_ids);

// Connected and |edges| = |nodes| - 1 with all pairings in {0, 1}.
bool is_tree(const SurfacePair& s, const std::vector<NodeRef>& nodes);

// Multiplicities of the fiber components, normalized so that the curve surviving the
// contraction replay has multiplicity one, then checked against fiber_class if given.
std::map<int, BigInt> fiber_multiplicities(const SurfacePair& s, const std::vector<int>& fiber,
                                           const std::optional<IntVector>& fiber_class = std::nullopt);

// Canonical string of a weighted tree (labels: self-intersection and field), equal for
// isomorphic labelled trees.
std::string tree_signature(const SurfacePair& s, const std::vector<NodeRef>& nodes);

}  // namespace fakeplane
