#pragma once

#include "fakeplane/galois.hpp"
#include "fakeplane/intlat.hpp"
#include "fakeplane/surfgraph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fakeplane {

enum class RealVerdict { R2, NotR2, BoundaryRealLocusEmpty };
std::string to_string(RealVerdict v);

struct Witness {
    std::string name;
    IntMatrix matrix;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
};

struct TopologyReport {
    bool boundary_is_tree = false;
    bool q_acyclic = false;
    bool z_acyclic = false;
    std::vector<BigInt> h1_invariants;  // torsion of H_1, each > 1 dividing the next
    std::size_t h1_free_rank = 0;
    std::size_t h2_free_rank = 0;
    RealVerdict real_locus = RealVerdict::NotR2;
    std::optional<RealLocus> boundary_real_locus;  // set when the boundary is a tree
    std::string reason;                            // why the real locus is not R2, if it is not
    std::vector<Witness> witnesses;

    const Witness* witness(const std::string& name) const;
};

// Decision procedure from the boundary: j sends each boundary node to its class in Cl.
TopologyReport boundary_report(const SurfacePair& s);

struct ArrangementInput {
    std::vector<int> d;  // original components forming the arrangement
    std::vector<int> b;  // boundary components; must contain every member of d
    // Basis of the relations among the classes of the nodes of d (columns, indexed by
    // those nodes in order). A saturated kernel basis is computed when absent.
    std::optional<IntMatrix> relations;
};

// Decision procedure from the arrangement: the relation lattice R of d and the map phi
// recording how the total transforms of the relations meet the exceptional curves
// outside the boundary.
TopologyReport arrangement_report(const SurfacePair& s, const ArrangementInput& in);

// Equivariant action on the given nodes, as a permutation matrix.
IntMatrix node_permutation(const SurfacePair& s, const std::vector<NodeRef>& nodes);

}  // namespace fakeplane
