#pragma once

#include "fakeplane/intlat.hpp"

#include <vector>

namespace fakeplane {

// A free lattice of finite rank with an involution.
struct GModule {
    IntMatrix sigma;

    std::size_t rank() const { return sigma.rows(); }

    static GModule trivial(std::size_t n);
    // Throws std::invalid_argument unless sigma is square with sigma^2 = id.
    void validate() const;
};

GModule direct_sum(const GModule& a, const GModule& b);

// Sigma restricted to the sublattice spanned by the columns of k, which must be saturated
// and sigma-stable.
GModule restrict_module(const GModule& m, const IntMatrix& k);

struct GMap {
    GModule source;
    GModule target;
    IntMatrix matrix;  // target.rank() x source.rank()

    bool is_equivariant() const;
};

struct CohomologyGroup {
    std::size_t dim = 0;
    std::vector<IntVector> representatives;  // lie in the cocycle lattice, project to a basis
    IntMatrix projection;                    // dim x rank; coordinates of a cocycle are projection * v mod 2
};

// Ker(id - sigma) / Im(id + sigma)
CohomologyGroup h_even_group(const GModule& m);
// Ker(id + sigma) / Im(id - sigma)
CohomologyGroup h_odd_group(const GModule& m);

struct HEven {
    std::size_t dim = 0;
    std::vector<IntVector> representatives;
};

HEven h_even(const GModule& m);
std::size_t h_odd(const GModule& m);

struct InducedMap {
    IntMatrix matrix;  // over F_2, entries 0/1, target dim x source dim
    bool is_iso = false;
    bool is_surjective = false;
};

// Throws Error(NonEquivariant) if the map does not commute with the involutions.
InducedMap induced_h_even(const GMap& f);

}  // namespace fakeplane
