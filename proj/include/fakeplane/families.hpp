#pragma once

#include "fakeplane/rstandard.hpp"
#include "fakeplane/surfgraph.hpp"
#include "fakeplane/topocheck.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace fakeplane {

using BigRational = boost::multiprecision::cpp_rational;

// A surface with the arrangement D, the boundary B and, when fixed, the relation basis used
// for arrangement_report. The exceptional curves outside B form the remaining part.
struct Construction {
    SurfacePair surface;
    ArrangementInput arrangement;
};

struct ExpansionMultiplicity {
    int mu_minus = 1;
    int mu_plus = 2;
};

struct Kod1Params {
    int n = 2;
    std::vector<ExpansionMultiplicity> pairs;          // one per real line E_i, i = 1..n
    int r0 = 1;                                         // length of the chain over the free point of E_0
    std::vector<ExpansionMultiplicity> complex_pairs;  // one per pair of conjugate lines
};

// n - 1 - sum 1/mu_plus, with 2m extra lines and their terms when complex pairs are present.
BigRational kod1_eta(const Kod1Params& p);

// The matrix [[-1, -1...], [v_minus, diag(mu_plus)]], conjugate pairs listed as two rows.
IntMatrix kod1_matrix(const Kod1Params& p);

// Builds the blow-up of P2 along the pencil of lines through a point without checking the
// positivity of eta or unimodularity; throws BadParams on malformed parameters.
Construction kod1_surface(const Kod1Params& p);

// As kod1_surface, also enforcing eta > 0 and, without complex pairs, unimodularity.
Construction kod1(const Kod1Params& p);

// Cuspidal cubic C with a conic Q osculating at a smooth point, expanded at their second
// meeting point. Requires 2 mu_minus - 3 mu_plus = +-1.
Construction ramanujam(int mu_minus, int mu_plus);

enum class QuarticForm { AllRealCusps, ConjugateCusps };
std::string to_string(QuarticForm f);

// Tricuspidal quartic with its tangent line at a real cusp, expanded at their transversal
// meeting point. Requires mu_minus - 4 mu_plus = +-1.
Construction tricuspidal(QuarticForm form, int mu_minus, int mu_plus);

enum class Exceptional { Y333, Y244Real, Y244Complex, Y236 };
std::string to_string(Exceptional e);
Construction exceptional(Exceptional e);

// Completion of the surface x^n z = y^r - x as an r-standard pair.
std::vector<ProgramStep> xnz_program(int n, int r);
RStandardPair xnz_family(int n, int r);

// Whether the members of the family x^(n+1) z = y^r + sum_{i=2..n} a_i x^(i+1) + x^2 + x at the
// coefficient vectors (a_2, ..., a_n) are isomorphic.
bool moduli_iso(int n, int r, const std::vector<BigRational>& p, const std::vector<BigRational>& q);

}  // namespace fakeplane
