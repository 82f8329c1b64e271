#pragma once

#include "fakeplane/surfgraph.hpp"

#include <map>
#include <string>
#include <vector>

namespace fakeplane {

// Names of the curves of the starting Hirzebruch surface F1 used by every r-standard program.
inline constexpr const char* kFiberAtInfinity = "Finf";
inline constexpr const char* kSection = "C0";
inline constexpr const char* kFiberOverZero = "E-1";

// One blow-up of an r-standard program; components are referred to by name.
struct ProgramStep {
    enum class Kind { FreePoint, DoublePoint, Expansion };
    Kind kind = Kind::FreePoint;
    std::string on;     // FreePoint, DoublePoint; Expansion: the curve with coefficient mu_minus
    std::string other;  // DoublePoint; Expansion: the curve with coefficient mu_plus
    int mu_minus = 1;
    int mu_plus = 1;
    std::string name;

    static ProgramStep free_point(std::string on, std::string name);
    static ProgramStep double_point(std::string on, std::string other, std::string name);
    static ProgramStep expansion(std::string minus, std::string plus, int mu_minus, int mu_plus, std::string name);

    bool operator==(const ProgramStep&) const = default;
};

struct RStandardPair {
    SurfacePair surface;
    int f_inf = -1;
    int c0 = -1;
    std::vector<int> e_tree;  // sorted component ids
    int a0 = -1;
    std::map<int, BigInt> mult;  // multiplicities over e_tree and a0

    BigInt multiplicity() const { return mult.at(a0); }
    // The component of e_tree meeting c0 and the other multiplicity-one component of the
    // degenerate fiber; both -1 when e_tree is empty.
    int fiber_root() const;
    int first_exceptional() const;
};

// Checks every invariant of an r-standard pair on the given roles and fills e_tree and mult.
RStandardPair make_r_standard(SurfacePair s, int f_inf, int c0, int a0);

// F1 with the fiber at infinity and the section C0 as boundary and the fiber over zero as the
// interior curve.
SurfacePair r_standard_base();

RStandardPair build_r_standard(const std::vector<ProgramStep>& program);

// Blow up a point of the fiber over zero, expand its meeting point with that fiber with
// coefficients (1, m - 1), then blow up a free point of the last curve: multiplicity m.
std::vector<ProgramStep> minimal_program(int m);

struct DegenerateFiber {
    Field base_point = Field::Real;
    int multiplicity = 1;                   // of the component defined over R (Real base points)
    std::vector<ProgramStep> program;       // completion of that component; empty means minimal_program
    std::vector<std::string> complex_lines; // further components, affine lines defined over C
};

struct FiberedSurfaceData {
    std::vector<DegenerateFiber> fibers;
};

RStandardPair reduce_to_r_standard(const FiberedSurfaceData& d);

struct CoefficientTriple {
    BigInt f_inf;
    BigInt e0;
    BigInt e_minus1;
    bool operator==(const CoefficientTriple&) const = default;
};

struct LinkCertificate {
    enum class Parity { Even, Odd };
    Parity parity = Parity::Even;
    long long s = 0;
    long long pairs = 0;  // conjugate pairs of fibers used by the link
    std::vector<Step> steps;
    CoefficientTriple before;
    CoefficientTriple after;
    BigInt old_relation;  // f_inf - e0 - e_minus1, equal to +-m
    BigInt new_relation;  // f_inf + (2 * pairs - 1) * e_minus1 - e0, equal to +-m'
    BigInt m_before;
    BigInt m_after;
    std::size_t e_before = 0;
    std::size_t e_after = 0;
    int f_inf = -1;  // roles in the output
    int c0 = -1;
    int a0 = -1;
};

std::string to_string(LinkCertificate::Parity p);

struct LinkResult {
    RStandardPair pair;
    LinkCertificate certificate;
};

LinkResult elementary_link(const RStandardPair& p);

// Applies the certificate's steps to the input surface and re-validates the output roles.
RStandardPair replay_link(const RStandardPair& p, const LinkCertificate& c);

std::vector<LinkCertificate> rectify(const RStandardPair& p);

}  // namespace fakeplane
