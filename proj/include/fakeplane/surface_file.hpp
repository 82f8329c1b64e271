#pragma once

#include "fakeplane/chainform.hpp"
#include "fakeplane/intlat.hpp"
#include "fakeplane/rstandard.hpp"
#include "fakeplane/surfgraph.hpp"
#include "fakeplane/topocheck.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fakeplane {

using Json = nlohmann::json;

struct ArrangementNames {
    std::vector<std::string> d;
    std::optional<std::vector<std::string>> b;  // the boundary when absent
    std::optional<IntMatrix> relations;
};

struct RStandardRoles {
    std::string f_inf = kFiberAtInfinity;
    std::string c0 = kSection;
    std::optional<std::string> a0;  // the only interior curve when absent
};

// A blow-up program over a base surface, replayed into a SurfacePair, with optional data
// for the arrangement report, the rectification and the chain normalizers.
struct SurfaceFile {
    std::optional<SurfacePair> surface;  // absent for files carrying only a chain or a matrix
    std::optional<std::vector<std::string>> boundary;
    std::optional<ArrangementNames> arrangement;
    std::optional<RStandardRoles> r_standard;
    std::optional<WeightedChain> chain;
    std::optional<IntMatrix> matrix;
};

// Throws Error(ParseError) naming the offending field, or Error(ReplayError) when the
// program does not replay.
SurfaceFile parse_surface_file(const std::string& text);
SurfaceFile surface_file_from_json(const Json& j);

Json to_json(const SurfaceFile& f);
std::string serialize_surface_file(const SurfaceFile& f);  // sorted keys, two-space indent

// Name of a node as written in files: the component name, with a trailing ' for the
// conjugate half.
std::string node_label(const SurfacePair& s, NodeRef n);
// Step as written in files, with curves named as on the surface before the step.
Json step_to_json(const SurfacePair& before, const Step& step);

Json to_json(const IntMatrix& m);
Json to_json(const BigInt& v);

ArrangementInput arrangement_input(const SurfaceFile& f);
RStandardPair r_standard_pair(const SurfaceFile& f);

SurfaceFile surface_file(const SurfacePair& s);
SurfaceFile surface_file(const RStandardPair& p);  // records the roles by name

}  // namespace fakeplane
