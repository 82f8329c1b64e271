#pragma once

#include "fakeplane/rstandard.hpp"
#include "fakeplane/surface_file.hpp"
#include "fakeplane/topocheck.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fakeplane::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line; args excludes the program name. Files named "-" are read from in.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

Json report_to_json(const TopologyReport& r);
Json certificate_to_json(const RStandardPair& before, const LinkCertificate& c);

}  // namespace fakeplane::cli
