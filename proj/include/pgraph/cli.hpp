#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pgraph/algebra.hpp"
#include "pgraph/catalog.hpp"
#include "pgraph/report.hpp"

namespace pgraph {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kBadFlags = 2, kSpecError = 3, kCapExceeded = 4 };

// 64-bit FNV-1a digest of the spec text, hex encoded.
std::string graph_hash(std::string_view text);

// Runs one suite over a loaded spec. Suites: relations, gaps, theta, decomp85
// (alias decomposition), norms, spielberg, grading.
VerificationReport run_suite(const LoadedSpec& spec, const std::string& suite, Flavor flavor, std::uint64_t seed,
                             const std::string& hash);

// argv-style entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgraph
