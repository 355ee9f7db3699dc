#pragma once

// Command-line front end. Exit status: 0 success, 1 invalid input or unknown
// subcommand, 2 failed internal consistency check.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitred/ffield.hpp"
#include "splitred/gsp4.hpp"

namespace splitred {

// Environment variable read for the default worker count.
inline constexpr const char* kThreadsEnv = "SPLITRED_THREADS";

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Tally archive written by gsp4-verify. The "exact" member holds only integers
// and is what golden files compare.
nlohmann::ordered_json gsp4_archive(u64 ell, const EnumerationOptions& opts);
nlohmann::ordered_json pairs_archive(u64 ell);

}  // namespace splitred
