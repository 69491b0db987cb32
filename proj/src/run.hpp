#pragma once

#include <string>

#include "config.hpp"
#include "profile.hpp"

namespace wetlab {

// Builds the profile described by the config (loads the sample CSV for
// tabulated profiles).
Profile profile_from_config(const RunConfig& cfg);

// Dispatches one subcommand (analyze | certify | minimize | converge).
// Returns a process exit code: 0 success, 1 usage error, 2 constraint or
// geometry error, 3 numeric failure. Reports and tables go to stdout and
// to files under cfg.outdir; errors go to stderr.
int run(const std::string& subcommand, const RunConfig& cfg);

}  // namespace wetlab
