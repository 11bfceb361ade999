#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psap::cli {

// Runs the command-line front end. Exit codes: 0 success, 1 computation
// failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Resolves a data path: as given if it exists, otherwise relative to the
// PSAP_DATA_DIR environment variable.
std::string resolve_data_path(const std::string& path);

}  // namespace psap::cli
