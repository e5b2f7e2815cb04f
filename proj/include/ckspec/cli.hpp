#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ckspec::cli {

// sysexits-style codes; the conditions subcommand returns the report's own code.
constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kNoInput = 66;
constexpr int kSoftware = 70;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace ckspec::cli
