#ifndef NZFLOW_CLI_H_
#define NZFLOW_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace nzflow::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;       // parse errors, mismatched files
inline constexpr int kStructural = 2;       // not 2-edge-connected, guards
inline constexpr int kVerifyFailed = 3;     // a verifier said no
inline constexpr int kInternalError = 4;    // library defect

// Entry point for the `nzflow` tool. `args` excludes the program name.
// "-" as a file name reads `in`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace nzflow::cli

#endif  // NZFLOW_CLI_H_
