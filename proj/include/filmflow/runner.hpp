#ifndef FILMFLOW_RUNNER_HPP_
#define FILMFLOW_RUNNER_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "filmflow/config.hpp"

namespace filmflow {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBlowUp = 2;
inline constexpr int kExitThreshold = 3;

/// Full command line (args[0] is the program name). Diagnostics go to
/// `err`, progress to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Execute an already resolved configuration; writes all artifacts and the
/// manifest under config.out.
int execute(const RunConfig& config, const std::vector<std::string>& argv, std::ostream& out,
            std::ostream& err);

}  // namespace filmflow

#endif  // FILMFLOW_RUNNER_HPP_
