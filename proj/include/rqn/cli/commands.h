#ifndef RQN_CLI_COMMANDS_H_
#define RQN_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "rqn/cli/run_config.h"

namespace rqn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;

// Trains one run and writes its artifacts under config.out.
int cmd_train(const RunConfig& config, std::ostream& log);
int cmd_evaluate(const std::string& run_dir, int episodes, std::ostream& log);
int cmd_reconstruct(const std::string& run_dir, std::ostream& log);
int cmd_verify_theorem(int instances, std::uint64_t seed, std::ostream& log);
int cmd_aggregate(const std::vector<std::string>& run_dirs, const std::string& out, std::ostream& log);

// Full command line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace rqn::cli

#endif  // RQN_CLI_COMMANDS_H_
