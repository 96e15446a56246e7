#ifndef CPD_TOOLS_COMMANDS_HPP
#define CPD_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sim.hpp"

namespace cpd::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct DetectArgs {
    std::string input_path;
    std::string method;
    double beta = -1.0;  // < 0: use the default penalty
    double sigma = 1.0;
    double kappa = 0.0;
    std::int64_t kmax = 0;
    bool trace = false;
    std::string out_path;  // empty: stdout
};

struct BenchArgs {
    std::vector<std::int64_t> n_list;
    std::vector<std::int64_t> changes_list;
    std::vector<std::string> methods{"fpop", "pelt"};
    int reps = 3;
    std::uint64_t seed = 1;
    double jump = 5.0;
    double sigma = 1.0;
    double beta = -1.0;
    int jobs = 1;
    std::string out_path;
};

struct TraceArgs {
    std::string input_path;
    std::vector<std::string> methods;
    double beta = -1.0;
    double sigma = 1.0;
    double kappa = 0.0;
    std::int64_t kmax = 0;
    std::string out_path;
};

int cmd_detect(const DetectArgs& args);
int cmd_simulate(const SimSpec& spec, const std::string& out_path);
int cmd_bench(const BenchArgs& args);
int cmd_trace(const TraceArgs& args);

}  // namespace cpd::cli

#endif
