#ifndef CPD_TOOLS_SIM_HPP
#define CPD_TOOLS_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cpd::cli {

// Synthetic Gaussian signal: segment means alternate between 0 and
// jump*sigma across n_changes boundaries, plus N(0, sigma^2) noise.
struct SimSpec {
    std::int64_t n = 0;
    std::int64_t n_changes = 0;
    double jump = 5.0;  // mean shift in sigma units
    double sigma = 1.0;
    std::uint64_t seed = 1;
    bool equal_placement = true;  // else uniform-random distinct positions
};

struct Simulation {
    std::vector<double> values;
    std::vector<std::int64_t> changepoints;  // true boundaries, 1-based last index
};

// Deterministic for a fixed spec: the generator is fully pinned down
// (mt19937_64 plus an explicit Box-Muller transform), independent of the
// standard library's distribution implementations.
Simulation simulate(const SimSpec& spec);

// Writes one value per line to out_path and the true changepoints to
// "<out_path>.json". Byte-identical output for identical specs.
void write_simulation(const SimSpec& spec, const std::string& out_path);

}  // namespace cpd::cli

#endif
