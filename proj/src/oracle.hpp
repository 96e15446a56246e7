#ifndef CPD_ORACLE_HPP
#define CPD_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "model.hpp"
#include "time_series.hpp"

namespace cpd {

// Ground truth by brute force: every subset of {1..n-1} is tried as a
// changepoint set, with segment costs summed point by point (no
// cumulative-statistic shortcuts). Intentionally free of pruning or any
// other cleverness so it can arbitrate the real solvers.
struct OracleResult {
    double best_cost = 0.0;
    std::vector<std::int64_t> best_changepoints;
    // per-k minima, index k = 0..kmax; empty for penalised runs
    std::vector<double> cost_per_k;
    std::vector<std::vector<std::int64_t>> changepoints_per_k;
};

// Exact minimum of total segment cost + beta*k over all 2^(n-1)
// segmentations. Ties resolved exactly as the solvers resolve them:
// the later changepoints are preferred smaller. Throws when n exceeds
// n_limit.
OracleResult oracle_penalised(const TimeSeries& series, const GaussianCostModel& model,
                              double beta, std::int64_t n_limit = 20);

// Exact C_{k,n} and argmin for every k = 0..kmax by enumeration.
OracleResult oracle_constrained(const TimeSeries& series, const GaussianCostModel& model,
                                std::int64_t kmax, std::int64_t n_limit = 20);

}  // namespace cpd

#endif
