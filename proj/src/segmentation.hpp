#ifndef CPD_SEGMENTATION_HPP
#define CPD_SEGMENTATION_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "model.hpp"
#include "time_series.hpp"

namespace cpd {

// A segmentation of y_1..y_n: tau_j is the 1-based index of the LAST
// point of segment j, so changepoints lie in 1..n-1 and are strictly
// increasing. total_cost excludes the penalty; penalised_objective is
// total_cost + beta*k for penalised runs, NaN otherwise.
struct Segmentation {
    std::vector<std::int64_t> changepoints;
    double total_cost = 0.0;
    double penalised_objective = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> means;

    std::int64_t k() const { return static_cast<std::int64_t>(changepoints.size()); }
};

// Summed segment costs recomputed from scratch; used to enforce the
// Segmentation cost invariant and to fill total_cost after backtraces.
double recompute_total_cost(const TimeSeries& series, const GaussianCostModel& model,
                            const std::vector<std::int64_t>& changepoints);

// Fitted mean of each segment.
std::vector<double> segment_means(const TimeSeries& series,
                                  const std::vector<std::int64_t>& changepoints);

// Output of the constrained solvers: for every k = 0..kmax the minimal
// cost C_{k,n} and the achieving segmentation.
struct ConstrainedResult {
    std::int64_t kmax = 0;
    std::vector<double> costs;                 // costs[k] = C_{k,n}
    std::vector<Segmentation> segmentations;   // segmentations[k] has k changepoints
};

// Per-step solver diagnostics. For penalised solvers rows carry k = -1;
// constrained solvers emit one row per (k, t). Collection is optional so
// benchmark runs pay nothing for it.
struct TraceRow {
    std::int64_t t;
    std::int64_t k;  // -1 for penalised solvers
    std::int64_t count;
};

struct PruneEvent {
    std::int64_t t;
    std::int64_t k;  // -1 for penalised solvers
    std::int64_t tau;
};

struct RunTrace {
    std::vector<TraceRow> rows;
    std::vector<PruneEvent> pruned_at;
    // live candidate labels per row; filled only when capture_live_sets
    std::vector<std::vector<std::int64_t>> live_sets;
    // F(1..n) for penalised solvers; filled only when collecting
    std::vector<double> objective_path;
    double wall_seconds = 0.0;
};

struct SolveOptions {
    bool collect_trace = false;
    bool capture_live_sets = false;  // implies collect_trace
    bool validate_state = false;     // fpop/pdpa: check piecewise invariants per step

    bool tracing() const { return collect_trace || capture_live_sets; }
};

}  // namespace cpd

#endif
