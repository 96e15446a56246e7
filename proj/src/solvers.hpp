#ifndef CPD_SOLVERS_HPP
#define CPD_SOLVERS_HPP

#include <cstdint>

#include "interval_set.hpp"
#include "model.hpp"
#include "segmentation.hpp"
#include "time_series.hpp"

namespace cpd {

struct PenalisedFit {
    Segmentation segmentation;
    RunTrace trace;
};

struct ConstrainedFit {
    ConstrainedResult result;
    RunTrace trace;
};

// Working range for the segment mean: the data hull padded by three
// times max(sigma, sample sd). Segment-mean minimizers always lie inside
// the hull, so the padding only gives threshold intervals room to close.
Interval mu_domain(const TimeSeries& series, const GaussianCostModel& model);

// --- penalised problem: minimize total segment cost + beta * k ---

// Optimal Partitioning: the unpruned O(n^2) dynamic program.
PenalisedFit op_solve(const TimeSeries& series, const GaussianCostModel& model, double beta,
                      const SolveOptions& options = {});

// PELT: inequality pruning on top of Optimal Partitioning. kappa = 0 is
// valid for any cost built from pointwise losses.
PenalisedFit pelt_solve(const TimeSeries& series, const GaussianCostModel& model, double beta,
                        double kappa = 0.0, const SolveOptions& options = {});

// FPOP: functional pruning via the piecewise-quadratic representation of
// Cost*(mu).
PenalisedFit fpop_solve(const TimeSeries& series, const GaussianCostModel& model, double beta,
                        const SolveOptions& options = {});

// Binary Segmentation comparator: greedy splitting, not guaranteed
// optimal. Stops after kmax splits or when the best cost reduction
// drops below beta.
PenalisedFit binseg_solve(const TimeSeries& series, const GaussianCostModel& model,
                          std::int64_t kmax, double beta, const SolveOptions& options = {});

// --- constrained problem: minimal cost with exactly k changepoints, k <= kmax ---

// Segment Neighbourhood Search: the unpruned O(K n^2) dynamic program.
ConstrainedFit sns_solve(const TimeSeries& series, const GaussianCostModel& model,
                         std::int64_t kmax, const SolveOptions& options = {});

// SNIP: Segment Neighbourhood with inequality pruning.
ConstrainedFit snip_solve(const TimeSeries& series, const GaussianCostModel& model,
                          std::int64_t kmax, double kappa = 0.0,
                          const SolveOptions& options = {});

// pDPA: Segment Neighbourhood with functional pruning, one piecewise
// state per k.
ConstrainedFit pdpa_solve(const TimeSeries& series, const GaussianCostModel& model,
                          std::int64_t kmax, const SolveOptions& options = {});

// --- cross-checks ---

enum class ConsistencyOutcome {
    kConsistent,    // min_k (C_{k,n} + beta*k) matches the penalised optimum
    kInconsistent,  // values disagree beyond tolerance
    kInconclusive,  // kmax too small to cover the penalised optimum
};

// Verifies that the constrained cost path and the penalised optimum agree:
// min_k (C_{k,n} + beta*k) == F(n), within 1e-9 relative.
ConsistencyOutcome penalised_constrained_consistency(const TimeSeries& series,
                                                     const GaussianCostModel& model, double beta,
                                                     std::int64_t kmax);

}  // namespace cpd

#endif
