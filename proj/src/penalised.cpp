#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "piecewise.hpp"
#include "solvers.hpp"

namespace cpd {

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// cp(t) = (cp(tau*_t), tau*_t): walk the recorded argmins back from n.
Segmentation backtrace_last_changepoints(const TimeSeries& series,
                                         const GaussianCostModel& model,
                                         const std::vector<std::int64_t>& last, double beta) {
    Segmentation seg;
    std::int64_t t = series.size();
    while (t > 0) {
        const std::int64_t tau = last[static_cast<std::size_t>(t)];
        if (tau > 0) {
            seg.changepoints.push_back(tau);
        }
        t = tau;
    }
    std::reverse(seg.changepoints.begin(), seg.changepoints.end());
    seg.total_cost = recompute_total_cost(series, model, seg.changepoints);
    seg.penalised_objective = seg.total_cost + beta * static_cast<double>(seg.k());
    seg.means = segment_means(series, seg.changepoints);
    return seg;
}

void require_penalty(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("penalised solver: beta must be finite and >= 0");
    }
}

}  // namespace

Interval mu_domain(const TimeSeries& series, const GaussianCostModel& model) {
    const double pad = 3.0 * std::max(model.sigma(), series.sample_std());
    return Interval{series.min_value() - pad, series.max_value() + pad};
}

PenalisedFit op_solve(const TimeSeries& series, const GaussianCostModel& model, double beta,
                      const SolveOptions& options) {
    require_penalty(beta);
    Stopwatch watch;
    const std::int64_t n = series.size();
    PenalisedFit fit;
    std::vector<double> objective(static_cast<std::size_t>(n) + 1);
    std::vector<std::int64_t> last(static_cast<std::size_t>(n) + 1, 0);
    objective[0] = -beta;

    for (std::int64_t t = 1; t <= n; ++t) {
        double best = std::numeric_limits<double>::infinity();
        std::int64_t arg = -1;
        for (std::int64_t tau = 0; tau < t; ++tau) {
            const double value = objective[static_cast<std::size_t>(tau)] +
                                 model.segment_cost(series, tau, t) + beta;
            if (value < best) {
                best = value;
                arg = tau;
            }
        }
        objective[static_cast<std::size_t>(t)] = best;
        last[static_cast<std::size_t>(t)] = arg;
        if (options.tracing()) {
            fit.trace.rows.push_back(TraceRow{t, -1, t});
            fit.trace.objective_path.push_back(best);
        }
    }

    fit.segmentation = backtrace_last_changepoints(series, model, last, beta);
    fit.trace.wall_seconds = watch.seconds();
    return fit;
}

PenalisedFit pelt_solve(const TimeSeries& series, const GaussianCostModel& model, double beta,
                        double kappa, const SolveOptions& options) {
    require_penalty(beta);
    Stopwatch watch;
    const std::int64_t n = series.size();
    PenalisedFit fit;
    std::vector<double> objective(static_cast<std::size_t>(n) + 1);
    std::vector<std::int64_t> last(static_cast<std::size_t>(n) + 1, 0);
    objective[0] = -beta;

    std::vector<std::int64_t> candidates;
    std::vector<double> values;
    candidates.reserve(64);
    candidates.push_back(0);

    for (std::int64_t t = 1; t <= n; ++t) {
        if (options.tracing()) {
            fit.trace.rows.push_back(
                TraceRow{t, -1, static_cast<std::int64_t>(candidates.size())});
            if (options.capture_live_sets) {
                fit.trace.live_sets.push_back(candidates);
            }
        }
        values.resize(candidates.size());
        double best = std::numeric_limits<double>::infinity();
        std::int64_t arg = -1;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const double partial = objective[static_cast<std::size_t>(candidates[i])] +
                                   model.segment_cost(series, candidates[i], t);
            values[i] = partial;
            if (partial + beta < best) {
                best = partial + beta;
                arg = candidates[i];
            }
        }
        objective[static_cast<std::size_t>(t)] = best;
        last[static_cast<std::size_t>(t)] = arg;
        if (options.tracing()) {
            fit.trace.objective_path.push_back(best);
        }

        // Keep tau only while F(tau) + C(y_{tau+1:t}) + kappa <= F(t); the
        // newest candidate t always enters (the pruning bound concerns
        // strictly earlier positions).
        std::size_t out = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (values[i] + kappa <= best) {
                candidates[out++] = candidates[i];
            } else if (options.tracing()) {
                fit.trace.pruned_at.push_back(PruneEvent{t, -1, candidates[i]});
            }
        }
        candidates.resize(out);
        candidates.push_back(t);
    }

    fit.segmentation = backtrace_last_changepoints(series, model, last, beta);
    fit.trace.wall_seconds = watch.seconds();
    return fit;
}

PenalisedFit fpop_solve(const TimeSeries& series, const GaussianCostModel& model, double beta,
                        const SolveOptions& options) {
    require_penalty(beta);
    Stopwatch watch;
    const std::int64_t n = series.size();
    PenalisedFit fit;
    std::vector<std::int64_t> last(static_cast<std::size_t>(n) + 1, 0);

    PiecewiseState state(mu_domain(series, model), model.weight());
    state.insert_constant(0, 0.0);  // Cost^0_0(mu) = F(0) + beta = 0

    std::int64_t current_t = 0;
    if (options.tracing()) {
        state.on_prune = [&fit, &current_t](std::int64_t tau) {
            fit.trace.pruned_at.push_back(PruneEvent{current_t, -1, tau});
        };
    }

    for (std::int64_t t = 1; t <= n; ++t) {
        current_t = t;
        state.add_point(series.y(t));
        if (options.tracing()) {
            fit.trace.rows.push_back(
                TraceRow{t, -1, static_cast<std::int64_t>(state.live_count())});
            if (options.capture_live_sets) {
                fit.trace.live_sets.push_back(state.live_taus());
            }
        }
        const PieceMin at_t = state.global_min();
        last[static_cast<std::size_t>(t)] = at_t.tau;
        if (options.tracing()) {
            fit.trace.objective_path.push_back(at_t.value);
        }
        state.apply_threshold(at_t.value + beta, t);
        if (options.validate_state) {
            state.validate();
        }
    }

    fit.segmentation = backtrace_last_changepoints(series, model, last, beta);
    fit.trace.wall_seconds = watch.seconds();
    return fit;
}

}  // namespace cpd
