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

constexpr double kInf = std::numeric_limits<double>::infinity();

// Segment Neighbourhood backtracing needs C_{k,t} for all (k, t). When
// the table fits we keep it whole and recover argmins lazily, which makes
// every constrained solver reproduce the exact Segment Neighbourhood
// backtrace. Past kFullTableLimit entries we keep two rolling rows plus
// an int32 argmin-pointer table of the same shape.
constexpr std::int64_t kFullTableLimit = 10'000'000;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

class CostTable {
public:
    CostTable(std::int64_t n, std::int64_t kmax)
        : n_(n),
          kmax_(kmax),
          full_((kmax + 1) * (n + 1) <= kFullTableLimit) {
        if (full_) {
            values_.assign(static_cast<std::size_t>((kmax_ + 1) * (n_ + 1)), kInf);
        } else {
            if (n_ > std::numeric_limits<std::int32_t>::max()) {
                throw std::invalid_argument("constrained solver: series too long for rolling mode");
            }
            prev_.assign(static_cast<std::size_t>(n_ + 1), kInf);
            cur_.assign(static_cast<std::size_t>(n_ + 1), kInf);
            args_.assign(static_cast<std::size_t>(kmax_ * (n_ + 1)), -1);
        }
        final_costs_.assign(static_cast<std::size_t>(kmax_ + 1), kInf);
    }

    bool full() const { return full_; }

    // Row being written for the current k (k >= 1).
    double* current_row(std::int64_t k) {
        return full_ ? values_.data() + k * (n_ + 1) : cur_.data();
    }
    // Finished row for k - 1.
    const double* previous_row(std::int64_t k) const {
        return full_ ? values_.data() + (k - 1) * (n_ + 1) : prev_.data();
    }

    void begin_row(std::int64_t k) {
        if (!full_ && k >= 1) {
            std::fill(cur_.begin(), cur_.end(), kInf);
        }
    }
    void finish_row(std::int64_t k) {
        final_costs_[static_cast<std::size_t>(k)] =
            (full_ ? values_[static_cast<std::size_t>(k * (n_ + 1) + n_)]
                   : cur_[static_cast<std::size_t>(n_)]);
        if (!full_) {
            prev_.swap(cur_);
        }
    }

    void record_arg(std::int64_t k, std::int64_t t, std::int64_t tau) {
        if (!full_) {
            args_[static_cast<std::size_t>((k - 1) * (n_ + 1) + t)] =
                static_cast<std::int32_t>(tau);
        }
    }

    double cost_at(std::int64_t k, std::int64_t t) const {
        return values_[static_cast<std::size_t>(k * (n_ + 1) + t)];
    }

    const std::vector<double>& final_costs() const { return final_costs_; }

    // tau^k_l = tau*_l(tau^k_{l+1}): lazy argmin recovery over the full
    // table, identical for every solver that fills the same costs.
    std::vector<std::int64_t> backtrace(const TimeSeries& series, const GaussianCostModel& model,
                                        std::int64_t k) const {
        std::vector<std::int64_t> cps(static_cast<std::size_t>(k));
        std::int64_t end = n_;
        for (std::int64_t l = k; l >= 1; --l) {
            std::int64_t arg = -1;
            if (full_) {
                double best = kInf;
                for (std::int64_t tau = l; tau < end; ++tau) {
                    const double v = cost_at(l - 1, tau) + model.segment_cost(series, tau, end);
                    if (v < best) {
                        best = v;
                        arg = tau;
                    }
                }
            } else {
                arg = args_[static_cast<std::size_t>((l - 1) * (n_ + 1) + end)];
            }
            if (arg < 0) {
                throw std::logic_error("constrained backtrace: no admissible changepoint");
            }
            cps[static_cast<std::size_t>(l - 1)] = arg;
            end = arg;
        }
        return cps;
    }

private:
    std::int64_t n_;
    std::int64_t kmax_;
    bool full_;
    std::vector<double> values_;
    std::vector<double> prev_;
    std::vector<double> cur_;
    std::vector<std::int32_t> args_;
    std::vector<double> final_costs_;
};

void fill_row0(CostTable& table, const TimeSeries& series, const GaussianCostModel& model) {
    table.begin_row(0);
    double* row = table.current_row(0);
    row[0] = 0.0;
    for (std::int64_t t = 1; t <= series.size(); ++t) {
        row[t] = model.segment_cost(series, 0, t);
    }
    table.finish_row(0);
}

std::int64_t validate_kmax(const TimeSeries& series, std::int64_t kmax) {
    if (kmax < 0 || kmax >= series.size()) {
        throw std::invalid_argument("constrained solver: need 0 <= kmax < n");
    }
    return kmax;
}

ConstrainedFit assemble(const TimeSeries& series, const GaussianCostModel& model,
                        const CostTable& table, std::int64_t kmax, RunTrace trace) {
    ConstrainedFit fit;
    fit.result.kmax = kmax;
    fit.result.costs = table.final_costs();
    fit.result.segmentations.resize(static_cast<std::size_t>(kmax) + 1);
    for (std::int64_t k = 0; k <= kmax; ++k) {
        Segmentation& seg = fit.result.segmentations[static_cast<std::size_t>(k)];
        seg.changepoints = table.backtrace(series, model, k);
        seg.total_cost = recompute_total_cost(series, model, seg.changepoints);
        seg.means = segment_means(series, seg.changepoints);
    }
    fit.trace = std::move(trace);
    return fit;
}

}  // namespace

ConstrainedFit sns_solve(const TimeSeries& series, const GaussianCostModel& model,
                         std::int64_t kmax, const SolveOptions& options) {
    validate_kmax(series, kmax);
    Stopwatch watch;
    const std::int64_t n = series.size();
    CostTable table(n, kmax);
    RunTrace trace;
    fill_row0(table, series, model);

    for (std::int64_t k = 1; k <= kmax; ++k) {
        table.begin_row(k);
        const double* prev = table.previous_row(k);
        double* cur = table.current_row(k);
        for (std::int64_t t = k + 1; t <= n; ++t) {
            double best = kInf;
            std::int64_t arg = -1;
            for (std::int64_t tau = k; tau < t; ++tau) {
                const double v = prev[tau] + model.segment_cost(series, tau, t);
                if (v < best) {
                    best = v;
                    arg = tau;
                }
            }
            cur[t] = best;
            table.record_arg(k, t, arg);
            if (options.tracing()) {
                trace.rows.push_back(TraceRow{t, k, t - k});
            }
        }
        table.finish_row(k);
    }

    trace.wall_seconds = watch.seconds();
    return assemble(series, model, table, kmax, std::move(trace));
}

ConstrainedFit snip_solve(const TimeSeries& series, const GaussianCostModel& model,
                          std::int64_t kmax, double kappa, const SolveOptions& options) {
    validate_kmax(series, kmax);
    Stopwatch watch;
    const std::int64_t n = series.size();
    CostTable table(n, kmax);
    RunTrace trace;
    fill_row0(table, series, model);

    std::vector<std::int64_t> candidates;
    std::vector<double> values;
    for (std::int64_t k = 1; k <= kmax; ++k) {
        table.begin_row(k);
        const double* prev = table.previous_row(k);
        double* cur = table.current_row(k);
        candidates.assign(1, k);  // R_{k,k+1} = {k}
        for (std::int64_t t = k + 1; t <= n; ++t) {
            if (options.tracing()) {
                trace.rows.push_back(
                    TraceRow{t, k, static_cast<std::int64_t>(candidates.size())});
                if (options.capture_live_sets) {
                    trace.live_sets.push_back(candidates);
                }
            }
            values.resize(candidates.size());
            double best = kInf;
            std::int64_t arg = -1;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                const double v = prev[candidates[i]] +
                                 model.segment_cost(series, candidates[i], t);
                values[i] = v;
                if (v < best) {
                    best = v;
                    arg = candidates[i];
                }
            }
            cur[t] = best;
            table.record_arg(k, t, arg);

            // Keep v only while C_{k-1,v} + C(y_{v+1:t}) + kappa < C_{k-1,t};
            // the newest candidate t always enters (the pruning bound
            // concerns strictly earlier positions).
            std::size_t out = 0;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (values[i] + kappa < prev[t]) {
                    candidates[out++] = candidates[i];
                } else if (options.tracing()) {
                    trace.pruned_at.push_back(PruneEvent{t, k, candidates[i]});
                }
            }
            candidates.resize(out);
            candidates.push_back(t);
        }
        table.finish_row(k);
    }

    trace.wall_seconds = watch.seconds();
    return assemble(series, model, table, kmax, std::move(trace));
}

ConstrainedFit pdpa_solve(const TimeSeries& series, const GaussianCostModel& model,
                          std::int64_t kmax, const SolveOptions& options) {
    validate_kmax(series, kmax);
    Stopwatch watch;
    const std::int64_t n = series.size();
    CostTable table(n, kmax);
    RunTrace trace;
    fill_row0(table, series, model);

    const Interval domain = mu_domain(series, model);
    std::int64_t current_t = 0;
    std::int64_t current_k = 0;
    for (std::int64_t k = 1; k <= kmax; ++k) {
        current_k = k;
        table.begin_row(k);
        const double* prev = table.previous_row(k);
        double* cur = table.current_row(k);

        PiecewiseState state(domain, model.weight());
        if (options.tracing()) {
            state.on_prune = [&trace, &current_t, &current_k](std::int64_t tau) {
                trace.pruned_at.push_back(PruneEvent{current_t, current_k, tau});
            };
        }
        state.insert_constant(k, prev[k]);  // Cost^k_{k,k}(mu) = C_{k-1,k}

        for (std::int64_t t = k + 1; t <= n; ++t) {
            current_t = t;
            state.add_point(series.y(t));
            if (options.tracing()) {
                trace.rows.push_back(
                    TraceRow{t, k, static_cast<std::int64_t>(state.live_count())});
                if (options.capture_live_sets) {
                    trace.live_sets.push_back(state.live_taus());
                }
            }
            const PieceMin at_t = state.global_min();
            cur[t] = at_t.value;
            table.record_arg(k, t, at_t.tau);
            state.apply_threshold(prev[t], t);
            if (options.validate_state) {
                state.validate();
            }
        }
        table.finish_row(k);
    }

    trace.wall_seconds = watch.seconds();
    return assemble(series, model, table, kmax, std::move(trace));
}

ConsistencyOutcome penalised_constrained_consistency(const TimeSeries& series,
                                                     const GaussianCostModel& model, double beta,
                                                     std::int64_t kmax) {
    const ConstrainedFit constrained = sns_solve(series, model, kmax);
    const PenalisedFit penalised = fpop_solve(series, model, beta);

    double best = kInf;
    std::int64_t best_k = 0;
    for (std::int64_t k = 0; k <= kmax; ++k) {
        const double v = constrained.result.costs[static_cast<std::size_t>(k)] +
                         beta * static_cast<double>(k);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    if (best_k == kmax && kmax < series.size() - 1) {
        // the constrained path may keep improving past kmax
        return ConsistencyOutcome::kInconclusive;
    }
    const double reference = penalised.segmentation.penalised_objective;
    const double scale = std::max({1.0, std::abs(best), std::abs(reference)});
    return std::abs(best - reference) <= 1e-9 * scale ? ConsistencyOutcome::kConsistent
                                                      : ConsistencyOutcome::kInconsistent;
}

}  // namespace cpd
