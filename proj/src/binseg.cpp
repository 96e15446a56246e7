#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "solvers.hpp"

namespace cpd {

namespace {

// A segment (lo, hi] with its best single split precomputed. gain is the
// cost reduction from splitting at `split`; -inf for unsplittable
// segments.
struct SegmentSplit {
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t split;
    double gain;
};

struct GainOrder {
    // max-heap on gain; ties resolved toward the earlier segment so runs
    // are deterministic
    bool operator()(const SegmentSplit& a, const SegmentSplit& b) const {
        if (a.gain != b.gain) {
            return a.gain < b.gain;
        }
        return a.lo > b.lo;
    }
};

SegmentSplit best_split(const TimeSeries& series, const GaussianCostModel& model,
                        std::int64_t lo, std::int64_t hi) {
    SegmentSplit out{lo, hi, -1, -std::numeric_limits<double>::infinity()};
    if (hi - lo < 2) {
        return out;
    }
    const double whole = model.segment_cost(series, lo, hi);
    for (std::int64_t s = lo + 1; s < hi; ++s) {
        const double gain = whole - model.segment_cost(series, lo, s) -
                            model.segment_cost(series, s, hi);
        if (gain > out.gain) {
            out.gain = gain;
            out.split = s;
        }
    }
    return out;
}

}  // namespace

PenalisedFit binseg_solve(const TimeSeries& series, const GaussianCostModel& model,
                          std::int64_t kmax, double beta, const SolveOptions&) {
    if (kmax < 0) {
        throw std::invalid_argument("binseg_solve: kmax must be >= 0");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("binseg_solve: beta must be finite and >= 0");
    }
    const auto start = std::chrono::steady_clock::now();

    std::priority_queue<SegmentSplit, std::vector<SegmentSplit>, GainOrder> heap;
    heap.push(best_split(series, model, 0, series.size()));

    PenalisedFit fit;
    std::vector<std::int64_t>& cps = fit.segmentation.changepoints;
    while (static_cast<std::int64_t>(cps.size()) < kmax && !heap.empty()) {
        const SegmentSplit top = heap.top();
        if (top.gain < beta) {
            break;
        }
        heap.pop();
        cps.push_back(top.split);
        heap.push(best_split(series, model, top.lo, top.split));
        heap.push(best_split(series, model, top.split, top.hi));
    }
    std::sort(cps.begin(), cps.end());

    fit.segmentation.total_cost = recompute_total_cost(series, model, cps);
    fit.segmentation.penalised_objective =
        fit.segmentation.total_cost + beta * static_cast<double>(cps.size());
    fit.segmentation.means = segment_means(series, cps);
    fit.trace.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return fit;
}

}  // namespace cpd
