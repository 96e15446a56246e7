#include "oracle.hpp"

#include <bit>
#include <stdexcept>

namespace cpd {

namespace {

// Segment cost by direct summation over the raw values; deliberately
// avoids the cumulative statistics the solvers rely on.
double direct_segment_cost(const TimeSeries& series, const GaussianCostModel& model,
                           std::int64_t t, std::int64_t s) {
    double sum = 0.0;
    for (std::int64_t i = t + 1; i <= s; ++i) {
        sum += series.y(i);
    }
    const double mean = sum / static_cast<double>(s - t);
    double rss = 0.0;
    for (std::int64_t i = t + 1; i <= s; ++i) {
        const double d = series.y(i) - mean;
        rss += d * d;
    }
    return rss * model.weight();
}

double direct_total_cost(const TimeSeries& series, const GaussianCostModel& model,
                         const std::vector<std::int64_t>& cps) {
    double total = 0.0;
    std::int64_t start = 0;
    for (std::int64_t tau : cps) {
        total += direct_segment_cost(series, model, start, tau);
        start = tau;
    }
    return total + direct_segment_cost(series, model, start, series.size());
}

// The solvers pick the smallest admissible last changepoint on ties,
// recursively; that is exactly "compare changepoint vectors from the
// back, smaller entry wins, shorter suffix wins".
bool better_on_tie(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (*ia != *ib) {
            return *ia < *ib;
        }
    }
    return a.size() < b.size();
}

std::vector<std::int64_t> mask_to_changepoints(std::uint32_t mask) {
    std::vector<std::int64_t> cps;
    for (std::int64_t pos = 1; mask != 0; ++pos, mask >>= 1) {
        if (mask & 1u) {
            cps.push_back(pos);
        }
    }
    return cps;
}

void check_size(const TimeSeries& series, std::int64_t n_limit) {
    if (series.size() > n_limit || series.size() > 25) {
        throw std::invalid_argument("oracle: series longer than n_limit, enumeration refused");
    }
}

}  // namespace

OracleResult oracle_penalised(const TimeSeries& series, const GaussianCostModel& model,
                              double beta, std::int64_t n_limit) {
    check_size(series, n_limit);
    OracleResult out;
    bool have_best = false;
    const std::uint32_t masks = 1u << (series.size() - 1);
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        std::vector<std::int64_t> cps = mask_to_changepoints(mask);
        const double cost = direct_total_cost(series, model, cps) +
                            beta * static_cast<double>(cps.size());
        if (!have_best || cost < out.best_cost ||
            (cost == out.best_cost && better_on_tie(cps, out.best_changepoints))) {
            out.best_cost = cost;
            out.best_changepoints = std::move(cps);
            have_best = true;
        }
    }
    return out;
}

OracleResult oracle_constrained(const TimeSeries& series, const GaussianCostModel& model,
                                std::int64_t kmax, std::int64_t n_limit) {
    check_size(series, n_limit);
    if (kmax >= series.size()) {
        throw std::invalid_argument("oracle: need kmax < n");
    }
    OracleResult out;
    out.cost_per_k.resize(static_cast<std::size_t>(kmax) + 1);
    out.changepoints_per_k.resize(static_cast<std::size_t>(kmax) + 1);
    std::vector<bool> seen(static_cast<std::size_t>(kmax) + 1, false);

    const std::uint32_t masks = 1u << (series.size() - 1);
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        const std::int64_t k = std::popcount(mask);
        if (k > kmax) {
            continue;
        }
        std::vector<std::int64_t> cps = mask_to_changepoints(mask);
        const double cost = direct_total_cost(series, model, cps);
        const auto slot = static_cast<std::size_t>(k);
        if (!seen[slot] || cost < out.cost_per_k[slot] ||
            (cost == out.cost_per_k[slot] && better_on_tie(cps, out.changepoints_per_k[slot]))) {
            out.cost_per_k[slot] = cost;
            out.changepoints_per_k[slot] = std::move(cps);
            seen[slot] = true;
        }
    }
    out.best_cost = out.cost_per_k[0];
    out.best_changepoints = out.changepoints_per_k[0];
    return out;
}

}  // namespace cpd
