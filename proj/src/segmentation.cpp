#include "segmentation.hpp"

namespace cpd {

double recompute_total_cost(const TimeSeries& series, const GaussianCostModel& model,
                            const std::vector<std::int64_t>& changepoints) {
    double total = 0.0;
    std::int64_t start = 0;
    for (std::int64_t tau : changepoints) {
        total += model.segment_cost(series, start, tau);
        start = tau;
    }
    total += model.segment_cost(series, start, series.size());
    return total;
}

std::vector<double> segment_means(const TimeSeries& series,
                                  const std::vector<std::int64_t>& changepoints) {
    std::vector<double> means;
    means.reserve(changepoints.size() + 1);
    std::int64_t start = 0;
    auto push_mean = [&](std::int64_t end) {
        means.push_back(static_cast<double>(series.sum(start, end)) /
                        static_cast<double>(end - start));
        start = end;
    };
    for (std::int64_t tau : changepoints) {
        push_mean(tau);
    }
    push_mean(series.size());
    return means;
}

}  // namespace cpd
