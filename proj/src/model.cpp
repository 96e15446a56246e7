#include "model.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace cpd {

GaussianCostModel::GaussianCostModel(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("GaussianCostModel: sigma must be positive and finite");
    }
    weight_ = 1.0 / (2.0 * sigma * sigma);
}

double GaussianCostModel::segment_cost(const TimeSeries& series, std::int64_t t,
                                       std::int64_t s) const {
    if (t < 0 || s > series.size() || t >= s) {
        throw std::invalid_argument("segment_cost: need 0 <= t < s <= n");
    }
    const accum_t seg_sum = series.sum(t, s);
    const accum_t seg_sumsq = series.sum_sq(t, s);
    const accum_t len = static_cast<accum_t>(s - t);
    const accum_t rss = seg_sumsq - seg_sum * seg_sum / len;
    const double cost = static_cast<double>(rss) * weight_;
    assert(cost >= -1e-9);
    return cost > 0.0 ? cost : 0.0;
}

double GaussianCostModel::pointwise_cost(double y, double mu) const {
    const double d = y - mu;
    return d * d * weight_;
}

double default_penalty(const TimeSeries& series, const GaussianCostModel& model) {
    if (series.size() < 2) {
        throw std::invalid_argument("default_penalty: need n >= 2");
    }
    return 2.0 * model.sigma() * model.sigma() * std::log(static_cast<double>(series.size()));
}

}  // namespace cpd
