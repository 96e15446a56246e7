#include "time_series.hpp"

#include <cmath>
#include <stdexcept>

namespace cpd {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("TimeSeries: need at least one observation");
    }
    n_ = static_cast<std::int64_t>(values_.size());
    cum_sum_.resize(values_.size() + 1);
    cum_sumsq_.resize(values_.size() + 1);
    cum_sum_[0] = 0;
    cum_sumsq_[0] = 0;
    min_value_ = values_[0];
    max_value_ = values_[0];
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!std::isfinite(v)) {
            throw std::invalid_argument("TimeSeries: non-finite value at position " +
                                        std::to_string(i + 1));
        }
        cum_sum_[i + 1] = cum_sum_[i] + static_cast<accum_t>(v);
        cum_sumsq_[i + 1] = cum_sumsq_[i] + static_cast<accum_t>(v) * static_cast<accum_t>(v);
        min_value_ = std::min(min_value_, v);
        max_value_ = std::max(max_value_, v);
    }
}

double TimeSeries::sample_std() const {
    if (n_ < 2) {
        return 0.0;
    }
    const accum_t mean = sum(0, n_) / static_cast<accum_t>(n_);
    const accum_t ss = sum_sq(0, n_) - static_cast<accum_t>(n_) * mean * mean;
    const accum_t var = ss > 0 ? ss / static_cast<accum_t>(n_ - 1) : 0;
    return static_cast<double>(std::sqrt(static_cast<double>(var)));
}

}  // namespace cpd
