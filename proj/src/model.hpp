#ifndef CPD_MODEL_HPP
#define CPD_MODEL_HPP

#include <cstdint>

#include "time_series.hpp"

namespace cpd {

// Gaussian change-in-mean cost with known noise sd sigma. The cost of a
// segment is the residual sum of squares about the segment mean, divided
// by 2*sigma^2; the term linear in segment length is dropped since it
// cannot affect the optimal segmentation.
class GaussianCostModel {
public:
    explicit GaussianCostModel(double sigma = 1.0);

    double sigma() const { return sigma_; }

    // 1/(2*sigma^2): the weight every pointwise cost carries.
    double weight() const { return weight_; }

    // Cost of the segment y_{t+1..s}, 0 <= t < s <= n. O(1) from the
    // cumulative statistics; negatives from rounding are clamped to 0.
    double segment_cost(const TimeSeries& series, std::int64_t t, std::int64_t s) const;

    // gamma(y, mu) = (y - mu)^2 / (2*sigma^2).
    double pointwise_cost(double y, double mu) const;

private:
    double sigma_;
    double weight_;
};

// Default penalty 2*sigma^2*log(n); callers may override with any beta > 0.
double default_penalty(const TimeSeries& series, const GaussianCostModel& model);

}  // namespace cpd

#endif
