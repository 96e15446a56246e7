#ifndef CPD_TIME_SERIES_HPP
#define CPD_TIME_SERIES_HPP

#include <cfloat>
#include <cstdint>
#include <vector>

namespace cpd {

// Accumulator for cumulative sums. 80-bit extended precision where the
// hardware has it; plain double elsewhere (quad emulation is too slow).
#if LDBL_MANT_DIG == 64
using accum_t = long double;
#else
using accum_t = double;
#endif

// Ordered observations y_1..y_n with precomputed cumulative sums of y and
// y^2, so any interval sum is an O(1) query. Immutable after construction;
// safe to share across concurrent solver runs.
class TimeSeries {
public:
    // Throws std::invalid_argument on empty input or non-finite values.
    explicit TimeSeries(std::vector<double> values);

    std::int64_t size() const { return n_; }

    // 1-based access, matching the segment index convention used throughout.
    double y(std::int64_t t) const { return values_[static_cast<std::size_t>(t - 1)]; }

    const std::vector<double>& values() const { return values_; }

    // Sum of y_i (resp. y_i^2) over i in (t, s], 0 <= t <= s <= n.
    accum_t sum(std::int64_t t, std::int64_t s) const {
        return cum_sum_[static_cast<std::size_t>(s)] - cum_sum_[static_cast<std::size_t>(t)];
    }
    accum_t sum_sq(std::int64_t t, std::int64_t s) const {
        return cum_sumsq_[static_cast<std::size_t>(s)] - cum_sumsq_[static_cast<std::size_t>(t)];
    }

    double min_value() const { return min_value_; }
    double max_value() const { return max_value_; }

    // Sample standard deviation over the whole series; 0 for n == 1.
    double sample_std() const;

private:
    std::int64_t n_;
    std::vector<double> values_;
    std::vector<accum_t> cum_sum_;
    std::vector<accum_t> cum_sumsq_;
    double min_value_;
    double max_value_;
};

}  // namespace cpd

#endif
