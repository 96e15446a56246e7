#ifndef CPD_INTERVAL_SET_HPP
#define CPD_INTERVAL_SET_HPP

#include <cstddef>
#include <vector>

namespace cpd {

// Closed interval [lo, hi]. lo <= hi; a zero-width interval is a point.
struct Interval {
    double lo;
    double hi;

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Intervals shorter than this are dropped during normalization; such
// slivers are tie regions of measure zero and cannot move an argmin
// beyond tolerance.
inline constexpr double kMinIntervalLength = 1e-12;

// A finite union of disjoint closed intervals, kept sorted by lo.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(Interval iv);

    // Sorts, merges overlapping/touching intervals, drops slivers.
    static IntervalSet normalized(std::vector<Interval> raw);

    bool empty() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }
    const std::vector<Interval>& intervals() const { return intervals_; }

    bool contains(double x) const;
    double total_length() const;
    double leftmost() const;  // lo of first interval; undefined on empty set

    // In-place intersection with a single interval. Cannot grow the set.
    void clip(Interval window);

    void clear() { intervals_.clear(); }
    void swap(IntervalSet& other) { intervals_.swap(other.intervals_); }

    // Replaces the contents with intervals that are already sorted,
    // disjoint and sliver-free, reusing existing capacity.
    void assign_sorted(const Interval* data, std::size_t count) {
        intervals_.assign(data, data + count);
    }

private:
    friend IntervalSet intersect(const IntervalSet&, const IntervalSet&);
    friend IntervalSet subtract(const IntervalSet&, const IntervalSet&);

    std::vector<Interval> intervals_;
};

// Exact set intersection, normalized.
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

// Exact set difference base \ cut, normalized.
IntervalSet subtract(const IntervalSet& base, const IntervalSet& cut);

}  // namespace cpd

#endif
