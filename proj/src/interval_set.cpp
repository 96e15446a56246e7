#include "interval_set.hpp"

#include <algorithm>

namespace cpd {

IntervalSet::IntervalSet(Interval iv) {
    if (iv.hi - iv.lo >= kMinIntervalLength) {
        intervals_.push_back(iv);
    }
}

IntervalSet IntervalSet::normalized(std::vector<Interval> raw) {
    IntervalSet out;
    std::erase_if(raw, [](const Interval& iv) { return iv.hi < iv.lo; });
    if (raw.empty()) {
        return out;
    }
    std::sort(raw.begin(), raw.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    out.intervals_.push_back(raw.front());
    for (std::size_t i = 1; i < raw.size(); ++i) {
        Interval& last = out.intervals_.back();
        if (raw[i].lo <= last.hi) {
            last.hi = std::max(last.hi, raw[i].hi);
        } else {
            out.intervals_.push_back(raw[i]);
        }
    }
    std::erase_if(out.intervals_,
                  [](const Interval& iv) { return iv.length() < kMinIntervalLength; });
    return out;
}

bool IntervalSet::contains(double x) const {
    for (const Interval& iv : intervals_) {
        if (x < iv.lo) {
            return false;
        }
        if (x <= iv.hi) {
            return true;
        }
    }
    return false;
}

double IntervalSet::total_length() const {
    double len = 0.0;
    for (const Interval& iv : intervals_) {
        len += iv.length();
    }
    return len;
}

double IntervalSet::leftmost() const {
    return intervals_.front().lo;
}

void IntervalSet::clip(Interval window) {
    std::size_t out = 0;
    for (const Interval& iv : intervals_) {
        const double lo = std::max(iv.lo, window.lo);
        const double hi = std::min(iv.hi, window.hi);
        if (hi - lo >= kMinIntervalLength) {
            intervals_[out++] = Interval{lo, hi};
        }
    }
    intervals_.resize(out);
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.intervals_.size() && j < b.intervals_.size()) {
        const Interval& x = a.intervals_[i];
        const Interval& y = b.intervals_[j];
        const double lo = std::max(x.lo, y.lo);
        const double hi = std::min(x.hi, y.hi);
        if (hi - lo >= kMinIntervalLength) {
            out.intervals_.push_back(Interval{lo, hi});
        }
        if (x.hi < y.hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

IntervalSet subtract(const IntervalSet& base, const IntervalSet& cut) {
    IntervalSet out;
    std::size_t j = 0;
    for (const Interval& iv : base.intervals_) {
        double lo = iv.lo;
        while (j < cut.intervals_.size() && cut.intervals_[j].hi < lo) {
            ++j;
        }
        std::size_t k = j;
        while (k < cut.intervals_.size() && cut.intervals_[k].lo <= iv.hi) {
            if (cut.intervals_[k].lo - lo >= kMinIntervalLength) {
                out.intervals_.push_back(Interval{lo, cut.intervals_[k].lo});
            }
            lo = std::max(lo, cut.intervals_[k].hi);
            ++k;
        }
        if (iv.hi - lo >= kMinIntervalLength) {
            out.intervals_.push_back(Interval{lo, iv.hi});
        }
    }
    return out;
}

}  // namespace cpd
