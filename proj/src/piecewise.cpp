#include "piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cpd {

double QuadPiece::min_on_valid() const {
    if (valid.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a <= 0.0) {
        return c;  // constant curve, not yet fed a data point
    }
    const double v = vertex();
    double best = std::numeric_limits<double>::infinity();
    for (const Interval& iv : valid.intervals()) {
        if (iv.contains(v)) {
            return eval(v);  // convex: interior vertex is the global minimum
        }
        best = std::min(best, eval(v < iv.lo ? iv.lo : iv.hi));
    }
    return best;
}

std::optional<Interval> threshold_interval(const QuadPiece& piece, double level,
                                           Interval domain) {
    if (piece.a <= 0.0) {
        if (piece.c <= level) {
            return domain;
        }
        return std::nullopt;
    }
    const double a = piece.a;
    const double b = piece.b;
    const double c = piece.c - level;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return std::nullopt;
    }
    double r1;
    double r2;
    if (b == 0.0) {
        const double r = std::sqrt(disc) / (2.0 * a);
        r1 = -r;
        r2 = r;
    } else {
        // sign-aware root formula, avoids cancellation
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        r1 = q / a;
        r2 = c / q;
        if (r1 > r2) {
            std::swap(r1, r2);
        }
    }
    const double lo = std::max(r1, domain.lo);
    const double hi = std::min(r2, domain.hi);
    if (hi < lo) {
        return std::nullopt;
    }
    return Interval{lo, hi};
}

PiecewiseState::PiecewiseState(Interval domain, double weight)
    : domain_(domain), weight_(weight) {}

void PiecewiseState::insert_constant(std::int64_t tau, double level) {
    pieces_.push_back(QuadPiece{tau, 0.0, 0.0, level, IntervalSet(domain_)});
}

void PiecewiseState::add_point(double y) {
    if (!std::isfinite(y)) {
        throw std::invalid_argument("PiecewiseState::add_point: non-finite observation");
    }
    const double da = weight_;
    const double db = -2.0 * weight_ * y;
    const double dc = weight_ * y * y;
    for (QuadPiece& piece : pieces_) {
        piece.a += da;
        piece.b += db;
        piece.c += dc;
    }
}

PieceMin PiecewiseState::global_min() const {
    if (pieces_.empty()) {
        throw std::logic_error("PiecewiseState::global_min: empty state");
    }
    PieceMin best{std::numeric_limits<double>::infinity(), -1};
    for (const QuadPiece& piece : pieces_) {
        const double m = piece.min_on_valid();
        if (m < best.value || (m == best.value && piece.tau < best.tau)) {
            best = PieceMin{m, piece.tau};
        }
    }
    return best;
}

void PiecewiseState::apply_threshold(double level, std::int64_t new_tau) {
    cut_scratch_.clear();
    bool any_dead = false;
    bool cut_contiguous = true;
    Interval cut_union{0.0, 0.0};
    for (QuadPiece& piece : pieces_) {
        if (const auto window = threshold_interval(piece, level, domain_)) {
            if (cut_scratch_.empty()) {
                cut_union = *window;
            } else if (window->lo <= cut_union.hi && window->hi >= cut_union.lo) {
                cut_union.lo = std::min(cut_union.lo, window->lo);
                cut_union.hi = std::max(cut_union.hi, window->hi);
            } else {
                cut_contiguous = false;
            }
            cut_scratch_.push_back(*window);
            piece.valid.clip(*window);
        } else {
            piece.valid.clear();
        }
        any_dead = any_dead || piece.valid.empty();
    }

    // Drop emptied pieces, keeping one of their interval buffers around so
    // inserting the new candidate usually costs no allocation.
    if (any_dead) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            if (pieces_[i].valid.empty()) {
                recycled_.swap(pieces_[i].valid);
                if (on_prune) {
                    on_prune(pieces_[i].tau);
                }
            } else {
                if (out != i) {
                    pieces_[out] = std::move(pieces_[i]);
                }
                ++out;
            }
        }
        pieces_.resize(out);
    }

    // Set for the new candidate: domain minus the union of all sublevel
    // intervals collected above. The sublevel windows almost always merge
    // into one interval; fall back to a sort-and-sweep otherwise.
    remainder_scratch_.clear();
    if (cut_scratch_.empty()) {
        remainder_scratch_.push_back(domain_);
    } else if (cut_contiguous) {
        if (cut_union.lo - domain_.lo >= kMinIntervalLength) {
            remainder_scratch_.push_back(Interval{domain_.lo, cut_union.lo});
        }
        if (domain_.hi - cut_union.hi >= kMinIntervalLength) {
            remainder_scratch_.push_back(Interval{cut_union.hi, domain_.hi});
        }
    } else {
        std::sort(cut_scratch_.begin(), cut_scratch_.end(),
                  [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
        double lo = domain_.lo;
        for (const Interval& iv : cut_scratch_) {
            if (iv.lo - lo >= kMinIntervalLength) {
                remainder_scratch_.push_back(Interval{lo, iv.lo});
            }
            lo = std::max(lo, iv.hi);
        }
        if (domain_.hi - lo >= kMinIntervalLength) {
            remainder_scratch_.push_back(Interval{lo, domain_.hi});
        }
    }

    if (!remainder_scratch_.empty()) {
        recycled_.assign_sorted(remainder_scratch_.data(), remainder_scratch_.size());
        pieces_.push_back(QuadPiece{new_tau, 0.0, 0.0, level, std::move(recycled_)});
        recycled_.clear();
    } else if (on_prune) {
        on_prune(new_tau);
    }
}

void PiecewiseState::step(double y, double level, std::int64_t new_tau) {
    add_point(y);
    apply_threshold(level, new_tau);
}

std::vector<std::int64_t> PiecewiseState::live_taus() const {
    std::vector<std::int64_t> taus;
    taus.reserve(pieces_.size());
    for (const QuadPiece& piece : pieces_) {
        taus.push_back(piece.tau);
    }
    std::sort(taus.begin(), taus.end());
    return taus;
}

void PiecewiseState::validate(double tol_cover) const {
    std::vector<Interval> all;
    for (const QuadPiece& piece : pieces_) {
        if (piece.valid.empty()) {
            throw std::logic_error("piecewise invariant: stored piece with empty valid set, tau=" +
                                   std::to_string(piece.tau));
        }
        for (const Interval& iv : piece.valid.intervals()) {
            all.push_back(iv);
        }
    }
    std::sort(all.begin(), all.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    double covered = 0.0;
    double prev_hi = domain_.lo;
    for (const Interval& iv : all) {
        if (iv.lo < prev_hi - 1e-9) {
            std::ostringstream msg;
            msg << "piecewise invariant: overlapping valid sets near mu=" << iv.lo;
            throw std::logic_error(msg.str());
        }
        covered += iv.length();
        prev_hi = iv.hi;
    }
    if (std::abs(covered - domain_.length()) > tol_cover) {
        std::ostringstream msg;
        msg << "piecewise invariant: valid sets cover " << covered << " of domain length "
            << domain_.length();
        throw std::logic_error(msg.str());
    }
}

}  // namespace cpd
