#ifndef CPD_PIECEWISE_HPP
#define CPD_PIECEWISE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "interval_set.hpp"

namespace cpd {

// One candidate's cost-in-mu curve: a*mu^2 + b*mu + c, valid on the mu
// region where this candidate currently attains the running minimum.
// a == 0 only for a freshly inserted candidate that has not yet absorbed
// a data point (its curve is the constant c).
struct QuadPiece {
    std::int64_t tau;  // last-changepoint label
    double a;
    double b;
    double c;
    IntervalSet valid;

    double eval(double mu) const { return (a * mu + b) * mu + c; }

    // Location of the unconstrained minimum; only meaningful for a > 0.
    double vertex() const { return -b / (2.0 * a); }

    // Minimum of the quadratic over this piece's valid set.
    double min_on_valid() const;
};

struct PieceMin {
    double value;
    std::int64_t tau;
};

// {mu : quad(mu) <= level} clipped to the domain: a single interval from
// the quadratic roots (possibly a zero-width point), or nullopt when the
// level lies below the curve's minimum.
std::optional<Interval> threshold_interval(const QuadPiece& piece, double level,
                                           Interval domain);

// The working set of candidate curves representing Cost*(mu) at the
// current time: pieces' valid sets partition the domain. Single-owner
// mutable; one instance per solver run.
class PiecewiseState {
public:
    // weight = 1/(2*sigma^2).
    PiecewiseState(Interval domain, double weight);

    Interval domain() const { return domain_; }
    bool empty() const { return pieces_.empty(); }
    std::size_t live_count() const { return pieces_.size(); }
    const std::vector<QuadPiece>& pieces() const { return pieces_; }

    // Seed a constant candidate curve valid on the whole domain.
    void insert_constant(std::int64_t tau, double level);

    // Absorb observation y into every live curve:
    // a += w, b += -2*w*y, c += w*y^2. Valid sets unchanged.
    void add_point(double y);

    // Minimum over pieces of the quadratic restricted to its valid set;
    // ties go to the smallest tau. Throws std::logic_error on empty state.
    PieceMin global_min() const;

    // The pruning half of a time step: intersect every piece's valid set
    // with its sublevel interval {quad <= level}, drop emptied pieces,
    // and insert the new candidate (tau = new_tau, constant = level) on
    // the uncovered remainder of the domain.
    void apply_threshold(double level, std::int64_t new_tau);

    // add_point followed by apply_threshold; level must be the pruning
    // level for the state *after* the point is absorbed.
    void step(double y, double level, std::int64_t new_tau);

    // Sorted live candidate labels.
    std::vector<std::int64_t> live_taus() const;

    // Checks the partition invariants: pairwise-disjoint valid sets whose
    // lengths sum to the domain length (within tol_cover), no empty
    // pieces. Throws std::logic_error with a dump on violation.
    void validate(double tol_cover = 1e-6) const;

    // Invoked as (tau) whenever a candidate's valid set empties.
    std::function<void(std::int64_t)> on_prune;

private:
    Interval domain_;
    double weight_;
    std::vector<QuadPiece> pieces_;
    std::vector<Interval> cut_scratch_;
    std::vector<Interval> remainder_scratch_;
    IntervalSet recycled_;  // storage handed from a pruned piece to the next insert
};

}  // namespace cpd

#endif
