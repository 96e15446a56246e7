// Acceptance suite: end-to-end checks of every solver against the
// exhaustive oracle, the cross-solver equivalences, the pruning-dominance
// guarantee, the candidate-count profile, and the scaling benchmark.
// Prints one PASS/FAIL line per criterion; exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "model.hpp"
#include "oracle.hpp"
#include "solvers.hpp"
#include "time_series.hpp"

using cpd::GaussianCostModel;
using cpd::SolveOptions;
using cpd::TimeSeries;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool rel_close(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Piecewise-constant mean signal: n_changes boundaries, means alternating
// 0 and jump, unit-variance Gaussian noise.
std::vector<double> make_signal(std::mt19937_64& rng, std::int64_t n,
                                const std::vector<std::int64_t>& breaks, double jump) {
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(n));
    std::size_t seg = 0;
    for (std::int64_t t = 1; t <= n; ++t) {
        while (seg < breaks.size() && t > breaks[seg]) {
            ++seg;
        }
        values[static_cast<std::size_t>(t - 1)] = (seg % 2 == 1 ? jump : 0.0) + noise(rng);
    }
    return values;
}

std::vector<std::int64_t> equal_breaks(std::int64_t n, std::int64_t n_changes) {
    std::vector<std::int64_t> breaks;
    for (std::int64_t j = 1; j <= n_changes; ++j) {
        breaks.push_back(j * n / (n_changes + 1));
    }
    return breaks;
}

std::vector<std::int64_t> random_breaks(std::mt19937_64& rng, std::int64_t n,
                                        std::int64_t n_changes) {
    std::set<std::int64_t> chosen;
    std::uniform_int_distribution<std::int64_t> pos(1, n - 1);
    while (static_cast<std::int64_t>(chosen.size()) < n_changes) {
        chosen.insert(pos(rng));
    }
    return {chosen.begin(), chosen.end()};
}

bool subset_of(const std::vector<std::int64_t>& small, const std::vector<std::int64_t>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// 1. Penalised solvers equal the exhaustive oracle on small series.
Outcome criterion1() {
    Outcome out;
    Timer timer;
    std::mt19937_64 rng(0xC1);
    for (int rep = 0; rep < 200 && out.pass; ++rep) {
        const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 16)(rng);
        const TimeSeries series(make_signal(rng, n, {}, 0.0));
        const GaussianCostModel model;
        const double beta = std::uniform_real_distribution<double>(
            0.1, 3.0 * std::log(static_cast<double>(n)))(rng);
        const auto oracle = cpd::oracle_penalised(series, model, beta);
        const struct {
            const char* name;
            cpd::PenalisedFit fit;
        } fits[] = {{"op", cpd::op_solve(series, model, beta)},
                    {"pelt", cpd::pelt_solve(series, model, beta)},
                    {"fpop", cpd::fpop_solve(series, model, beta)}};
        for (const auto& [name, fit] : fits) {
            if (!rel_close(fit.segmentation.penalised_objective, oracle.best_cost)) {
                out.fail(std::string(name) + " objective off oracle at rep " +
                         std::to_string(rep));
            }
            if (fit.segmentation.changepoints != oracle.best_changepoints) {
                out.fail(std::string(name) + " changepoints differ from oracle at rep " +
                         std::to_string(rep));
            }
        }
    }
    if (timer.seconds() >= 60.0) {
        out.fail("exceeded the 60 s budget");
    }
    return out;
}

// 2. Constrained solvers equal the per-k oracle on small series.
Outcome criterion2() {
    Outcome out;
    Timer timer;
    std::mt19937_64 rng(0xC2);
    for (int rep = 0; rep < 100 && out.pass; ++rep) {
        const std::int64_t n = std::uniform_int_distribution<std::int64_t>(4, 16)(rng);
        const std::int64_t kmax = std::uniform_int_distribution<std::int64_t>(
            1, std::min<std::int64_t>(4, n - 1))(rng);
        const std::int64_t n_changes = rep % 3;
        const TimeSeries series(
            make_signal(rng, n, random_breaks(rng, n, std::min(n_changes, n - 1)), 3.0));
        const GaussianCostModel model;
        const auto oracle = cpd::oracle_constrained(series, model, kmax);
        const struct {
            const char* name;
            cpd::ConstrainedFit fit;
        } fits[] = {{"sns", cpd::sns_solve(series, model, kmax)},
                    {"snip", cpd::snip_solve(series, model, kmax)},
                    {"pdpa", cpd::pdpa_solve(series, model, kmax)}};
        for (const auto& [name, fit] : fits) {
            for (std::int64_t k = 0; k <= kmax; ++k) {
                if (!rel_close(fit.result.costs[static_cast<std::size_t>(k)],
                               oracle.cost_per_k[static_cast<std::size_t>(k)])) {
                    out.fail(std::string(name) + " C_{" + std::to_string(k) +
                             ",n} off oracle at rep " + std::to_string(rep));
                }
            }
        }
    }
    if (timer.seconds() >= 60.0) {
        out.fail("exceeded the 60 s budget");
    }
    return out;
}

// 3. Solver equivalences at n = 500.
Outcome criterion3() {
    Outcome out;
    Timer timer;
    std::mt19937_64 rng(0xC3);
    const std::int64_t kmax = 5;
    for (int rep = 0; rep < 50 && out.pass; ++rep) {
        const std::int64_t n = 500;
        const TimeSeries series(make_signal(rng, n, random_breaks(rng, n, rep % 6), 4.0));
        const GaussianCostModel model;
        const double beta = cpd::default_penalty(series, model);

        const auto op = cpd::op_solve(series, model, beta);
        const auto pelt = cpd::pelt_solve(series, model, beta);
        const auto fpop = cpd::fpop_solve(series, model, beta);
        if (pelt.segmentation.changepoints != op.segmentation.changepoints ||
            fpop.segmentation.changepoints != op.segmentation.changepoints) {
            out.fail("penalised changepoint sets diverge at rep " + std::to_string(rep));
        }

        const auto sns = cpd::sns_solve(series, model, kmax);
        const auto snip = cpd::snip_solve(series, model, kmax);
        const auto pdpa = cpd::pdpa_solve(series, model, kmax);
        for (std::int64_t k = 0; k <= kmax; ++k) {
            const auto slot = static_cast<std::size_t>(k);
            if (!rel_close(snip.result.costs[slot], sns.result.costs[slot]) ||
                !rel_close(pdpa.result.costs[slot], sns.result.costs[slot])) {
                out.fail("constrained costs diverge at rep " + std::to_string(rep));
            }
        }
    }
    if (timer.seconds() >= 120.0) {
        out.fail("exceeded the 2 min budget");
    }
    return out;
}

// 4. Functional pruning dominates inequality pruning, always.
Outcome criterion4() {
    Outcome out;
    std::mt19937_64 rng(0xC4);
    const std::int64_t kmax = 5;
    const SolveOptions traced{.collect_trace = true, .capture_live_sets = true};
    for (int rep = 0; rep < 100 && out.pass; ++rep) {
        const std::int64_t n = 200;
        const TimeSeries series(make_signal(rng, n, random_breaks(rng, n, rep % 5), 4.0));
        const GaussianCostModel model;
        const double beta = cpd::default_penalty(series, model);

        const auto pelt = cpd::pelt_solve(series, model, beta, 0.0, traced);
        const auto fpop = cpd::fpop_solve(series, model, beta, traced);
        for (std::size_t i = 0; i < fpop.trace.live_sets.size(); ++i) {
            if (!subset_of(fpop.trace.live_sets[i], pelt.trace.live_sets[i])) {
                out.fail("fpop keeps a candidate pelt pruned, rep " + std::to_string(rep) +
                         " t " + std::to_string(fpop.trace.rows[i].t));
            }
        }

        const auto snip = cpd::snip_solve(series, model, kmax, 0.0, traced);
        const auto pdpa = cpd::pdpa_solve(series, model, kmax, traced);
        for (std::size_t i = 0; i < pdpa.trace.live_sets.size(); ++i) {
            if (!subset_of(pdpa.trace.live_sets[i], snip.trace.live_sets[i])) {
                out.fail("pdpa keeps a candidate snip pruned, rep " + std::to_string(rep) +
                         " k " + std::to_string(pdpa.trace.rows[i].k) + " t " +
                         std::to_string(pdpa.trace.rows[i].t));
            }
        }
    }
    return out;
}

// 5. The constrained cost path reproduces the penalised optimum.
Outcome criterion5() {
    Outcome out;
    std::mt19937_64 rng(0xC5);
    for (int rep = 0; rep < 100 && out.pass; ++rep) {
        const std::int64_t n = 100;
        const std::int64_t kmax = 10;
        const TimeSeries series(make_signal(rng, n, random_breaks(rng, n, rep % 5), 4.0));
        const GaussianCostModel model;
        const double beta = cpd::default_penalty(series, model);

        const auto sns = cpd::sns_solve(series, model, kmax);
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t k = 0; k <= kmax; ++k) {
            best = std::min(best, sns.result.costs[static_cast<std::size_t>(k)] +
                                      beta * static_cast<double>(k));
        }
        const auto fpop = cpd::fpop_solve(series, model, beta);
        if (!rel_close(best, fpop.segmentation.penalised_objective)) {
            out.fail("min_k C_k + beta*k != F(n) at rep " + std::to_string(rep));
        }
    }
    return out;
}

// 6. Candidate-count profile: functional pruning keeps the set small,
// inequality pruning ramps until the first change.
Outcome criterion6() {
    Outcome out;
    Timer timer;
    std::mt19937_64 rng(0xC6);
    const std::int64_t n = 100;
    const std::vector<std::int64_t> breaks = {20, 40, 60, 80};
    std::vector<double> pelt_mean(static_cast<std::size_t>(n), 0.0);
    std::vector<double> fpop_mean(static_cast<std::size_t>(n), 0.0);
    const int reps = 1000;
    const SolveOptions traced{.collect_trace = true};
    for (int rep = 0; rep < reps; ++rep) {
        const TimeSeries series(make_signal(rng, n, breaks, 5.0));
        const GaussianCostModel model;
        const double beta = cpd::default_penalty(series, model);
        const auto pelt = cpd::pelt_solve(series, model, beta, 0.0, traced);
        const auto fpop = cpd::fpop_solve(series, model, beta, traced);
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            pelt_mean[i] += static_cast<double>(pelt.trace.rows[i].count) / reps;
            fpop_mean[i] += static_cast<double>(fpop.trace.rows[i].count) / reps;
        }
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        if (fpop_mean[i] > pelt_mean[i] + 1e-12) {
            out.fail("mean fpop count exceeds pelt at t=" + std::to_string(i + 1));
        }
    }
    const double pelt_at_19 = pelt_mean[18];
    const double fpop_at_19 = fpop_mean[18];
    if (!(pelt_at_19 > 15.0)) {
        out.fail("mean pelt count at t=19 is " + std::to_string(pelt_at_19) +
                 ", expected > 15");
    }
    if (!(fpop_at_19 < 15.0)) {
        out.fail("mean fpop count at t=19 is " + std::to_string(fpop_at_19) +
                 ", expected < 15");
    }
    if (out.pass) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "pelt %.1f vs fpop %.1f candidates at t=19",
                      pelt_at_19, fpop_at_19);
        out.detail = buf;
    }
    if (timer.seconds() >= 300.0) {
        out.fail("exceeded the 5 min budget");
    }
    return out;
}

// 7. Scaling benchmark at n = 2e5: fpop under 10 s per cell, never slower
// than pelt, and robust to the number of changes.
Outcome criterion7() {
    Outcome out;
    std::mt19937_64 rng(0xC7);
    const std::int64_t n = 200000;
    double fpop_min = std::numeric_limits<double>::infinity();
    double fpop_max = 0.0;
    std::string cells;
    for (std::int64_t changes : {10, 100, 1000, 5000}) {
        const TimeSeries series(make_signal(rng, n, equal_breaks(n, changes), 5.0));
        const GaussianCostModel model;
        const double beta = cpd::default_penalty(series, model);
        const auto fpop = cpd::fpop_solve(series, model, beta);
        const auto pelt = cpd::pelt_solve(series, model, beta);
        const double fpop_s = fpop.trace.wall_seconds;
        const double pelt_s = pelt.trace.wall_seconds;
        char buf[96];
        std::snprintf(buf, sizeof(buf), " [%lld: fpop %.2fs pelt %.2fs]",
                      static_cast<long long>(changes), fpop_s, pelt_s);
        cells += buf;
        if (fpop_s >= 10.0) {
            out.fail("fpop took " + std::to_string(fpop_s) + " s at changes=" +
                     std::to_string(changes));
        }
        if (fpop_s > pelt_s) {
            out.fail("fpop slower than pelt at changes=" + std::to_string(changes));
        }
        fpop_min = std::min(fpop_min, fpop_s);
        fpop_max = std::max(fpop_max, fpop_s);
    }
    if (fpop_max / fpop_min >= 10.0) {
        out.fail("fpop wall-time ratio across cells is " +
                 std::to_string(fpop_max / fpop_min));
    }
    if (out.pass) {
        out.detail = cells.substr(1);
    }
    return out;
}

// 8. Greedy binary segmentation never beats the exact optimum.
Outcome criterion8() {
    Outcome out;
    std::mt19937_64 rng(0xC8);
    for (int rep = 0; rep < 100 && out.pass; ++rep) {
        const std::int64_t n = 50 + (rep % 8) * 50;
        const TimeSeries series(make_signal(rng, n, random_breaks(rng, n, rep % 7), 3.5));
        const GaussianCostModel model;
        const double beta = cpd::default_penalty(series, model);
        const auto greedy = cpd::binseg_solve(series, model, n - 1, beta);
        const auto exact = cpd::fpop_solve(series, model, beta);
        const double slack =
            1e-9 * std::max(1.0, std::abs(exact.segmentation.penalised_objective));
        if (greedy.segmentation.penalised_objective <
            exact.segmentation.penalised_objective - slack) {
            out.fail("binseg beat the exact optimum at rep " + std::to_string(rep));
        }
    }
    return out;
}

// 9. Piecewise integrity at n = 1000: the valid sets partition the domain
// after every step and the functional minimum tracks the direct
// recursion.
Outcome criterion9() {
    Outcome out;
    std::mt19937_64 rng(0xC9);
    const SolveOptions checked{.collect_trace = true, .validate_state = true};
    for (int rep = 0; rep < 50 && out.pass; ++rep) {
        const std::int64_t n = 1000;
        const TimeSeries series(make_signal(rng, n, random_breaks(rng, n, rep % 8), 4.0));
        const GaussianCostModel model;
        const double beta = cpd::default_penalty(series, model);
        const auto op = cpd::op_solve(series, model, beta, SolveOptions{.collect_trace = true});
        try {
            const auto fpop = cpd::fpop_solve(series, model, beta, checked);
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
                if (!rel_close(fpop.trace.objective_path[i], op.trace.objective_path[i])) {
                    out.fail("functional minimum off the direct recursion at rep " +
                             std::to_string(rep) + " t " + std::to_string(i + 1));
                    break;
                }
            }
        } catch (const std::logic_error& e) {
            out.fail(std::string("partition invariant violated: ") + e.what());
        }
    }
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        Outcome (*run)();
    };
    const Entry entries[] = {
        {1, "oracle exactness (op/pelt/fpop vs exhaustive search)", criterion1},
        {2, "constrained exactness (sns/snip/pdpa vs exhaustive search)", criterion2},
        {3, "solver equivalences at n=500", criterion3},
        {4, "functional pruning dominates inequality pruning", criterion4},
        {5, "constrained path reproduces the penalised optimum", criterion5},
        {6, "candidate-count profile over 1000 replicates", criterion6},
        {7, "scaling benchmark at n=200000", criterion7},
        {8, "binseg objective bounded below by the exact optimum", criterion8},
        {9, "piecewise partition integrity at n=1000", criterion9},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        Timer timer;
        const Outcome outcome = entry.run();
        const double seconds = timer.seconds();
        std::printf("%s  criterion %d: %s  [%.1fs]%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    entry.id, entry.label, seconds, outcome.detail.empty() ? "" : "  -- ",
                    outcome.detail.c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    if (failures > 0) {
        std::printf("%d of 9 criteria failed\n", failures);
    } else {
        std::printf("all 9 criteria passed\n");
    }
    return failures;
}
