#include "sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace cpd::cli {

namespace {

// uniform in (0, 1], 53-bit
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double next_gaussian(std::mt19937_64& rng) {
    const double u1 = next_uniform(rng);
    const double u2 = next_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::int64_t> draw_changepoints(const SimSpec& spec, std::mt19937_64& rng) {
    std::vector<std::int64_t> cps;
    if (spec.n_changes <= 0) {
        return cps;
    }
    cps.reserve(static_cast<std::size_t>(spec.n_changes));
    if (spec.equal_placement) {
        for (std::int64_t j = 1; j <= spec.n_changes; ++j) {
            cps.push_back(j * spec.n / (spec.n_changes + 1));
        }
    } else {
        std::unordered_set<std::int64_t> chosen;
        while (static_cast<std::int64_t>(chosen.size()) < spec.n_changes) {
            const std::int64_t pos =
                1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(spec.n - 1));
            if (chosen.insert(pos).second) {
                cps.push_back(pos);
            }
        }
        std::sort(cps.begin(), cps.end());
    }
    return cps;
}

}  // namespace

Simulation simulate(const SimSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("simulate: need n >= 1");
    }
    if (spec.n_changes < 0 || spec.n_changes >= spec.n) {
        throw std::invalid_argument("simulate: need 0 <= changes < n");
    }
    if (!(spec.sigma > 0.0)) {
        throw std::invalid_argument("simulate: sigma must be positive");
    }
    std::mt19937_64 rng(spec.seed);
    Simulation sim;
    sim.changepoints = draw_changepoints(spec, rng);
    sim.values.resize(static_cast<std::size_t>(spec.n));
    std::size_t seg = 0;
    for (std::int64_t t = 1; t <= spec.n; ++t) {
        while (seg < sim.changepoints.size() && t > sim.changepoints[seg]) {
            ++seg;
        }
        const double mean = (seg % 2 == 1) ? spec.jump * spec.sigma : 0.0;
        sim.values[static_cast<std::size_t>(t - 1)] = mean + spec.sigma * next_gaussian(rng);
    }
    return sim;
}

void write_simulation(const SimSpec& spec, const std::string& out_path) {
    const Simulation sim = simulate(spec);

    std::FILE* out = std::fopen(out_path.c_str(), "wb");
    if (out == nullptr) {
        throw std::runtime_error("cannot open '" + out_path + "' for writing");
    }
    for (double v : sim.values) {
        std::fprintf(out, "%.17g\n", v);
    }
    if (std::fclose(out) != 0) {
        throw std::runtime_error("error while writing '" + out_path + "'");
    }

    nlohmann::json meta{
        {"n", spec.n},
        {"n_changes", spec.n_changes},
        {"changepoints", sim.changepoints},
        {"jump", spec.jump},
        {"sigma", spec.sigma},
        {"seed", spec.seed},
        {"placement", spec.equal_placement ? "equal" : "uniform-random"},
    };
    const std::string meta_path = out_path + ".json";
    std::FILE* meta_out = std::fopen(meta_path.c_str(), "wb");
    if (meta_out == nullptr) {
        throw std::runtime_error("cannot open '" + meta_path + "' for writing");
    }
    const std::string text = meta.dump(2);
    std::fwrite(text.data(), 1, text.size(), meta_out);
    std::fputc('\n', meta_out);
    if (std::fclose(meta_out) != 0) {
        throw std::runtime_error("error while writing '" + meta_path + "'");
    }
}

}  // namespace cpd::cli
