#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cpd/cpd.h"
#include "series_io.hpp"

namespace cpd::cli {

namespace {

using nlohmann::json;

struct SeriesPtr {
    cpd_series* ptr = nullptr;
    ~SeriesPtr() { cpd_series_free(ptr); }
};

struct ResultPtr {
    cpd_result* ptr = nullptr;
    ~ResultPtr() { cpd_result_free(ptr); }
};

std::optional<cpd_method> parse_method(const std::string& name) {
    if (name == "op") return CPD_METHOD_OP;
    if (name == "pelt") return CPD_METHOD_PELT;
    if (name == "fpop") return CPD_METHOD_FPOP;
    if (name == "sns") return CPD_METHOD_SNS;
    if (name == "snip") return CPD_METHOD_SNIP;
    if (name == "pdpa") return CPD_METHOD_PDPA;
    if (name == "binseg") return CPD_METHOD_BINSEG;
    return std::nullopt;
}

bool is_constrained(cpd_method method) {
    return method == CPD_METHOD_SNS || method == CPD_METHOD_SNIP || method == CPD_METHOD_PDPA;
}

std::uint64_t fnv1a(const double* data, std::size_t count) {
    std::uint64_t hash = 1469598103934665603ull;
    const auto* bytes = reinterpret_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < count * sizeof(double); ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

int write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitRuntime;
    }
    return kExitOk;
}

std::vector<std::int64_t> result_changepoints_vec(const cpd_result* result, std::int64_t k) {
    std::vector<std::int64_t> cps(static_cast<std::size_t>(k >= 0 ? k : 0));
    if (k > 0) {
        cpd_result_changepoints_at_k(result, k, cps.data(), k);
    }
    return cps;
}

json trace_to_json(const cpd_result* result) {
    json rows = json::array();
    const std::int64_t count = cpd_result_trace_rows(result);
    for (std::int64_t i = 0; i < count; ++i) {
        std::int64_t t = 0;
        std::int64_t k = 0;
        std::int64_t candidates = 0;
        cpd_result_trace_row(result, i, &t, &k, &candidates);
        json row{{"t", t}, {"count", candidates}};
        if (k >= 0) {
            row["k"] = k;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// argmin_k C_{k,n} + beta*k: the model the penalty would select from the
// constrained path
std::int64_t selected_k(const cpd_result* result, double beta) {
    const std::int64_t kmax = cpd_result_kmax(result);
    std::int64_t best_k = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 0; k <= kmax; ++k) {
        const double v = cpd_result_cost_at_k(result, k) + beta * static_cast<double>(k);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace

int cmd_detect(const DetectArgs& args) {
    const auto method = parse_method(args.method);
    if (!method) {
        std::cerr << "error: unknown method '" << args.method << "'\n";
        return kExitUsage;
    }
    if (is_constrained(*method) && args.kmax <= 0) {
        std::cerr << "error: method '" << args.method << "' requires --kmax\n";
        return kExitUsage;
    }

    std::vector<double> values;
    try {
        values = read_series(args.input_path);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    SeriesPtr series;
    series.ptr = cpd_series_new(values.data(), static_cast<int64_t>(values.size()));
    if (series.ptr == nullptr) {
        std::cerr << "error: " << cpd_last_error() << "\n";
        return kExitRuntime;
    }

    cpd_options opts;
    cpd_options_init(&opts);
    opts.sigma = args.sigma;
    opts.beta = args.beta;
    opts.kappa = args.kappa;
    opts.kmax = args.kmax;
    opts.collect_trace = args.trace ? 1 : 0;

    ResultPtr result;
    const int rc = cpd_detect(series.ptr, *method, &opts, &result.ptr);
    if (rc != CPD_OK) {
        std::cerr << "error: " << cpd_last_error() << "\n";
        return rc == CPD_ERROR_INVALID ? kExitUsage : kExitRuntime;
    }

    json report{
        {"method", args.method},
        {"n", static_cast<std::int64_t>(values.size())},
        {"sigma", args.sigma},
        {"checksum", hex64(fnv1a(values.data(), values.size()))},
        {"wall_time_ms", cpd_result_wall_seconds(result.ptr) * 1000.0},
    };

    if (is_constrained(*method)) {
        const std::int64_t kmax = cpd_result_kmax(result.ptr);
        report["kmax"] = kmax;
        json models = json::array();
        for (std::int64_t k = 0; k <= kmax; ++k) {
            std::vector<double> means(static_cast<std::size_t>(k) + 1);
            cpd_result_means_at_k(result.ptr, k, means.data(), k + 1);
            models.push_back(json{{"k", k},
                                  {"total_cost", cpd_result_cost_at_k(result.ptr, k)},
                                  {"changepoints", result_changepoints_vec(result.ptr, k)},
                                  {"means", means}});
        }
        report["models"] = std::move(models);
        // top-level segmentation fields mirror the full-budget model
        std::vector<double> means(static_cast<std::size_t>(kmax) + 1);
        cpd_result_means_at_k(result.ptr, kmax, means.data(), kmax + 1);
        report["k"] = kmax;
        report["changepoints"] = result_changepoints_vec(result.ptr, kmax);
        report["total_cost"] = cpd_result_cost_at_k(result.ptr, kmax);
        report["means"] = means;
    } else {
        const double beta =
            args.beta >= 0.0 ? args.beta : cpd_default_penalty(series.ptr, args.sigma);
        report["beta"] = beta;
        const std::int64_t k = cpd_result_num_changepoints(result.ptr);
        std::vector<std::int64_t> cps(static_cast<std::size_t>(k));
        if (k > 0) {
            cpd_result_changepoints(result.ptr, cps.data(), k);
        }
        std::vector<double> means(static_cast<std::size_t>(k) + 1);
        cpd_result_means(result.ptr, means.data(), k + 1);
        report["k"] = k;
        report["changepoints"] = cps;
        report["total_cost"] = cpd_result_total_cost(result.ptr);
        report["penalised_objective"] = cpd_result_penalised_objective(result.ptr);
        report["means"] = means;
    }
    if (args.trace) {
        report["trace"] = trace_to_json(result.ptr);
    }

    return write_text(args.out_path, report.dump(2) + "\n");
}

int cmd_simulate(const SimSpec& spec, const std::string& out_path) {
    try {
        write_simulation(spec, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct BenchCell {
    std::int64_t n;
    std::int64_t changes;
    int rep;
    std::string method;
};

std::string run_bench_cell(const BenchArgs& args, const BenchCell& cell) {
    std::ostringstream row;
    row << cell.n << "," << cell.changes << "," << cell.method << "," << cell.rep << ",";
    try {
        SimSpec spec;
        spec.n = cell.n;
        spec.n_changes = cell.changes;
        spec.jump = args.jump;
        spec.sigma = args.sigma;
        spec.seed = splitmix64(splitmix64(splitmix64(args.seed ^ static_cast<std::uint64_t>(cell.n)) ^
                                          static_cast<std::uint64_t>(cell.changes)) ^
                               static_cast<std::uint64_t>(cell.rep));
        const Simulation sim = simulate(spec);

        SeriesPtr series;
        series.ptr = cpd_series_new(sim.values.data(), static_cast<int64_t>(sim.values.size()));
        if (series.ptr == nullptr) {
            throw std::runtime_error(cpd_last_error());
        }
        const auto method = parse_method(cell.method);
        if (!method) {
            throw std::runtime_error("unknown method '" + cell.method + "'");
        }

        cpd_options opts;
        cpd_options_init(&opts);
        opts.sigma = args.sigma;
        opts.beta = args.beta;
        opts.kmax = cell.changes + 2;  // constrained budget: true changes plus slack
        opts.collect_trace = 0;

        ResultPtr result;
        if (cpd_detect(series.ptr, *method, &opts, &result.ptr) != CPD_OK) {
            throw std::runtime_error(cpd_last_error());
        }
        const double beta =
            args.beta >= 0.0 ? args.beta : cpd_default_penalty(series.ptr, args.sigma);
        const std::int64_t detected = cpd_result_is_constrained(result.ptr) != 0
                                          ? selected_k(result.ptr, beta)
                                          : cpd_result_num_changepoints(result.ptr);
        row.precision(6);
        row << std::fixed << cpd_result_wall_seconds(result.ptr) << "," << detected << "\n";
    } catch (const std::exception& e) {
        std::cerr << "bench cell failed (n=" << cell.n << ", changes=" << cell.changes
                  << ", method=" << cell.method << ", rep=" << cell.rep << "): " << e.what()
                  << "\n";
        row << "NA,NA\n";
    }
    return row.str();
}

}  // namespace

int cmd_bench(const BenchArgs& args) {
    for (const std::string& method : args.methods) {
        if (!parse_method(method)) {
            std::cerr << "error: unknown method '" << method << "'\n";
            return kExitUsage;
        }
    }
    if (args.reps < 0 || args.jobs < 1) {
        std::cerr << "error: need reps >= 0 and jobs >= 1\n";
        return kExitUsage;
    }

    std::vector<BenchCell> cells;
    for (std::int64_t n : args.n_list) {
        for (std::int64_t changes : args.changes_list) {
            for (int rep = 0; rep < args.reps; ++rep) {
                for (const std::string& method : args.methods) {
                    cells.push_back(BenchCell{n, changes, rep, method});
                }
            }
        }
    }

    std::vector<std::string> rows(cells.size());
    if (args.jobs == 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            rows[i] = run_bench_cell(args, cells[i]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) {
                    return;
                }
                rows[i] = run_bench_cell(args, cells[i]);
            }
        };
        std::vector<std::thread> pool;
        const std::size_t n_threads =
            std::min<std::size_t>(static_cast<std::size_t>(args.jobs), cells.size());
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    std::string csv = "n,n_changes,method,rep,seconds,k_detected\n";
    for (const std::string& row : rows) {
        csv += row;
    }
    return write_text(args.out_path, csv);
}

int cmd_trace(const TraceArgs& args) {
    std::vector<std::pair<std::string, cpd_method>> methods;
    for (const std::string& name : args.methods) {
        const auto method = parse_method(name);
        if (!method || (*method != CPD_METHOD_PELT && *method != CPD_METHOD_FPOP &&
                        *method != CPD_METHOD_SNIP && *method != CPD_METHOD_PDPA)) {
            std::cerr << "error: method '" << name
                      << "' keeps no pruning trace (choose from pelt, fpop, snip, pdpa)\n";
            return kExitUsage;
        }
        methods.emplace_back(name, *method);
        if (is_constrained(*method) && args.kmax <= 0) {
            std::cerr << "error: method '" << name << "' requires --kmax\n";
            return kExitUsage;
        }
    }
    if (methods.empty()) {
        std::cerr << "error: no methods given\n";
        return kExitUsage;
    }

    std::vector<double> values;
    try {
        values = read_series(args.input_path);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    SeriesPtr series;
    series.ptr = cpd_series_new(values.data(), static_cast<int64_t>(values.size()));
    if (series.ptr == nullptr) {
        std::cerr << "error: " << cpd_last_error() << "\n";
        return kExitRuntime;
    }

    std::ostringstream csv;
    csv << "t,k,method,candidate_count\n";
    for (const auto& [name, method] : methods) {
        cpd_options opts;
        cpd_options_init(&opts);
        opts.sigma = args.sigma;
        opts.beta = args.beta;
        opts.kappa = args.kappa;
        opts.kmax = args.kmax;
        opts.collect_trace = 1;

        ResultPtr result;
        const int rc = cpd_detect(series.ptr, method, &opts, &result.ptr);
        if (rc != CPD_OK) {
            std::cerr << "error: " << cpd_last_error() << "\n";
            return rc == CPD_ERROR_INVALID ? kExitUsage : kExitRuntime;
        }
        const std::int64_t rows = cpd_result_trace_rows(result.ptr);
        for (std::int64_t i = 0; i < rows; ++i) {
            std::int64_t t = 0;
            std::int64_t k = 0;
            std::int64_t count = 0;
            cpd_result_trace_row(result.ptr, i, &t, &k, &count);
            csv << t << ",";
            if (k >= 0) {
                csv << k;
            }
            csv << "," << name << "," << count << "\n";
        }
    }
    return write_text(args.out_path, csv.str());
}

}  // namespace cpd::cli
