#include "cpd/cpd.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "model.hpp"
#include "solvers.hpp"
#include "time_series.hpp"

struct cpd_series {
    cpd::TimeSeries data;
};

struct cpd_result {
    std::variant<cpd::PenalisedFit, cpd::ConstrainedFit> fit;

    bool constrained() const { return fit.index() == 1; }
    const cpd::RunTrace& trace() const {
        return constrained() ? std::get<1>(fit).trace : std::get<0>(fit).trace;
    }
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) {
    g_last_error = what != nullptr ? what : "unknown error";
}

int error_code_from(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const std::bad_alloc*>(&e) != nullptr) {
        return CPD_ERROR_NOMEM;
    }
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
        return CPD_ERROR_INVALID;
    }
    return CPD_ERROR_INTERNAL;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const cpd::Segmentation* penalised_segmentation(const cpd_result* result) {
    if (result == nullptr || result->constrained()) {
        return nullptr;
    }
    return &std::get<0>(result->fit).segmentation;
}

const cpd::Segmentation* segmentation_at_k(const cpd_result* result, int64_t k) {
    if (result == nullptr || !result->constrained()) {
        return nullptr;
    }
    const cpd::ConstrainedResult& res = std::get<1>(result->fit).result;
    if (k < 0 || k > res.kmax) {
        return nullptr;
    }
    return &res.segmentations[static_cast<std::size_t>(k)];
}

int64_t copy_out(const std::vector<int64_t>& src, int64_t* buf, int64_t buflen) {
    const int64_t count = std::min<int64_t>(static_cast<int64_t>(src.size()), buflen);
    for (int64_t i = 0; i < count; ++i) {
        buf[i] = src[static_cast<std::size_t>(i)];
    }
    return count;
}

int64_t copy_out(const std::vector<double>& src, double* buf, int64_t buflen) {
    const int64_t count = std::min<int64_t>(static_cast<int64_t>(src.size()), buflen);
    for (int64_t i = 0; i < count; ++i) {
        buf[i] = src[static_cast<std::size_t>(i)];
    }
    return count;
}

}  // namespace

extern "C" {

void cpd_options_init(cpd_options* opts) {
    if (opts == nullptr) {
        return;
    }
    opts->sigma = 1.0;
    opts->beta = -1.0;
    opts->kappa = 0.0;
    opts->kmax = 0;
    opts->collect_trace = 0;
}

const char* cpd_version(void) {
    return "0.1.0";
}

const char* cpd_last_error(void) {
    return g_last_error.c_str();
}

cpd_series* cpd_series_new(const double* values, int64_t n) {
    if (values == nullptr || n <= 0) {
        set_error("cpd_series_new: need a non-empty value array");
        return nullptr;
    }
    try {
        return new cpd_series{cpd::TimeSeries(std::vector<double>(values, values + n))};
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    }
}

void cpd_series_free(cpd_series* series) {
    delete series;
}

int64_t cpd_series_length(const cpd_series* series) {
    return series != nullptr ? series->data.size() : -1;
}

double cpd_default_penalty(const cpd_series* series, double sigma) {
    if (series == nullptr) {
        set_error("cpd_default_penalty: null series");
        return kNaN;
    }
    try {
        return cpd::default_penalty(series->data, cpd::GaussianCostModel(sigma));
    } catch (const std::exception& e) {
        set_error(e.what());
        return kNaN;
    }
}

int cpd_detect(const cpd_series* series, cpd_method method, const cpd_options* opts,
               cpd_result** out) {
    if (series == nullptr || out == nullptr) {
        set_error("cpd_detect: null series or output pointer");
        return CPD_ERROR_INVALID;
    }
    cpd_options defaults;
    cpd_options_init(&defaults);
    const cpd_options& o = opts != nullptr ? *opts : defaults;
    const bool constrained =
        method == CPD_METHOD_SNS || method == CPD_METHOD_SNIP || method == CPD_METHOD_PDPA;
    if (constrained && o.kmax < 1) {
        set_error("cpd_detect: constrained methods require kmax >= 1");
        return CPD_ERROR_INVALID;
    }
    try {
        const cpd::GaussianCostModel model(o.sigma);
        const cpd::TimeSeries& data = series->data;
        const double beta = o.beta >= 0.0 ? o.beta : cpd::default_penalty(data, model);
        cpd::SolveOptions solve_options;
        solve_options.collect_trace = o.collect_trace != 0;

        auto result = std::make_unique<cpd_result>();
        switch (method) {
            case CPD_METHOD_OP:
                result->fit = cpd::op_solve(data, model, beta, solve_options);
                break;
            case CPD_METHOD_PELT:
                result->fit = cpd::pelt_solve(data, model, beta, o.kappa, solve_options);
                break;
            case CPD_METHOD_FPOP:
                result->fit = cpd::fpop_solve(data, model, beta, solve_options);
                break;
            case CPD_METHOD_SNS:
                result->fit = cpd::sns_solve(data, model, o.kmax, solve_options);
                break;
            case CPD_METHOD_SNIP:
                result->fit = cpd::snip_solve(data, model, o.kmax, o.kappa, solve_options);
                break;
            case CPD_METHOD_PDPA:
                result->fit = cpd::pdpa_solve(data, model, o.kmax, solve_options);
                break;
            case CPD_METHOD_BINSEG: {
                const int64_t cap = o.kmax > 0 ? o.kmax : data.size() - 1;
                result->fit = cpd::binseg_solve(data, model, cap, beta, solve_options);
                break;
            }
            default:
                set_error("cpd_detect: unknown method");
                return CPD_ERROR_INVALID;
        }
        *out = result.release();
        return CPD_OK;
    } catch (const std::exception& e) {
        return error_code_from(e);
    }
}

void cpd_result_free(cpd_result* result) {
    delete result;
}

int cpd_result_is_constrained(const cpd_result* result) {
    return result != nullptr && result->constrained() ? 1 : 0;
}

double cpd_result_wall_seconds(const cpd_result* result) {
    return result != nullptr ? result->trace().wall_seconds : kNaN;
}

int64_t cpd_result_num_changepoints(const cpd_result* result) {
    const cpd::Segmentation* seg = penalised_segmentation(result);
    return seg != nullptr ? seg->k() : -1;
}

int64_t cpd_result_changepoints(const cpd_result* result, int64_t* buf, int64_t buflen) {
    const cpd::Segmentation* seg = penalised_segmentation(result);
    if (seg == nullptr || buf == nullptr) {
        return -1;
    }
    return copy_out(seg->changepoints, buf, buflen);
}

double cpd_result_total_cost(const cpd_result* result) {
    const cpd::Segmentation* seg = penalised_segmentation(result);
    return seg != nullptr ? seg->total_cost : kNaN;
}

double cpd_result_penalised_objective(const cpd_result* result) {
    const cpd::Segmentation* seg = penalised_segmentation(result);
    return seg != nullptr ? seg->penalised_objective : kNaN;
}

int64_t cpd_result_means(const cpd_result* result, double* buf, int64_t buflen) {
    const cpd::Segmentation* seg = penalised_segmentation(result);
    if (seg == nullptr || buf == nullptr) {
        return -1;
    }
    return copy_out(seg->means, buf, buflen);
}

int64_t cpd_result_kmax(const cpd_result* result) {
    if (result == nullptr || !result->constrained()) {
        return -1;
    }
    return std::get<1>(result->fit).result.kmax;
}

double cpd_result_cost_at_k(const cpd_result* result, int64_t k) {
    if (result == nullptr || !result->constrained()) {
        return kNaN;
    }
    const cpd::ConstrainedResult& res = std::get<1>(result->fit).result;
    if (k < 0 || k > res.kmax) {
        return kNaN;
    }
    return res.costs[static_cast<std::size_t>(k)];
}

int64_t cpd_result_changepoints_at_k(const cpd_result* result, int64_t k, int64_t* buf,
                                     int64_t buflen) {
    const cpd::Segmentation* seg = segmentation_at_k(result, k);
    if (seg == nullptr || buf == nullptr) {
        return -1;
    }
    return copy_out(seg->changepoints, buf, buflen);
}

int64_t cpd_result_means_at_k(const cpd_result* result, int64_t k, double* buf, int64_t buflen) {
    const cpd::Segmentation* seg = segmentation_at_k(result, k);
    if (seg == nullptr || buf == nullptr) {
        return -1;
    }
    return copy_out(seg->means, buf, buflen);
}

int64_t cpd_result_trace_rows(const cpd_result* result) {
    return result != nullptr ? static_cast<int64_t>(result->trace().rows.size()) : -1;
}

int cpd_result_trace_row(const cpd_result* result, int64_t i, int64_t* t, int64_t* k,
                         int64_t* count) {
    if (result == nullptr || t == nullptr || k == nullptr || count == nullptr) {
        set_error("cpd_result_trace_row: null argument");
        return CPD_ERROR_INVALID;
    }
    const auto& rows = result->trace().rows;
    if (i < 0 || i >= static_cast<int64_t>(rows.size())) {
        set_error("cpd_result_trace_row: index out of range");
        return CPD_ERROR_INVALID;
    }
    const auto& row = rows[static_cast<std::size_t>(i)];
    *t = row.t;
    *k = row.k;
    *count = row.count;
    return CPD_OK;
}

}  // extern "C"
