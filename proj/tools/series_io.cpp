#include "series_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

namespace cpd::cli {

namespace {

std::string strip(const std::string& line) {
    std::size_t begin = 0;
    std::size_t end = line.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(line[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1]))) {
        --end;
    }
    return line.substr(begin, end - begin);
}

bool is_header(const std::string& token) {
    return token == "value" || token == "\"value\"" || token == "'value'";
}

}  // namespace

std::vector<double> read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string token = strip(line);
        if (token.empty()) {
            continue;
        }
        if (first_content && is_header(token)) {
            first_content = false;
            continue;
        }
        first_content = false;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
            throw InputError(path + ":" + std::to_string(lineno) + ": cannot parse '" + token +
                             "' as a number");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw InputError(path + ": empty input");
    }
    return values;
}

}  // namespace cpd::cli
