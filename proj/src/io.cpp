#include "hurst/io.hpp"

#include "hurst/error.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string_view>

namespace hurst {

std::string to_string(LengthPolicy p) {
    switch (p) {
    case LengthPolicy::RequireDyadic: return "require_dyadic";
    case LengthPolicy::TruncateHead: return "truncate_head";
    case LengthPolicy::TruncateTail: return "truncate_tail";
    case LengthPolicy::KeepAll: return "keep_all";
    }
    return "unknown";
}

std::string to_string(Transform t) { return t == Transform::Log ? "log" : "none"; }
std::string to_string(Detrend d) { return d == Detrend::Affine ? "affine" : "none"; }

LengthPolicy parse_length_policy(const std::string& s) {
    for (auto p : {LengthPolicy::RequireDyadic, LengthPolicy::TruncateHead, LengthPolicy::TruncateTail,
                   LengthPolicy::KeepAll}) {
        if (s == to_string(p)) return p;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown length policy '" + s + "'");
}

Transform parse_transform(const std::string& s) {
    if (s == "none") return Transform::None;
    if (s == "log") return Transform::Log;
    throw Error(ErrorCode::InvalidArgument, "unknown transform '" + s + "'");
}

Detrend parse_detrend(const std::string& s) {
    if (s == "none") return Detrend::None;
    if (s == "affine") return Detrend::Affine;
    throw Error(ErrorCode::InvalidArgument, "unknown detrend '" + s + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::size_t> parse_index(const std::string& s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

/// Resolves a selector against the header (if any); empty selector -> fallback.
std::size_t resolve_column(const std::string& selector, const std::vector<std::string_view>& header,
                           std::size_t columns, std::size_t fallback) {
    if (selector.empty()) return fallback;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == selector) return i;
    }
    if (auto idx = parse_index(selector)) {
        if (*idx < columns) return *idx;
        throw Error(ErrorCode::InvalidArgument,
                    "column index " + selector + " out of range for " + std::to_string(columns) + " columns");
    }
    throw Error(ErrorCode::InvalidArgument, "no column named '" + selector + "'");
}

} // namespace

DyadicSeries IngestResult::series() const {
    if (!n) {
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(values.size()) + " samples is not of the form 2^n + 1");
    }
    return DyadicSeries::from_samples(values, *n);
}

IngestResult ingest_csv(std::istream& in, const IngestPolicy& policy) {
    IngestResult out;
    out.policy = policy;

    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;
    std::size_t value_idx = 0;
    std::optional<std::size_t> time_idx;
    std::size_t columns = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto fields = split(view);

        if (first_row) {
            first_row = false;
            columns = fields.size();
            std::vector<std::string_view> header;
            // A first row whose selected value field is not numeric is a header.
            const std::size_t guess = policy.value_col.empty() ? columns - 1
                                      : parse_index(policy.value_col).value_or(columns);
            const bool numeric = guess < columns && parse_number(fields[guess]).has_value();
            if (!numeric) {
                out.had_header = true;
                header.assign(fields.begin(), fields.end());
            }
            value_idx = resolve_column(policy.value_col, header, columns, columns - 1);
            if (!policy.time_col.empty()) time_idx = resolve_column(policy.time_col, header, columns, 0);
            if (out.had_header) continue;
        }

        if (fields.size() <= value_idx || (time_idx && fields.size() <= *time_idx)) {
            throw ParseError(line_no, "expected at least " + std::to_string(std::max(value_idx, time_idx.value_or(0)) + 1) +
                                          " columns, found " + std::to_string(fields.size()));
        }
        const auto v = parse_number(fields[value_idx]);
        if (!v) throw ParseError(line_no, "non-numeric value '" + std::string(fields[value_idx]) + "'");
        double value = *v;
        if (policy.transform == Transform::Log) {
            if (!(value > 0.0)) throw ParseError(line_no, "log transform needs a positive value");
            value = std::log(value);
        }
        out.values.push_back(value);
        if (time_idx) out.timestamps.emplace_back(fields[*time_idx]);
    }

    out.rows_read = out.values.size();
    if (out.values.empty()) throw Error(ErrorCode::EmptyInput, "no data rows");
    if (out.values.size() < 3) {
        throw Error(ErrorCode::TooShort, std::to_string(out.values.size()) + " samples; at least 3 are needed");
    }

    const std::size_t N = out.values.size();
    const int n_max = std::bit_width(N - 1) - 1;
    const std::size_t keep = (std::size_t{1} << n_max) + 1;
    switch (policy.length) {
    case LengthPolicy::RequireDyadic:
        if (keep != N) {
            throw Error(ErrorCode::LengthMismatch, std::to_string(N) + " samples is not of the form 2^n + 1");
        }
        break;
    case LengthPolicy::TruncateHead:
        out.values.erase(out.values.begin(), out.values.end() - static_cast<std::ptrdiff_t>(keep));
        if (!out.timestamps.empty()) {
            out.timestamps.erase(out.timestamps.begin(), out.timestamps.end() - static_cast<std::ptrdiff_t>(keep));
        }
        break;
    case LengthPolicy::TruncateTail:
        out.values.resize(keep);
        if (!out.timestamps.empty()) out.timestamps.resize(keep);
        break;
    case LengthPolicy::KeepAll: break;
    }
    out.rows_dropped = N - out.values.size();
    const std::size_t M = out.values.size();
    if (M >= 2 && std::has_single_bit(M - 1)) out.n = std::bit_width(M - 1) - 1;

    if (policy.detrend == Detrend::Affine) {
        const double a = out.values.front();
        const double b = out.values.back();
        const double last = static_cast<double>(M - 1);
        for (std::size_t i = 0; i < M; ++i) out.values[i] -= a + (b - a) * (static_cast<double>(i) / last);
        out.values.back() = 0.0;
    }
    return out;
}

IngestResult ingest_csv(const std::string& path, const IngestPolicy& policy) {
    if (path == "-") return ingest_csv(std::cin, policy);
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    return ingest_csv(file, policy);
}

} // namespace hurst
