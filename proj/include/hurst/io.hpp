#pragma once

#include "hurst/dyadic.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hurst {

enum class LengthPolicy {
    RequireDyadic, ///< the row count must be exactly 2^n + 1
    TruncateHead,  ///< drop the oldest rows, keeping the last 2^n + 1
    TruncateTail,  ///< drop the newest rows, keeping the first 2^n + 1
    KeepAll,       ///< keep every row (rolling input)
};

enum class Transform { None, Log };
enum class Detrend { None, Affine };

[[nodiscard]] std::string to_string(LengthPolicy p);
[[nodiscard]] std::string to_string(Transform t);
[[nodiscard]] std::string to_string(Detrend d);
[[nodiscard]] LengthPolicy parse_length_policy(const std::string& s);
[[nodiscard]] Transform parse_transform(const std::string& s);
[[nodiscard]] Detrend parse_detrend(const std::string& s);

/// Column selectors accept a header name or a 0-based index. An empty value column
/// means the last column.
struct IngestPolicy {
    std::string time_col;
    std::string value_col;
    LengthPolicy length = LengthPolicy::RequireDyadic;
    Transform transform = Transform::None;
    Detrend detrend = Detrend::None;
};

struct IngestResult {
    std::vector<double> values;
    std::vector<std::string> timestamps; ///< empty unless a time column was selected
    /// Resolution when values.size() == 2^n + 1.
    std::optional<int> n;
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    bool had_header = false;
    IngestPolicy policy;

    /// The values as a dyadic series; throws LengthMismatch if the length is not 2^n + 1.
    [[nodiscard]] DyadicSeries series() const;
};

[[nodiscard]] IngestResult ingest_csv(std::istream& in, const IngestPolicy& policy);
/// "-" reads standard input.
[[nodiscard]] IngestResult ingest_csv(const std::string& path, const IngestPolicy& policy);

} // namespace hurst
