#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "agentsched/harness/config.hpp"
#include "agentsched/harness/metrics.hpp"

namespace agentsched::harness {

enum class Axis : std::uint8_t { none, theta, hosts, probability };

[[nodiscard]] std::string to_string(Axis axis);
/// Throws ConfigError for an unknown name.
[[nodiscard]] Axis axis_from_name(const std::string& name);

struct ResultRow {
    std::string config_hash;
    std::string scheduler;
    Axis axis = Axis::none;
    double axis_value = 0.0;
    std::uint64_t seed = 0;
    RunMetrics metrics;
    double wall_time_s = 0.0;
};

/// Copy of `base` with the axis set to `value`.
[[nodiscard]] ScenarioConfig with_axis(const ScenarioConfig& base, Axis axis, double value);

/// Runs `c` once and labels the row with the axis value.
[[nodiscard]] ResultRow run_row(const ScenarioConfig& c, Axis axis, double value, std::ostream* trace = nullptr);

/// One run per (value, repetition); repetition r uses seed base.seed + r.
/// Rows come back sorted by (scheduler, axis value, seed).
[[nodiscard]] std::vector<ResultRow> sweep(const ScenarioConfig& base, Axis axis, const std::vector<double>& values,
                                           int repetitions);

/// Every scheduler at every probability.
[[nodiscard]] std::vector<ResultRow> compare(const ScenarioConfig& base, const std::vector<std::string>& schedulers,
                                             const std::vector<double>& probabilities, int repetitions);

void sort_rows(std::vector<ResultRow>& rows);

/// Wall time is only written when `timing` is set so that default output is
/// reproducible byte for byte.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing);

/// "1..20", "0.1..1.0", "lo..hi:step" or "a,b,c". Integral endpoints step
/// by 1, others by 0.1 unless a step is given.
[[nodiscard]] std::vector<double> parse_values(const std::string& text);

}  // namespace agentsched::harness
