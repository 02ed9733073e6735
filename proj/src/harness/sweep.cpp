#include "agentsched/harness/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <tuple>

#include "agentsched/harness/simulation.hpp"

namespace agentsched::harness {

std::string to_string(Axis axis) {
    switch (axis) {
    case Axis::none: return "none";
    case Axis::theta: return "theta";
    case Axis::hosts: return "hosts";
    case Axis::probability: return "probability";
    }
    return "?";
}

Axis axis_from_name(const std::string& name) {
    for (Axis a : {Axis::none, Axis::theta, Axis::hosts, Axis::probability}) {
        if (to_string(a) == name) {
            return a;
        }
    }
    throw ConfigError("unknown axis '" + name + "' (expected theta, hosts or probability)");
}

ScenarioConfig with_axis(const ScenarioConfig& base, Axis axis, double value) {
    ScenarioConfig c = base;
    switch (axis) {
    case Axis::none: break;
    case Axis::theta: c.theta = static_cast<int>(std::lround(value)); break;
    case Axis::hosts: c.hosts = static_cast<int>(std::lround(value)); break;
    case Axis::probability: c.event_probability = value; break;
    }
    validate(c);
    return c;
}

ResultRow run_row(const ScenarioConfig& c, Axis axis, double value, std::ostream* trace) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = run_once(c, trace);
    const auto t1 = std::chrono::steady_clock::now();
    ResultRow row;
    row.config_hash = config_hash(c);
    row.scheduler = c.scheduler;
    row.axis = axis;
    row.axis_value = value;
    row.seed = c.seed;
    row.metrics = result.metrics;
    row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    return row;
}

std::vector<ResultRow> sweep(const ScenarioConfig& base, Axis axis, const std::vector<double>& values,
                             int repetitions) {
    if (values.empty()) {
        throw ConfigError("sweep needs at least one value");
    }
    if (repetitions < 1) {
        throw ConfigError("repetitions must be at least 1");
    }
    std::vector<ResultRow> rows;
    for (double v : values) {
        for (int r = 0; r < repetitions; ++r) {
            auto c = with_axis(base, axis, v);
            c.seed = base.seed + static_cast<std::uint64_t>(r);
            rows.push_back(run_row(c, axis, v));
        }
    }
    sort_rows(rows);
    return rows;
}

std::vector<ResultRow> compare(const ScenarioConfig& base, const std::vector<std::string>& schedulers,
                               const std::vector<double>& probabilities, int repetitions) {
    if (schedulers.empty() || probabilities.empty()) {
        throw ConfigError("compare needs at least one scheduler and one probability");
    }
    std::vector<ResultRow> rows;
    for (const auto& s : schedulers) {
        ScenarioConfig c = base;
        c.scheduler = s;
        validate(c);
        auto part = sweep(c, Axis::probability, probabilities, repetitions);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    sort_rows(rows);
    return rows;
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.scheduler, a.axis_value, a.seed) < std::tie(b.scheduler, b.axis_value, b.seed);
    });
}

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing) {
    out << "config_hash,scheduler,axis,axis_value,seed,makespan,variance,success_rate,nt,sn,nv,mean_utilization";
    if (timing) {
        out << ",wall_time_s";
    }
    out << '\n';
    for (const auto& r : rows) {
        out << r.config_hash << ',' << r.scheduler << ',' << to_string(r.axis) << ',' << num(r.axis_value) << ','
            << r.seed << ',' << num(r.metrics.makespan) << ',' << num(r.metrics.variance) << ','
            << num(r.metrics.success_rate) << ',' << r.metrics.nt << ',' << r.metrics.sn << ',' << r.metrics.nv
            << ',' << num(r.metrics.mean_utilization);
        if (timing) {
            out << ',' << num(r.wall_time_s);
        }
        out << '\n';
    }
}

std::vector<double> parse_values(const std::string& text) {
    auto parse_number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + s + "' in value list '" + text + "'");
        }
        if (used != s.size()) {
            throw ConfigError("bad number '" + s + "' in value list '" + text + "'");
        }
        return v;
    };
    std::vector<double> values;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            values.push_back(parse_number(item));
        }
        if (values.empty()) {
            throw ConfigError("empty value list");
        }
        return values;
    }
    const std::string lo_text = text.substr(0, dots);
    std::string hi_text = text.substr(dots + 2);
    std::string step_text;
    if (const auto colon = hi_text.find(':'); colon != std::string::npos) {
        step_text = hi_text.substr(colon + 1);
        hi_text = hi_text.substr(0, colon);
    }
    const double lo = parse_number(lo_text);
    const double hi = parse_number(hi_text);
    const bool integral = lo_text.find('.') == std::string::npos && hi_text.find('.') == std::string::npos;
    const double step = step_text.empty() ? (integral ? 1.0 : 0.1) : parse_number(step_text);
    if (!(step > 0.0) || hi < lo) {
        throw ConfigError("bad range '" + text + "'");
    }
    // Index-based so that 0.1..1.0 yields exactly ten values.
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        values.push_back(std::round(v * 1e9) / 1e9);
    }
    return values;
}

}  // namespace agentsched::harness
