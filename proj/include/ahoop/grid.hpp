#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ahoop {

enum class Spacing { linear, log };

/// Closed sample grid [min, max] with count >= 2 points.
struct Grid {
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    Spacing spacing = Spacing::linear;

    void validate() const {
        if (count < 2) throw std::invalid_argument("grid: count must be at least 2");
        if (!(min < max)) throw std::invalid_argument("grid: min must be below max");
        if (spacing == Spacing::log && !(min > 0))
            throw std::invalid_argument("grid: log spacing needs a positive minimum");
    }

    std::vector<double> values() const {
        validate();
        std::vector<double> v(count);
        for (int i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / (count - 1);
            v[i] = spacing == Spacing::linear
                       ? min + (max - min) * t
                       : std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
        }
        v.front() = min;
        v.back() = max;
        return v;
    }
};

/// Locale-independent strict parse of a double.
inline double parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last)
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

inline int parse_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

/// Parses "<min>:<max>:<count>[:log|:linear]".
inline Grid parse_grid(std::string_view spec) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = spec.find(':', pos);
        parts.push_back(spec.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (parts.size() != 3 && parts.size() != 4)
        throw std::invalid_argument("grid must look like <min>:<max>:<count>[:log], got '" + std::string(spec) + "'");
    Grid g;
    g.min = parse_double(parts[0]);
    g.max = parse_double(parts[1]);
    g.count = parse_int(parts[2]);
    if (parts.size() == 4) {
        if (parts[3] == "log")
            g.spacing = Spacing::log;
        else if (parts[3] == "linear" || parts[3] == "lin")
            g.spacing = Spacing::linear;
        else
            throw std::invalid_argument("grid spacing must be 'log' or 'linear'");
    }
    g.validate();
    return g;
}

} // namespace ahoop
