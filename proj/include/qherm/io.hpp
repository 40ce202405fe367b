#pragma once

/**
 * @file io.hpp
 * @brief JSON and CSV serialization. Quaternions are [x0, x1, x2, x3]; CSV floats use 17
 * significant digits with a '.' decimal independent of the locale.
 */

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qherm/errors.hpp"
#include "qherm/quadrature.hpp"
#include "qherm/quaternion.hpp"
#include "qherm/series.hpp"

namespace qherm {

using Json = nlohmann::ordered_json;

inline void to_json(Json& j, const Quaternion& q) { j = Json::array({q.x0, q.x1, q.x2, q.x3}); }

inline void from_json(const Json& j, Quaternion& q) {
    if (!j.is_array() || j.size() != 4) throw DomainError("quaternion must be an array of 4 numbers");
    q = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline void to_json(Json& j, const QSeries& s) {
    j = Json{{"side", s.side == CoeffSide::Left ? "left" : "right"}, {"coeffs", s.coeffs}};
}

inline void from_json(const Json& j, QSeries& s) {
    const std::string side = j.at("side").get<std::string>();
    if (side != "left" && side != "right") throw DomainError("series side must be \"left\" or \"right\"");
    s.side = side == "left" ? CoeffSide::Left : CoeffSide::Right;
    s.coeffs = j.at("coeffs").get<std::vector<Quaternion>>();
}

/// Nodes and weights only; kind and scaling are not round-tripped.
[[nodiscard]] inline Json dump_rule(const Rule1D& r) { return Json{{"nodes", r.nodes}, {"weights", r.weights}}; }

[[nodiscard]] inline Rule1D load_rule(const Json& j) {
    Rule1D r;
    r.nodes = j.at("nodes").get<std::vector<double>>();
    r.weights = j.at("weights").get<std::vector<double>>();
    if (r.nodes.size() != r.weights.size()) throw DomainError("rule: nodes and weights differ in length");
    return r;
}

/// Shortest form is not used: always 17 significant digits, C-locale.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
        os_ << '\n';
    }

    template <class... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
        os_ << '\n';
    }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }
    template <class I>
        requires std::is_integral_v<I>
    static std::string cell(I v) {
        return std::to_string(v);
    }

    std::ostream& os_;
};

} // namespace qherm
