#pragma once

#include <json.hpp>

#include "umbrella/matrix.hpp"
#include "umbrella/rational.hpp"
#include "umbrella/series.hpp"

namespace umbrella::detail {

using ojson = nlohmann::ordered_json;

inline Rational rational_from_json(const nlohmann::json& v) {
    if (v.is_string()) return Rational::from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw std::invalid_argument("expected integer or \"p/q\" string, got: " + v.dump());
}

inline ojson series2_json(const Series2& s) {
    ojson arr = ojson::array();
    for (const auto& [q, c] : s.terms()) {
        ojson rec;
        rec["exp"] = {q.q1, q.q2};
        rec["coeff"] = c.to_string();
        arr.push_back(rec);
    }
    return arr;
}

inline ojson mat2_json(const Mat2Q& m) {
    return ojson::array({ojson::array({m(0, 0).to_string(), m(0, 1).to_string()}),
                         ojson::array({m(1, 0).to_string(), m(1, 1).to_string()})});
}

inline ojson mat4_json(const Mat4Q& m) {
    ojson rows = ojson::array();
    for (int i = 0; i < 4; ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < 4; ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

inline Mat2Q mat2_from_json(const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_array() || v[0].size() != 2 || v[1].size() != 2)
        throw std::invalid_argument("expected a 2x2 matrix");
    Mat2Q m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = rational_from_json(v[i][j]);
    return m;
}

}  // namespace umbrella::detail
