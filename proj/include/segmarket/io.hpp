#pragma once

// JSON encoding of markets, welfare functions and segmentations.
// Rationals are written as lowest-terms strings; inputs also accept JSON
// numbers and decimal strings, read exactly.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "segmarket/error.hpp"
#include "segmarket/matrix.hpp"
#include "segmarket/model.hpp"
#include "segmarket/rational.hpp"
#include "segmarket/welfare.hpp"

namespace segmarket::io {

using json = nlohmann::json;

[[noreturn]] inline void schema(const std::string& what) { throw Error(ErrorCode::SchemaViolation, what); }

inline json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned() || j.is_number_float()) return parse_rational(j.dump());
    schema(where + ": expected a rational");
}

inline std::vector<Rational> vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) schema(where + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline json to_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_json(r));
    return a;
}

inline RationalMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) schema(where + ": expected a nonempty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array()) schema(where + ": row " + std::to_string(r) + " is not an array");
        if (r == 0) cols = j[r].size();
        else if (j[r].size() != cols) schema(where + ": rows have different lengths");
    }
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rational_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    return m;
}

inline json to_json(const RationalMatrix& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        a.push_back(std::move(row));
    }
    return a;
}

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) schema(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(where + ": missing \"" + key + "\"");
    return *it;
}

inline Market market_from_json(const json& j) {
    return Market(TypeGrid(vector_from_json(field(j, "types", "market"), "market.types")),
                  vector_from_json(field(j, "mu", "market"), "market.mu"));
}

inline json to_json(const Market& m) { return json{{"types", to_json(m.grid().values())}, {"mu", to_json(m.mu())}}; }

inline Segmentation segmentation_from_json(const json& j) {
    Market m = market_from_json(field(j, "market", "segmentation"));
    return Segmentation(std::move(m), matrix_from_json(field(j, "sigma", "segmentation"), "sigma"));
}

inline json to_json(const Segmentation& s) { return json{{"market", to_json(s.market())}, {"sigma", to_json(s.sigma())}}; }

inline PiecewiseLinear transform_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) schema(where + ": expected an array of [x, y] breakpoints");
    std::vector<PiecewiseLinear::Breakpoint> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) schema(at + ": expected [x, y]");
        pts.push_back({rational_from_json(j[i][0], at), rational_from_json(j[i][1], at)});
    }
    return PiecewiseLinear(std::move(pts));
}

inline json to_json(const PiecewiseLinear& u) {
    json a = json::array();
    for (const auto& p : u.breakpoints()) a.push_back(json::array({to_json(p.x), to_json(p.y)}));
    return a;
}

/// Families: pareto_weights, concave_transform, product, table, plus the
/// shorthands utilitarian, sr_witness and microfounded.
inline WelfareTable welfare_from_json(const json& j, const TypeGrid& grid) {
    const json& fam = field(j, "family", "welfare");
    if (!fam.is_string()) schema("welfare.family: expected a string");
    const std::string family = fam.get<std::string>();
    if (family == "pareto_weights")
        return evaluate(ParetoWeights{vector_from_json(field(j, "lambda", "welfare"), "welfare.lambda")}, grid);
    if (family == "concave_transform")
        return evaluate(ConcaveTransform{transform_from_json(field(j, "u", "welfare"), "welfare.u")}, grid);
    if (family == "product")
        return evaluate(Product{vector_from_json(field(j, "lambda", "welfare"), "welfare.lambda"),
                                transform_from_json(field(j, "u", "welfare"), "welfare.u")},
                        grid);
    if (family == "table") return evaluate(ExplicitTable{matrix_from_json(field(j, "values", "welfare"), "welfare.values")}, grid);
    if (family == "utilitarian") return utilitarian(grid);
    if (family == "sr_witness") return evaluate(sr_witness(grid), grid);
    if (family == "microfounded") {
        const json& inc = field(j, "incomes", "welfare");
        if (!inc.is_array()) schema("welfare.incomes: expected one distribution per type");
        std::vector<std::vector<IncomeAtom>> incomes;
        for (std::size_t t = 0; t < inc.size(); ++t) {
            const std::string at = "welfare.incomes[" + std::to_string(t) + "]";
            if (!inc[t].is_array()) schema(at + ": expected an array of atoms");
            std::vector<IncomeAtom> atoms;
            for (const auto& a : inc[t])
                atoms.push_back({rational_from_json(field(a, "income", at), at + ".income"),
                                 rational_from_json(field(a, "probability", at), at + ".probability")});
            incomes.push_back(std::move(atoms));
        }
        return microfounded_welfare(grid, incomes, transform_from_json(field(j, "u", "welfare"), "welfare.u"));
    }
    schema("welfare.family: unknown family \"" + family + "\"");
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, path.string() + ": malformed JSON (" + e.what() + ")");
    }
}

/// Two-space indented, trailing newline; key order is lexicographic.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace segmarket::io
