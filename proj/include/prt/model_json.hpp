#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "prt/model.hpp"

namespace prt {

using json = nlohmann::json;

namespace detail {

inline json rat_json(const BigRat& r) { return to_string(r); }

/// Accepts a decimal string ("-3", "3/4") or a JSON integer.
inline BigRat rat_from_json(const json& j, const char* field) {
    if (j.is_string()) {
        try {
            return parse_bigrat(j.get<std::string>());
        } catch (const Error&) {
            throw Error(ErrorKind::Schema, std::string("field '") + field + "': not an exact rational");
        }
    }
    if (j.is_number_integer()) return BigRat(BigInt(j.get<long long>()));
    throw Error(ErrorKind::Schema,
                std::string("field '") + field + "': expected decimal string or integer");
}

inline std::string linear_row_text(const std::vector<std::string>& vars, const RatMatrix& A, std::size_t i,
                                   const BigRat& b) {
    MultiPoly p(vars);
    for (std::size_t j = 0; j < vars.size(); ++j) {
        Exponent e(vars.size(), 0);
        e[j] = 1;
        p.add_term(e, A(i, j));
    }
    std::string lhs = p.to_string();
    std::string rhs = b < 0 ? "-" + to_string(BigRat(-b)) : to_string(b);
    return lhs + " = " + rhs;
}

}  // namespace detail

inline json to_json(const ClassifiedSystem& cs) {
    json j;
    j["class"] = cs.class_name();
    j["vars"] = cs.vars();
    json eqs = json::array();
    for (const auto& eq : cs.ast.equations) eqs.push_back(print_equation(eq));
    j["equations"] = eqs;

    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearSystem>) {
                json A = json::array();
                for (std::size_t i = 0; i < f.A.rows(); ++i) {
                    json row = json::array();
                    for (std::size_t c = 0; c < f.A.cols(); ++c) row.push_back(detail::rat_json(f.A(i, c)));
                    A.push_back(row);
                }
                json b = json::array();
                for (const auto& v : f.b) b.push_back(detail::rat_json(v));
                j["A"] = A;
                j["b"] = b;
            } else if constexpr (std::is_same_v<T, PolyExpEquation>) {
                j["exponent_vars"] = f.exponent_vars;
                if (f.parameter) j["parameter"] = *f.parameter;
                json terms = json::array();
                for (const auto& t : f.terms) {
                    json c = json::array();
                    for (const auto& a : t.character) c.push_back(to_string(a));
                    terms.push_back({{"poly", t.poly.to_string()}, {"character", c}});
                }
                j["terms"] = terms;
            } else {
                json polys = json::array();
                for (const auto& p : f.polys) polys.push_back(p.to_string());
                j["polys"] = polys;
            }
        },
        cs.form);
    return j;
}

inline std::string to_json_text(const ClassifiedSystem& cs, int indent = 2) { return to_json(cs).dump(indent); }

/// Reads either the full form written by to_json (the "equations" texts are
/// authoritative; derived fields are accepted and ignored) or the matrix
/// shorthand {"A": [[...]], "b": [...]}.
inline ClassifiedSystem from_json(const json& j) {
    static const std::set<std::string> allowed = {"class", "vars",  "equations", "A",
                                                  "b",     "polys", "exponent_vars", "parameter", "terms"};
    if (!j.is_object()) throw Error(ErrorKind::Schema, "expected a JSON object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw Error(ErrorKind::Schema, "unknown field '" + k + "'");

    std::string text;
    if (j.contains("equations")) {
        const json& eqs = j["equations"];
        if (!eqs.is_array() || eqs.empty()) throw Error(ErrorKind::Schema, "'equations' must be a nonempty array");
        for (const auto& e : eqs) {
            if (!e.is_string()) throw Error(ErrorKind::Schema, "'equations' entries must be strings");
            if (!text.empty()) text += "; ";
            text += e.get<std::string>();
        }
    } else if (j.contains("A")) {
        const json& A = j["A"];
        if (!A.is_array() || A.empty()) throw Error(ErrorKind::Schema, "'A' must be a nonempty array of rows");
        std::vector<std::vector<BigRat>> rows;
        for (const auto& r : A) {
            if (!r.is_array()) throw Error(ErrorKind::Schema, "'A' rows must be arrays");
            std::vector<BigRat> row;
            for (const auto& x : r) row.push_back(detail::rat_from_json(x, "A"));
            rows.push_back(std::move(row));
        }
        RatMatrix M;
        try {
            M = RatMatrix::from_rows(rows);
        } catch (const Error& e) {
            throw Error(ErrorKind::Schema, e.what());
        }
        std::vector<BigRat> b(M.rows(), BigRat(0));
        if (j.contains("b")) {
            const json& bj = j["b"];
            if (!bj.is_array() || bj.size() != M.rows())
                throw Error(ErrorKind::Schema, "'b' must have one entry per row of 'A'");
            for (std::size_t i = 0; i < bj.size(); ++i) b[i] = detail::rat_from_json(bj[i], "b");
        }
        std::vector<std::string> vars;
        if (j.contains("vars")) {
            vars = j["vars"].get<std::vector<std::string>>();
            if (vars.size() != M.cols()) throw Error(ErrorKind::Schema, "'vars' must name every column of 'A'");
        } else {
            for (std::size_t c = 0; c < M.cols(); ++c) vars.push_back("x" + std::to_string(c + 1));
        }
        // a column of zeros would drop its variable from the text form
        LinearSystem ls{vars, M, b};
        EquationAST ast;
        for (std::size_t i = 0; i < M.rows(); ++i) {
            auto one = parse_equation_text(detail::linear_row_text(vars, M, i, b[i]));
            ast.equations.push_back(one.equations.front());
        }
        ClassifiedSystem cs{ast, ls, {}};
        if (j.contains("class") && j["class"] != "LinearSystem")
            throw Error(ErrorKind::Schema, "matrix form is always class LinearSystem");
        return cs;
    } else {
        throw Error(ErrorKind::Schema, "need 'equations' or 'A'");
    }

    ClassifiedSystem cs = classify(parse_equation_text(text));
    if (j.contains("class") && j["class"] != cs.class_name())
        throw Error(ErrorKind::Schema, "declared class '" + j["class"].get<std::string>() +
                                           "' does not match '" + cs.class_name() + "'");
    if (j.contains("vars") && j["vars"].get<std::vector<std::string>>() != cs.vars())
        throw Error(ErrorKind::Schema, "declared 'vars' do not match the equations");
    return cs;
}

inline ClassifiedSystem from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Schema, std::string("invalid JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Schema, std::string("malformed document: ") + e.what());
    }
}

}  // namespace prt
