#pragma once

#include <json.hpp>

#include <cctype>
#include <sstream>
#include <string>

#include "fockweyl/fock_numeric.hpp"
#include "fockweyl/gaussian.hpp"
#include "fockweyl/group.hpp"
#include "fockweyl/poly.hpp"

namespace fockweyl {

using json = nlohmann::json;

inline json to_json(cplx v) { return json::array({v.real(), v.imag()}); }

inline cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw config_error("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const cvec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline cvec cvec_from_json(const json& j) {
    cvec v;
    for (const auto& e : j) v.push_back(cplx_from_json(e));
    return v;
}

inline json to_json(const CMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline CMat cmat_from_json(const json& j) {
    std::size_t rows = j.size();
    std::size_t cols = rows ? j[0].size() : 0;
    CMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw config_error("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = cplx_from_json(j[i][k]);
    }
    return m;
}

inline json to_json(const GroupElement& g) {
    return json{{"t", g.t}, {"z0", to_json(g.z0)}, {"c0", g.c0}};
}

inline GroupElement group_element_from_json(const json& j) {
    GroupElement g;
    g.t = j.at("t").get<std::vector<double>>();
    g.z0 = cvec_from_json(j.at("z0"));
    g.c0 = j.value("c0", 0.0);
    return g;
}

inline json to_json(const LieElement& x) {
    return json{{"t", x.t}, {"u", to_json(x.u)}, {"c", x.c}};
}

inline LieElement lie_element_from_json(const json& j) {
    LieElement x;
    x.t = j.at("t").get<std::vector<double>>();
    x.u = cvec_from_json(j.at("u"));
    x.c = j.value("c", 0.0);
    return x;
}

inline json to_json(const Covector& xi) {
    return json{{"s", xi.s}, {"v", to_json(xi.v)}, {"d", xi.d}};
}

inline Covector covector_from_json(const json& j) {
    Covector xi;
    xi.s = j.at("s").get<std::vector<double>>();
    xi.v = cvec_from_json(j.at("v"));
    xi.d = j.value("d", 0.0);
    return xi;
}

inline json to_json(const GaussianKernelOp& k) {
    return json{{"c", to_json(k.c)},
                {"a", to_json(k.a)},
                {"b", to_json(k.b)},
                {"Q", to_json(k.Q)},
                {"lambda", k.lambda}};
}

inline GaussianKernelOp kernel_from_json(const json& j) {
    GaussianKernelOp k;
    k.c = cplx_from_json(j.at("c"));
    k.a = cvec_from_json(j.at("a"));
    k.b = cvec_from_json(j.at("b"));
    k.Q = cmat_from_json(j.at("Q"));
    k.lambda = j.at("lambda").get<double>();
    if (k.b.size() != k.a.size() || k.Q.rows() != k.a.size() || k.Q.cols() != k.a.size())
        throw config_error("kernel JSON: inconsistent dimensions");
    if (k.lambda <= 0.0) throw config_error("kernel JSON: lambda > 0 required");
    return k;
}

/// Array-of-terms form [{"p": [...], "q": [...], "re": r, "im": i}, ...].
template <typename P>
json poly_to_json(const P& f) {
    json terms = json::array();
    for (const auto& [key, c] : f.terms()) {
        terms.push_back(json{{"p", key.p.entries()},
                             {"q", key.q.entries()},
                             {"re", c.real()},
                             {"im", c.imag()}});
    }
    return terms;
}

template <typename P>
P poly_from_json(const json& j, std::size_t n) {
    P f(n);
    for (const auto& term : j) {
        MultiIndex p(term.at("p").get<std::vector<int>>());
        MultiIndex q(term.at("q").get<std::vector<int>>());
        if (p.size() != n || q.size() != n) throw config_error("poly JSON: wrong exponent length");
        f.add_term(p, q, cplx(term.value("re", 0.0), term.value("im", 0.0)));
    }
    return f;
}

namespace detail {

/// A factor token: variable name + exponent, e.g. "z1^2" or "y3".
struct PolyFactor {
    char group;        // 'z','x' first group; 'b','y' second group ('b' for zb)
    std::size_t index; // zero-based
    int exponent;
};

inline void parse_factor(const std::string& tok, bool complex_vars, PolyFactor& out) {
    std::size_t pos = 0;
    if (complex_vars) {
        if (tok.compare(0, 2, "zb") == 0) {
            out.group = 'b';
            pos = 2;
        } else if (tok[0] == 'z') {
            out.group = 'z';
            pos = 1;
        } else {
            throw config_error("poly parse: expected z<k> or zb<k>, got '" + tok + "'");
        }
    } else {
        if (tok[0] == 'x') {
            out.group = 'x';
            pos = 1;
        } else if (tok[0] == 'y') {
            out.group = 'y';
            pos = 1;
        } else {
            throw config_error("poly parse: expected x<k> or y<k>, got '" + tok + "'");
        }
    }
    std::size_t caret = tok.find('^', pos);
    std::string idx = tok.substr(pos, caret == std::string::npos ? std::string::npos : caret - pos);
    if (idx.empty()) throw config_error("poly parse: missing variable index in '" + tok + "'");
    out.index = static_cast<std::size_t>(std::stoul(idx));
    if (out.index == 0) throw config_error("poly parse: variable indices start at 1");
    out.index -= 1;
    out.exponent = (caret == std::string::npos) ? 1 : std::stoi(tok.substr(caret + 1));
    if (out.exponent < 0) throw config_error("poly parse: negative exponent");
}

inline cplx parse_coefficient(const std::string& tok) {
    try {
        if (!tok.empty() && tok.front() == '(') {
            auto comma = tok.find(',');
            if (comma == std::string::npos || tok.back() != ')')
                throw config_error("poly parse: malformed complex coefficient '" + tok + "'");
            return {std::stod(tok.substr(1, comma - 1)),
                    std::stod(tok.substr(comma + 1, tok.size() - comma - 2))};
        }
        std::size_t used = 0;
        double value = std::stod(tok, &used);
        if (used != tok.size())
            throw config_error("poly parse: unexpected token '" + tok + "'");
        return {value, 0.0};
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        throw config_error("poly parse: unexpected token '" + tok + "'");
    }
}

} // namespace detail

/// Text form: terms joined by '+'/'-', each `coef * v1^a1 * v2^a2 ...` with
/// variables z<k>/zb<k> (complex) or x<k>/y<k> (phase space). The coefficient
/// may be omitted (1), real, or a pair `(re,im)`.
template <typename P>
P poly_from_text(const std::string& text, std::size_t n, bool complex_vars) {
    P f(n);
    std::string s = text;
    std::size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos >= s.size()) break;
        double sign = 1.0;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = (s[pos] == '-') ? -1.0 : 1.0;
            ++pos;
        }
        // term ends at the next top-level +/- (not inside parentheses, not an exponent sign)
        std::size_t end = pos;
        int depth = 0;
        while (end < s.size()) {
            char ch = s[end];
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if ((ch == '+' || ch == '-') && depth == 0 && end > pos) {
                char prev = s[end - 1];
                if (prev != 'e' && prev != 'E' && prev != '^') break;
            }
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        pos = end;
        // split the term on '*' and whitespace
        std::vector<std::string> tokens;
        std::string cur;
        int d2 = 0;
        for (char ch : term) {
            if (ch == '(') ++d2;
            if (ch == ')') --d2;
            if ((ch == '*' || std::isspace(static_cast<unsigned char>(ch))) && d2 == 0) {
                if (!cur.empty()) tokens.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) tokens.push_back(cur);
        if (tokens.empty()) throw config_error("poly parse: empty term");

        cplx coef(sign, 0.0);
        MultiIndex p(n), q(n);
        bool saw_coef = false;
        for (const std::string& tok : tokens) {
            char c0 = tok[0];
            bool is_var = (complex_vars && c0 == 'z') || (!complex_vars && (c0 == 'x' || c0 == 'y'));
            if (!is_var) {
                if (saw_coef) throw config_error("poly parse: two coefficients in one term");
                coef *= detail::parse_coefficient(tok);
                saw_coef = true;
                continue;
            }
            detail::PolyFactor factor{};
            detail::parse_factor(tok, complex_vars, factor);
            if (factor.index >= n) throw config_error("poly parse: variable index beyond dimension");
            if (factor.group == 'z' || factor.group == 'x')
                p[factor.index] += factor.exponent;
            else
                q[factor.index] += factor.exponent;
        }
        f.add_term(p, q, coef);
        any = true;
    }
    if (!any) throw config_error("poly parse: no terms found");
    return f;
}

template <typename P>
std::string poly_to_text(const P& f, bool complex_vars) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    out.precision(17);
    bool first = true;
    for (const auto& [key, c] : f.terms()) {
        if (!first) out << " + ";
        first = false;
        if (c.imag() == 0.0)
            out << c.real();
        else
            out << "(" << c.real() << "," << c.imag() << ")";
        for (std::size_t k = 0; k < f.dim(); ++k) {
            if (key.p[k] > 0) {
                out << " * " << (complex_vars ? "z" : "x") << (k + 1);
                if (key.p[k] > 1) out << "^" << key.p[k];
            }
        }
        for (std::size_t k = 0; k < f.dim(); ++k) {
            if (key.q[k] > 0) {
                out << " * " << (complex_vars ? "zb" : "y") << (k + 1);
                if (key.q[k] > 1) out << "^" << key.q[k];
            }
        }
    }
    return out.str();
}

/// FockMatrix dump with the basis-ordering header.
inline json to_json(const FockMatrix& m) {
    json basis = json::array();
    for (const auto& p : m.basis) basis.push_back(p.entries());
    return json{{"schema", 1},
                {"basis", json{{"ordering", "graded lexicographic (degree, then entrywise)"},
                               {"indices", basis}}},
                {"n", m.spec.n},
                {"lambda", m.spec.lambda},
                {"degree", m.spec.degree},
                {"entries", to_json(m.entries)}};
}

} // namespace fockweyl
