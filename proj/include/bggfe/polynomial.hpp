// Sparse multivariate polynomials with rational coefficients.
// Exponent-map representation; at most 3 variables (x, y, z).
#pragma once

#include "bggfe/rational.hpp"

#include <array>
#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bggfe {

struct Mono {
    std::array<unsigned, 3> e{0, 0, 0};

    unsigned degree() const { return e[0] + e[1] + e[2]; }
    auto operator<=>(const Mono&) const = default;
    Mono operator*(const Mono& o) const { return Mono{{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2]}}; }
};

class Poly {
public:
    explicit Poly(int nvars = 2) : nvars_(nvars) {
        if (nvars < 1 || nvars > 3) throw std::invalid_argument("polynomials support 1..3 variables");
    }

    static Poly constant(const Rat& c, int nvars) {
        Poly p(nvars);
        if (!is_zero(c)) p.terms_[Mono{}] = c;
        return p;
    }

    static Poly variable(int i, int nvars) {
        Poly p(nvars);
        if (i < 0 || i >= nvars) throw std::invalid_argument("variable index out of range");
        Mono m;
        m.e[i] = 1;
        p.terms_[m] = 1;
        return p;
    }

    static Poly monomial(const Mono& m, const Rat& c, int nvars) {
        Poly p(nvars);
        if (!is_zero(c)) p.terms_[m] = c;
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Mono, Rat>& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
        return d;
    }

    void add_term(const Mono& m, const Rat& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!is_zero(c)) terms_[m] = c;
        } else {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        check_vars(o);
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Poly operator-(const Poly& o) const {
        check_vars(o);
        Poly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Poly operator*(const Poly& o) const {
        check_vars(o);
        Poly r(nvars_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
        return r;
    }

    Poly operator*(const Rat& s) const {
        Poly r(nvars_);
        if (is_zero(s)) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
        return r;
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Rat eval(const std::vector<Rat>& pt) const {
        if (static_cast<int>(pt.size()) != nvars_) throw std::invalid_argument("eval: point dimension mismatch");
        Rat s = 0;
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (int v = 0; v < nvars_; ++v)
                for (unsigned k = 0; k < m.e[v]; ++k) t *= pt[v];
            s += t;
        }
        return s;
    }

    Poly derivative(int var) const {
        if (var < 0 || var >= nvars_) throw std::invalid_argument("derivative: variable out of range");
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m.e[var] == 0) continue;
            Mono d = m;
            d.e[var] -= 1;
            r.add_term(d, c * static_cast<long>(m.e[var]));
        }
        return r;
    }

    /// Substitute x_i = shift[i] + sum_j lin[i][j] * y_j, producing a polynomial
    /// in new_nvars variables y. Used for edge parameterizations, reference
    /// mappings and Taylor recentering.
    Poly compose_affine(const std::vector<Rat>& shift, const std::vector<std::vector<Rat>>& lin,
                        int new_nvars) const {
        if (static_cast<int>(shift.size()) != nvars_ || static_cast<int>(lin.size()) != nvars_)
            throw std::invalid_argument("compose_affine: map dimension mismatch");
        std::vector<Poly> subs;
        subs.reserve(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            Poly s = Poly::constant(shift[i], new_nvars);
            for (int j = 0; j < new_nvars; ++j)
                s = s + Poly::variable(j, new_nvars) * lin[i][j];
            subs.push_back(s);
        }
        Poly r(new_nvars);
        for (const auto& [m, c] : terms_) {
            Poly t = Poly::constant(c, new_nvars);
            for (int v = 0; v < nvars_; ++v)
                for (unsigned k = 0; k < m.e[v]; ++k) t = t * subs[v];
            r = r + t;
        }
        return r;
    }

    std::string str() const;

private:
    void check_vars(const Poly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial variable-count mismatch");
    }

    int nvars_;
    std::map<Mono, Rat> terms_;
};

inline Poly operator*(const Rat& s, const Poly& p) { return p * s; }

/// exact integral over the unit interval t in [0,1] of a univariate polynomial
inline Rat integrate_unit_interval(const Poly& p) {
    if (p.nvars() != 1) throw std::invalid_argument("integrate_unit_interval needs a 1-variable polynomial");
    Rat s = 0;
    for (const auto& [m, c] : p.terms()) s += c / static_cast<long>(m.e[0] + 1);
    return s;
}

namespace detail {

/// exact integral of the monomial x^a y^b over a triangle, uncached
inline Rat triangle_monomial_integral(const Mono& mono, const std::array<Rat, 2>& v0,
                                      const std::array<Rat, 2>& v1, const std::array<Rat, 2>& v2) {
    std::vector<Rat> shift{v0[0], v0[1]};
    std::vector<std::vector<Rat>> lin{{v1[0] - v0[0], v2[0] - v0[0]}, {v1[1] - v0[1], v2[1] - v0[1]}};
    Rat jac = lin[0][0] * lin[1][1] - lin[0][1] * lin[1][0];
    if (sgn(jac) < 0) jac = -jac;
    Poly p(2);
    p.add_term(mono, Rat(1));
    Poly q = p.compose_affine(shift, lin, 2);
    // reference integral of s^a t^b = a! b! / (a+b+2)!
    Rat s = 0;
    for (const auto& [m, c] : q.terms()) {
        Rat f = 1;
        for (unsigned k = 1; k <= m.e[0]; ++k) f *= static_cast<long>(k);
        for (unsigned k = 1; k <= m.e[1]; ++k) f *= static_cast<long>(k);
        for (unsigned k = 1; k <= m.e[0] + m.e[1] + 2; ++k) f /= static_cast<long>(k);
        s += c * f;
    }
    return s * jac;
}

}  // namespace detail

/// exact integral of a 2D polynomial over the triangle (v0, v1, v2);
/// monomial integrals are memoized per triangle
inline Rat integrate_triangle(const Poly& p, const std::array<Rat, 2>& v0, const std::array<Rat, 2>& v1,
                              const std::array<Rat, 2>& v2) {
    if (p.nvars() != 2) throw std::invalid_argument("integrate_triangle needs a 2-variable polynomial");
    using Key = std::array<Rat, 6>;
    static std::map<Key, std::map<Mono, Rat>> cache;
    static std::mutex cache_mutex;
    Key key{v0[0], v0[1], v1[0], v1[1], v2[0], v2[1]};
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& table = cache[key];
    Rat s = 0;
    for (const auto& [m, c] : p.terms()) {
        auto it = table.find(m);
        if (it == table.end()) it = table.emplace(m, detail::triangle_monomial_integral(m, v0, v1, v2)).first;
        s += c * it->second;
    }
    return s;
}

/// all monomials in `nvars` variables of total degree <= deg, ordered
inline std::vector<Mono> monomials_up_to(int deg, int nvars) {
    std::vector<Mono> out;
    for (int d = 0; d <= deg; ++d) {
        if (nvars == 1) {
            out.push_back(Mono{{static_cast<unsigned>(d), 0, 0}});
        } else if (nvars == 2) {
            for (int i = d; i >= 0; --i) out.push_back(Mono{{static_cast<unsigned>(i), static_cast<unsigned>(d - i), 0}});
        } else {
            for (int i = d; i >= 0; --i)
                for (int j = d - i; j >= 0; --j)
                    out.push_back(Mono{{static_cast<unsigned>(i), static_cast<unsigned>(j), static_cast<unsigned>(d - i - j)}});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing: sums of terms like "3/2*x^2*y - z + 0.5". Variables x,y,z or
// x1,x2,x3. No parentheses.
// ---------------------------------------------------------------------------

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline int parse_var(const std::string& s, size_t& i, int nvars) {
    char c = s[i];
    int v = -1;
    if (c == 'x') v = 0;
    else if (c == 'y') v = 1;
    else if (c == 'z') v = 2;
    if (v == -1) throw std::invalid_argument("expected variable at '" + s.substr(i) + "'");
    ++i;
    if (v == 0 && i < s.size() && s[i] >= '1' && s[i] <= '3') {  // x1,x2,x3
        v = s[i] - '1';
        ++i;
    }
    if (v >= nvars) throw std::invalid_argument("variable index exceeds dimension");
    return v;
}

inline Rat parse_number(const std::string& s, size_t& i) {
    size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == '/')) ++i;
    if (i == start) throw std::invalid_argument("expected number at '" + s.substr(start) + "'");
    return rat_from_string(s.substr(start, i - start));
}

}  // namespace detail

inline Poly parse_poly(const std::string& s, int nvars) {
    using namespace detail;
    Poly out(nvars);
    size_t i = 0;
    skip_ws(s, i);
    bool first = true;
    while (i < s.size()) {
        Rat sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' at '" + s.substr(i) + "'");
        }
        first = false;
        skip_ws(s, i);
        Rat coef = sign;
        Mono mono;
        bool any = false;
        while (true) {
            skip_ws(s, i);
            if (i >= s.size()) break;
            if (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.') {
                coef *= parse_number(s, i);
                any = true;
            } else if (s[i] == 'x' || s[i] == 'y' || s[i] == 'z') {
                int v = parse_var(s, i, nvars);
                unsigned p = 1;
                skip_ws(s, i);
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    skip_ws(s, i);
                    size_t st = i;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                    if (st == i) throw std::invalid_argument("expected exponent");
                    p = static_cast<unsigned>(std::stoul(s.substr(st, i - st)));
                }
                mono.e[v] += p;
                any = true;
            } else {
                break;
            }
            skip_ws(s, i);
            if (i < s.size() && s[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any) throw std::invalid_argument("empty term in polynomial literal");
        out.add_term(mono, coef);
        skip_ws(s, i);
    }
    return out;
}

inline std::string Poly::str() const {
    if (terms_.empty()) return "0";
    static const char* names[3] = {"x", "y", "z"};
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (sgn(a) < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += sgn(a) < 0 ? " - " : " + ";
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool has_var = m.degree() > 0;
        if (!has_var || a != 1) out += rat_to_string(a);
        bool star = !has_var ? false : (a != 1);
        for (int v = 0; v < nvars_; ++v) {
            if (m.e[v] == 0) continue;
            if (star) out += "*";
            out += names[v];
            if (m.e[v] > 1) out += "^" + std::to_string(m.e[v]);
            star = true;
        }
    }
    return out;
}

}  // namespace bggfe
