// Truncated Taylor arithmetic. A Jet is an element of Q[xi]/deg^{order+1}
// centered at a point: exactly the data "value and partial derivatives up to
// `order`". All curvature evaluation happens in this ring, so inverting the
// metric never leaves exact rational arithmetic.
#pragma once

#include "bggfe/polynomial.hpp"
#include "bggfe/tensor.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace bggfe {

class Jet {
public:
    Jet(int nvars, int order) : nvars_(nvars), order_(order) {
        if (order < 0) throw std::invalid_argument("jet order must be >= 0");
    }

    static Jet constant(const Rat& c, int nvars, int order) {
        Jet j(nvars, order);
        if (!is_zero(c)) j.terms_[Mono{}] = c;
        return j;
    }

    /// Taylor expansion of a polynomial about `point`, truncated at `order`
    static Jet from_poly(const Poly& p, const std::vector<Rat>& point, int order) {
        if (static_cast<int>(point.size()) != p.nvars())
            throw std::invalid_argument("jet expansion point dimension mismatch");
        std::vector<std::vector<Rat>> lin(p.nvars(), std::vector<Rat>(p.nvars(), Rat(0)));
        for (int i = 0; i < p.nvars(); ++i) lin[i][i] = 1;
        Poly shifted = p.compose_affine(point, lin, p.nvars());
        Jet j(p.nvars(), order);
        for (const auto& [m, c] : shifted.terms())
            if (static_cast<int>(m.degree()) <= order) j.terms_[m] = c;
        return j;
    }

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    const std::map<Mono, Rat>& terms() const { return terms_; }

    /// value at the center point
    Rat value() const {
        auto it = terms_.find(Mono{});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    bool is_zero_jet() const { return terms_.empty(); }

    Jet operator+(const Jet& o) const {
        Jet r(nvars_, std::min(order_, o.order_));
        r.terms_ = truncate(terms_, r.order_);
        for (const auto& [m, c] : o.terms_)
            if (static_cast<int>(m.degree()) <= r.order_) r.add(m, c);
        return r;
    }

    Jet operator-(const Jet& o) const {
        Jet r(nvars_, std::min(order_, o.order_));
        r.terms_ = truncate(terms_, r.order_);
        for (const auto& [m, c] : o.terms_)
            if (static_cast<int>(m.degree()) <= r.order_) r.add(m, -c);
        return r;
    }

    Jet operator-() const {
        Jet r(nvars_, order_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Jet operator*(const Jet& o) const {
        Jet r(nvars_, std::min(order_, o.order_));
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) {
                Mono m = m1 * m2;
                if (static_cast<int>(m.degree()) <= r.order_) r.add(m, c1 * c2);
            }
        return r;
    }

    Jet operator*(const Rat& s) const {
        Jet r(nvars_, order_);
        if (is_zero(s)) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
        return r;
    }

    bool operator==(const Jet& o) const { return nvars_ == o.nvars_ && order_ == o.order_ && terms_ == o.terms_; }

    /// formal partial derivative; the result is valid one order lower
    Jet derivative(int var) const {
        if (order_ == 0) throw std::logic_error("jet differentiated below its order");
        Jet r(nvars_, order_ - 1);
        for (const auto& [m, c] : terms_) {
            if (m.e[var] == 0) continue;
            Mono d = m;
            d.e[var] -= 1;
            if (static_cast<int>(d.degree()) <= r.order_) r.add(d, c * static_cast<long>(m.e[var]));
        }
        return r;
    }

    /// multiplicative inverse; requires a nonzero value at the center
    Jet inverse() const {
        Rat v = value();
        if (is_zero(v)) throw std::runtime_error("jet inverse of a non-unit");
        Jet y = Jet::constant(1 / v, nvars_, order_);
        Jet two = Jet::constant(2, nvars_, order_);
        // Newton: y <- y (2 - x y); doubles the correct order each step
        int correct = 0;
        while (correct < order_) {
            y = y * (two - (*this) * y);
            correct = 2 * correct + 1;
        }
        return y;
    }

    /// coefficient of the exponent multi-index (the derivative divided by m!)
    Rat coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

private:
    void add(const Mono& m, const Rat& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!is_zero(c)) terms_[m] = c;
        } else {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    static std::map<Mono, Rat> truncate(const std::map<Mono, Rat>& t, int order) {
        std::map<Mono, Rat> r;
        for (const auto& [m, c] : t)
            if (static_cast<int>(m.degree()) <= order) r[m] = c;
        return r;
    }

    int nvars_;
    int order_;
    std::map<Mono, Rat> terms_;
};

inline Jet operator*(const Rat& s, const Jet& j) { return j * s; }

/// First-order expansion in a formal nilpotent parameter: a + t*b with t^2 = 0.
/// The parts are full polynomials, so linearized identities can be compared
/// symbolically rather than at sample points.
struct Dual {
    Poly a, b;

    explicit Dual(int nvars) : a(nvars), b(nvars) {}
    Dual(Poly a_, Poly b_) : a(std::move(a_)), b(std::move(b_)) {}

    static Dual constant(const Rat& c, int nvars) { return Dual(Poly::constant(c, nvars), Poly(nvars)); }

    Dual operator+(const Dual& o) const { return Dual(a + o.a, b + o.b); }
    Dual operator-(const Dual& o) const { return Dual(a - o.a, b - o.b); }
    Dual operator-() const { return Dual(-a, -b); }
    Dual operator*(const Dual& o) const { return Dual(a * o.a, a * o.b + b * o.a); }
    Dual operator*(const Rat& s) const { return Dual(a * s, b * s); }
    Dual derivative(int var) const { return Dual(a.derivative(var), b.derivative(var)); }
};

/// Square matrices with entries in a ring, sized for n in {2,3}.
template <class S>
struct RingMat {
    int n;
    std::vector<S> e;

    RingMat(int n_, const S& zero) : n(n_), e(n_ * n_, zero) {}
    S& at(int i, int j) { return e[i * n + j]; }
    const S& at(int i, int j) const { return e[i * n + j]; }
};

/// adjugate/determinant inverse; S must support +,-,*,unary-, and Jet-style inverse()
inline RingMat<Jet> jet_matrix_inverse(const RingMat<Jet>& m) {
    const int n = m.n;
    RingMat<Jet> inv = m;
    if (n == 2) {
        Jet det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
        Jet dinv = det.inverse();
        inv.at(0, 0) = m.at(1, 1) * dinv;
        inv.at(0, 1) = -m.at(0, 1) * dinv;
        inv.at(1, 0) = -m.at(1, 0) * dinv;
        inv.at(1, 1) = m.at(0, 0) * dinv;
        return inv;
    }
    if (n == 3) {
        auto cof = [&](int i, int j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            return m.at(r0, c0) * m.at(r1, c1) - m.at(r0, c1) * m.at(r1, c0);
        };
        Jet det = m.at(0, 0) * cof(0, 0) + m.at(0, 1) * cof(0, 1) + m.at(0, 2) * cof(0, 2);
        Jet dinv = det.inverse();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) inv.at(i, j) = cof(j, i) * dinv;  // adjugate transpose
        return inv;
    }
    throw std::invalid_argument("jet matrix inverse supports n = 2, 3");
}

}  // namespace bggfe
