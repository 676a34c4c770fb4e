// Tensor-valued polynomial fields and the differential / algebraic operators
// acting on them.
//
// 2D conventions (fixed so that the two anchor identities hold symbolically:
// rot(skw u) = -grad(sskw u) and -2*sskw(curl u) = div u; see the tests):
//   grad phi          = (d1 phi, d2 phi)
//   (grad u)_{ij}     = d_i u_j                       (vector -> matrix)
//   curl phi          = (-d2 phi, d1 phi)
//   (curl u)_{.j}     = curl(u_j)                     (vector -> matrix, column copies)
//   rot u             = d1 u2 - d2 u1                 (vector -> scalar)
//   (rot M)_j         = d1 M_{2j} - d2 M_{1j}         (matrix -> vector, column-wise)
//   (div M)_j         = d1 M_{1j} + d2 M_{2j}         (matrix -> vector, column-wise)
//   mskw s            = [[0, s], [-s, 0]],  sskw M = (M12 - M21)/2
//
// 3D: curl acts on matrix fields by columns; inc = curl o transpose o curl.
#pragma once

#include "bggfe/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bggfe {

struct shape_error : std::invalid_argument {
    shape_error(const std::string& op, int rows, int cols)
        : std::invalid_argument("operator '" + op + "' cannot act on a field of shape (" +
                                std::to_string(rows) + "," + std::to_string(cols) + ")") {}
};

/// scalar = (1,1), vector = (n,1), matrix = (n,n); entries row-major
struct PolyTensor {
    int rows = 1, cols = 1;
    int nvars = 2;
    std::vector<Poly> entry;

    PolyTensor() : entry{Poly(2)} {}
    PolyTensor(int r, int c, int nv) : rows(r), cols(c), nvars(nv), entry(r * c, Poly(nv)) {}

    static PolyTensor scalar(const Poly& p) {
        PolyTensor t(1, 1, p.nvars());
        t.entry[0] = p;
        return t;
    }

    static PolyTensor zero(int r, int c, int nv) { return PolyTensor(r, c, nv); }

    static PolyTensor identity(int n, int nv) {
        PolyTensor t(n, n, nv);
        for (int i = 0; i < n; ++i) t.at(i, i) = Poly::constant(1, nv);
        return t;
    }

    Poly& at(int i, int j = 0) { return entry[i * cols + j]; }
    const Poly& at(int i, int j = 0) const { return entry[i * cols + j]; }

    bool is_scalar() const { return rows == 1 && cols == 1; }
    bool is_vector() const { return cols == 1 && rows == nvars; }
    bool is_matrix() const { return rows == nvars && cols == nvars; }
    bool is_zero() const {
        for (const auto& p : entry)
            if (!p.is_zero_poly()) return false;
        return true;
    }

    PolyTensor operator+(const PolyTensor& o) const {
        require_same_shape(o, "+");
        PolyTensor r = *this;
        for (size_t i = 0; i < entry.size(); ++i) r.entry[i] = entry[i] + o.entry[i];
        return r;
    }

    PolyTensor operator-(const PolyTensor& o) const {
        require_same_shape(o, "-");
        PolyTensor r = *this;
        for (size_t i = 0; i < entry.size(); ++i) r.entry[i] = entry[i] - o.entry[i];
        return r;
    }

    PolyTensor operator*(const Rat& s) const {
        PolyTensor r = *this;
        for (auto& p : r.entry) p = p * s;
        return r;
    }

    /// matrix product (shapes must chain)
    PolyTensor operator*(const PolyTensor& o) const {
        if (cols != o.rows || nvars != o.nvars) throw shape_error("matmul", o.rows, o.cols);
        PolyTensor r(rows, o.cols, nvars);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < o.cols; ++j) {
                Poly s(nvars);
                for (int k = 0; k < cols; ++k) s = s + at(i, k) * o.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    bool operator==(const PolyTensor& o) const {
        return rows == o.rows && cols == o.cols && nvars == o.nvars && entry == o.entry;
    }

    /// evaluate all entries at a rational point
    std::vector<Rat> eval(const std::vector<Rat>& pt) const {
        std::vector<Rat> out;
        out.reserve(entry.size());
        for (const auto& p : entry) out.push_back(p.eval(pt));
        return out;
    }

private:
    void require_same_shape(const PolyTensor& o, const char* op) const {
        if (rows != o.rows || cols != o.cols || nvars != o.nvars) throw shape_error(op, o.rows, o.cols);
    }
};

/// Levi-Civita symbol, eps(0,1,2) = 1
inline int levi_civita(int i, int j, int k) { return (j - i) * (k - i) * (k - j) / 2; }

inline PolyTensor transpose(const PolyTensor& u) {
    PolyTensor r(u.cols, u.rows, u.nvars);
    for (int i = 0; i < u.rows; ++i)
        for (int j = 0; j < u.cols; ++j) r.at(j, i) = u.at(i, j);
    return r;
}

inline PolyTensor grad(const PolyTensor& u) {
    const int n = u.nvars;
    if (u.is_scalar()) {
        PolyTensor r(n, 1, n);
        for (int i = 0; i < n; ++i) r.at(i) = u.at(0, 0).derivative(i);
        return r;
    }
    if (u.is_vector()) {
        PolyTensor r(n, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(i, j) = u.at(j).derivative(i);
        return r;
    }
    throw shape_error("grad", u.rows, u.cols);
}

inline PolyTensor div(const PolyTensor& u) {
    const int n = u.nvars;
    if (u.is_vector()) {
        Poly s(n);
        for (int i = 0; i < n; ++i) s = s + u.at(i).derivative(i);
        return PolyTensor::scalar(s);
    }
    if (u.is_matrix()) {
        PolyTensor r(n, 1, n);
        for (int j = 0; j < n; ++j) {
            Poly s(n);
            for (int i = 0; i < n; ++i) s = s + u.at(i, j).derivative(i);
            r.at(j) = s;
        }
        return r;
    }
    throw shape_error("div", u.rows, u.cols);
}

inline PolyTensor curl(const PolyTensor& u) {
    const int n = u.nvars;
    if (n == 2) {
        if (u.is_scalar()) {
            PolyTensor r(2, 1, 2);
            r.at(0) = -u.at(0, 0).derivative(1);
            r.at(1) = u.at(0, 0).derivative(0);
            return r;
        }
        if (u.is_vector()) {
            PolyTensor r(2, 2, 2);
            for (int j = 0; j < 2; ++j) {
                r.at(0, j) = -u.at(j).derivative(1);
                r.at(1, j) = u.at(j).derivative(0);
            }
            return r;
        }
        throw shape_error("curl", u.rows, u.cols);
    }
    auto eps = levi_civita;
    if (u.is_vector()) {
        PolyTensor r(3, 1, 3);
        for (int i = 0; i < 3; ++i) {
            Poly s(3);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    if (eps(i, a, b) != 0) s = s + u.at(b).derivative(a) * Rat(eps(i, a, b));
            r.at(i) = s;
        }
        return r;
    }
    if (u.is_matrix()) {
        PolyTensor r(3, 3, 3);
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) {
                Poly s(3);
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        if (eps(i, a, b) != 0) s = s + u.at(b, j).derivative(a) * Rat(eps(i, a, b));
                r.at(i, j) = s;
            }
        return r;
    }
    throw shape_error("curl", u.rows, u.cols);
}

inline PolyTensor rot(const PolyTensor& u) {
    if (u.nvars != 2) throw shape_error("rot", u.rows, u.cols);
    if (u.is_vector()) return PolyTensor::scalar(u.at(1).derivative(0) - u.at(0).derivative(1));
    if (u.is_matrix()) {
        PolyTensor r(2, 1, 2);
        for (int j = 0; j < 2; ++j) r.at(j) = u.at(1, j).derivative(0) - u.at(0, j).derivative(1);
        return r;
    }
    throw shape_error("rot", u.rows, u.cols);
}

inline PolyTensor sym(const PolyTensor& u) {
    if (!u.is_matrix()) throw shape_error("sym", u.rows, u.cols);
    PolyTensor r(u.rows, u.cols, u.nvars);
    for (int i = 0; i < u.rows; ++i)
        for (int j = 0; j < u.cols; ++j) r.at(i, j) = (u.at(i, j) + u.at(j, i)) * Rat(1, 2);
    return r;
}

inline PolyTensor skw(const PolyTensor& u) {
    if (!u.is_matrix()) throw shape_error("skw", u.rows, u.cols);
    PolyTensor r(u.rows, u.cols, u.nvars);
    for (int i = 0; i < u.rows; ++i)
        for (int j = 0; j < u.cols; ++j) r.at(i, j) = (u.at(i, j) - u.at(j, i)) * Rat(1, 2);
    return r;
}

inline PolyTensor def_op(const PolyTensor& u) { return sym(grad(u)); }

inline PolyTensor mskw(const PolyTensor& u) {
    if (u.nvars != 2 || !u.is_scalar()) throw shape_error("mskw", u.rows, u.cols);
    PolyTensor r(2, 2, 2);
    r.at(0, 1) = u.at(0, 0);
    r.at(1, 0) = -u.at(0, 0);
    return r;
}

inline PolyTensor sskw(const PolyTensor& u) {
    if (u.nvars != 2 || !u.is_matrix()) throw shape_error("sskw", u.rows, u.cols);
    return PolyTensor::scalar((u.at(0, 1) - u.at(1, 0)) * Rat(1, 2));
}

inline PolyTensor hess(const PolyTensor& u) {
    if (!u.is_scalar()) throw shape_error("hess", u.rows, u.cols);
    const int n = u.nvars;
    PolyTensor r(n, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = u.at(0, 0).derivative(i).derivative(j);
    return r;
}

inline PolyTensor inc_3d(const PolyTensor& u) {
    if (u.nvars != 3 || !u.is_matrix()) throw shape_error("inc_3d", u.rows, u.cols);
    return curl(transpose(curl(u)));
}

inline PolyTensor trace(const PolyTensor& u) {
    if (!u.is_matrix()) throw shape_error("trace", u.rows, u.cols);
    Poly s(u.nvars);
    for (int i = 0; i < u.rows; ++i) s = s + u.at(i, i);
    return PolyTensor::scalar(s);
}

inline PolyTensor laplacian(const PolyTensor& u) {
    PolyTensor r(u.rows, u.cols, u.nvars);
    for (int i = 0; i < u.rows; ++i)
        for (int j = 0; j < u.cols; ++j) {
            Poly s(u.nvars);
            for (int v = 0; v < u.nvars; ++v) s = s + u.at(i, j).derivative(v).derivative(v);
            r.at(i, j) = s;
        }
    return r;
}

/// trace reversal S g = g - tr(g) I  (S^{-1} g = g - tr(g)/2 I in 3D)
inline PolyTensor trace_reversal(const PolyTensor& u) {
    if (!u.is_matrix()) throw shape_error("S", u.rows, u.cols);
    PolyTensor t = trace(u);
    PolyTensor r = u;
    for (int i = 0; i < u.rows; ++i) r.at(i, i) = r.at(i, i) - t.at(0, 0);
    return r;
}

inline PolyTensor trace_reversal_inv(const PolyTensor& u) {
    if (u.nvars != 3 || !u.is_matrix()) throw shape_error("S^{-1}", u.rows, u.cols);
    PolyTensor t = trace(u);
    PolyTensor r = u;
    for (int i = 0; i < 3; ++i) r.at(i, i) = r.at(i, i) - t.at(0, 0) * Rat(1, 2);
    return r;
}

inline PolyTensor rot_rot(const PolyTensor& u) { return rot(rot(u)); }

inline PolyTensor div_div(const PolyTensor& u) { return div(div(u)); }

/// named dispatch used by the CLI test-vector runner
inline PolyTensor poly_diff(const PolyTensor& u, const std::string& op) {
    if (op == "grad") return grad(u);
    if (op == "curl") return curl(u);
    if (op == "rot") return rot(u);
    if (op == "div") return div(u);
    if (op == "def") return def_op(u);
    if (op == "sym") return sym(u);
    if (op == "skw") return skw(u);
    if (op == "mskw") return mskw(u);
    if (op == "sskw") return sskw(u);
    if (op == "hess") return hess(u);
    if (op == "inc_3d") return inc_3d(u);
    if (op == "transpose") return transpose(u);
    throw std::invalid_argument("unknown differential operator '" + op + "'");
}

/// all partial derivatives of each entry up to `order`, evaluated exactly.
/// out[k] lists the order-k derivatives in lexicographic multi-index order,
/// entry-major.
inline std::vector<std::vector<Rat>> poly_jet(const PolyTensor& u, const std::vector<Rat>& pt, int order) {
    if (order < 0) throw std::invalid_argument("poly_jet: negative order");
    std::vector<std::vector<Rat>> out(order + 1);
    for (int k = 0; k <= order; ++k) {
        for (const auto& p : u.entry) {
            // derivatives of total order k, lexicographic in the exponent multi-index
            std::vector<Mono> idx;
            for (const auto& m : monomials_up_to(k, u.nvars))
                if (static_cast<int>(m.degree()) == k) idx.push_back(m);
            for (const auto& m : idx) {
                Poly d = p;
                for (int v = 0; v < u.nvars; ++v)
                    for (unsigned c = 0; c < m.e[v]; ++c) d = d.derivative(v);
                out[k].push_back(d.eval(pt));
            }
        }
    }
    return out;
}

}  // namespace bggfe
