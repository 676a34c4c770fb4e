// Pointwise-exact curvature of polynomial metrics, and symbolic linearized
// operators around the Euclidean metric.
//
// The same formulas run over two scalar rings:
//   Jet  -- truncated Taylor arithmetic at a point (nonlinear, exact);
//   Dual -- a + t*b with t^2 = 0 (first-order expansion, fully symbolic).
//
// Conventions: R^k_{ijl} = d_i G^k_{jl} - d_j G^k_{il} + G^k_{im}G^m_{jl}
//                          - G^k_{jm}G^m_{il}
//              Ricci_{jl} = R^k_{kjl},  scalar R = g^{jl} Ricci_{jl},
//              Einstein = Ricci - R/2 g,
//              lowered R_{ijkl} = g(R(e_i,e_j)e_k, e_l) = g_{lm} R^m_{ijk}.
#pragma once

#include "bggfe/jet.hpp"
#include "bggfe/matrix.hpp"
#include "bggfe/tensor.hpp"

#include <stdexcept>
#include <vector>

namespace bggfe {

template <class S>
struct CurvatureTensors {
    int n;
    std::vector<S> christoffel;   // [(k*n+i)*n+j] = Gamma^k_{ij}
    std::vector<S> contracted;    // Gamma^i = g^{jk} Gamma^i_{jk}
    std::vector<S> riemann_mixed; // [((k*n+i)*n+j)*n+l] = R^k_{ijl}
    std::vector<S> riemann_low;   // [((i*n+j)*n+k)*n+l] = R_{ijkl}
    std::vector<S> ricci;         // [j*n+l]
    S scalar;
    std::vector<S> einstein;      // [j*n+l]

    const S& gamma(int k, int i, int j) const { return christoffel[(k * n + i) * n + j]; }
    const S& mixed(int k, int i, int j, int l) const { return riemann_mixed[((k * n + i) * n + j) * n + l]; }
    const S& low(int i, int j, int k, int l) const { return riemann_low[((i * n + j) * n + k) * n + l]; }
};

/// Full curvature computation over a scalar ring. `deriv(s, var)` is the
/// partial derivative in the ring; `zero` is the additive identity sample.
template <class S, class DF>
CurvatureTensors<S> curvature_tensors(const RingMat<S>& g, const RingMat<S>& ginv, DF deriv, const S& zero) {
    const int n = g.n;
    CurvatureTensors<S> out{n, {}, {}, {}, {}, {}, zero, {}};

    out.christoffel.assign(n * n * n, zero);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                S s = zero;
                for (int l = 0; l < n; ++l)
                    s = s + ginv.at(k, l) * (deriv(g.at(l, i), j) + deriv(g.at(l, j), i) - deriv(g.at(i, j), l));
                out.christoffel[(k * n + i) * n + j] = s * Rat(1, 2);
            }

    out.contracted.assign(n, zero);
    for (int i = 0; i < n; ++i) {
        S s = zero;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s = s + ginv.at(j, k) * out.gamma(i, j, k);
        out.contracted[i] = s;
    }

    out.riemann_mixed.assign(n * n * n * n, zero);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) {
                    S s = deriv(out.gamma(k, j, l), i) - deriv(out.gamma(k, i, l), j);
                    for (int m = 0; m < n; ++m)
                        s = s + out.gamma(k, i, m) * out.gamma(m, j, l) - out.gamma(k, j, m) * out.gamma(m, i, l);
                    out.riemann_mixed[((k * n + i) * n + j) * n + l] = s;
                }

    out.riemann_low.assign(n * n * n * n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    S s = zero;
                    for (int m = 0; m < n; ++m) s = s + g.at(l, m) * out.mixed(m, i, j, k);
                    out.riemann_low[((i * n + j) * n + k) * n + l] = s;
                }

    out.ricci.assign(n * n, zero);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            S s = zero;
            for (int k = 0; k < n; ++k) s = s + out.mixed(k, k, j, l);
            out.ricci[j * n + l] = s;
        }

    {
        S s = zero;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) s = s + ginv.at(j, l) * out.ricci[j * n + l];
        out.scalar = s;
    }

    out.einstein.assign(n * n, zero);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            out.einstein[j * n + l] = out.ricci[j * n + l] - out.scalar * g.at(j, l) * Rat(1, 2);

    return out;
}

// ---------------------------------------------------------------------------
// Metric jets
// ---------------------------------------------------------------------------

/// Values of a metric and its derivatives up to `order` at a point, with the
/// inverse cached. Construction checks symmetry and positive definiteness.
struct MetricJet {
    int n;
    int order;
    std::vector<Rat> point;
    RingMat<Jet> g;
    RingMat<Jet> ginv;

    static MetricJet from_poly(const PolyTensor& metric, const std::vector<Rat>& point, int order) {
        const int n = metric.nvars;
        if (!metric.is_matrix()) throw shape_error("metric", metric.rows, metric.cols);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!(metric.at(i, j) == metric.at(j, i))) throw std::invalid_argument("metric is not symmetric");
        RingMat<Jet> g(n, Jet::constant(0, n, order));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j) = Jet::from_poly(metric.at(i, j), point, order);
        // positivity at the point via leading principal minors
        Mat v(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v(i, j) = g.at(i, j).value();
        Rat m1 = v(0, 0);
        Rat m2 = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
        bool pd = sgn(m1) > 0 && sgn(m2) > 0;
        if (n == 3 && pd) {
            Rat m3 = v(0, 0) * (v(1, 1) * v(2, 2) - v(1, 2) * v(2, 1)) -
                     v(0, 1) * (v(1, 0) * v(2, 2) - v(1, 2) * v(2, 0)) +
                     v(0, 2) * (v(1, 0) * v(2, 1) - v(1, 1) * v(2, 0));
            pd = sgn(m3) > 0;
        }
        if (!pd) throw std::domain_error("metric is not positive definite at the sample point");
        return MetricJet{n, order, point, g, jet_matrix_inverse(g)};
    }
};

/// exact curvature values at the center of the jet
struct CurvatureValues {
    int n;
    std::vector<Rat> christoffel;    // Gamma^i_{jk}
    std::vector<Rat> contracted;     // Gamma^i
    std::vector<Rat> riemann_mixed;  // R^k_{ijl}
    std::vector<Rat> riemann;        // lowered R_{ijkl}
    std::vector<Rat> ricci;
    Rat scalar;
    std::vector<Rat> einstein;

    Rat gamma(int i, int j, int k) const { return christoffel[(i * n + j) * n + k]; }
    Rat low(int i, int j, int k, int l) const { return riemann[((i * n + j) * n + k) * n + l]; }
    Rat ric(int i, int j) const { return ricci[i * n + j]; }
    Rat ein(int i, int j) const { return einstein[i * n + j]; }
};

/// needs the jet valid to order 2 (order 3 only for bianchi_at)
inline CurvatureValues curvature_at(const MetricJet& jet) {
    if (jet.order < 2) throw std::invalid_argument("curvature_at needs a metric jet of order >= 2");
    auto deriv = [](const Jet& s, int var) { return s.derivative(var); };
    auto t = curvature_tensors(jet.g, jet.ginv, deriv, Jet::constant(0, jet.n, jet.order));
    CurvatureValues out;
    out.n = jet.n;
    for (const auto& s : t.christoffel) out.christoffel.push_back(s.value());
    for (const auto& s : t.contracted) out.contracted.push_back(s.value());
    for (const auto& s : t.riemann_mixed) out.riemann_mixed.push_back(s.value());
    for (const auto& s : t.riemann_low) out.riemann.push_back(s.value());
    for (const auto& s : t.ricci) out.ricci.push_back(s.value());
    out.scalar = t.scalar.value();
    for (const auto& s : t.einstein) out.einstein.push_back(s.value());
    return out;
}

/// covariant divergence of sigma - (tr_g sigma)/2 g with respect to g's
/// Levi-Civita connection, evaluated at the jet center
inline std::vector<Rat> bianchi_at(const MetricJet& jet, const RingMat<Jet>& sigma) {
    const int n = jet.n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(sigma.at(i, j) == sigma.at(j, i))) throw std::invalid_argument("bianchi_at: sigma is not symmetric");
    auto deriv = [](const Jet& s, int var) { return s.derivative(var); };
    const Jet zero = Jet::constant(0, n, jet.order);
    auto t = curvature_tensors(jet.g, jet.ginv, deriv, zero);

    Jet tr = zero;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) tr = tr + jet.ginv.at(a, b) * sigma.at(a, b);
    RingMat<Jet> sp(n, zero);  // sigma' = sigma - tr/2 g
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sp.at(i, j) = sigma.at(i, j) - tr * jet.g.at(i, j) * Rat(1, 2);

    std::vector<Rat> out(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        Jet s = zero;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                Jet cov = sp.at(i, j).derivative(k);
                for (int m = 0; m < n; ++m)
                    cov = cov - t.gamma(m, k, i) * sp.at(m, j) - t.gamma(m, k, j) * sp.at(i, m);
                s = s + jet.ginv.at(i, k) * cov;
            }
        out[j] = s.value();
    }
    return out;
}

inline RingMat<Jet> jets_from_polytensor(const PolyTensor& t, const std::vector<Rat>& point, int order) {
    if (!t.is_matrix()) throw shape_error("jets_from_polytensor", t.rows, t.cols);
    RingMat<Jet> m(t.nvars, Jet::constant(0, t.nvars, order));
    for (int i = 0; i < t.nvars; ++i)
        for (int j = 0; j < t.nvars; ++j) m.at(i, j) = Jet::from_poly(t.at(i, j), point, order);
    return m;
}

/// Ricci tensor as jets (valid to order jet.order - 2); input to bianchi_at
inline RingMat<Jet> ricci_jets(const MetricJet& jet) {
    auto deriv = [](const Jet& s, int var) { return s.derivative(var); };
    auto t = curvature_tensors(jet.g, jet.ginv, deriv, Jet::constant(0, jet.n, jet.order));
    RingMat<Jet> r(jet.n, t.ricci[0]);
    for (int i = 0; i < jet.n; ++i)
        for (int j = 0; j < jet.n; ++j) r.at(i, j) = t.ricci[i * jet.n + j];
    return r;
}

// ---------------------------------------------------------------------------
// Nonlinear metric-change operator
// ---------------------------------------------------------------------------

/// iota(phi) = Dphi g0 Dphi^t - Dphi0 g0 Dphi0^t with (Dphi)_{ij} = d_i phi_j
inline PolyTensor iota(const PolyTensor& phi, const PolyTensor& phi0, const PolyTensor& g0) {
    if (!phi.is_vector() || !phi0.is_vector()) throw shape_error("iota", phi.rows, phi.cols);
    PolyTensor d = grad(phi), d0 = grad(phi0);
    return d * g0 * transpose(d) - d0 * g0 * transpose(d0);
}

// ---------------------------------------------------------------------------
// Linearization around the Euclidean metric (formal nilpotent parameter)
// ---------------------------------------------------------------------------

struct LinearizedCurvature {
    int n;
    PolyTensor ricci;         // t-linear part of Ric(I + tH)
    PolyTensor einstein;
    Poly scalar;              // t-linear part of R(I + tH)
    PolyTensor contracted;    // t-linear part of Gamma^i
    std::vector<Poly> riemann_low;  // t-linear lowered R_{ijkl}, index ((i n + j) n + k) n + l
};

/// exact first-order expansion of all curvature tensors at g = I + tH
inline LinearizedCurvature linearize_curvature(const PolyTensor& h) {
    const int n = h.nvars;
    if (!h.is_matrix()) throw shape_error("linearize_curvature", h.rows, h.cols);
    const Dual dzero(n);
    RingMat<Dual> g(n, dzero), ginv(n, dzero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat id = i == j ? Rat(1) : Rat(0);
            g.at(i, j) = Dual(Poly::constant(id, n), h.at(i, j));
            ginv.at(i, j) = Dual(Poly::constant(id, n), -h.at(i, j));  // (I + tH)^{-1} = I - tH
        }
    auto deriv = [](const Dual& s, int var) { return s.derivative(var); };
    auto t = curvature_tensors(g, ginv, deriv, dzero);

    LinearizedCurvature out;
    out.n = n;
    out.ricci = PolyTensor(n, n, n);
    out.einstein = PolyTensor(n, n, n);
    out.contracted = PolyTensor(n, 1, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.ricci.at(i, j) = t.ricci[i * n + j].b;
            out.einstein.at(i, j) = t.einstein[i * n + j].b;
        }
    out.scalar = t.scalar.b;
    for (int i = 0; i < n; ++i) out.contracted.at(i) = t.contracted[i].b;
    for (const auto& s : t.riemann_low) out.riemann_low.push_back(s.b);
    return out;
}

/// closed-form linearized Ricci: (-Delta h - hess tr h + 2 def div h)/2
inline PolyTensor linearized_ricci_expansion(const PolyTensor& h) {
    PolyTensor t = def_op(div(h)) * Rat(2) - laplacian(h) - hess(trace(h));
    return t * Rat(1, 2);
}

/// G_{ijkl} = eps_{ij}^s eps_{kl}^t (inc h)_{st}  (3D)
inline std::vector<Poly> riemann4_from_inc(const PolyTensor& h) {
    if (h.nvars != 3 || !h.is_matrix()) throw shape_error("riemann4_from_inc", h.rows, h.cols);
    PolyTensor q = inc_3d(h);
    const int n = 3;
    std::vector<Poly> out(n * n * n * n, Poly(3));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Poly s(3);
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) {
                            int e1 = levi_civita(i, j, a), e2 = levi_civita(k, l, b);
                            if (e1 && e2) s = s + q.at(a, b) * Rat(e1 * e2);
                        }
                    out[((i * n + j) * n + k) * n + l] = s;
                }
    return out;
}

/// residual of R_{ijkl} - G_{ijkl}/2 for the linearized lowered Riemann tensor;
/// empty result polynomials mean the identity holds exactly
inline std::vector<Poly> riemann4_identity_residual(const PolyTensor& h) {
    auto lin = linearize_curvature(h);
    auto g4 = riemann4_from_inc(h);
    std::vector<Poly> res;
    res.reserve(g4.size());
    for (size_t idx = 0; idx < g4.size(); ++idx) res.push_back(lin.riemann_low[idx] - g4[idx] * Rat(1, 2));
    return res;
}

}  // namespace bggfe
