#include "bggfe/curvature.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <optional>

using namespace bggfe;

namespace {

PolyTensor random_symmetric(RatRng& rng, int n, int deg) {
    PolyTensor h(n, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            Poly p(n);
            for (const auto& m : monomials_up_to(deg, n)) p.add_term(m, rng.next_rat(2, 3));
            h.at(i, j) = p;
            h.at(j, i) = p;
        }
    return h;
}

std::vector<Rat> random_point(RatRng& rng, int n) {
    std::vector<Rat> p;
    for (int i = 0; i < n; ++i) p.push_back(rng.next_rat(2, 4));
    return p;
}

/// I + s*P with s halved until positive definite at the point
PolyTensor random_metric(RatRng& rng, int n, int deg, const std::vector<Rat>& pt) {
    PolyTensor p = random_symmetric(rng, n, deg);
    Rat s(1, 2);
    for (int tries = 0; tries < 64; ++tries, s /= 2) {
        PolyTensor g = PolyTensor::identity(n, n) + p * s;
        try {
            MetricJet::from_poly(g, pt, 2);
            return g;
        } catch (const std::domain_error&) {
        }
    }
    throw std::runtime_error("could not scale metric to positive definite");
}

PolyTensor identity_map(int n) {
    PolyTensor id(n, 1, n);
    for (int i = 0; i < n; ++i) id.at(i) = Poly::variable(i, n);
    return id;
}

bool all_zero(const std::vector<Rat>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

}  // namespace

TEST_CASE("Euclidean metric: every curvature tensor vanishes") {
    for (int n : {2, 3}) {
        auto jet = MetricJet::from_poly(PolyTensor::identity(n, n), std::vector<Rat>(n, rat(1, 3)), 2);
        auto cv = curvature_at(jet);
        CHECK(all_zero(cv.christoffel));
        CHECK(all_zero(cv.riemann));
        CHECK(all_zero(cv.ricci));
        CHECK(is_zero(cv.scalar));
    }
}

TEST_CASE("polar-type metric diag(1, x^2): classical Christoffels, flat") {
    PolyTensor g(2, 2, 2);
    g.at(0, 0) = Poly::constant(1, 2);
    g.at(1, 1) = parse_poly("x^2", 2);
    auto jet = MetricJet::from_poly(g, {rat(2), rat(0)}, 2);
    auto cv = curvature_at(jet);
    CHECK(cv.gamma(0, 1, 1) == rat(-2));   // Gamma^1_{22}
    CHECK(cv.gamma(1, 0, 1) == rat(1, 2)); // Gamma^2_{12}
    CHECK(all_zero(cv.ricci));
    CHECK(all_zero(cv.riemann));
}

TEST_CASE("metric must be positive definite at the point") {
    PolyTensor g(2, 2, 2);
    g.at(0, 0) = Poly::constant(-1, 2);
    g.at(1, 1) = Poly::constant(1, 2);
    CHECK_THROWS_AS(MetricJet::from_poly(g, {rat(0), rat(0)}, 2), std::domain_error);
}

TEST_CASE("iota: zero cases and uniform scaling") {
    for (int n : {2, 3}) {
        PolyTensor id = identity_map(n);
        PolyTensor g0 = PolyTensor::identity(n, n);
        CHECK(iota(id, id, g0).is_zero());
        PolyTensor twox = id * rat(2);
        CHECK(iota(twox, id, g0) == g0 * rat(3));  // 4I - I
    }
}

TEST_CASE("iota of a rigid motion composed with phi0 is zero") {
    // Q = [[3/5,4/5],[-4/5,3/5]] is exactly orthogonal
    RatRng rng(21);
    PolyTensor phi0(2, 1, 2);
    phi0.at(0) = parse_poly("x + 1/2*x*y", 2);
    phi0.at(1) = parse_poly("y - 1/3*x^2", 2);
    PolyTensor r(2, 1, 2);
    r.at(0) = phi0.at(0) * rat(3, 5) + phi0.at(1) * rat(4, 5) + Poly::constant(rat(7, 2), 2);
    r.at(1) = phi0.at(0) * rat(-4, 5) + phi0.at(1) * rat(3, 5) + Poly::constant(rat(-1, 3), 2);
    CHECK(iota(r, phi0, PolyTensor::identity(2, 2)).is_zero());
}

TEST_CASE("Ric o iota = 0: pullback metrics are flat at sample points") {
    RatRng rng(42);
    for (int n : {2, 3}) {
        int done = 0;
        while (done < 50) {
            auto pt = random_point(rng, n);
            PolyTensor phi = identity_map(n);
            for (int i = 0; i < n; ++i) {
                Poly p(n);
                for (const auto& m : monomials_up_to(3, n)) p.add_term(m, rng.next_rat(1, 4));
                phi.at(i) = phi.at(i) + p * rat(1, 4);
            }
            PolyTensor g = iota(phi, identity_map(n), PolyTensor::identity(n, n)) + PolyTensor::identity(n, n);
            std::optional<MetricJet> jet;
            try {
                jet.emplace(MetricJet::from_poly(g, pt, 2));
            } catch (const std::domain_error&) {
                continue;  // det Dphi = 0 at the point; resample
            }
            auto cv = curvature_at(*jet);
            CHECK(all_zero(cv.riemann));
            CHECK(all_zero(cv.ricci));
            CHECK(is_zero(cv.scalar));
            ++done;
        }
    }
}

TEST_CASE("curvature symmetries hold exactly on a random corpus") {
    RatRng rng(1234);
    for (int n : {2, 3}) {
        for (int t = 0; t < 50; ++t) {
            auto pt = random_point(rng, n);
            PolyTensor g = random_metric(rng, n, 3, pt);
            auto cv = curvature_at(MetricJet::from_poly(g, pt, 2));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) CHECK(cv.gamma(i, j, k) == cv.gamma(i, k, j));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    CHECK(cv.ric(i, j) == cv.ric(j, i));
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            CHECK(cv.low(i, j, k, l) == -cv.low(j, i, k, l));
                            CHECK(cv.low(i, j, k, l) == -cv.low(i, j, l, k));
                            CHECK(cv.low(i, j, k, l) == cv.low(k, l, i, j));
                            // first Bianchi, cyclic form
                            CHECK(is_zero(cv.low(i, j, k, l) + cv.low(j, k, i, l) + cv.low(k, i, j, l)));
                        }
                }
        }
    }
}

TEST_CASE("Bianchi operator: flat-background cases") {
    // flat g, constant sigma
    auto flat2 = MetricJet::from_poly(PolyTensor::identity(2, 2), {rat(0), rat(0)}, 3);
    PolyTensor sig(2, 2, 2);
    sig.at(0, 0) = Poly::constant(3, 2);
    sig.at(1, 1) = Poly::constant(-2, 2);
    CHECK(all_zero(bianchi_at(flat2, jets_from_polytensor(sig, {rat(0), rat(0)}, 1))));

    // flat g, sigma = [[x,0],[0,0]]: divergence of sigma - tr(sigma)/2 I = (1/2, 0)
    PolyTensor sx(2, 2, 2);
    sx.at(0, 0) = parse_poly("x", 2);
    auto b = bianchi_at(flat2, jets_from_polytensor(sx, {rat(0), rat(0)}, 1));
    CHECK(b == std::vector<Rat>{rat(1, 2), rat(0)});

    PolyTensor nonsym(2, 2, 2);
    nonsym.at(0, 1) = parse_poly("x", 2);
    CHECK_THROWS(bianchi_at(flat2, jets_from_polytensor(nonsym, {rat(0), rat(0)}, 1)));
}

TEST_CASE("Bian o Ric = 0 on random order-3 metric jets") {
    RatRng rng(77);
    for (int n : {2, 3}) {
        for (int t = 0; t < 50; ++t) {
            auto pt = random_point(rng, n);
            PolyTensor g = random_metric(rng, n, 3, pt);
            auto jet = MetricJet::from_poly(g, pt, 3);
            auto sigma = ricci_jets(jet);
            CHECK(all_zero(bianchi_at(jet, sigma)));
        }
    }
}

TEST_CASE("linearized Ricci: formal-t expansion equals the closed form") {
    RatRng rng(31);
    for (int n : {2, 3}) {
        PolyTensor hconst = PolyTensor::identity(n, n) * rat(5, 7);
        CHECK(linearize_curvature(hconst).ricci.is_zero());
        CHECK(linearized_ricci_expansion(hconst).is_zero());
        for (int t = 0; t < 25; ++t) {
            PolyTensor h = random_symmetric(rng, n, 3);
            auto lin = linearize_curvature(h);
            CHECK(lin.ricci == linearized_ricci_expansion(h));
        }
    }
}

TEST_CASE("linearized Einstein equals inc h / 2 in 3D") {
    RatRng rng(32);
    for (int t = 0; t < 25; ++t) {
        PolyTensor h = random_symmetric(rng, 3, 3);
        CHECK(linearize_curvature(h).einstein == inc_3d(h) * rat(1, 2));
    }
}

TEST_CASE("lowered linearized Riemann equals G/2: hand case and corpus") {
    // h = diag(y^2, 0, 0): inc h = diag(0,0,2), G_{1212} = 2, R_{1212} = 1
    PolyTensor h(3, 3, 3);
    h.at(0, 0) = parse_poly("y^2", 3);
    auto g4 = riemann4_from_inc(h);
    CHECK(g4[((0 * 3 + 1) * 3 + 0) * 3 + 1] == Poly::constant(2, 3));
    auto res = riemann4_identity_residual(h);
    for (const auto& p : res) CHECK(p.is_zero_poly());

    RatRng rng(33);
    for (int t = 0; t < 25; ++t) {
        auto r = riemann4_identity_residual(random_symmetric(rng, 3, 3));
        for (const auto& p : r) CHECK(p.is_zero_poly());
    }
}

TEST_CASE("linearized contracted Christoffel equals div S^{-1} h") {
    RatRng rng(34);
    for (int t = 0; t < 25; ++t) {
        PolyTensor h = random_symmetric(rng, 3, 3);
        CHECK(linearize_curvature(h).contracted == div(trace_reversal_inv(h)));
    }
    // the same formula div(h - tr(h)/2 I) holds in 2D
    for (int t = 0; t < 25; ++t) {
        PolyTensor h = random_symmetric(rng, 2, 3);
        PolyTensor s = h;
        PolyTensor tr = trace(h);
        for (int i = 0; i < 2; ++i) s.at(i, i) = s.at(i, i) - tr.at(0, 0) * rat(1, 2);
        CHECK(linearize_curvature(h).contracted == div(s));
    }
}

TEST_CASE("trace identity: tr inc h = lap tr h - div div h") {
    RatRng rng(35);
    for (int t = 0; t < 25; ++t) {
        PolyTensor h = random_symmetric(rng, 3, 3);
        PolyTensor lhs = trace(inc_3d(h));
        PolyTensor rhs = laplacian(trace(h)) - div_div(h);
        CHECK(lhs == rhs);
    }
}

// The two sign facts below are where the engine disagrees with one printed
// form; the corrected identities hold exactly, and a concrete witness pins
// the sign. See the acceptance suite for the as-stated checks.
TEST_CASE("2D linearized scalar curvature is MINUS rot rot h") {
    RatRng rng(36);
    for (int t = 0; t < 25; ++t) {
        PolyTensor h = random_symmetric(rng, 2, 3);
        auto lin = linearize_curvature(h);
        CHECK(lin.scalar == -(rot_rot(h).at(0, 0)));
    }
    // witness: h = diag(0, x^2) gives metric diag(1, 1+t x^2) with
    // Gauss curvature -t + O(t^2), so R_lin = -2 while rot rot h = +2
    PolyTensor h(2, 2, 2);
    h.at(1, 1) = parse_poly("x^2", 2);
    CHECK(linearize_curvature(h).scalar == Poly::constant(-2, 2));
    CHECK(rot_rot(h).at(0, 0) == Poly::constant(2, 2));
}

TEST_CASE("the Einstein tensor vanishes identically in 2D") {
    RatRng rng(38);
    for (int t = 0; t < 25; ++t) {
        auto pt = random_point(rng, 2);
        PolyTensor g = random_metric(rng, 2, 3, pt);
        auto cv = curvature_at(MetricJet::from_poly(g, pt, 2));
        CHECK(all_zero(cv.einstein));
        PolyTensor h = random_symmetric(rng, 2, 3);
        CHECK(linearize_curvature(h).einstein.is_zero());
    }
}

TEST_CASE("3D linearized scalar curvature is PLUS div div S h, and Ric = S inc h / 2") {
    RatRng rng(37);
    for (int t = 0; t < 25; ++t) {
        PolyTensor h = random_symmetric(rng, 3, 3);
        auto lin = linearize_curvature(h);
        CHECK(lin.scalar == div_div(trace_reversal(h)).at(0, 0));
        CHECK(lin.ricci == trace_reversal(inc_3d(h)) * rat(1, 2));
    }
}
