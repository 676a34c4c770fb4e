#include "bggfe/tensor.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace bggfe;

namespace {

PolyTensor random_field(RatRng& rng, int rows, int cols, int nvars, int deg) {
    PolyTensor t(rows, cols, nvars);
    for (auto& p : t.entry)
        for (const auto& m : monomials_up_to(deg, nvars)) p.add_term(m, rng.next_rat(3, 2));
    return t;
}

}  // namespace

TEST_CASE("mskw of the scalar 1") {
    PolyTensor one = PolyTensor::scalar(Poly::constant(1, 2));
    PolyTensor m = mskw(one);
    CHECK(m.at(0, 0).is_zero_poly());
    CHECK(m.at(0, 1) == Poly::constant(1, 2));
    CHECK(m.at(1, 0) == Poly::constant(-1, 2));
    CHECK(m.at(1, 1).is_zero_poly());
}

TEST_CASE("rot rot of [[y^2,0],[0,x^2]] is 4") {
    PolyTensor g(2, 2, 2);
    g.at(0, 0) = parse_poly("y^2", 2);
    g.at(1, 1) = parse_poly("x^2", 2);
    PolyTensor r = rot(rot(g));
    CHECK(r.is_scalar());
    CHECK(r.at(0, 0) == Poly::constant(4, 2));
}

TEST_CASE("inc of a constant symmetric 3D matrix is zero") {
    PolyTensor c(3, 3, 3);
    c.at(0, 0) = Poly::constant(2, 3);
    c.at(0, 1) = c.at(1, 0) = Poly::constant(rat(1, 3), 3);
    c.at(2, 2) = Poly::constant(-1, 3);
    CHECK(inc_3d(c).is_zero());
}

TEST_CASE("sym + skw = id and sskw o mskw = id on a random corpus") {
    RatRng rng(5);
    for (int t = 0; t < 100; ++t) {
        int n = (t % 2) ? 2 : 3;
        PolyTensor u = random_field(rng, n, n, n, 3);
        CHECK(sym(u) + skw(u) == u);
        if (n == 2) {
            PolyTensor s = random_field(rng, 1, 1, 2, 3);
            CHECK(sskw(mskw(s)) == s);
        }
    }
}

// Sign-convention anchors, checked per monomial through degree 3: any linear
// identity verified on all monomials holds for every polynomial up to that
// degree.
TEST_CASE("anchor: rot skw u = -grad sskw u for 2D matrix monomial fields") {
    for (const auto& m : monomials_up_to(3, 2)) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                PolyTensor u(2, 2, 2);
                u.at(i, j) = Poly::monomial(m, rat(1), 2);
                CHECK(rot(skw(u)) == grad(sskw(u)) * rat(-1));
            }
    }
}

TEST_CASE("anchor: -2 sskw(curl u) = div u for 2D vector monomial fields") {
    for (const auto& m : monomials_up_to(3, 2)) {
        for (int i = 0; i < 2; ++i) {
            PolyTensor u(2, 1, 2);
            u.at(i) = Poly::monomial(m, rat(1), 2);
            CHECK(sskw(curl(u)) * rat(-2) == div(u));
        }
    }
}

TEST_CASE("rot o mskw = -grad for scalar monomials") {
    for (const auto& m : monomials_up_to(3, 2)) {
        PolyTensor s(1, 1, 2);
        s.at(0, 0) = Poly::monomial(m, rat(1), 2);
        CHECK(rot(mskw(s)) == grad(s) * rat(-1));
    }
}

TEST_CASE("complex identities: rot grad = 0, div curl = 0 (2D), curl grad = 0 (3D)") {
    for (const auto& m : monomials_up_to(3, 2)) {
        PolyTensor s(1, 1, 2);
        s.at(0, 0) = Poly::monomial(m, rat(1), 2);
        CHECK(rot(grad(s)).is_zero());
        CHECK(div(curl(s)).is_zero());
        // vector versions, column-wise
        for (int i = 0; i < 2; ++i) {
            PolyTensor u(2, 1, 2);
            u.at(i) = Poly::monomial(m, rat(1), 2);
            CHECK(rot(grad(u)).is_zero());
            CHECK(div(curl(u)).is_zero());
        }
    }
    for (const auto& m : monomials_up_to(3, 3)) {
        PolyTensor s(1, 1, 3);
        s.at(0, 0) = Poly::monomial(m, rat(1), 3);
        CHECK(curl(grad(s)).is_zero());
    }
}

TEST_CASE("trace reversal maps") {
    PolyTensor id3 = PolyTensor::identity(3, 3);
    CHECK(trace_reversal(id3) == id3 * rat(-2));
    CHECK(trace_reversal_inv(id3) == id3 * rat(-1, 2));
    RatRng rng(3);
    for (int t = 0; t < 20; ++t) {
        PolyTensor g = random_field(rng, 3, 3, 3, 2);
        CHECK(trace_reversal_inv(trace_reversal(g)) == g);
        CHECK(trace_reversal(trace_reversal_inv(g)) == g);
    }
}

TEST_CASE("shape mismatches are loud and name the operator") {
    PolyTensor v(3, 1, 3);
    CHECK_THROWS_AS(rot(v), shape_error);
    CHECK_THROWS_AS(mskw(v), shape_error);
    CHECK_THROWS_WITH(sskw(v), Catch::Matchers::ContainsSubstring("sskw"));
    PolyTensor s(1, 1, 2);
    CHECK_THROWS_AS(inc_3d(s), shape_error);
    CHECK_THROWS_AS(trace(s), shape_error);
}

TEST_CASE("poly_diff dispatch") {
    PolyTensor s(1, 1, 2);
    s.at(0, 0) = parse_poly("x*y", 2);
    CHECK(poly_diff(s, "grad") == grad(s));
    CHECK(poly_diff(poly_diff(s, "grad"), "rot").is_zero());
    CHECK_THROWS(poly_diff(s, "bogus"));
}
