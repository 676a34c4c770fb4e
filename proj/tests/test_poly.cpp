#include "bggfe/polynomial.hpp"
#include "bggfe/tensor.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace bggfe;

TEST_CASE("parse, print, evaluate") {
    Poly p = parse_poly("3/2*x^2*y - z + 1", 3);
    CHECK(p.eval({rat(1), rat(2), rat(3)}) == rat(1));
    CHECK(p.eval({rat(2), rat(1), rat(0)}) == rat(7));
    CHECK(parse_poly(p.str(), 3) == p);

    CHECK(parse_poly("x1 + 2*x2", 2) == parse_poly("x + 2*y", 2));
    CHECK(parse_poly("-x^2", 1).eval({rat(3)}) == rat(-9));
    CHECK(parse_poly("0.5*x", 1).eval({rat(4)}) == rat(2));
    CHECK_THROWS(parse_poly("x + w", 2));
    CHECK_THROWS(parse_poly("z", 2));
}

TEST_CASE("no zero coefficients are stored") {
    Poly p = parse_poly("x + y", 2) - parse_poly("x", 2) - parse_poly("y", 2);
    CHECK(p.is_zero_poly());
    CHECK(p.terms().empty());
    CHECK(p.degree() == -1);
}

TEST_CASE("derivative and affine composition") {
    Poly p = parse_poly("x^3*y", 2);
    CHECK(p.derivative(0) == parse_poly("3*x^2*y", 2));
    CHECK(p.derivative(1) == parse_poly("x^3", 2));

    // restrict x = 1 + 2t, y = t
    Poly q = p.compose_affine({rat(1), rat(0)}, {{rat(2)}, {rat(1)}}, 1);
    CHECK(q == parse_poly("x + 6*x^2 + 12*x^3 + 8*x^4", 1));
}

TEST_CASE("exact integrals") {
    CHECK(integrate_unit_interval(parse_poly("x^2", 1)) == rat(1, 3));
    CHECK(integrate_unit_interval(parse_poly("2*x - 1", 1)) == rat(0));

    std::array<Rat, 2> v0{rat(0), rat(0)}, v1{rat(1), rat(0)}, v2{rat(0), rat(1)};
    CHECK(integrate_triangle(Poly::constant(1, 2), v0, v1, v2) == rat(1, 2));
    CHECK(integrate_triangle(parse_poly("x", 2), v0, v1, v2) == rat(1, 6));
    CHECK(integrate_triangle(parse_poly("x*y", 2), v0, v1, v2) == rat(1, 24));
    // translation invariance of the measure
    std::array<Rat, 2> w0{rat(3), rat(1)}, w1{rat(4), rat(1)}, w2{rat(3), rat(2)};
    CHECK(integrate_triangle(Poly::constant(1, 2), w0, w1, w2) == rat(1, 2));
}

TEST_CASE("poly_jet returns all derivatives up to the order") {
    // p = x^3 at x = 2, order 2 -> (8, 12, 12)
    PolyTensor p(1, 1, 1);
    p.at(0, 0) = parse_poly("x^3", 1);
    auto jet = poly_jet(p, {rat(2)}, 2);
    REQUIRE(jet.size() == 3);
    CHECK(jet[0] == std::vector<Rat>{rat(8)});
    CHECK(jet[1] == std::vector<Rat>{rat(12)});
    CHECK(jet[2] == std::vector<Rat>{rat(12)});

    // constant
    PolyTensor c(1, 1, 2);
    c.at(0, 0) = Poly::constant(rat(5, 3), 2);
    auto cj = poly_jet(c, {rat(1), rat(7)}, 1);
    CHECK(cj[0] == std::vector<Rat>{rat(5, 3)});
    CHECK(cj[1] == std::vector<Rat>{rat(0), rat(0)});

    // p = x^2 y at (1,1): value 1, gradient (2, 1)
    PolyTensor q(1, 1, 2);
    q.at(0, 0) = parse_poly("x^2*y", 2);
    auto qj = poly_jet(q, {rat(1), rat(1)}, 1);
    CHECK(qj[0] == std::vector<Rat>{rat(1)});
    CHECK(qj[1] == std::vector<Rat>{rat(2), rat(1)});
}
