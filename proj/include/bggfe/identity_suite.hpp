// Named curvature identity checks over seeded random corpora (or supplied
// test vectors). Each check reports exact pass/fail per case; nothing is
// compared with a tolerance.
#pragma once

#include "bggfe/curvature.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bggfe {

struct IdentityCheck {
    std::string name;
    bool pass;
    int cases;
    int failures;
    std::string detail;
};

struct CurvatureCase {
    int dimension = 3;
    std::optional<PolyTensor> g;    // symmetric direction / metric field
    std::optional<PolyTensor> phi;  // polynomial map for the pullback check
    std::vector<std::vector<Rat>> points;
};

inline const std::vector<std::string>& curvature_check_names() {
    static const std::vector<std::string> names = {
        "ric-iota",          // Riemann(iota(phi) + I) = 0 at sample points
        "bianchi",           // Bian_g(Ric(g)) = 0
        "rotrot-2d",         // 2D linearized scalar curvature = rot rot h
        "ricci-expansion-3d",// linearized Ricci = (-lap h - hess tr h + 2 def div h)/2, both routes
        "ricci-sinv-3d",     // linearized Ricci = S^{-1} inc h / 2
        "einstein-3d",       // linearized Einstein = inc h / 2
        "riemann4-3d",       // lowered linearized Riemann = G/2
        "christoffel-div",   // t-linear contracted Christoffel = div S^{-1} h
        "trace-inc",         // tr inc h = lap tr h - div div h
        "scalar-divdivs",    // 3D linearized scalar curvature = -div div S h
    };
    return names;
}

namespace detail {

inline PolyTensor random_symmetric_field(RatRng& rng, int n, int deg) {
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

inline std::vector<Rat> random_pt(RatRng& rng, int n) {
    std::vector<Rat> p;
    for (int i = 0; i < n; ++i) p.push_back(rng.next_rat(2, 4));
    return p;
}

inline PolyTensor id_map(int n) {
    PolyTensor id(n, 1, n);
    for (int i = 0; i < n; ++i) id.at(i) = Poly::variable(i, n);
    return id;
}

/// g = I + scaled random symmetric perturbation, positive definite at pt
inline PolyTensor random_metric_field(RatRng& rng, int n, int deg, const std::vector<Rat>& pt) {
    PolyTensor p = random_symmetric_field(rng, n, deg);
    Rat s(1, 2);
    for (int tries = 0; tries < 64; ++tries, s /= 2) {
        PolyTensor g = PolyTensor::identity(n, n) + p * s;
        try {
            MetricJet::from_poly(g, pt, 2);
            return g;
        } catch (const std::domain_error&) {
        }
    }
    throw std::runtime_error("could not scale a random metric to positive definite");
}

inline bool values_all_zero(const std::vector<Rat>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

}  // namespace detail

/// Run one named check. When `supplied` is nonempty those cases are used;
/// otherwise a seeded corpus of `ncases` is generated per relevant dimension.
inline IdentityCheck run_curvature_check(const std::string& name, std::uint64_t seed, int ncases = 50,
                                         const std::vector<CurvatureCase>& supplied = {}) {
    RatRng rng(seed);
    IdentityCheck out{name, true, 0, 0, ""};
    auto fail = [&out](const std::string& why) {
        out.pass = false;
        ++out.failures;
        if (out.detail.empty()) out.detail = why;
    };

    auto direction_cases = [&](int n) {
        std::vector<PolyTensor> hs;
        if (!supplied.empty()) {
            for (const auto& c : supplied)
                if (c.dimension == n && c.g) hs.push_back(*c.g);
        } else {
            for (int t = 0; t < ncases; ++t) hs.push_back(detail::random_symmetric_field(rng, n, 3));
        }
        return hs;
    };

    if (name == "ric-iota") {
        if (!supplied.empty()) {
            for (const auto& c : supplied) {
                if (!c.phi) continue;
                int n = c.dimension;
                PolyTensor g = iota(*c.phi, detail::id_map(n), PolyTensor::identity(n, n)) + PolyTensor::identity(n, n);
                for (const auto& pt : c.points) {
                    ++out.cases;
                    auto cv = curvature_at(MetricJet::from_poly(g, pt, 2));
                    if (!detail::values_all_zero(cv.riemann)) fail("nonzero Riemann tensor of a pullback metric");
                }
            }
        } else {
            for (int n : {2, 3}) {
                int done = 0;
                while (done < ncases) {
                    auto pt = detail::random_pt(rng, n);
                    PolyTensor phi = detail::id_map(n);
                    for (int i = 0; i < n; ++i) {
                        Poly p(n);
                        for (const auto& m : monomials_up_to(3, n)) p.add_term(m, rng.next_rat(1, 4));
                        phi.at(i) = phi.at(i) + p * rat(1, 4);
                    }
                    PolyTensor g =
                        iota(phi, detail::id_map(n), PolyTensor::identity(n, n)) + PolyTensor::identity(n, n);
                    try {
                        auto cv = curvature_at(MetricJet::from_poly(g, pt, 2));
                        ++out.cases;
                        ++done;
                        if (!detail::values_all_zero(cv.riemann)) fail("nonzero Riemann tensor of a pullback metric");
                    } catch (const std::domain_error&) {
                        // degenerate Dphi at the sample point; resample
                    }
                }
            }
        }
    } else if (name == "bianchi") {
        auto run_case = [&](const PolyTensor& g, const std::vector<Rat>& pt) {
            ++out.cases;
            auto jet = MetricJet::from_poly(g, pt, 3);
            if (!detail::values_all_zero(bianchi_at(jet, ricci_jets(jet)))) fail("Bian(Ric) != 0");
        };
        if (!supplied.empty()) {
            for (const auto& c : supplied)
                if (c.g)
                    for (const auto& pt : c.points) run_case(*c.g, pt);
        } else {
            for (int n : {2, 3})
                for (int t = 0; t < ncases; ++t) {
                    auto pt = detail::random_pt(rng, n);
                    run_case(detail::random_metric_field(rng, n, 3, pt), pt);
                }
        }
    } else if (name == "rotrot-2d") {
        for (const auto& h : direction_cases(2)) {
            ++out.cases;
            Poly lhs = linearize_curvature(h).scalar;
            Poly rhs = rot_rot(h).at(0, 0);
            if (!(lhs == rhs))
                fail(lhs == -rhs ? "linearized scalar curvature equals MINUS rot rot h (sign differs)"
                                 : "linearized scalar curvature != rot rot h");
        }
    } else if (name == "ricci-expansion-3d") {
        for (const auto& h : direction_cases(3)) {
            ++out.cases;
            auto lin = linearize_curvature(h);
            if (!(lin.ricci == linearized_ricci_expansion(h)))
                fail("formal-t Ricci differs from the closed-form expansion");
        }
    } else if (name == "ricci-sinv-3d") {
        for (const auto& h : direction_cases(3)) {
            ++out.cases;
            PolyTensor lhs = linearize_curvature(h).ricci;
            PolyTensor rhs = trace_reversal_inv(inc_3d(h)) * rat(1, 2);
            if (!(lhs == rhs))
                fail(lhs == trace_reversal(inc_3d(h)) * rat(1, 2)
                         ? "linearized Ricci equals S inc h / 2, not S^{-1} inc h / 2"
                         : "linearized Ricci != S^{-1} inc h / 2");
        }
    } else if (name == "einstein-3d") {
        for (const auto& h : direction_cases(3)) {
            ++out.cases;
            if (!(linearize_curvature(h).einstein == inc_3d(h) * rat(1, 2))) fail("linearized Einstein != inc h / 2");
        }
    } else if (name == "riemann4-3d") {
        for (const auto& h : direction_cases(3)) {
            ++out.cases;
            for (const auto& p : riemann4_identity_residual(h))
                if (!p.is_zero_poly()) {
                    fail("lowered linearized Riemann != G/2");
                    break;
                }
        }
    } else if (name == "christoffel-div") {
        for (const auto& h : direction_cases(3)) {
            ++out.cases;
            if (!(linearize_curvature(h).contracted == div(trace_reversal_inv(h))))
                fail("t-linear contracted Christoffel != div S^{-1} h");
        }
    } else if (name == "trace-inc") {
        for (const auto& h : direction_cases(3)) {
            ++out.cases;
            PolyTensor lhs = trace(inc_3d(h));
            PolyTensor rhs = laplacian(trace(h)) - div_div(h);
            if (!(lhs == rhs)) fail("tr inc h != lap tr h - div div h");
        }
    } else if (name == "scalar-divdivs") {
        for (const auto& h : direction_cases(3)) {
            ++out.cases;
            Poly lhs = linearize_curvature(h).scalar;
            Poly rhs = -(div_div(trace_reversal(h)).at(0, 0));
            if (!(lhs == rhs))
                fail(lhs == -rhs ? "linearized scalar curvature equals PLUS div div S h (sign differs)"
                                 : "linearized scalar curvature != -div div S h");
        }
    } else {
        throw std::invalid_argument("unknown curvature check '" + name + "'");
    }
    if (out.cases == 0) {
        out.pass = false;
        out.detail = "no applicable test cases";
    }
    return out;
}

/// Test-vector file: a list (or {"cases": list}) of
/// {dimension, "g" or "phi" as polynomial strings, "points": [[..], ..]}
inline std::vector<CurvatureCase> curvature_cases_from_json(const nlohmann::json& j) {
    const nlohmann::json& arr = j.is_array() ? j : j.at("cases");
    std::vector<CurvatureCase> out;
    for (const auto& c : arr) {
        CurvatureCase cc;
        cc.dimension = c.at("dimension").get<int>();
        if (cc.dimension != 2 && cc.dimension != 3)
            throw std::invalid_argument("test vector dimension must be 2 or 3");
        int n = cc.dimension;
        if (c.contains("g")) {
            PolyTensor g(n, n, n);
            const auto& rows = c.at("g");
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) g.at(i, k) = parse_poly(rows.at(i).at(k).get<std::string>(), n);
            cc.g = g;
        }
        if (c.contains("phi")) {
            PolyTensor phi(n, 1, n);
            const auto& rows = c.at("phi");
            for (int i = 0; i < n; ++i) phi.at(i) = parse_poly(rows.at(i).get<std::string>(), n);
            cc.phi = phi;
        }
        if (c.contains("points"))
            for (const auto& p : c.at("points")) {
                std::vector<Rat> pt;
                for (const auto& x : p)
                    pt.push_back(x.is_string() ? rat_from_string(x.get<std::string>())
                                               : Rat(static_cast<long>(x.get<long>())));
                if (static_cast<int>(pt.size()) != n)
                    throw std::invalid_argument("test vector point dimension mismatch");
                cc.points.push_back(pt);
            }
        out.push_back(std::move(cc));
    }
    return out;
}

}  // namespace bggfe
