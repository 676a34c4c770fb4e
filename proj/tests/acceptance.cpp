// Acceptance suite: every exit-gate property at its stated tolerance (all
// exact; zero tolerance everywhere). Prints one PASS/FAIL line per criterion.
//
// usage: acceptance [N]   (run criterion N only; default: all)

#include "bggfe/bgg.hpp"
#include "bggfe/identity_suite.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace bggfe;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<bool(std::ostream&)> run;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool check(std::ostream& os, const std::string& what, bool ok) {
    os << "    " << (ok ? "ok  " : "FAIL") << "  " << what << "\n";
    return ok;
}

int cohomology_dim(const std::vector<CohomologyEntry>& h, const std::string& complex, int index) {
    for (const auto& e : h)
        if (e.complex == complex && e.index == index) return e.dim;
    return -1;
}

// criterion 1: diagram dimension counts on one criss-cross unit square
bool criterion1(std::ostream& os) {
    auto t0 = Clock::now();
    MacroMesh mesh = builtin_mesh("unit-square-cc");
    StressDiagram d = build_stress_diagram(mesh);
    auto infos = stress_space_infos(d);
    bool ok = true;
    ok &= check(os, "W1 interior dofs = 10", infos[1].interior_dofs == 10);
    ok &= check(os, "W2 dim = 11", d.W2.dim == 11);
    ok &= check(os, "Y1 interior dofs = 16", infos[4].interior_dofs == 16);
    ok &= check(os, "Y2 dim = 8", d.Y2.dim == 8);
    int reduced = stress_reduced_interior_dofs(d.W1.macros[0].geom);
    ok &= check(os, "ker(-2 sskw) interior dofs = 5 (= 16 - 11)", reduced == 5);
    double dt = seconds_since(t0);
    std::ostringstream msg;
    msg << "runtime " << dt << " s < 10 s";
    ok &= check(os, msg.str(), dt < 10.0);
    return ok;
}

// criterion 2: alternating divergence relation at the singular vertex
bool criterion2(std::ostream& os) {
    bool ok = true;
    for (const char* name : {"unit-square-cc", "trapezoid-cc"}) {
        MacroMesh mesh = builtin_mesh(name);
        FESpace w1 = build_fespace(element_catalog("W1"), mesh);
        const auto& geom = w1.macros[0].geom;
        std::vector<Rat> z{geom.split.x, geom.split.y};
        bool all = true;
        for (int j = 0; j < w1.dim; ++j) {
            std::vector<Rat> c(w1.dim, Rat(0));
            c[j] = 1;
            Field f = w1.restrict_to_macro(c, 0);
            Rat alt = 0;
            for (int s = 0; s < 4; ++s) {
                Rat dv = div(f[s]).at(0, 0).eval(z);
                alt += (s % 2 == 0) ? dv : -dv;
            }
            if (!is_zero(alt)) all = false;
        }
        ok &= check(os, std::string("(div u|T1 - div u|T2 + div u|T3 - div u|T4)(z) = 0 for every W1 basis fn, ") +
                            name,
                    all);
    }
    return ok;
}

// criterion 3: derived stress complex on 1x1, 2x2, 3x3 grids
bool criterion3(std::ostream& os) {
    bool ok = true;
    for (const char* name : {"grid:1x1:cc", "grid:2x2:cc", "grid:3x3:cc"}) {
        auto t0 = Clock::now();
        MacroMesh mesh = builtin_mesh(name);
        StressDiagram d = build_stress_diagram(mesh);
        bool dd = true;
        for (const auto& c : d.checks)
            if (!c.pass) dd = false;
        ok &= check(os, std::string(name) + ": rows and derived complex satisfy d.d = 0 and all chase checks", dd);
        bool coh = cohomology_dim(d.cohomology, "stress_derived", 0) == 3 &&
                   cohomology_dim(d.cohomology, "stress_derived", 1) == 0 &&
                   cohomology_dim(d.cohomology, "stress_derived", 2) == 0;
        ok &= check(os, std::string(name) + ": cohomology (3, 0, 0), ker(curlcurl) = P1", coh);
        double dt = seconds_since(t0);
        if (std::string(name) == "grid:3x3:cc") {
            std::ostringstream msg;
            msg << "runtime at 3x3 " << dt << " s < 120 s";
            ok &= check(os, msg.str(), dt < 120.0);
        }
    }
    return ok;
}

// criterion 4: strain diagram chase identities
bool criterion4(std::ostream& os) {
    bool ok = true;
    for (const char* name : {"unit-triangle-ct", "grid:2x2:ct"}) {
        MacroMesh mesh = builtin_mesh(name);
        StrainDiagram d = build_strain_diagram(mesh);
        ok &= check(os, std::string(name) + ": sskw_h o mskw = I exactly",
                    d.sskw_h * d.mskw_mat == Mat::identity(d.V0.dim));
        ok &= check(os, std::string(name) + ": mskw injective (rank = dim V0)",
                    rank(d.mskw_mat) == static_cast<size_t>(d.V0.dim));
        ok &= check(os, std::string(name) + ": rot o mskw = -grad exactly",
                    (d.rot_z * d.mskw_mat + d.grad_v).is_zero());
        Mat ker_rr = nullspace(d.rotrot);
        ok &= check(os, std::string(name) + ": ker(rot rot, Z1) = grad Z0 + mskw V0 (exact span equality)",
                    same_column_span(ker_rr, Mat::hcat(d.grad_z, d.mskw_mat)));
    }
    return ok;
}

// criterion 5: reduced strain complex
bool criterion5(std::ostream& os) {
    bool ok = true;
    for (const char* name : {"unit-triangle-ct", "grid:2x2:ct"}) {
        MacroMesh mesh = builtin_mesh(name);
        StrainDiagram d = build_strain_diagram(mesh);
        ok &= check(os, std::string(name) + ": sskw_h o def_h = 0", (d.sskw_h * d.def_h).is_zero());
        ok &= check(os, std::string(name) + ": rot rot o def_h = 0", (d.rotrot * d.def_h).is_zero());
        ok &= check(os, std::string(name) + ": dim U1 = dim Z1 - dim V0",
                    d.u1_basis.cols() == static_cast<size_t>(d.Z1.dim - d.V0.dim));
        Mat rr_u1 = d.rotrot * d.u1_basis;
        Mat ker_in_u1 = d.u1_basis * nullspace(rr_u1);
        ok &= check(os, std::string(name) + ": ker(rot rot, U1) = def_h Z0 (rank equality)",
                    same_column_span(ker_in_u1, d.def_h));
        os << "    note  " << name << ": ker(def_h, Z0) has dim " << d.ker_def_h_dim
           << " (reported; hypothesis: 3 = rigid motions)\n";
    }
    ReducedStrainCheck rc = reduced_strain_unisolvence(macro_geometry(
        split_clough_tocher({Pt{rat(0), rat(0)}, Pt{rat(1), rat(0)}, Pt{rat(0), rat(1)}})));
    ok &= check(os, "reduced dof set (sym u at vertices, edge moments, rot.tau moments, bubbles) unisolvent on U1",
                rc.unisolvent && rc.dof_count == rc.dim_u1);
    return ok;
}

// criterion 6: unisolvence suite over the whole catalog
bool criterion6(std::ostream& os) {
    bool ok = true;
    MacroGeom cc = macro_geometry(
        split_crisscross({Pt{rat(0), rat(0)}, Pt{rat(1), rat(0)}, Pt{rat(1), rat(1)}, Pt{rat(0), rat(1)}}));
    MacroGeom cc_skew = macro_geometry(
        split_crisscross({Pt{rat(0), rat(0)}, Pt{rat(2), rat(0)}, Pt{rat(3, 2), rat(1)}, Pt{rat(0), rat(1)}}));
    MacroGeom ct = macro_geometry(split_clough_tocher({Pt{rat(0), rat(0)}, Pt{rat(1), rat(0)}, Pt{rat(0), rat(1)}}));
    MacroGeom ct_skew = macro_geometry(split_clough_tocher(
        {Pt{rat(0), rat(0)}, Pt{rat(3), rat(1, 2)}, Pt{rat(1), rat(2)}}, Pt{rat(5, 4), rat(3, 4)}));
    auto run = [&](const MacroGeom& g, const char* label) {
        for (const auto& name : catalog_names(g.kind)) {
            ElementDef def = element_catalog(name);
            LocalSpace sp = build_shape_space(def, g);
            auto dofs = make_dofs(def, g, sp);
            auto res = unisolvence_check(sp, dofs);
            bool good = res.ok && static_cast<int>(dofs.size()) == sp.dim;
            std::ostringstream line;
            line << name << " on " << label << ": " << dofs.size() << " dofs match dim " << sp.dim
                 << ", dof matrix nonsingular";
            ok &= check(os, line.str(), good);
        }
    };
    run(cc, "unit square");
    run(cc_skew, "trapezoid");
    run(ct, "unit triangle");
    run(ct_skew, "skewed triangle");

    // Z1 bubble structure and Z0 interior counts
    {
        ElementDef def = element_catalog("Z1");
        LocalSpace sp = build_shape_space(def, ct);
        auto bd = boundary_dofs(def, ct);
        ok &= check(os, "Z1 dofs (a-e) count 48, bubble space dim 12", bd.size() == 48 && sp.dim - 48 == 12);
        ElementDef z0 = element_catalog("Z0");
        LocalSpace z0sp = build_shape_space(z0, ct);
        auto z0dofs = make_dofs(z0, ct, z0sp);
        int interior = 0;
        for (const auto& d : z0dofs)
            if (d.entity == Dof::Entity::interior) ++interior;
        ok &= check(os, "Z0 has 3 interior dofs per component per macro", interior == 6);
    }
    return ok;
}

// criterion 7: Z-row exactness on contractible meshes
bool criterion7(std::ostream& os) {
    bool ok = true;
    for (const char* name : {"unit-triangle-ct", "grid:1x1:ct", "grid:2x2:ct"}) {
        MacroMesh mesh = builtin_mesh(name);
        ok &= check(os, std::string(name) + ": V - E + T = 1", mesh.euler() == 1);
        StrainDiagram d = build_strain_diagram(mesh);
        bool coh = cohomology_dim(d.cohomology, "z_row", 0) == 2 && cohomology_dim(d.cohomology, "z_row", 1) == 0 &&
                   cohomology_dim(d.cohomology, "z_row", 2) == 0;
        ok &= check(os, std::string(name) + ": Z-row cohomology (2, 0, 0)", coh);
    }
    return ok;
}

// criterion 8: curvature identity suite (seeded, >= 50 cases, exact residuals)
bool criterion8(std::ostream& os) {
    auto t0 = Clock::now();
    const std::vector<std::pair<const char*, const char*>> idents = {
        {"ric-iota", "(a) Riemann(iota(phi) + I) = 0 at sample points"},
        {"bianchi", "(b) Bian_g(Ric(g)) = 0"},
        {"rotrot-2d", "(c) 2D linearized scalar curvature = rot rot h"},
        {"ricci-sinv-3d", "(d) 3D linearized Ricci = S^{-1} inc h / 2"},
        {"ricci-expansion-3d", "(d) 3D linearized Ricci = (-lap h - hess tr h + 2 def div h)/2"},
        {"einstein-3d", "(e) linearized Einstein = inc h / 2"},
        {"riemann4-3d", "(f) R_{ijkl} = G_{ijkl}/2"},
        {"christoffel-div", "(g) t-linear term of contracted Christoffel = div S^{-1} h"},
        {"trace-inc", "(h) tr inc h = lap tr h - div div h"},
    };
    bool ok = true;
    for (const auto& [name, label] : idents) {
        IdentityCheck c = run_curvature_check(name, 42, 50);
        std::ostringstream line;
        line << label << "  [" << c.cases << " cases";
        if (!c.pass) line << ", " << c.failures << " failures: " << c.detail;
        line << "]";
        ok &= check(os, line.str(), c.pass);
    }
    double dt = seconds_since(t0);
    std::ostringstream msg;
    msg << "runtime " << dt << " s < 120 s";
    ok &= check(os, msg.str(), dt < 120.0);
    return ok;
}

// criterion 9: scope statement
bool criterion9(std::ostream& os) {
    os << "    note  acceptance is entirely property-based and exact: rational arithmetic with zero\n"
          "          tolerance everywhere; no convergence rates or timing benchmarks are claimed\n"
          "          beyond the stated wall-clock bounds.\n";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "diagram dimension counts on one criss-cross unit square", criterion1},
        {2, "singular-vertex divergence relation for W1", criterion2},
        {3, "derived stress complex on 1x1, 2x2, 3x3 criss-cross grids", criterion3},
        {4, "strain diagram chase identities", criterion4},
        {5, "reduced strain complex", criterion5},
        {6, "unisolvence suite for the element catalog", criterion6},
        {7, "Z-row exactness on contractible Clough-Tocher meshes", criterion7},
        {8, "curvature identity suite", criterion8},
        {9, "scope statement", criterion9},
    };

    int only = -1;
    if (argc > 1) only = std::atoi(argv[1]);
    int failures = 0;
    for (const auto& c : criteria) {
        if (only > 0 && c.id != only) continue;
        std::ostringstream body;
        bool ok = false;
        try {
            ok = c.run(body);
        } catch (const std::exception& e) {
            body << "    exception: " << e.what() << "\n";
        }
        std::cout << "criterion " << c.id << " [" << (ok ? "PASS" : "FAIL") << "] " << c.title << "\n"
                  << body.str();
        if (!ok) ++failures;
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
