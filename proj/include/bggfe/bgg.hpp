// BGG diagrams: the stress diagram on criss-cross meshes and the strain
// diagram on Clough-Tocher meshes, the discrete diagram chase (sskw_h, the
// reduced space U1, def_h), derived complexes and exact cohomology.
#pragma once

#include "bggfe/fespace.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace bggfe {

struct DiagramCheck {
    std::string name;
    bool pass;
    long residual_rank;  // rank of the residual matrix (0 when the check passes)
    std::string detail;
};

struct CohomologyEntry {
    std::string complex;
    int index;
    int dim;
};

struct ConnectorInfo {
    std::string name;
    long rank;
    bool injective, surjective;
};

struct SpaceInfo {
    std::string name;
    int dim;
    int vertex_dofs, edge_dofs, interior_dofs;
};

namespace detail {

inline Mat named_op(const char* op, const FESpace& a, const FESpace& b) {
    return operator_matrix([op](const PolyTensor& u) { return poly_diff(u, op); }, op, a, b);
}

inline void push_check(std::vector<DiagramCheck>& out, const std::string& name, const Mat& residual,
                       const std::string& detail = "") {
    long rr = residual.is_zero() ? 0 : static_cast<long>(rank(residual));
    out.push_back({name, rr == 0, rr, detail});
}

inline void push_check(std::vector<DiagramCheck>& out, const std::string& name, bool pass,
                       const std::string& detail = "") {
    out.push_back({name, pass, pass ? 0 : 1, detail});
}

inline SpaceInfo space_info(const std::string& name, const FESpace& fs) {
    SpaceInfo s{name, fs.dim, 0, 0, 0};
    int used_vertices = 0, used_edges = 0;
    for (int b : fs.vertex_base)
        if (b >= 0) ++used_vertices;
    for (int b : fs.edge_base)
        if (b >= 0) ++used_edges;
    s.vertex_dofs = used_vertices * fs.vertex_slots;
    s.edge_dofs = used_edges * fs.edge_slots;
    s.interior_dofs = fs.dim - s.vertex_dofs - s.edge_dofs;
    return s;
}

/// Two spaces built from the same recipe must have identical dof tables; the
/// identity connector is literal only because of this.
inline bool identical_tables(const FESpace& a, const FESpace& b) {
    if (a.dim != b.dim || a.mesh != b.mesh) return false;
    if (a.vertex_base != b.vertex_base || a.edge_base != b.edge_base || a.macro_base != b.macro_base) return false;
    for (size_t m = 0; m < a.macros.size(); ++m)
        if (a.macros[m].l2g != b.macros[m].l2g) return false;
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stress diagram (criss-cross)
// ---------------------------------------------------------------------------

struct StressDiagram {
    FESpace W0, W1, W2, Y0, Y1, Y2;
    Mat curl_w, div_w, curl_y, div_y;
    Mat sskw2;     // (-2 sskw): Y1 -> W2
    Mat curlcurl;  // curl_y o curl_w : W0 -> Y1
    Mat ker_sskw;  // basis of ker(sskw2), columns in Y1 coordinates

    std::vector<DiagramCheck> checks;
    std::vector<ConnectorInfo> connectors;
    std::vector<CohomologyEntry> cohomology;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline StressDiagram build_stress_diagram(const MacroMesh& mesh) {
    if (mesh.kind() != MacroKind::criss_cross)
        throw std::invalid_argument("the stress diagram needs a criss-cross mesh");
    StressDiagram d{build_fespace(element_catalog("W0"), mesh), build_fespace(element_catalog("W1"), mesh),
                    build_fespace(element_catalog("W2"), mesh), build_fespace(element_catalog("Y0"), mesh),
                    build_fespace(element_catalog("Y1"), mesh), build_fespace(element_catalog("Y2"), mesh),
                    {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};

    detail::push_check(d.checks, "identity_connector_tables_match", detail::identical_tables(d.W1, d.Y0));

    d.curl_w = detail::named_op("curl", d.W0, d.W1);
    d.div_w = detail::named_op("div", d.W1, d.W2);
    d.curl_y = detail::named_op("curl", d.Y0, d.Y1);
    d.div_y = detail::named_op("div", d.Y1, d.Y2);
    d.sskw2 = operator_matrix([](const PolyTensor& u) { return sskw(u) * rat(-2); }, "-2 sskw", d.Y1, d.W2);

    detail::push_check(d.checks, "w_row_complex", d.div_w * d.curl_w);
    detail::push_check(d.checks, "y_row_complex", d.div_y * d.curl_y);
    detail::push_check(d.checks, "anticommutativity_div_I_eq_sskw_curl", d.div_w - d.sskw2 * d.curl_y);

    long sskw_rank = static_cast<long>(rank(d.sskw2));
    d.connectors.push_back({"I", d.W1.dim, true, true});
    d.connectors.push_back({"-2 sskw", sskw_rank, false, sskw_rank == d.W2.dim});
    detail::push_check(d.checks, "sskw_connector_surjective", sskw_rank == d.W2.dim);

    d.curlcurl = d.curl_y * d.curl_w;
    d.ker_sskw = nullspace(d.sskw2);
    detail::push_check(d.checks, "curlcurl_lands_in_ker_sskw", d.sskw2 * d.curlcurl);
    detail::push_check(d.checks, "curlcurl_range_in_kernel_span", columns_in_span(d.curlcurl, d.ker_sskw));
    Mat div_k = d.div_y * d.ker_sskw;
    // d o d on the derived complex: div after curlcurl
    detail::push_check(d.checks, "derived_dd_zero", d.div_y * d.curlcurl);

    // P1 lies in the kernel of curlcurl
    bool p1_in_kernel = true;
    for (const char* expr : {"1", "x", "y"}) {
        PolyTensor f(1, 1, 2);
        f.at(0, 0) = parse_poly(expr, 2);
        auto c = d.W0.interpolate(f);
        Mat cm(d.W0.dim, 1);
        for (int i = 0; i < d.W0.dim; ++i) cm(i, 0) = c[i];
        if (!(d.curlcurl * cm).is_zero()) p1_in_kernel = false;
    }
    detail::push_check(d.checks, "p1_in_ker_curlcurl", p1_in_kernel);

    // derived-complex cohomology: 0 -> P1 -> W0 -> ker(sskw) -> Y2 -> 0
    long r_cc = static_cast<long>(rank(d.curlcurl));
    long k_dim = static_cast<long>(d.ker_sskw.cols());
    long r_div_k = static_cast<long>(rank(div_k));
    d.cohomology.push_back({"stress_derived", 0, static_cast<int>(d.W0.dim - r_cc)});
    d.cohomology.push_back({"stress_derived", 1, static_cast<int>(k_dim - r_div_k - r_cc)});
    d.cohomology.push_back({"stress_derived", 2, static_cast<int>(d.Y2.dim - r_div_k)});

    // row cohomology
    long rw1 = static_cast<long>(rank(d.curl_w)), rw2 = static_cast<long>(rank(d.div_w));
    long ry1 = static_cast<long>(rank(d.curl_y)), ry2 = static_cast<long>(rank(d.div_y));
    d.cohomology.push_back({"w_row", 0, static_cast<int>(d.W0.dim - rw1)});
    d.cohomology.push_back({"w_row", 1, static_cast<int>(d.W1.dim - rw2 - rw1)});
    d.cohomology.push_back({"w_row", 2, static_cast<int>(d.W2.dim - rw2)});
    d.cohomology.push_back({"y_row", 0, static_cast<int>(d.Y0.dim - ry1)});
    d.cohomology.push_back({"y_row", 1, static_cast<int>(d.Y1.dim - ry2 - ry1)});
    d.cohomology.push_back({"y_row", 2, static_cast<int>(d.Y2.dim - ry2)});

    return d;
}

/// The reduced stress element on one macro: the shape space is ker(-2 sskw)
/// inside Y1, all Y1 edge dofs are retained, and the interior dofs are
/// moments against a computed basis of the kernel bubbles (kernel members
/// with vanishing edge dofs). Returns the interior count after verifying the
/// full reduced dof set is unisolvent.
inline int stress_reduced_interior_dofs(const MacroGeom& geom) {
    LocalElement y1 = build_local_element(element_catalog("Y1"), geom);
    LocalElement w2 = build_local_element(element_catalog("W2"), geom);
    // local (-2 sskw) matrix: W2 dofs applied to sskw of the Y1 basis
    Mat s(w2.space.dim, y1.space.dim);
    for (int j = 0; j < y1.space.dim; ++j) {
        const Field& f = y1.space.basis_fields[j];
        Field sf(f.size(), PolyTensor(1, 1, 2));
        for (size_t t = 0; t < f.size(); ++t) sf[t] = sskw(f[t]) * rat(-2);
        for (size_t i = 0; i < w2.dofs.size(); ++i) s(i, j) = eval_dof(w2.dofs[i], sf, geom);
    }
    Mat kernel = nullspace(s);  // columns in Y1 space coordinates

    std::vector<size_t> edge_ids;
    for (size_t i = 0; i < y1.dofs.size(); ++i)
        if (y1.dofs[i].entity == Dof::Entity::edge) edge_ids.push_back(i);
    Mat e(edge_ids.size(), y1.space.dim);
    for (size_t r = 0; r < edge_ids.size(); ++r)
        for (int j = 0; j < y1.space.dim; ++j)
            e(r, j) = eval_dof(y1.dofs[edge_ids[r]], y1.space.basis_fields[j], geom);
    Mat e_on_kernel = e * kernel;

    // kernel bubbles and their moment functionals
    Mat bubbles = kernel * nullspace(e_on_kernel);
    std::vector<Field> bubble_fields;
    for (size_t b = 0; b < bubbles.cols(); ++b)
        bubble_fields.push_back(y1.space.field_from_space_coords(bubbles.column(b)));

    Mat u(edge_ids.size() + bubbles.cols(), kernel.cols());
    for (size_t j = 0; j < kernel.cols(); ++j) {
        Field f = y1.space.field_from_space_coords(kernel.column(j));
        for (size_t r = 0; r < edge_ids.size(); ++r) u(r, j) = eval_dof(y1.dofs[edge_ids[r]], f, geom);
        for (size_t b = 0; b < bubble_fields.size(); ++b) {
            Rat acc = 0;
            for (size_t t = 0; t < f.size(); ++t)
                for (size_t c = 0; c < f[t].entry.size(); ++c) {
                    Poly prod = f[t].entry[c] * bubble_fields[b][t].entry[c];
                    if (prod.is_zero_poly()) continue;
                    const auto& tc = geom.tri[t];
                    acc += integrate_triangle(prod, {tc[0].x, tc[0].y}, {tc[1].x, tc[1].y}, {tc[2].x, tc[2].y});
                }
            u(edge_ids.size() + b, j) = acc;
        }
    }
    if (u.rows() != u.cols() || rank(u) != u.cols())
        throw std::runtime_error("reduced stress dof set is not unisolvent on ker(sskw)");
    return static_cast<int>(bubbles.cols());
}

// ---------------------------------------------------------------------------
// Strain diagram (Clough-Tocher)
// ---------------------------------------------------------------------------

struct StrainDiagram {
    FESpace Z0, Z1, Z2, V0, V1, V2;
    Mat grad_z, rot_z, grad_v, rot_v;
    Mat mskw_mat;   // V0 -> Z1
    Mat sskw_h;     // Z1 -> V0
    Mat u1_basis;   // ker(sskw_h), columns in Z1 coordinates
    Mat def_h;      // Z0 -> Z1
    Mat rotrot;     // Z1 -> V2

    std::vector<DiagramCheck> checks;
    std::vector<ConnectorInfo> connectors;
    std::vector<CohomologyEntry> cohomology;
    int ker_def_h_dim = -1;  // reported, not asserted

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// The discrete sskw_h: Z1 -> V0 defined by prescribing V0's dofs:
/// vertex values take sskw u(a), vertex gradients take -rot u(a), and edge
/// normal-derivative moments take -int_e n . rot u.
inline Mat sskw_h_matrix(const FESpace& z1, const FESpace& v0) {
    if (z1.mesh != v0.mesh) throw std::invalid_argument("sskw_h: spaces live on different meshes");
    Mat g(v0.dim, z1.dim);
    std::vector<std::vector<bool>> set(v0.dim, std::vector<bool>(z1.dim, false));
    for (size_t m = 0; m < z1.macros.size(); ++m) {
        const auto& zm = z1.macros[m];
        const auto& vm = v0.macros[m];
        for (size_t j = 0; j < zm.el.nodal_fields.size(); ++j) {
            const Field& u = zm.el.nodal_fields[j];
            // rot u per sub-triangle
            Field rotu(u.size(), PolyTensor(2, 1, 2));
            Field sskwu(u.size(), PolyTensor(1, 1, 2));
            for (size_t t = 0; t < u.size(); ++t) {
                rotu[t] = rot(u[t]);
                sskwu[t] = sskw(u[t]);
            }
            for (size_t i = 0; i < vm.el.dofs.size(); ++i) {
                const Dof& d = vm.el.dofs[i];
                Rat val;
                switch (d.kind) {
                    case Dof::Kind::point_value:
                        val = eval_dof(d, sskwu, vm.geom);
                        break;
                    case Dof::Kind::point_partial: {
                        Dof dd = d;
                        dd.kind = Dof::Kind::point_value;
                        dd.comp = d.var;
                        val = -eval_dof(dd, rotu, vm.geom);
                        break;
                    }
                    case Dof::Kind::edge_dn_moment: {
                        Dof dd = d;
                        dd.kind = Dof::Kind::edge_rot_n;  // int (rot u).n w dt on the same frame
                        val = -eval_dof(dd, u, vm.geom);
                        break;
                    }
                    default:
                        throw std::logic_error("sskw_h: unexpected V0 dof kind");
                }
                int gi = vm.l2g[i], gj = zm.l2g[j];
                if (set[gi][gj]) {
                    if (g(gi, gj) != val) throw std::runtime_error("sskw_h: prescribed dof is not single-valued");
                } else {
                    g(gi, gj) = val;
                    set[gi][gj] = true;
                }
            }
        }
    }
    return g;
}

inline StrainDiagram build_strain_diagram(const MacroMesh& mesh) {
    if (mesh.kind() != MacroKind::clough_tocher)
        throw std::invalid_argument("the strain diagram needs a Clough-Tocher mesh");
    StrainDiagram d{build_fespace(element_catalog("Z0"), mesh), build_fespace(element_catalog("Z1"), mesh),
                    build_fespace(element_catalog("Z2"), mesh), build_fespace(element_catalog("V0"), mesh),
                    build_fespace(element_catalog("V1"), mesh), build_fespace(element_catalog("V2"), mesh),
                    {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, -1};

    detail::push_check(d.checks, "identity_connector_tables_match", detail::identical_tables(d.Z2, d.V1));

    d.grad_z = detail::named_op("grad", d.Z0, d.Z1);
    d.rot_z = detail::named_op("rot", d.Z1, d.Z2);
    d.grad_v = detail::named_op("grad", d.V0, d.V1);
    d.rot_v = detail::named_op("rot", d.V1, d.V2);
    d.mskw_mat = detail::named_op("mskw", d.V0, d.Z1);

    detail::push_check(d.checks, "z_row_complex", d.rot_z * d.grad_z);
    detail::push_check(d.checks, "v_row_complex", d.rot_v * d.grad_v);
    detail::push_check(d.checks, "anticommutativity_rot_mskw_eq_minus_grad", d.rot_z * d.mskw_mat + d.grad_v);

    long mskw_rank = static_cast<long>(rank(d.mskw_mat));
    d.connectors.push_back({"mskw", mskw_rank, mskw_rank == d.V0.dim, false});
    d.connectors.push_back({"I", d.Z2.dim, true, true});
    detail::push_check(d.checks, "mskw_injective", mskw_rank == d.V0.dim);

    d.sskw_h = sskw_h_matrix(d.Z1, d.V0);
    detail::push_check(d.checks, "sskw_h_mskw_identity", d.sskw_h * d.mskw_mat - Mat::identity(d.V0.dim));

    d.u1_basis = nullspace(d.sskw_h);
    detail::push_check(d.checks, "dim_u1_eq_dim_z1_minus_dim_v0",
                       static_cast<int>(d.u1_basis.cols()) == d.Z1.dim - d.V0.dim);

    d.def_h = d.grad_z - d.mskw_mat * (d.sskw_h * d.grad_z);
    detail::push_check(d.checks, "sskw_h_def_h_zero", d.sskw_h * d.def_h);

    d.rotrot = d.rot_v * d.rot_z;
    detail::push_check(d.checks, "rotrot_mskw_zero", d.rotrot * d.mskw_mat);
    detail::push_check(d.checks, "rotrot_def_h_zero", d.rotrot * d.def_h);

    // ker(rot rot, Z1) = grad Z0 + mskw V0
    Mat ker_rr = nullspace(d.rotrot);
    Mat span = Mat::hcat(d.grad_z, d.mskw_mat);
    detail::push_check(d.checks, "ker_rotrot_eq_grad_plus_mskw", same_column_span(ker_rr, span));

    // reduced complex: ker(rot rot, U1) = def_h Z0
    Mat rr_u1 = d.rotrot * d.u1_basis;
    Mat ker_in_u1 = d.u1_basis * nullspace(rr_u1);
    detail::push_check(d.checks, "ker_rotrot_u1_eq_def_h_z0", same_column_span(ker_in_u1, d.def_h));
    detail::push_check(d.checks, "rotrot_u1_onto_v2", rank(rr_u1) == static_cast<size_t>(d.V2.dim));

    d.ker_def_h_dim = d.Z0.dim - static_cast<int>(rank(d.def_h));

    // cohomology: Z row, V row, reduced complex
    long rz1 = static_cast<long>(rank(d.grad_z)), rz2 = static_cast<long>(rank(d.rot_z));
    long rv1 = static_cast<long>(rank(d.grad_v)), rv2 = static_cast<long>(rank(d.rot_v));
    d.cohomology.push_back({"z_row", 0, static_cast<int>(d.Z0.dim - rz1)});
    d.cohomology.push_back({"z_row", 1, static_cast<int>(d.Z1.dim - rz2 - rz1)});
    d.cohomology.push_back({"z_row", 2, static_cast<int>(d.Z2.dim - rz2)});
    d.cohomology.push_back({"v_row", 0, static_cast<int>(d.V0.dim - rv1)});
    d.cohomology.push_back({"v_row", 1, static_cast<int>(d.V1.dim - rv2 - rv1)});
    d.cohomology.push_back({"v_row", 2, static_cast<int>(d.V2.dim - rv2)});
    long r_def = static_cast<long>(rank(d.def_h));
    long r_rr_u1 = static_cast<long>(rank(rr_u1));
    d.cohomology.push_back({"strain_reduced", 0, d.ker_def_h_dim});
    d.cohomology.push_back({"strain_reduced", 1, static_cast<int>(d.u1_basis.cols() - r_rr_u1 - r_def)});
    d.cohomology.push_back({"strain_reduced", 2, static_cast<int>(d.V2.dim - r_rr_u1)});

    return d;
}

/// Unisolvence of the reduced dof set on the local space U1 = ker(sskw_h):
/// sym u at corners, full edge moments, tangential rot moments per edge, and
/// the Z1 bubble moments.
struct ReducedStrainCheck {
    int dim_u1;
    int dof_count;
    bool unisolvent;
    bool has_nonsymmetric_member;
};

inline ReducedStrainCheck reduced_strain_unisolvence(const MacroGeom& geom) {
    LocalElement z1 = build_local_element(element_catalog("Z1"), geom);
    LocalElement v0 = build_local_element(element_catalog("V0"), geom);

    // local sskw_h: prescribe V0's dofs from the Z1 field
    Mat s(v0.space.dim, z1.space.dim);
    for (int j = 0; j < z1.space.dim; ++j) {
        const Field& u = z1.space.basis_fields[j];
        Field rotu(u.size(), PolyTensor(2, 1, 2)), sskwu(u.size(), PolyTensor(1, 1, 2));
        for (size_t t = 0; t < u.size(); ++t) {
            rotu[t] = rot(u[t]);
            sskwu[t] = sskw(u[t]);
        }
        for (size_t i = 0; i < v0.dofs.size(); ++i) {
            const Dof& d = v0.dofs[i];
            if (d.kind == Dof::Kind::point_value) {
                s(i, j) = eval_dof(d, sskwu, geom);
            } else if (d.kind == Dof::Kind::point_partial) {
                Dof dd = d;
                dd.kind = Dof::Kind::point_value;
                dd.comp = d.var;
                s(i, j) = -eval_dof(dd, rotu, geom);
            } else {
                Dof dd = d;
                dd.kind = Dof::Kind::edge_rot_n;
                s(i, j) = -eval_dof(dd, u, geom);
            }
        }
    }
    Mat u1 = nullspace(s);
    ReducedStrainCheck out{static_cast<int>(u1.cols()), 0, false, false};

    // reduced dofs evaluated on the U1 basis
    std::vector<std::function<Rat(const Field&)>> dofs;
    for (size_t c = 0; c < geom.corner.size(); ++c) {
        std::vector<Rat> pt{geom.corner[c].x, geom.corner[c].y};
        int sub = geom.corner_sub[c];
        dofs.push_back([pt, sub](const Field& f) { return f[sub].at(0, 0).eval(pt); });
        dofs.push_back([pt, sub](const Field& f) {
            return (f[sub].at(0, 1) + f[sub].at(1, 0)).eval(pt) * rat(1, 2);
        });
        dofs.push_back([pt, sub](const Field& f) { return f[sub].at(1, 1).eval(pt); });
    }
    for (const auto& e : geom.parent_edge) {
        for (int comp = 0; comp < 4; ++comp)
            for (int w = 0; w < 2; ++w) {
                Poly weight = edge_weight(w);
                dofs.push_back([e, comp, weight](const Field& f) {
                    return integrate_unit_interval(detail::restrict_to_edge(f[e.sub].entry[comp], e) * weight);
                });
            }
        dofs.push_back([e](const Field& f) {
            PolyTensor r = rot(f[e.sub]);
            Poly s2 = r.entry[0] * e.tau.x + r.entry[1] * e.tau.y;
            return integrate_unit_interval(detail::restrict_to_edge(s2, e));
        });
    }
    for (const auto& d : z1.dofs)
        if (d.kind == Dof::Kind::interior_moment) {
            const auto& w = d.interior_weight;
            dofs.push_back([&geom, w](const Field& f) {
                Rat acc = 0;
                for (size_t t = 0; t < f.size(); ++t)
                    for (size_t e = 0; e < f[t].entry.size(); ++e) {
                        Poly prod = f[t].entry[e] * w[t].entry[e];
                        if (prod.is_zero_poly()) continue;
                        const auto& tc = geom.tri[t];
                        acc += integrate_triangle(prod, {tc[0].x, tc[0].y}, {tc[1].x, tc[1].y}, {tc[2].x, tc[2].y});
                    }
                return acc;
            });
        }
    out.dof_count = static_cast<int>(dofs.size());

    Mat u(dofs.size(), u1.cols());
    for (size_t j = 0; j < u1.cols(); ++j) {
        Field f = z1.space.field_from_space_coords(u1.column(j));
        if (!out.has_nonsymmetric_member) {
            for (const auto& piece : f)
                if (!skw(piece).is_zero()) out.has_nonsymmetric_member = true;
        }
        for (size_t i = 0; i < dofs.size(); ++i) u(i, j) = dofs[i](f);
    }
    out.unisolvent = out.dof_count == out.dim_u1 && rank(u) == static_cast<size_t>(out.dim_u1);
    return out;
}

// ---------------------------------------------------------------------------
// JSON report
// ---------------------------------------------------------------------------

inline nlohmann::json diagram_report(const std::string& name, const std::vector<SpaceInfo>& spaces,
                                     const std::vector<ConnectorInfo>& connectors,
                                     const std::vector<DiagramCheck>& checks,
                                     const std::vector<CohomologyEntry>& cohomology) {
    nlohmann::json j;
    j["diagram"] = name;
    j["spaces"] = nlohmann::json::array();
    for (const auto& s : spaces)
        j["spaces"].push_back({{"name", s.name},
                               {"dim", s.dim},
                               {"dofs", {{"vertex", s.vertex_dofs}, {"edge", s.edge_dofs}, {"interior", s.interior_dofs}}}});
    j["connectors"] = nlohmann::json::array();
    for (const auto& c : connectors)
        j["connectors"].push_back(
            {{"name", c.name}, {"rank", c.rank}, {"injective", c.injective}, {"surjective", c.surjective}});
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"residual_rank", c.residual_rank}});
    j["cohomology"] = nlohmann::json::array();
    for (const auto& h : cohomology)
        j["cohomology"].push_back({{"complex", h.complex}, {"index", h.index}, {"dim", h.dim}});
    return j;
}

inline std::vector<SpaceInfo> stress_space_infos(const StressDiagram& d) {
    return {detail::space_info("W0", d.W0), detail::space_info("W1", d.W1), detail::space_info("W2", d.W2),
            detail::space_info("Y0", d.Y0), detail::space_info("Y1", d.Y1), detail::space_info("Y2", d.Y2)};
}

inline std::vector<SpaceInfo> strain_space_infos(const StrainDiagram& d) {
    return {detail::space_info("Z0", d.Z0), detail::space_info("Z1", d.Z1), detail::space_info("Z2", d.Z2),
            detail::space_info("V0", d.V0), detail::space_info("V1", d.V1), detail::space_info("V2", d.V2)};
}

}  // namespace bggfe
