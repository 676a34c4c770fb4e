// Local shape spaces: constrained piecewise polynomials on one macroelement,
// their degrees of freedom, bubble spaces and unisolvence.
#pragma once

#include "bggfe/element.hpp"
#include "bggfe/matrix.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bggfe {

/// Shape space of an element on a concrete macro: a basis of the constrained
/// coefficient space. Coefficient layout: (sub * ncomp + comp) * nmono + mono.
struct LocalSpace {
    ElementDef def;
    MacroGeom geom;
    std::vector<Mono> monos;
    int ncomp = 0;
    int dim = 0;
    Mat basis;  // coefficients x dim
    std::vector<Field> basis_fields;

    int coef_index(int sub, int comp, int mono) const {
        return (sub * ncomp + comp) * static_cast<int>(monos.size()) + mono;
    }

    Field field_from_coeffs(const std::vector<Rat>& c) const {
        const int nsub = static_cast<int>(geom.tri.size());
        Field f(nsub, PolyTensor(def.vrows, def.vcols, 2));
        for (int s = 0; s < nsub; ++s)
            for (int comp = 0; comp < ncomp; ++comp)
                for (size_t m = 0; m < monos.size(); ++m) {
                    const Rat& v = c[coef_index(s, comp, static_cast<int>(m))];
                    if (!is_zero(v)) f[s].entry[comp].add_term(monos[m], v);
                }
        return f;
    }

    Field field_from_space_coords(const std::vector<Rat>& x) const {
        std::vector<Rat> c(basis.rows(), Rat(0));
        for (size_t j = 0; j < basis.cols(); ++j) {
            if (is_zero(x[j])) continue;
            for (size_t i = 0; i < basis.rows(); ++i) c[i] += basis(i, j) * x[j];
        }
        return field_from_coeffs(c);
    }
};

namespace detail {

/// rows asserting that `p` (coefficients over `monos` of sub-tri `sub`,
/// component `comp`, with sign) restricted to the segment a-b vanishes
inline void add_restriction_rows(Mat& rows, size_t& row0, const LocalSpace& sp, int sub, int comp,
                                 const Pt& a, const Pt& b, int sign, bool normal_deriv) {
    Pt tau = b - a;
    Pt nrm{-tau.y, tau.x};
    for (size_t m = 0; m < sp.monos.size(); ++m) {
        Poly mono = Poly::monomial(sp.monos[m], rat(1), 2);
        Poly p = normal_deriv ? mono.derivative(0) * nrm.x + mono.derivative(1) * nrm.y : mono;
        Poly r = p.compose_affine({a.x, a.y}, {{tau.x}, {tau.y}}, 1);
        for (const auto& [mm, c] : r.terms())
            rows(row0 + mm.e[0], sp.coef_index(sub, comp, static_cast<int>(m))) += c * sign;
    }
}

}  // namespace detail

/// Build the constrained shape space. Throws if the space is empty or its
/// dimension contradicts the element's documented count.
inline LocalSpace build_shape_space(const ElementDef& def, const MacroGeom& geom) {
    if (def.macro_kind != geom.kind)
        throw std::invalid_argument("element '" + def.name + "' expects a " + kind_name(def.macro_kind) +
                                    " macro, got " + kind_name(geom.kind));
    LocalSpace sp;
    sp.def = def;
    sp.geom = geom;
    sp.monos = monomials_up_to(def.degree, 2);
    sp.ncomp = def.ncomp();
    const int nsub = static_cast<int>(geom.tri.size());
    const int ncoef = nsub * sp.ncomp * static_cast<int>(sp.monos.size());

    // count the constraint rows
    size_t nrows = 0;
    const size_t per_edge_c0 = def.degree + 1;
    const size_t per_edge_c1 = def.degree;       // normal-derivative trace has degree-1
    const size_t per_edge_rot = def.degree;      // rot has degree-1, trace degree deg-1
    for (const auto& iface : geom.interfaces) {
        (void)iface;
        if (def.c0) nrows += per_edge_c0 * sp.ncomp;
        if (def.c1) nrows += per_edge_c1 * sp.ncomp;
        if (def.rot_c0) nrows += per_edge_rot * (def.is_matrix_valued() ? 2 : 1);
        if (def.normal_cont) nrows += per_edge_c0 * (def.is_matrix_valued() ? 2 : 1);
    }
    if (def.singular_relation) nrows += sp.ncomp;

    Mat rows(nrows, ncoef);
    size_t r = 0;
    for (const auto& iface : geom.interfaces) {
        if (def.c0)
            for (int comp = 0; comp < sp.ncomp; ++comp) {
                detail::add_restriction_rows(rows, r, sp, iface.sa, comp, iface.a, iface.b, +1, false);
                detail::add_restriction_rows(rows, r, sp, iface.sb, comp, iface.a, iface.b, -1, false);
                r += per_edge_c0;
            }
        if (def.c1)
            for (int comp = 0; comp < sp.ncomp; ++comp) {
                detail::add_restriction_rows(rows, r, sp, iface.sa, comp, iface.a, iface.b, +1, true);
                detail::add_restriction_rows(rows, r, sp, iface.sb, comp, iface.a, iface.b, -1, true);
                r += per_edge_c1;
            }
        if (def.rot_c0) {
            // per column copy: rot = d1 u_{(1,j)} - d2 u_{(0,j)}
            int ncopies = def.is_matrix_valued() ? 2 : 1;
            for (int copy = 0; copy < ncopies; ++copy) {
                int c_top = def.is_matrix_valued() ? copy : 0;       // entry (0, copy)
                int c_bot = def.is_matrix_valued() ? 2 + copy : 1;   // entry (1, copy)
                Pt tau = iface.b - iface.a;
                for (size_t m = 0; m < sp.monos.size(); ++m) {
                    Poly mono = Poly::monomial(sp.monos[m], rat(1), 2);
                    Poly d1 = mono.derivative(0).compose_affine({iface.a.x, iface.a.y}, {{tau.x}, {tau.y}}, 1);
                    Poly d2 = mono.derivative(1).compose_affine({iface.a.x, iface.a.y}, {{tau.x}, {tau.y}}, 1);
                    for (const auto& [mm, c] : d1.terms()) {
                        rows(r + mm.e[0], sp.coef_index(iface.sa, c_bot, static_cast<int>(m))) += c;
                        rows(r + mm.e[0], sp.coef_index(iface.sb, c_bot, static_cast<int>(m))) -= c;
                    }
                    for (const auto& [mm, c] : d2.terms()) {
                        rows(r + mm.e[0], sp.coef_index(iface.sa, c_top, static_cast<int>(m))) -= c;
                        rows(r + mm.e[0], sp.coef_index(iface.sb, c_top, static_cast<int>(m))) += c;
                    }
                }
                r += per_edge_rot;
            }
        }
        if (def.normal_cont) {
            int ncopies = def.is_matrix_valued() ? 2 : 1;
            Pt tau = iface.b - iface.a;
            Pt nrm{-tau.y, tau.x};
            for (int copy = 0; copy < ncopies; ++copy) {
                int c_top = def.is_matrix_valued() ? copy : 0;
                int c_bot = def.is_matrix_valued() ? 2 + copy : 1;
                for (size_t m = 0; m < sp.monos.size(); ++m) {
                    Poly mono = Poly::monomial(sp.monos[m], rat(1), 2);
                    Poly rr = mono.compose_affine({iface.a.x, iface.a.y}, {{tau.x}, {tau.y}}, 1);
                    for (const auto& [mm, c] : rr.terms()) {
                        rows(r + mm.e[0], sp.coef_index(iface.sa, c_top, static_cast<int>(m))) += c * nrm.x;
                        rows(r + mm.e[0], sp.coef_index(iface.sb, c_top, static_cast<int>(m))) -= c * nrm.x;
                        rows(r + mm.e[0], sp.coef_index(iface.sa, c_bot, static_cast<int>(m))) += c * nrm.y;
                        rows(r + mm.e[0], sp.coef_index(iface.sb, c_bot, static_cast<int>(m))) -= c * nrm.y;
                    }
                }
                r += per_edge_c0;
            }
        }
    }
    if (def.singular_relation) {
        if (!geom.has_split || geom.tri.size() != 4)
            throw std::invalid_argument("singular-vertex relation needs a criss-cross macro");
        for (int comp = 0; comp < sp.ncomp; ++comp) {
            for (int s = 0; s < 4; ++s) {
                int sign = s % 2 == 0 ? 1 : -1;
                for (size_t m = 0; m < sp.monos.size(); ++m) {
                    Poly mono = Poly::monomial(sp.monos[m], rat(1), 2);
                    rows(r, sp.coef_index(s, comp, static_cast<int>(m))) += mono.eval({geom.split.x, geom.split.y}) * sign;
                }
            }
            r += 1;
        }
    }

    sp.basis = nullspace(rows);
    sp.dim = static_cast<int>(sp.basis.cols());
    if (sp.dim == 0)
        throw std::runtime_error("element '" + def.name + "' is over-constrained: shape space is empty (" +
                                 std::to_string(nrows) + " constraint rows on " + std::to_string(ncoef) +
                                 " coefficients)");
    if (def.expected_dim >= 0 && sp.dim != def.expected_dim)
        throw std::runtime_error("element '" + def.name + "': shape-space dimension " + std::to_string(sp.dim) +
                                 " contradicts the documented " + std::to_string(def.expected_dim));
    sp.basis_fields.reserve(sp.dim);
    for (int j = 0; j < sp.dim; ++j) sp.basis_fields.push_back(sp.field_from_coeffs(sp.basis.column(j)));
    return sp;
}

// ---------------------------------------------------------------------------
// Degrees of freedom on a concrete macro
// ---------------------------------------------------------------------------

namespace detail {

inline void push_vertex_dofs(std::vector<Dof>& out, const ElementDef& def, const MacroGeom& geom, int corner) {
    Dof base;
    base.entity = Dof::Entity::vertex;
    base.entity_index = corner;
    base.point = geom.corner[corner];
    base.sub = geom.corner_sub[corner];
    if (def.vertex_values)
        for (int c = 0; c < def.ncomp(); ++c) {
            Dof d = base;
            d.kind = Dof::Kind::point_value;
            d.comp = c;
            out.push_back(d);
        }
    if (def.vertex_gradients)
        for (int c = 0; c < def.ncomp(); ++c)
            for (int v = 0; v < 2; ++v) {
                Dof d = base;
                d.kind = Dof::Kind::point_partial;
                d.comp = c;
                d.var = v;
                out.push_back(d);
            }
    if (def.vertex_rot) {
        int nrot = def.is_matrix_valued() ? 2 : 1;
        for (int c = 0; c < nrot; ++c) {
            Dof d = base;
            d.kind = Dof::Kind::point_rot;
            d.comp = c;
            out.push_back(d);
        }
    }
}

inline void push_edge_dofs(std::vector<Dof>& out, const ElementDef& def, const MacroGeom& geom, int ei) {
    const EdgeFrame& e = geom.parent_edge[ei];
    Dof base;
    base.entity = Dof::Entity::edge;
    base.entity_index = ei;
    base.edge = e;
    for (int c = 0; c < def.ncomp(); ++c)
        for (int w = 0; w < def.edge_value_moments; ++w) {
            Dof d = base;
            d.kind = Dof::Kind::edge_comp_moment;
            d.comp = c;
            d.weight = edge_weight(w);
            out.push_back(d);
        }
    if (def.edge_midpoint_values)
        for (int c = 0; c < def.ncomp(); ++c) {
            Dof d = base;
            d.kind = Dof::Kind::point_value;
            d.comp = c;
            d.point = (e.a + e.b) * rat(1, 2);
            d.sub = e.sub;
            out.push_back(d);
        }
    for (int c = 0; c < def.ncomp(); ++c)
        for (int w = 0; w < def.edge_dn_moments; ++w) {
            Dof d = base;
            d.kind = Dof::Kind::edge_dn_moment;
            d.comp = c;
            d.weight = edge_weight(w);
            out.push_back(d);
        }
    for (int w = 0; w < def.edge_rot_tau_moments; ++w) {
        Dof d = base;
        d.kind = Dof::Kind::edge_rot_tau;
        d.weight = edge_weight(w);
        out.push_back(d);
    }
    for (int w = 0; w < def.edge_rot_n_moments; ++w) {
        Dof d = base;
        d.kind = Dof::Kind::edge_rot_n;
        d.weight = edge_weight(w);
        out.push_back(d);
    }
    for (int copy = 0; copy < (def.edge_normal_moments ? 2 : 0); ++copy)
        for (int w = 0; w < def.edge_normal_moments; ++w) {
            Dof d = base;
            d.kind = Dof::Kind::edge_normal_moment;
            d.comp = copy;
            d.weight = edge_weight(w);
            out.push_back(d);
        }
}

inline void push_interior_dofs(std::vector<Dof>& out, const ElementDef& def, const MacroGeom& geom) {
    Dof base;
    base.entity = Dof::Entity::interior;
    if (def.interior_lagrange_points) {
        for (int c = 0; c < def.ncomp(); ++c) {
            Dof d = base;
            d.kind = Dof::Kind::point_value;
            d.comp = c;
            d.point = geom.split;
            d.sub = 0;
            out.push_back(d);
        }
        for (size_t ei = 0; ei < geom.interior_edge.size(); ++ei)
            for (int c = 0; c < def.ncomp(); ++c) {
                Dof d = base;
                d.kind = Dof::Kind::point_value;
                d.comp = c;
                d.point = (geom.interior_edge[ei].a + geom.interior_edge[ei].b) * rat(1, 2);
                d.sub = geom.interior_edge[ei].sub;
                out.push_back(d);
            }
    }
    if (def.interior_centroid_values)
        for (size_t t = 0; t < geom.tri.size(); ++t)
            for (int c = 0; c < def.ncomp(); ++c) {
                Dof d = base;
                d.kind = Dof::Kind::point_value;
                d.comp = c;
                d.point = (geom.tri[t][0] + geom.tri[t][1] + geom.tri[t][2]) * rat(1, 3);
                d.sub = static_cast<int>(t);
                out.push_back(d);
            }
    if (def.interior_subtri_vertex_values)
        for (size_t t = 0; t < geom.tri.size(); ++t)
            for (int v = 0; v < 3; ++v)
                for (int c = 0; c < def.ncomp(); ++c) {
                    Dof d = base;
                    d.kind = Dof::Kind::point_value;
                    d.comp = c;
                    d.point = geom.tri[t][v];
                    d.sub = static_cast<int>(t);
                    out.push_back(d);
                }
    if (def.interior_edge_normal_moments)
        for (size_t ei = 0; ei < geom.interior_edge.size(); ++ei)
            for (int copy = 0; copy < 2; ++copy)
                for (int w = 0; w < def.interior_edge_normal_moments; ++w) {
                    Dof d = base;
                    d.kind = Dof::Kind::edge_normal_moment;
                    d.comp = copy;
                    d.edge = geom.interior_edge[ei];
                    d.weight = edge_weight(w);
                    out.push_back(d);
                }
}

}  // namespace detail

/// vertex and edge dofs in canonical order (no interior dofs)
inline std::vector<Dof> boundary_dofs(const ElementDef& def, const MacroGeom& geom) {
    std::vector<Dof> out;
    for (size_t c = 0; c < geom.corner.size(); ++c) detail::push_vertex_dofs(out, def, geom, static_cast<int>(c));
    for (size_t e = 0; e < geom.parent_edge.size(); ++e) detail::push_edge_dofs(out, def, geom, static_cast<int>(e));
    return out;
}

/// Full dof list: vertex, edge, explicit interior, then bubble moments
/// (moments against a computed basis of the kernel of everything else).
inline std::vector<Dof> make_dofs(const ElementDef& def, const MacroGeom& geom, const LocalSpace& space) {
    std::vector<Dof> out = boundary_dofs(def, geom);
    detail::push_interior_dofs(out, def, geom);
    if (def.interior_bubble_moments) {
        Mat d(out.size(), space.dim);
        for (size_t i = 0; i < out.size(); ++i)
            for (int j = 0; j < space.dim; ++j) d(i, j) = eval_dof(out[i], space.basis_fields[j], geom);
        Mat bub = nullspace(d);
        if (def.expected_bubbles >= 0 && static_cast<int>(bub.cols()) != def.expected_bubbles)
            throw std::runtime_error("element '" + def.name + "': bubble count " + std::to_string(bub.cols()) +
                                     " contradicts the documented " + std::to_string(def.expected_bubbles));
        for (size_t b = 0; b < bub.cols(); ++b) {
            Dof dof;
            dof.kind = Dof::Kind::interior_moment;
            dof.entity = Dof::Entity::interior;
            Field w = space.field_from_space_coords(bub.column(b));
            dof.interior_weight = w;
            out.push_back(dof);
        }
    } else if (def.expected_bubbles > 0) {
        throw std::logic_error("element '" + def.name + "' declares bubbles but no bubble moments");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unisolvence
// ---------------------------------------------------------------------------

struct UnisolvenceResult {
    bool ok;
    Mat matrix;  // dofs x basis (generalized Vandermonde)
    std::string reason;
};

/// ok iff #dofs equals the space dimension and the dof-evaluation matrix is
/// nonsingular. Failure is a result, not an error.
inline UnisolvenceResult unisolvence_check(const LocalSpace& space, const std::vector<Dof>& dofs) {
    Mat u(dofs.size(), space.dim);
    for (size_t i = 0; i < dofs.size(); ++i)
        for (int j = 0; j < space.dim; ++j) u(i, j) = eval_dof(dofs[i], space.basis_fields[j], space.geom);
    if (static_cast<int>(dofs.size()) != space.dim)
        return {false, u,
                "dof count " + std::to_string(dofs.size()) + " != dimension " + std::to_string(space.dim)};
    if (rank(u) != static_cast<size_t>(space.dim)) return {false, u, "dof matrix is singular"};
    return {true, u, ""};
}

/// A finalized element on one macro: shape space, dofs and the nodal basis
/// dual to them.
struct LocalElement {
    LocalSpace space;
    std::vector<Dof> dofs;
    Mat unisolvence;          // dofs x basis
    Mat nodal;                // coefficients x dim, columns dual to the dofs
    std::vector<Field> nodal_fields;
};

inline LocalElement build_local_element(const ElementDef& def, const MacroGeom& geom) {
    LocalElement el;
    el.space = build_shape_space(def, geom);
    el.dofs = make_dofs(def, geom, el.space);
    auto uni = unisolvence_check(el.space, el.dofs);
    if (!uni.ok)
        throw std::runtime_error("element '" + def.name + "' failed unisolvence: " + uni.reason);
    el.unisolvence = uni.matrix;
    el.nodal = el.space.basis * inverse(el.unisolvence);
    el.nodal_fields.reserve(el.space.dim);
    for (int j = 0; j < el.space.dim; ++j) el.nodal_fields.push_back(el.space.field_from_coeffs(el.nodal.column(j)));
    return el;
}

}  // namespace bggfe
