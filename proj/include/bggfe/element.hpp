// Element definitions: shape-space constraints, degree-of-freedom recipes and
// the catalog of the twelve diagram elements.
//
// Matrix-valued elements are two column copies of a vector element; component
// index = row * cols + col, so column j of a 2x2 field is entries (j, 2+j).
#pragma once

#include "bggfe/mesh.hpp"
#include "bggfe/tensor.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bggfe {

struct EdgeFrame {
    Pt a, b;      // ordered endpoints; the dof parameter runs a -> b
    Pt tau, nrm;  // tau = b - a (unnormalized), nrm = (-tau.y, tau.x)
    int sub = 0;  // a sub-triangle containing the edge

    /// squared edge length; dof functionals absorb the length factor so no
    /// square roots enter any computation
    Rat len2() const { return tau.x * tau.x + tau.y * tau.y; }
};

/// Geometry of one macroelement with globally consistent edge frames.
struct MacroGeom {
    MacroKind kind;
    std::vector<std::array<Pt, 3>> tri;
    std::vector<Pt> corner;
    std::vector<int> corner_sub;           // some sub-triangle containing corner i
    std::vector<EdgeFrame> parent_edge;    // parent_edge[i] joins corners i, i+1
    std::vector<EdgeFrame> interior_edge;  // interior_edge[i] joins corner i and the split
    bool has_split = false;
    Pt split{};

    struct Interface {
        int sa, sb;  // sub-triangles on either side
        Pt a, b;     // the shared segment
    };
    std::vector<Interface> interfaces;
};

namespace detail {

inline EdgeFrame make_frame(const Pt& a, const Pt& b, int sub) {
    Pt tau = b - a;
    return {a, b, tau, Pt{-tau.y, tau.x}, sub};
}

}  // namespace detail

/// geometry from a standalone macro (edge direction: lower local index first)
inline MacroGeom macro_geometry(const MacroElement& m) {
    MacroGeom g;
    g.kind = m.kind;
    const int nc = m.ncorners;
    for (const auto& t : m.tris) g.tri.push_back({m.verts[t[0]], m.verts[t[1]], m.verts[t[2]]});
    for (int i = 0; i < nc; ++i) {
        g.corner.push_back(m.verts[i]);
        g.corner_sub.push_back(m.kind == MacroKind::plain_triangle ? 0 : i);
    }
    for (int i = 0; i < nc; ++i) {
        int a = i, b = (i + 1) % nc;
        int sub = m.kind == MacroKind::plain_triangle ? 0 : i;
        if (a > b) std::swap(a, b);
        g.parent_edge.push_back(detail::make_frame(m.verts[a], m.verts[b], sub));
    }
    if (m.split_index() >= 0) {
        g.has_split = true;
        g.split = m.split_point();
        for (int i = 0; i < nc; ++i) {
            // edge corner i -- split separates sub-tris i-1 and i
            g.interior_edge.push_back(detail::make_frame(m.verts[i], g.split, i));
            g.interfaces.push_back({(i + nc - 1) % nc, i, m.verts[i], g.split});
        }
    }
    return g;
}

/// geometry of macro `mi` within a mesh (edge frames by global vertex order)
inline MacroGeom macro_geometry(const MacroMesh& mesh, int mi) {
    const auto& mac = mesh.macros[mi];
    MacroGeom g;
    g.kind = mac.kind;
    for (int t : mac.tri_ids) {
        const auto& v = mesh.tris[t].v;
        g.tri.push_back({mesh.point(v[0]), mesh.point(v[1]), mesh.point(v[2])});
    }
    const int nc = static_cast<int>(mac.corners.size());
    for (int i = 0; i < nc; ++i) {
        g.corner.push_back(mesh.point(mac.corners[i]));
        g.corner_sub.push_back(mac.kind == MacroKind::plain_triangle ? 0 : i);
    }
    for (int i = 0; i < nc; ++i) {
        const auto& e = mesh.edges[mac.parent_edges[i]];
        int sub = mac.kind == MacroKind::plain_triangle ? 0 : i;
        g.parent_edge.push_back(detail::make_frame(mesh.point(e.a), mesh.point(e.b), sub));
    }
    if (mac.split >= 0) {
        g.has_split = true;
        g.split = mesh.point(mac.split);
        for (int i = 0; i < nc; ++i) {
            const auto& e = mesh.edges[mac.interior_edges[i]];
            g.interior_edge.push_back(detail::make_frame(mesh.point(e.a), mesh.point(e.b), i));
            g.interfaces.push_back({(i + nc - 1) % nc, i, g.corner[i], g.split});
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Degrees of freedom
// ---------------------------------------------------------------------------

/// a piecewise field: one PolyTensor per sub-triangle
using Field = std::vector<PolyTensor>;

struct Dof {
    enum class Kind {
        point_value,
        point_partial,
        point_rot,           // component of rot(u) at a point
        edge_comp_moment,    // int u_comp w(t) dt
        edge_dn_moment,      // int grad(u_comp).n w(t) dt
        edge_rot_tau,        // int rot(u).tau w(t) dt
        edge_rot_n,          // int rot(u).n  w(t) dt
        edge_normal_moment,  // int (column copy . n) w(t) dt
        interior_moment,     // sum_T int u : W
    };
    enum class Entity { vertex, edge, interior };

    Kind kind;
    Entity entity;
    int entity_index = -1;  // corner index / parent-edge index
    int comp = 0;           // entry index, rot component, or column copy
    int var = 0;
    Pt point{};
    int sub = 0;
    EdgeFrame edge{};
    Poly weight{1};
    std::vector<PolyTensor> interior_weight;
};

namespace detail {

inline Poly restrict_to_edge(const Poly& p, const EdgeFrame& e) {
    return p.compose_affine({e.a.x, e.a.y}, {{e.tau.x}, {e.tau.y}}, 1);
}

}  // namespace detail

inline Rat eval_dof(const Dof& d, const Field& u, const MacroGeom& geom) {
    using K = Dof::Kind;
    switch (d.kind) {
        case K::point_value:
            return u[d.sub].entry[d.comp].eval({d.point.x, d.point.y});
        case K::point_partial:
            return u[d.sub].entry[d.comp].derivative(d.var).eval({d.point.x, d.point.y});
        case K::point_rot:
            return rot(u[d.sub]).entry[d.comp].eval({d.point.x, d.point.y});
        case K::edge_comp_moment:
            return integrate_unit_interval(detail::restrict_to_edge(u[d.edge.sub].entry[d.comp], d.edge) * d.weight);
        case K::edge_dn_moment: {
            const Poly& p = u[d.edge.sub].entry[d.comp];
            Poly dn = p.derivative(0) * d.edge.nrm.x + p.derivative(1) * d.edge.nrm.y;
            return integrate_unit_interval(detail::restrict_to_edge(dn, d.edge) * d.weight);
        }
        case K::edge_rot_tau:
        case K::edge_rot_n: {
            PolyTensor r = rot(u[d.edge.sub]);
            const Pt& dir = d.kind == K::edge_rot_tau ? d.edge.tau : d.edge.nrm;
            Poly s = r.entry[0] * dir.x;
            if (r.entry.size() > 1) s = s + r.entry[1] * dir.y;
            return integrate_unit_interval(detail::restrict_to_edge(s, d.edge) * d.weight);
        }
        case K::edge_normal_moment: {
            const PolyTensor& f = u[d.edge.sub];
            // column copy d.comp of a matrix field
            Poly s = f.at(0, d.comp) * d.edge.nrm.x + f.at(1, d.comp) * d.edge.nrm.y;
            return integrate_unit_interval(detail::restrict_to_edge(s, d.edge) * d.weight);
        }
        case K::interior_moment: {
            Rat s = 0;
            for (size_t t = 0; t < u.size(); ++t)
                for (size_t e = 0; e < u[t].entry.size(); ++e) {
                    Poly prod = u[t].entry[e] * d.interior_weight[t].entry[e];
                    if (prod.is_zero_poly()) continue;
                    const auto& tc = geom.tri[t];
                    s += integrate_triangle(prod, {tc[0].x, tc[0].y}, {tc[1].x, tc[1].y}, {tc[2].x, tc[2].y});
                }
            return s;
        }
    }
    throw std::logic_error("unhandled dof kind");
}

// ---------------------------------------------------------------------------
// Element definitions and the catalog
// ---------------------------------------------------------------------------

struct ElementDef {
    std::string name;
    MacroKind macro_kind;
    int vrows = 1, vcols = 1;  // value shape
    int degree = 1;

    // shape-space constraints across interior interfaces
    bool c0 = false, c1 = false, rot_c0 = false, normal_cont = false, singular_relation = false;

    // interelement traces implied by the shared dofs (re-verified on meshes)
    bool trace_value = false, trace_dn = false, trace_rot = false, trace_normal = false;

    // dof recipe
    bool vertex_values = false, vertex_gradients = false, vertex_rot = false;
    int edge_value_moments = 0;    // per component
    int edge_midpoint_values = 0;  // 0/1, per component
    int edge_dn_moments = 0;       // per component
    int edge_rot_tau_moments = 0;
    int edge_rot_n_moments = 0;
    int edge_normal_moments = 0;   // per column copy
    bool interior_bubble_moments = false;
    bool interior_lagrange_points = false;   // split point + interior-edge midpoints
    bool interior_centroid_values = false;
    bool interior_subtri_vertex_values = false;
    int interior_edge_normal_moments = 0;    // per copy, on interior edges

    int expected_dim = -1;      // asserted at build time when >= 0
    int expected_bubbles = -1;

    int ncomp() const { return vrows * vcols; }
    bool is_matrix_valued() const { return vrows == 2 && vcols == 2; }
};

/// W0,W1,W2,Y0,Y1,Y2 (criss-cross) and Z0,Z1,Z2,V0,V1,V2 (Clough-Tocher),
/// plus plain-triangle Lagrange elements used by tests.
inline ElementDef element_catalog(const std::string& name) {
    ElementDef d;
    d.name = name;
    if (name == "W0") {
        d.macro_kind = MacroKind::criss_cross;
        d.degree = 3;
        d.c0 = d.c1 = true;
        d.trace_value = d.trace_dn = true;
        d.vertex_values = d.vertex_gradients = true;
        d.edge_dn_moments = 1;
        d.expected_dim = 16;
        d.expected_bubbles = 0;
    } else if (name == "W1" || name == "Y0") {
        d.macro_kind = MacroKind::criss_cross;
        d.vrows = 2;
        d.degree = 2;
        d.c0 = true;
        d.trace_value = true;
        d.vertex_values = true;
        d.edge_midpoint_values = 1;
        d.interior_lagrange_points = true;
        d.expected_dim = 26;
    } else if (name == "W2") {
        d.macro_kind = MacroKind::criss_cross;
        d.degree = 1;
        d.singular_relation = true;
        d.interior_bubble_moments = true;
        d.expected_dim = 11;
        d.expected_bubbles = 11;
    } else if (name == "Y1") {
        d.macro_kind = MacroKind::criss_cross;
        d.vrows = d.vcols = 2;
        d.degree = 1;
        d.normal_cont = true;
        d.trace_normal = true;
        d.edge_normal_moments = 2;
        d.interior_edge_normal_moments = 2;
        d.expected_dim = 32;
    } else if (name == "Y2") {
        d.macro_kind = MacroKind::criss_cross;
        d.vrows = 2;
        d.degree = 0;
        d.interior_centroid_values = true;
        d.expected_dim = 8;
    } else if (name == "Z0") {
        d.macro_kind = MacroKind::clough_tocher;
        d.vrows = 2;
        d.degree = 4;
        d.c0 = d.c1 = true;
        d.trace_value = d.trace_dn = true;
        d.vertex_values = d.vertex_gradients = true;
        d.edge_value_moments = 1;
        d.edge_dn_moments = 2;
        d.interior_bubble_moments = true;
        d.expected_dim = 42;
        d.expected_bubbles = 6;  // 3 per component
    } else if (name == "Z1") {
        d.macro_kind = MacroKind::clough_tocher;
        d.vrows = d.vcols = 2;
        d.degree = 3;
        d.c0 = d.rot_c0 = true;
        d.trace_value = d.trace_rot = true;
        d.vertex_values = d.vertex_rot = true;
        d.edge_value_moments = 2;
        d.edge_rot_tau_moments = 1;
        d.edge_rot_n_moments = 1;
        d.interior_bubble_moments = true;
        d.expected_dim = 60;
        d.expected_bubbles = 12;
    } else if (name == "Z2" || name == "V1") {
        d.macro_kind = MacroKind::clough_tocher;
        d.vrows = 2;
        d.degree = 2;
        d.c0 = true;
        d.trace_value = true;
        d.vertex_values = true;
        d.edge_midpoint_values = 1;
        d.interior_lagrange_points = true;
        d.expected_dim = 20;
    } else if (name == "V0") {
        d.macro_kind = MacroKind::clough_tocher;
        d.degree = 3;
        d.c0 = d.c1 = true;
        d.trace_value = d.trace_dn = true;
        d.vertex_values = d.vertex_gradients = true;
        d.edge_dn_moments = 1;
        d.expected_dim = 12;
        d.expected_bubbles = 0;
    } else if (name == "V2") {
        d.macro_kind = MacroKind::clough_tocher;
        d.degree = 1;
        d.interior_subtri_vertex_values = true;
        d.expected_dim = 9;
    } else if (name == "P1-lagrange") {
        d.macro_kind = MacroKind::plain_triangle;
        d.degree = 1;
        d.vertex_values = true;
        d.expected_dim = 3;
    } else if (name == "P2-lagrange") {
        d.macro_kind = MacroKind::plain_triangle;
        d.degree = 2;
        d.vertex_values = true;
        d.edge_midpoint_values = 1;
        d.expected_dim = 6;
    } else {
        throw std::invalid_argument(
            "unknown element '" + name +
            "' (valid: W0 W1 W2 Y0 Y1 Y2 Z0 Z1 Z2 V0 V1 V2 P1-lagrange P2-lagrange)");
    }
    return d;
}

inline std::vector<std::string> catalog_names(MacroKind k) {
    if (k == MacroKind::criss_cross) return {"W0", "W1", "W2", "Y0", "Y1", "Y2"};
    if (k == MacroKind::clough_tocher) return {"Z0", "Z1", "Z2", "V0", "V1", "V2"};
    return {"P1-lagrange", "P2-lagrange"};
}

/// edge weight polynomials in the arc parameter: 1, 2t-1
inline Poly edge_weight(int k) {
    if (k == 0) return Poly::constant(1, 1);
    if (k == 1) return parse_poly("2*x - 1", 1);
    throw std::invalid_argument("edge weights are defined for k = 0, 1");
}

}  // namespace bggfe
