// Global finite element spaces: entity-based dof tables, conforming assembly,
// interpolation, and exact operator matrices between spaces.
#pragma once

#include "bggfe/local_space.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bggfe {

struct FESpace {
    ElementDef def;
    const MacroMesh* mesh = nullptr;

    int vertex_slots = 0;  // dofs per corner vertex
    int edge_slots = 0;    // dofs per parent edge
    std::vector<int> vertex_base;  // -1 where the vertex carries no dofs
    std::vector<int> edge_base;
    std::vector<int> macro_base;
    int dim = 0;

    struct PerMacro {
        MacroGeom geom;
        LocalElement el;
        std::vector<int> l2g;
    };
    std::vector<PerMacro> macros;

    /// restriction of a global coefficient vector to macro m
    Field restrict_to_macro(const std::vector<Rat>& coeffs, int m) const {
        const auto& pm = macros[m];
        const int nsub = static_cast<int>(pm.geom.tri.size());
        std::vector<Rat> local(pm.el.nodal.rows(), Rat(0));
        for (size_t j = 0; j < pm.l2g.size(); ++j) {
            const Rat& c = coeffs[pm.l2g[j]];
            if (is_zero(c)) continue;
            for (size_t i = 0; i < pm.el.nodal.rows(); ++i) local[i] += pm.el.nodal(i, j) * c;
        }
        (void)nsub;
        return pm.el.space.field_from_coeffs(local);
    }

    /// global dof values of a single smooth field (shared dofs must agree)
    std::vector<Rat> interpolate(const PolyTensor& u) const {
        std::vector<Rat> out(dim, Rat(0));
        std::vector<bool> set(dim, false);
        for (const auto& pm : macros) {
            Field f(pm.geom.tri.size(), u);
            for (size_t i = 0; i < pm.el.dofs.size(); ++i) {
                Rat v = eval_dof(pm.el.dofs[i], f, pm.geom);
                int g = pm.l2g[i];
                if (set[g] && out[g] != v)
                    throw std::runtime_error("interpolate: shared dof is not single-valued on the given field");
                out[g] = v;
                set[g] = true;
            }
        }
        return out;
    }
};

namespace detail {

inline int count_entity_slots(const std::vector<Dof>& dofs, Dof::Entity ent, int index) {
    int n = 0;
    for (const auto& d : dofs)
        if (d.entity == ent && d.entity_index == index) ++n;
    return n;
}

}  // namespace detail

struct TraceMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Conforming global space; unisolvence is verified on every macro and the
/// interelement continuity implied by shared dofs is re-verified by exact
/// trace comparison with a seeded random coefficient vector.
inline FESpace build_fespace(const ElementDef& def, const MacroMesh& mesh, std::uint64_t trace_seed = 2024) {
    FESpace fs;
    fs.def = def;
    fs.mesh = &mesh;
    for (const auto& mac : mesh.macros)
        if (mac.kind != def.macro_kind)
            throw std::invalid_argument("element '" + def.name + "' needs " + kind_name(def.macro_kind) +
                                        " macros but the mesh has " + kind_name(mac.kind));

    for (size_t m = 0; m < mesh.macros.size(); ++m) {
        FESpace::PerMacro pm;
        pm.geom = macro_geometry(mesh, static_cast<int>(m));
        pm.el = build_local_element(def, pm.geom);
        fs.macros.push_back(std::move(pm));
    }

    fs.vertex_slots = detail::count_entity_slots(fs.macros[0].el.dofs, Dof::Entity::vertex, 0);
    fs.edge_slots = detail::count_entity_slots(fs.macros[0].el.dofs, Dof::Entity::edge, 0);

    // which vertices / edges carry dofs
    std::vector<bool> vertex_used(mesh.vertices.size(), false);
    std::vector<bool> edge_used(mesh.edges.size(), false);
    for (const auto& mac : mesh.macros) {
        for (int v : mac.corners) vertex_used[v] = true;
        for (int e : mac.parent_edges) edge_used[e] = true;
    }
    int next = 0;
    fs.vertex_base.assign(mesh.vertices.size(), -1);
    if (fs.vertex_slots > 0)
        for (size_t v = 0; v < mesh.vertices.size(); ++v)
            if (vertex_used[v]) {
                fs.vertex_base[v] = next;
                next += fs.vertex_slots;
            }
    fs.edge_base.assign(mesh.edges.size(), -1);
    if (fs.edge_slots > 0)
        for (size_t e = 0; e < mesh.edges.size(); ++e)
            if (edge_used[e]) {
                fs.edge_base[e] = next;
                next += fs.edge_slots;
            }
    fs.macro_base.assign(mesh.macros.size(), -1);
    for (size_t m = 0; m < mesh.macros.size(); ++m) {
        fs.macro_base[m] = next;
        next += detail::count_entity_slots(fs.macros[m].el.dofs, Dof::Entity::interior, -1);
    }
    fs.dim = next;

    // local-to-global
    for (size_t m = 0; m < mesh.macros.size(); ++m) {
        const auto& mac = mesh.macros[m];
        auto& pm = fs.macros[m];
        std::vector<int> vcount(mac.corners.size(), 0), ecount(mac.parent_edges.size(), 0);
        int icount = 0;
        for (const auto& d : pm.el.dofs) {
            switch (d.entity) {
                case Dof::Entity::vertex: {
                    int gv = mac.corners[d.entity_index];
                    pm.l2g.push_back(fs.vertex_base[gv] + vcount[d.entity_index]++);
                    break;
                }
                case Dof::Entity::edge: {
                    int ge = mac.parent_edges[d.entity_index];
                    pm.l2g.push_back(fs.edge_base[ge] + ecount[d.entity_index]++);
                    break;
                }
                case Dof::Entity::interior:
                    pm.l2g.push_back(fs.macro_base[m] + icount++);
                    break;
            }
        }
    }

    // exact trace re-verification on shared parent edges
    if (def.trace_value || def.trace_dn || def.trace_rot || def.trace_normal) {
        RatRng rng(trace_seed);
        std::vector<Rat> coeffs(fs.dim);
        for (auto& c : coeffs) c = rng.next_rat(7, 5);
        std::vector<Field> fields;
        for (size_t m = 0; m < mesh.macros.size(); ++m) fields.push_back(fs.restrict_to_macro(coeffs, static_cast<int>(m)));

        for (size_t e = 0; e < mesh.edges.size(); ++e) {
            if (!edge_used[e] || mesh.edges[e].boundary) continue;
            // macros sharing this parent edge
            std::vector<std::pair<int, int>> sides;  // (macro, local parent-edge index)
            for (size_t m = 0; m < mesh.macros.size(); ++m) {
                const auto& pe = mesh.macros[m].parent_edges;
                for (size_t k = 0; k < pe.size(); ++k)
                    if (pe[k] == static_cast<int>(e)) sides.emplace_back(static_cast<int>(m), static_cast<int>(k));
            }
            if (sides.size() != 2) continue;
            auto [ma, ka] = sides[0];
            auto [mb, kb] = sides[1];
            const EdgeFrame& fa = fs.macros[ma].geom.parent_edge[ka];
            const EdgeFrame& fb = fs.macros[mb].geom.parent_edge[kb];
            const PolyTensor& ua = fields[ma][fa.sub];
            const PolyTensor& ub = fields[mb][fb.sub];
            auto restrict_both = [&](const Poly& pa, const Poly& pb) {
                return detail::restrict_to_edge(pa, fa) - detail::restrict_to_edge(pb, fb);
            };
            if (def.trace_value)
                for (int c = 0; c < def.ncomp(); ++c)
                    if (!restrict_both(ua.entry[c], ub.entry[c]).is_zero_poly())
                        throw TraceMismatch("element '" + def.name + "': value trace mismatch across a shared edge");
            if (def.trace_dn)
                for (int c = 0; c < def.ncomp(); ++c) {
                    Poly da = ua.entry[c].derivative(0) * fa.nrm.x + ua.entry[c].derivative(1) * fa.nrm.y;
                    Poly db = ub.entry[c].derivative(0) * fb.nrm.x + ub.entry[c].derivative(1) * fb.nrm.y;
                    if (!restrict_both(da, db).is_zero_poly())
                        throw TraceMismatch("element '" + def.name + "': normal-derivative trace mismatch");
                }
            if (def.trace_rot) {
                PolyTensor ra = rot(ua), rb = rot(ub);
                for (size_t c = 0; c < ra.entry.size(); ++c)
                    if (!restrict_both(ra.entry[c], rb.entry[c]).is_zero_poly())
                        throw TraceMismatch("element '" + def.name + "': rot trace mismatch");
            }
            if (def.trace_normal) {
                for (int copy = 0; copy < 2; ++copy) {
                    Poly na = ua.at(0, copy) * fa.nrm.x + ua.at(1, copy) * fa.nrm.y;
                    Poly nb = ub.at(0, copy) * fb.nrm.x + ub.at(1, copy) * fb.nrm.y;
                    if (!restrict_both(na, nb).is_zero_poly())
                        throw TraceMismatch("element '" + def.name + "': normal-component trace mismatch");
                }
            }
        }
    }
    return fs;
}

// ---------------------------------------------------------------------------
// Operator matrices
// ---------------------------------------------------------------------------

struct MembershipError : std::runtime_error {
    int macro, basis_fn, sub_triangle;
    MembershipError(const std::string& op, int m, int j, int s)
        : std::runtime_error("operator '" + op + "': image of basis function " + std::to_string(j) +
                             " on macro " + std::to_string(m) + " leaks out of the target space on sub-triangle " +
                             std::to_string(s)),
          macro(m),
          basis_fn(j),
          sub_triangle(s) {}
};

/// Exact matrix of a (differential or algebraic) operator between two global
/// spaces on the same mesh. Membership of every image in the target space is
/// verified by re-expanding through the nodal basis and subtracting.
inline Mat operator_matrix(const std::function<PolyTensor(const PolyTensor&)>& op, const std::string& op_name,
                           const FESpace& src, const FESpace& tgt) {
    if (src.mesh != tgt.mesh) throw std::invalid_argument("operator_matrix: spaces live on different meshes");
    Mat g(tgt.dim, src.dim);
    std::vector<std::vector<bool>> set(tgt.dim, std::vector<bool>(src.dim, false));
    for (size_t m = 0; m < src.macros.size(); ++m) {
        const auto& sm = src.macros[m];
        const auto& tm = tgt.macros[m];
        const int nsub = static_cast<int>(sm.geom.tri.size());
        for (size_t j = 0; j < sm.el.nodal_fields.size(); ++j) {
            Field img(nsub, PolyTensor(tgt.def.vrows, tgt.def.vcols, 2));
            for (int s = 0; s < nsub; ++s) {
                PolyTensor v = op(sm.el.nodal_fields[j][s]);
                if (v.rows != tgt.def.vrows || v.cols != tgt.def.vcols)
                    throw shape_error(op_name + " target", v.rows, v.cols);
                img[s] = v;
            }
            std::vector<Rat> dv(tm.el.dofs.size());
            for (size_t i = 0; i < tm.el.dofs.size(); ++i) dv[i] = eval_dof(tm.el.dofs[i], img, tm.geom);
            // membership: subtract the dof re-expansion
            Field back(nsub, PolyTensor(tgt.def.vrows, tgt.def.vcols, 2));
            std::vector<Rat> coef(tm.el.nodal.rows(), Rat(0));
            for (size_t i = 0; i < dv.size(); ++i) {
                if (is_zero(dv[i])) continue;
                for (size_t rr = 0; rr < tm.el.nodal.rows(); ++rr) coef[rr] += tm.el.nodal(rr, i) * dv[i];
            }
            back = tm.el.space.field_from_coeffs(coef);
            for (int s = 0; s < nsub; ++s)
                if (!(back[s] == img[s]))
                    throw MembershipError(op_name, static_cast<int>(m), static_cast<int>(j), s);
            for (size_t i = 0; i < dv.size(); ++i) {
                int gi = tm.l2g[i], gj = sm.l2g[j];
                if (set[gi][gj]) {
                    if (g(gi, gj) != dv[i])
                        throw std::runtime_error("operator '" + op_name +
                                                 "': shared dof received conflicting values (non-conforming image)");
                } else {
                    g(gi, gj) = dv[i];
                    set[gi][gj] = true;
                }
            }
        }
    }
    return g;
}

/// per-element dimension table row
struct DimRow {
    std::string element;
    std::string macro_kind;
    int local_dim;
    int vertex_dofs, edge_dofs, interior_dofs;
};

inline DimRow dimension_row(const std::string& name, const MacroGeom& geom) {
    ElementDef def = element_catalog(name);
    LocalElement el = build_local_element(def, geom);
    DimRow row{name, kind_name(def.macro_kind), el.space.dim, 0, 0, 0};
    for (const auto& d : el.dofs) {
        if (d.entity == Dof::Entity::vertex) ++row.vertex_dofs;
        else if (d.entity == Dof::Entity::edge) ++row.edge_dofs;
        else ++row.interior_dofs;
    }
    return row;
}

}  // namespace bggfe
