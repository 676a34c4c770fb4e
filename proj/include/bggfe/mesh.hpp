// 2D macroelement meshes: Clough-Tocher split triangles and criss-cross split
// quadrilaterals, with exact rational coordinates, full sub-entity
// enumeration and singular-vertex flags.
#pragma once

#include "bggfe/rational.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bggfe {

struct Pt {
    Rat x, y;

    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
    bool operator<(const Pt& o) const { return x < o.x || (x == o.x && y < o.y); }
    Pt operator-(const Pt& o) const { return {x - o.x, y - o.y}; }
    Pt operator+(const Pt& o) const { return {x + o.x, y + o.y}; }
    Pt operator*(const Rat& s) const { return {x * s, y * s}; }
};

inline Rat cross(const Pt& u, const Pt& v) { return u.x * v.y - u.y * v.x; }

/// twice the signed area of (a, b, c)
inline Rat orient2(const Pt& a, const Pt& b, const Pt& c) { return cross(b - a, c - a); }

inline Rat triangle_area(const Pt& a, const Pt& b, const Pt& c) { return orient2(a, b, c) / 2; }

enum class MacroKind { clough_tocher, criss_cross, plain_triangle };

inline std::string kind_name(MacroKind k) {
    switch (k) {
        case MacroKind::clough_tocher: return "clough_tocher";
        case MacroKind::criss_cross: return "criss_cross";
        default: return "plain_triangle";
    }
}

/// One split macroelement, described by local vertex indices:
/// parent corners first, then the split point (if any).
struct MacroElement {
    MacroKind kind;
    std::vector<Pt> verts;                    // corners..., split point last (ct/cc)
    int ncorners;
    std::vector<std::array<int, 3>> tris;     // positively oriented, cyclic around the split
    std::vector<std::array<int, 2>> edges;    // parent edges first (i -> i+1), then interior

    int split_index() const { return kind == MacroKind::plain_triangle ? -1 : ncorners; }
    Pt split_point() const { return verts[ncorners]; }
};

inline MacroElement split_clough_tocher(const std::array<Pt, 3>& tri, std::optional<Pt> interior = std::nullopt) {
    Rat area2 = orient2(tri[0], tri[1], tri[2]);
    if (is_zero(area2)) throw std::invalid_argument("clough-tocher split: degenerate triangle");
    if (sgn(area2) < 0) throw std::invalid_argument("clough-tocher split: vertices must be positively oriented");
    Pt c = interior ? *interior : Pt{(tri[0].x + tri[1].x + tri[2].x) / 3, (tri[0].y + tri[1].y + tri[2].y) / 3};
    // strictly inside: positive orientation against every edge
    for (int i = 0; i < 3; ++i)
        if (sgn(orient2(tri[i], tri[(i + 1) % 3], c)) <= 0)
            throw std::invalid_argument("clough-tocher split: interior point is not strictly inside");
    MacroElement m;
    m.kind = MacroKind::clough_tocher;
    m.verts = {tri[0], tri[1], tri[2], c};
    m.ncorners = 3;
    m.tris = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
    m.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}};
    return m;
}

inline MacroElement split_crisscross(const std::array<Pt, 4>& quad) {
    for (int i = 0; i < 4; ++i)
        if (sgn(orient2(quad[i], quad[(i + 1) % 4], quad[(i + 2) % 4])) <= 0)
            throw std::invalid_argument("criss-cross split: quad must be strictly convex, positively oriented");
    // intersection of diagonals 0-2 and 1-3
    Pt d1 = quad[2] - quad[0], d2 = quad[3] - quad[1];
    Rat det = cross(d1, d2);
    // convexity guarantees a transversal intersection
    Rat t = cross(quad[1] - quad[0], d2) / det;
    Pt z = quad[0] + d1 * t;
    MacroElement m;
    m.kind = MacroKind::criss_cross;
    m.verts = {quad[0], quad[1], quad[2], quad[3], z};
    m.ncorners = 4;
    m.tris = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    m.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}, {2, 4}, {3, 4}};
    return m;
}

inline MacroElement plain_triangle(const std::array<Pt, 3>& tri) {
    if (sgn(orient2(tri[0], tri[1], tri[2])) <= 0)
        throw std::invalid_argument("plain triangle: vertices must be positively oriented");
    MacroElement m;
    m.kind = MacroKind::plain_triangle;
    m.verts = {tri[0], tri[1], tri[2]};
    m.ncorners = 3;
    m.tris = {{0, 1, 2}};
    m.edges = {{0, 1}, {1, 2}, {2, 0}};
    return m;
}

// ---------------------------------------------------------------------------

struct MacroMesh {
    struct Edge {
        int a, b;                // global vertex ids, a < b
        std::vector<int> tris;   // incident refined triangles
        bool boundary = false;
    };
    struct Tri {
        std::array<int, 3> v;
        int macro;
    };
    struct Macro {
        MacroKind kind;
        std::vector<int> corners;         // global ids, cyclic
        int split = -1;                   // global id of the split vertex
        std::vector<int> parent_edges;    // edge ids, parent_edges[i] joins corners i, i+1
        std::vector<int> interior_edges;  // edge ids (corner i -> split)
        std::vector<int> tri_ids;
    };

    std::vector<Pt> vertices;
    std::vector<Edge> edges;
    std::vector<Tri> tris;
    std::vector<Macro> macros;
    std::vector<bool> singular;           // per vertex

    long euler() const {
        return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
               static_cast<long>(tris.size());
    }

    const Pt& point(int v) const { return vertices[v]; }

    MacroKind kind() const {
        if (macros.empty()) throw std::logic_error("empty mesh");
        return macros.front().kind;
    }

    /// do all incident refined edges of a vertex lie on exactly two lines?
    bool incident_edges_on_two_lines(int v) const {
        std::vector<Pt> dirs;
        for (const auto& e : edges) {
            if (e.a == v) dirs.push_back(vertices[e.b] - vertices[e.a]);
            else if (e.b == v) dirs.push_back(vertices[e.a] - vertices[e.b]);
        }
        std::vector<Pt> lines;
        for (const auto& d : dirs) {
            bool found = false;
            for (const auto& l : lines)
                if (is_zero(cross(d, l))) found = true;
            if (!found) lines.push_back(d);
        }
        return lines.size() == 2;
    }
};

inline MacroMesh assemble_mesh(const std::vector<MacroElement>& cells) {
    MacroMesh mesh;
    std::map<Pt, int> vid;
    auto global_vertex = [&](const Pt& p) {
        auto it = vid.find(p);
        if (it != vid.end()) return it->second;
        int id = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(p);
        vid.emplace(p, id);
        return id;
    };
    std::map<std::pair<int, int>, int> eid;
    auto global_edge = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        auto it = eid.find({a, b});
        if (it != eid.end()) return it->second;
        int id = static_cast<int>(mesh.edges.size());
        mesh.edges.push_back({a, b, {}, false});
        eid.emplace(std::make_pair(a, b), id);
        return id;
    };

    for (const auto& cell : cells) {
        MacroMesh::Macro mac;
        mac.kind = cell.kind;
        std::vector<int> gv;
        for (const auto& p : cell.verts) gv.push_back(global_vertex(p));
        for (int i = 0; i < cell.ncorners; ++i) mac.corners.push_back(gv[i]);
        if (cell.split_index() >= 0) mac.split = gv[cell.split_index()];
        for (size_t k = 0; k < cell.edges.size(); ++k) {
            int e = global_edge(gv[cell.edges[k][0]], gv[cell.edges[k][1]]);
            if (static_cast<int>(k) < cell.ncorners || cell.kind == MacroKind::plain_triangle)
                mac.parent_edges.push_back(e);
            else
                mac.interior_edges.push_back(e);
        }
        for (const auto& t : cell.tris) {
            int tid = static_cast<int>(mesh.tris.size());
            mesh.tris.push_back({{gv[t[0]], gv[t[1]], gv[t[2]]}, static_cast<int>(mesh.macros.size())});
            mac.tri_ids.push_back(tid);
        }
        mesh.macros.push_back(std::move(mac));
    }

    // edge-triangle incidence and boundary classification
    for (size_t t = 0; t < mesh.tris.size(); ++t) {
        const auto& v = mesh.tris[t].v;
        for (int k = 0; k < 3; ++k) {
            int a = v[k], b = v[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            auto it = eid.find({a, b});
            if (it == eid.end()) throw std::logic_error("triangle edge missing from edge table");
            mesh.edges[it->second].tris.push_back(static_cast<int>(t));
        }
    }
    for (auto& e : mesh.edges) {
        if (e.tris.size() > 2)
            throw std::invalid_argument("non-conforming mesh: an edge is shared by more than two triangles");
        e.boundary = e.tris.size() == 1;
    }
    // hanging vertices: no vertex may lie strictly inside another edge
    for (size_t v = 0; v < mesh.vertices.size(); ++v) {
        const Pt& p = mesh.vertices[v];
        for (const auto& e : mesh.edges) {
            if (static_cast<int>(v) == e.a || static_cast<int>(v) == e.b) continue;
            const Pt& a = mesh.vertices[e.a];
            const Pt& b = mesh.vertices[e.b];
            if (!is_zero(orient2(a, b, p))) continue;
            Rat dot = (p - a).x * (b - a).x + (p - a).y * (b - a).y;
            Rat len2 = (b - a).x * (b - a).x + (b - a).y * (b - a).y;
            if (sgn(dot) > 0 && dot < len2)
                throw std::invalid_argument("non-conforming mesh: vertex lies inside an edge (hanging node)");
        }
    }

    mesh.singular.assign(mesh.vertices.size(), false);
    for (const auto& m : mesh.macros)
        if (m.kind == MacroKind::criss_cross) mesh.singular[m.split] = true;
    return mesh;
}

// ---------------------------------------------------------------------------
// Built-in meshes and JSON input
// ---------------------------------------------------------------------------

inline MacroMesh builtin_mesh(const std::string& name);

namespace detail {

/// SAX handler that stores JSON floats by their *raw text* so decimal
/// literals can be converted to rationals exactly.
struct RawNumberSax {
    using json = nlohmann::json;
    std::vector<json*> stack;
    std::string pending_key;
    json root;

    json& place() {
        if (stack.empty()) return root;
        json& top = *stack.back();
        if (top.is_array()) {
            top.push_back(nullptr);
            return top.back();
        }
        return top[pending_key];
    }
    bool null() { place() = nullptr; return true; }
    bool boolean(bool v) { place() = v; return true; }
    bool number_integer(json::number_integer_t v) { place() = v; return true; }
    bool number_unsigned(json::number_unsigned_t v) { place() = v; return true; }
    bool number_float(json::number_float_t, const std::string& raw) { place() = raw; return true; }
    bool string(std::string& v) { place() = v; return true; }
    bool binary(json::binary_t& v) { place() = v; return true; }
    bool key(std::string& k) { pending_key = k; return true; }
    bool start_object(std::size_t) {
        json& j = place();
        j = json::object();
        stack.push_back(&j);
        return true;
    }
    bool end_object() { stack.pop_back(); return true; }
    bool start_array(std::size_t) {
        json& j = place();
        j = json::array();
        stack.push_back(&j);
        return true;
    }
    bool end_array() { stack.pop_back(); return true; }
    bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) {
        throw std::invalid_argument("mesh JSON parse error at byte " + std::to_string(pos) + ": " + ex.what());
    }
};

inline Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<nlohmann::json::number_integer_t>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw std::invalid_argument("expected an integer, decimal or \"p/q\" rational in mesh JSON");
}

}  // namespace detail

inline MacroMesh mesh_from_json(const nlohmann::json& j) {
    if (!j.contains("vertices") || !j.contains("cells"))
        throw std::invalid_argument("mesh JSON needs 'vertices' and 'cells'");
    std::vector<Pt> pts;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_array() || v.size() != 2) throw std::invalid_argument("mesh JSON vertex must be [x, y]");
        pts.push_back({detail::rat_from_json(v[0]), detail::rat_from_json(v[1])});
    }
    std::vector<MacroElement> cells;
    for (const auto& c : j.at("cells")) {
        std::string kind = c.at("kind").get<std::string>();
        std::vector<int> ids;
        for (const auto& i : c.at("vertices")) ids.push_back(i.get<int>());
        for (int i : ids)
            if (i < 0 || i >= static_cast<int>(pts.size()))
                throw std::invalid_argument("mesh JSON cell references a missing vertex");
        if (kind == "ct") {
            if (ids.size() != 3) throw std::invalid_argument("ct cell needs 3 vertices");
            std::optional<Pt> split;
            if (c.contains("split_point")) {
                const auto& s = c.at("split_point");
                split = Pt{detail::rat_from_json(s[0]), detail::rat_from_json(s[1])};
            }
            cells.push_back(split_clough_tocher({pts[ids[0]], pts[ids[1]], pts[ids[2]]}, split));
        } else if (kind == "crisscross") {
            if (ids.size() != 4) throw std::invalid_argument("crisscross cell needs 4 vertices");
            cells.push_back(split_crisscross({pts[ids[0]], pts[ids[1]], pts[ids[2]], pts[ids[3]]}));
        } else {
            throw std::invalid_argument("unknown cell kind '" + kind + "' (expected \"ct\" or \"crisscross\")");
        }
    }
    return assemble_mesh(cells);
}

inline MacroMesh load_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open mesh file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    detail::RawNumberSax sax;
    nlohmann::json::sax_parse(ss.str(), &sax);
    return mesh_from_json(sax.root);
}

/// "unit-square-cc", "unit-triangle-ct", "trapezoid-cc", "grid:NxM:cc", "grid:NxM:ct"
inline MacroMesh builtin_mesh(const std::string& name) {
    auto square = [](long i, long j) {
        return std::array<Pt, 4>{Pt{Rat(i), Rat(j)}, Pt{Rat(i + 1), Rat(j)}, Pt{Rat(i + 1), Rat(j + 1)},
                                 Pt{Rat(i), Rat(j + 1)}};
    };
    if (name == "unit-square-cc") return assemble_mesh({split_crisscross(square(0, 0))});
    if (name == "unit-triangle-ct")
        return assemble_mesh({split_clough_tocher({Pt{Rat(0), Rat(0)}, Pt{Rat(1), Rat(0)}, Pt{Rat(0), Rat(1)}})});
    if (name == "trapezoid-cc")
        return assemble_mesh({split_crisscross(
            {Pt{Rat(0), Rat(0)}, Pt{Rat(2), Rat(0)}, Pt{rat(3, 2), Rat(1)}, Pt{Rat(0), Rat(1)}})});
    if (name.rfind("grid:", 0) == 0) {
        auto x1 = name.find('x', 5);
        auto c1 = name.find(':', 5);
        if (x1 == std::string::npos || c1 == std::string::npos || x1 > c1)
            throw std::invalid_argument("bad grid mesh name '" + name + "' (expected grid:NxM:cc|ct)");
        long n = std::stol(name.substr(5, x1 - 5));
        long m = std::stol(name.substr(x1 + 1, c1 - x1 - 1));
        std::string kind = name.substr(c1 + 1);
        if (n < 1 || m < 1) throw std::invalid_argument("grid mesh needs positive dimensions");
        std::vector<MacroElement> cells;
        for (long j = 0; j < m; ++j)
            for (long i = 0; i < n; ++i) {
                auto q = square(i, j);
                if (kind == "cc") {
                    cells.push_back(split_crisscross(q));
                } else if (kind == "ct") {
                    cells.push_back(split_clough_tocher({q[0], q[1], q[2]}));
                    cells.push_back(split_clough_tocher({q[0], q[2], q[3]}));
                } else {
                    throw std::invalid_argument("bad grid mesh kind '" + kind + "'");
                }
            }
        return assemble_mesh(cells);
    }
    throw std::invalid_argument("unknown built-in mesh '" + name +
                                "' (try unit-square-cc, unit-triangle-ct, trapezoid-cc, grid:NxM:cc, grid:NxM:ct)");
}

}  // namespace bggfe
