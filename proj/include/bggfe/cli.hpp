// Command-line driver: dimension tables, diagram verification and the
// curvature identity suite. Kept header-only and stream-based so the same
// entry point is exercised by tests byte-for-byte.
#pragma once

#include "bggfe/bgg.hpp"
#include "bggfe/identity_suite.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace bggfe {

namespace cli_detail {

inline MacroMesh resolve_mesh(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) return load_mesh_file(name_or_path);
    return builtin_mesh(name_or_path);
}

inline std::string render_table(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
    } else {  // markdown
        os << "|";
        for (const auto& h : header) os << " " << h << " |";
        os << "\n|";
        for (size_t i = 0; i < header.size(); ++i) os << " --- |";
        os << "\n";
        for (const auto& r : rows) {
            os << "|";
            for (const auto& c : r) os << " " << c << " |";
            os << "\n";
        }
    }
    return os.str();
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot write to '" + out_path + "'");
        f << text;
    }
}

struct DimsArgs {
    std::string mesh, element, out_path;
    std::string format = "md";
};

inline int cmd_dims(const DimsArgs& a, std::ostream& out) {
    std::string mesh_name = a.mesh;
    if (mesh_name.empty()) {
        if (a.element.empty()) {
            mesh_name = "unit-square-cc";
        } else {
            ElementDef def = element_catalog(a.element);  // throws for unknown names
            mesh_name = def.macro_kind == MacroKind::clough_tocher ? "unit-triangle-ct" : "unit-square-cc";
        }
    }
    MacroMesh mesh = resolve_mesh(mesh_name);
    MacroKind kind = mesh.kind();
    MacroGeom geom = macro_geometry(mesh, 0);

    std::vector<std::string> names;
    if (!a.element.empty()) {
        if (a.element == "ker_sskw") {
            if (kind != MacroKind::criss_cross)
                throw std::invalid_argument("ker_sskw is defined on criss-cross meshes");
        } else {
            ElementDef def = element_catalog(a.element);
            if (def.macro_kind != kind)
                throw std::invalid_argument("element '" + a.element + "' lives on " + kind_name(def.macro_kind) +
                                            " macros, not on this mesh");
        }
        names = {a.element};
    } else {
        names = catalog_names(kind);
        if (kind == MacroKind::criss_cross) names.push_back("ker_sskw");
    }

    std::vector<DimRow> table;
    for (const auto& n : names) {
        if (n == "ker_sskw") {
            int interior = stress_reduced_interior_dofs(geom);
            DimRow y1 = dimension_row("Y1", geom);
            DimRow w2 = dimension_row("W2", geom);
            table.push_back({"ker_sskw", kind_name(kind), y1.local_dim - w2.local_dim, 0, y1.edge_dofs, interior});
        } else {
            table.push_back(dimension_row(n, geom));
        }
    }

    if (a.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : table)
            j.push_back({{"element", r.element},
                         {"macro_kind", r.macro_kind},
                         {"local_dim", r.local_dim},
                         {"vertex_dofs", r.vertex_dofs},
                         {"edge_dofs", r.edge_dofs},
                         {"interior_dofs", r.interior_dofs}});
        emit(j.dump(2) + "\n", a.out_path, out);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : table)
            rows.push_back({r.element, r.macro_kind, std::to_string(r.local_dim), std::to_string(r.vertex_dofs),
                            std::to_string(r.edge_dofs), std::to_string(r.interior_dofs)});
        emit(render_table({"element", "macro_kind", "local_dim", "vertex_dofs", "edge_dofs", "interior_dofs"}, rows,
                          a.format),
             a.out_path, out);
    }
    return 0;
}

struct VerifyArgs {
    std::string diagram, mesh, out_path;
    std::string format = "json";
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    if (a.diagram != "stress" && a.diagram != "strain")
        throw std::invalid_argument("--diagram must be 'stress' or 'strain'");
    std::string mesh_name = a.mesh.empty() ? (a.diagram == "stress" ? "unit-square-cc" : "unit-triangle-ct") : a.mesh;
    MacroMesh mesh = resolve_mesh(mesh_name);

    nlohmann::json report;
    bool ok = true;
    if (a.diagram == "stress") {
        if (mesh.kind() != MacroKind::criss_cross)
            throw std::invalid_argument("diagram/mesh-kind mismatch: the stress diagram needs a criss-cross mesh");
        StressDiagram d = build_stress_diagram(mesh);
        int reduced = stress_reduced_interior_dofs(d.W1.macros[0].geom);
        detail::push_check(d.checks, "stress_reduced_interior_dofs_eq_5", reduced == 5,
                           "interior dofs of ker(-2 sskw) on one macro");
        ok = d.all_pass();
        report = diagram_report("stress", stress_space_infos(d), d.connectors, d.checks, d.cohomology);
    } else {
        if (mesh.kind() != MacroKind::clough_tocher)
            throw std::invalid_argument("diagram/mesh-kind mismatch: the strain diagram needs a Clough-Tocher mesh");
        StrainDiagram d = build_strain_diagram(mesh);
        ReducedStrainCheck rc = reduced_strain_unisolvence(d.Z1.macros[0].geom);
        detail::push_check(d.checks, "reduced_dofs_unisolvent_on_u1", rc.unisolvent);
        detail::push_check(d.checks, "u1_has_nonsymmetric_member", rc.has_nonsymmetric_member);
        ok = d.all_pass();
        report = diagram_report("strain", strain_space_infos(d), d.connectors, d.checks, d.cohomology);
    }

    if (a.format == "json") {
        emit(report.dump(2) + "\n", a.out_path, out);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& c : report.at("checks"))
            rows.push_back({c.at("name").get<std::string>(), c.at("status").get<std::string>(),
                            std::to_string(c.at("residual_rank").get<long>())});
        for (const auto& h : report.at("cohomology"))
            rows.push_back({h.at("complex").get<std::string>() + "_H" + std::to_string(h.at("index").get<int>()),
                            "dim", std::to_string(h.at("dim").get<int>())});
        emit(render_table({"check", "status", "value"}, rows, a.format), a.out_path, out);
    }
    return ok ? 0 : 1;
}

struct CurvatureArgs {
    std::string check = "all";
    std::string input, out_path;
    std::uint64_t seed = 42;
    std::string format = "json";
};

inline int cmd_curvature(const CurvatureArgs& a, std::ostream& out) {
    std::vector<std::string> names;
    if (a.check == "all") {
        names = curvature_check_names();
    } else {
        const auto& all = curvature_check_names();
        if (std::find(all.begin(), all.end(), a.check) == all.end()) {
            std::string valid;
            for (const auto& n : all) valid += " " + n;
            throw std::invalid_argument("unknown check '" + a.check + "' (valid: all" + valid + ")");
        }
        names = {a.check};
    }
    std::vector<CurvatureCase> cases;
    if (!a.input.empty()) {
        std::ifstream in(a.input);
        if (!in) throw std::invalid_argument("cannot open test-vector file '" + a.input + "'");
        nlohmann::json j;
        in >> j;
        cases = curvature_cases_from_json(j);
    }

    bool ok = true;
    nlohmann::json report = nlohmann::json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& n : names) {
        IdentityCheck c = run_curvature_check(n, a.seed, 50, cases);
        ok = ok && c.pass;
        report.push_back({{"check", c.name},
                          {"status", c.pass ? "pass" : "fail"},
                          {"cases", c.cases},
                          {"failures", c.failures},
                          {"detail", c.detail}});
        rows.push_back({c.name, c.pass ? "pass" : "fail", std::to_string(c.cases), std::to_string(c.failures),
                        c.detail});
    }
    if (a.format == "json")
        emit(report.dump(2) + "\n", a.out_path, out);
    else
        emit(render_table({"check", "status", "cases", "failures", "detail"}, rows, a.format), a.out_path, out);
    return ok ? 0 : 1;
}

}  // namespace cli_detail

/// returns the process exit code: 0 ok, 1 check failure, 2 usage/input error
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact verification engine for discrete elasticity (BGG) diagrams"};
    app.require_subcommand(1);

    cli_detail::DimsArgs dims;
    auto* cdims = app.add_subcommand("dims", "local dimension and dof tables");
    cdims->add_option("--mesh", dims.mesh, "built-in mesh name or mesh JSON path");
    cdims->add_option("--element", dims.element, "restrict to one element");
    cdims->add_option("--out", dims.out_path, "write output to a file");
    cdims->add_option("--format", dims.format, "json|csv|md")->check(CLI::IsMember({"json", "csv", "md"}));

    cli_detail::VerifyArgs verify;
    auto* cverify = app.add_subcommand("verify", "build a diagram and run every exact check");
    cverify->add_option("--diagram", verify.diagram, "stress|strain")->required();
    cverify->add_option("--mesh", verify.mesh, "built-in mesh name or mesh JSON path");
    cverify->add_option("--out", verify.out_path, "write output to a file");
    cverify->add_option("--format", verify.format, "json|csv|md")->check(CLI::IsMember({"json", "csv", "md"}));

    cli_detail::CurvatureArgs curv;
    auto* ccurv = app.add_subcommand("curvature", "curvature identity suite");
    ccurv->add_option("--check", curv.check, "check name or 'all'");
    ccurv->add_option("--seed", curv.seed, "seed for the random corpus");
    ccurv->add_option("--input", curv.input, "test-vector JSON file");
    ccurv->add_option("--out", curv.out_path, "write output to a file");
    ccurv->add_option("--format", curv.format, "json|csv|md")->check(CLI::IsMember({"json", "csv", "md"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cdims->parsed()) return cli_detail::cmd_dims(dims, out);
        if (cverify->parsed()) return cli_detail::cmd_verify(verify, out);
        return cli_detail::cmd_curvature(curv, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace bggfe
