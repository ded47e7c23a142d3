// boxplus: exact Boxplus algebra and limit-polytope toolkit.
//
// Subcommands wrap the library modules one-to-one; stdout carries a single
// JSON result document (CSV for `render`), stderr carries diagnostics.
// Exit codes: 0 success, 1 parse error, 2 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "boxplus/bpolytope.hpp"
#include "boxplus/io.hpp"
#include "boxplus/limit_linalg.hpp"
#include "boxplus/phi_oracle.hpp"
#include "boxplus/separation.hpp"
#include "boxplus/simplex.hpp"

namespace {

using boxplus::Rat;
using boxplus::Vec;
using Json = boxplus::io::Json;

struct CommonArgs {
    std::string input;
    std::string other;
    std::string output;
    std::string point;
    std::string rhs;
    std::string schedule = "1,2,4,8,16,32,64";
    double tolerance = 1e-6;
    unsigned precision_bits = 256;
    std::uint64_t seed = 42;
    bool parallel = false;
};

boxplus::PSchedule make_schedule(const CommonArgs& args) {
    boxplus::PSchedule sched;
    sched.ps = boxplus::io::parse_schedule_arg(args.schedule);
    sched.tolerance = args.tolerance;
    sched.precision_bits = args.precision_bits;
    return sched;
}

Json settings_json(const CommonArgs& args) {
    Json out;
    out["p_schedule"] = args.schedule;
    out["tolerance"] = args.tolerance;
    out["precision_bits"] = args.precision_bits;
    out["seed"] = args.seed;
    out["parallel"] = args.parallel;
    return out;
}

Json result_skeleton(const std::string& command, const CommonArgs& args, Json inputs) {
    Json doc;
    doc["command"] = command;
    doc["inputs"] = std::move(inputs);
    doc["outputs"] = Json::object();
    doc["diagnostics"] = Json::object();
    doc["settings"] = settings_json(args);
    return doc;
}

void write_output(const CommonArgs& args, const std::string& text) {
    if (args.output.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(args.output);
    if (!out) throw boxplus::Error("cannot open output file: " + args.output);
    out << text << "\n";
}

void emit(const CommonArgs& args, const Json& doc) {
    write_output(args, doc.dump(2));
}

std::vector<int> one_based(const std::vector<int>& indices) {
    std::vector<int> out;
    out.reserve(indices.size());
    for (int i : indices) out.push_back(i + 1);
    return out;
}

Json intermediate_to_json(const boxplus::IntermediatePoint& pt) {
    Json out;
    out["I"] = one_based(pt.I);
    out["J"] = one_based(pt.J);
    out["t"] = boxplus::io::vec_to_json(pt.t);
    out["zeta"] = boxplus::io::vec_to_json(pt.zeta);
    out["zeta_approx"] = boxplus::io::vec_to_approx_json(pt.zeta);
    return out;
}

// ---- commands ----

int cmd_hull(const CommonArgs& args) {
    Json in = boxplus::io::load_json_file(args.input);
    auto doc = boxplus::io::parse_point_set(in);
    boxplus::BuildOptions build;
    build.parallel = args.parallel;
    boxplus::BPolytope poly = boxplus::build_polytope(doc.points, build);

    Json result = result_skeleton("hull", args, boxplus::io::point_set_to_json(doc));
    Json inter = Json::array();
    for (const auto& pt : poly.intermediates) inter.push_back(intermediate_to_json(pt));
    result["outputs"]["intermediates"] = std::move(inter);
    Json orthants = Json::array();
    for (const auto& [orthant, indices] : poly.orthant_map) {
        Json entry;
        entry["signs"] = orthant.signs;
        entry["points"] = indices;
        orthants.push_back(std::move(entry));
    }
    result["outputs"]["orthants"] = std::move(orthants);
    result["diagnostics"]["intermediate_count"] = poly.intermediates.size();
    result["diagnostics"]["orthant_count"] = poly.orthant_map.size();
    emit(args, result);
    return 0;
}

int cmd_member(const CommonArgs& args) {
    Json in = boxplus::io::load_json_file(args.input);
    auto doc = boxplus::io::parse_point_set(in);
    Vec query = boxplus::io::parse_point_arg(args.point);
    if (query.size() != doc.dim) throw boxplus::ParseError("query point has wrong dimension");
    boxplus::BuildOptions build;
    build.parallel = args.parallel;
    boxplus::BPolytope poly = boxplus::build_polytope(doc.points, build);
    bool is_member = boxplus::member(poly, query);

    Json inputs = boxplus::io::point_set_to_json(doc);
    inputs["query"] = boxplus::io::vec_to_json(query);
    Json result = result_skeleton("member", args, std::move(inputs));
    result["outputs"]["member"] = is_member;
    emit(args, result);
    return 0;
}

int cmd_det(const CommonArgs& args) {
    Json in = boxplus::io::load_json_file(args.input);
    auto doc = boxplus::io::parse_matrix(in);
    Rat det = boxplus::det_infty(doc.matrix);

    Json inputs;
    inputs["matrix"] = Json::array();
    for (const Vec& row : doc.matrix) inputs["matrix"].push_back(boxplus::io::vec_to_json(row));
    Json result = result_skeleton("det", args, std::move(inputs));
    result["outputs"]["det"] = boxplus::io::rat_to_json(det);
    result["outputs"]["det_approx"] = boxplus::to_double(det);
    emit(args, result);
    return 0;
}

int cmd_solve(const CommonArgs& args) {
    Json in = boxplus::io::load_json_file(args.input);
    auto doc = boxplus::io::parse_matrix(in);
    Vec rhs;
    if (!args.rhs.empty())
        rhs = boxplus::io::parse_point_arg(args.rhs);
    else if (doc.rhs)
        rhs = *doc.rhs;
    else
        throw boxplus::ParseError("solve needs an rhs (document field or --rhs)");
    if (rhs.size() != doc.matrix.size()) throw boxplus::ParseError("rhs has wrong dimension");

    boxplus::CramerSolution sol = boxplus::cramer_infty(doc.matrix, rhs);
    std::vector<Vec> columns(doc.matrix.size(), Vec(doc.matrix.size()));
    for (size_t i = 0; i < doc.matrix.size(); ++i)
        for (size_t j = 0; j < doc.matrix.size(); ++j) columns[j][i] = doc.matrix[i][j];
    bool reconstructs = boxplus::boxplus_reconstruct(sol, columns, rhs);

    Json inputs;
    inputs["matrix"] = Json::array();
    for (const Vec& row : doc.matrix) inputs["matrix"].push_back(boxplus::io::vec_to_json(row));
    inputs["rhs"] = boxplus::io::vec_to_json(rhs);
    Json result = result_skeleton("solve", args, std::move(inputs));
    result["outputs"]["solution"] = boxplus::io::vec_to_json(sol.solution);
    result["outputs"]["solution_approx"] = boxplus::io::vec_to_approx_json(sol.solution);
    result["outputs"]["det"] = boxplus::io::rat_to_json(sol.det);
    Json alpha = Json::array();
    auto perms = boxplus::signed_permutations(doc.matrix.size());
    for (size_t s = 0; s < perms.size(); ++s) {
        Json row;
        row["perm"] = perms[s].perm;
        row["alpha"] = boxplus::io::vec_to_json(sol.alpha[s]);
        alpha.push_back(std::move(row));
    }
    result["outputs"]["alpha"] = std::move(alpha);
    result["diagnostics"]["reconstructs_rhs"] = reconstructs;
    emit(args, result);
    return 0;
}

int cmd_hyperplane(const CommonArgs& args) {
    Json in = boxplus::io::load_json_file(args.input);
    auto doc = boxplus::io::parse_point_set(in);
    boxplus::LimitHyperplane h = boxplus::hyperplane_infty(doc.points);

    Json result = result_skeleton("hyperplane", args, boxplus::io::point_set_to_json(doc));
    result["outputs"]["coeffs"] = boxplus::io::vec_to_json(h.coeffs);
    result["outputs"]["rhs"] = boxplus::io::rat_to_json(h.rhs);
    Json contains = Json::array();
    for (const Vec& pt : doc.points) contains.push_back(boxplus::hyperplane_contains(h, pt));
    result["diagnostics"]["contains_inputs"] = std::move(contains);
    emit(args, result);
    return 0;
}

int cmd_separate(const CommonArgs& args) {
    Json in_a = boxplus::io::load_json_file(args.input);
    Json in_e = boxplus::io::load_json_file(args.other);
    auto doc_a = boxplus::io::parse_point_set(in_a);
    auto doc_e = boxplus::io::parse_point_set(in_e);
    if (doc_a.dim != doc_e.dim) throw boxplus::ParseError("point sets have different dimensions");

    boxplus::SeparationOptions options;
    options.schedule = make_schedule(args);
    options.seed = args.seed;
    boxplus::SeparationResult sep =
        boxplus::separate_polytopes(doc_a.points, doc_e.points, options);

    Json inputs;
    inputs["A"] = boxplus::io::point_set_to_json(doc_a);
    inputs["E"] = boxplus::io::point_set_to_json(doc_e);
    Json result = result_skeleton("separate", args, std::move(inputs));
    result["outputs"]["a"] = boxplus::io::vec_to_json(sep.a);
    result["outputs"]["a_approx"] = boxplus::io::vec_to_approx_json(sep.a);
    result["outputs"]["c"] = boxplus::io::rat_to_json(sep.c);
    result["outputs"]["p_used"] = sep.p_used;
    result["outputs"]["converged"] = sep.converged;
    Json checks = Json::array();
    for (const auto& chk : sep.checks) {
        Json c;
        c["point"] = boxplus::io::vec_to_json(chk.point);
        c["value"] = boxplus::io::rat_to_json(chk.value);
        c["side"] = chk.side == boxplus::Side::lower ? "lower" : "upper";
        c["pass"] = chk.pass;
        checks.push_back(std::move(c));
    }
    result["diagnostics"]["check_count"] = checks.size();
    result["diagnostics"]["checks"] = std::move(checks);
    emit(args, result);
    return 0;
}

int cmd_hrep(const CommonArgs& args, unsigned samples, const std::string& slack) {
    Json in = boxplus::io::load_json_file(args.input);
    auto doc = boxplus::io::parse_point_set(in);
    boxplus::OuterHrepOptions options;
    options.sample_count = samples;
    options.seed = args.seed;
    options.slack = boxplus::parse_rat(slack);
    options.parallel = args.parallel;
    auto [halfspaces, report] = boxplus::outer_hrep(doc.points, options);

    Json result = result_skeleton("hrep", args, boxplus::io::point_set_to_json(doc));
    Json hs = Json::array();
    for (const auto& h : halfspaces) {
        Json entry;
        entry["a"] = boxplus::io::vec_to_json(h.a);
        entry["c"] = boxplus::io::rat_to_json(h.c);
        entry["side"] = "lower";
        hs.push_back(std::move(entry));
    }
    result["outputs"]["halfspaces"] = std::move(hs);
    Json sandwich;
    sandwich["samples"] = report.samples;
    sandwich["members_checked"] = report.members_checked;
    sandwich["member_violations"] = report.member_violations;
    sandwich["inside_with_slack"] = report.inside_with_slack;
    sandwich["inside_not_member"] = report.inside_not_member;
    result["diagnostics"]["sandwich"] = std::move(sandwich);
    emit(args, result);
    return 0;
}

int cmd_oracle(const CommonArgs& args, const std::string& quantity) {
    Json in = boxplus::io::load_json_file(args.input);
    boxplus::PSchedule sched = make_schedule(args);

    Json result = result_skeleton("oracle", args, in);
    result["inputs"]["quantity"] = quantity;
    if (quantity == "sum") {
        if (!in.contains("values")) throw boxplus::ParseError("oracle sum needs 'values'");
        Vec values = boxplus::io::json_to_vec(in["values"]);
        auto report = boxplus::limit_sweep(
            [&](unsigned p) { return boxplus::phi_p_sum(values, p); }, sched);
        result["outputs"]["report"] = boxplus::io::convergence_report_to_json(report);
        result["outputs"]["limit"] = boxplus::io::rat_to_json(
            boxplus::nary_boxplus(std::span<const Rat>(values)));
    } else if (quantity == "det") {
        auto doc = boxplus::io::parse_matrix(in);
        auto report = boxplus::limit_sweep(
            [&](unsigned p) { return boxplus::phi_p_det(doc.matrix, p); }, sched);
        result["outputs"]["report"] = boxplus::io::convergence_report_to_json(report);
        result["outputs"]["limit"] = boxplus::io::rat_to_json(boxplus::det_infty(doc.matrix));
    } else if (quantity == "solve") {
        auto doc = boxplus::io::parse_matrix(in);
        if (!doc.rhs) throw boxplus::ParseError("oracle solve needs 'rhs'");
        Json reports = Json::array();
        for (size_t j = 0; j < doc.matrix.size(); ++j) {
            auto report = boxplus::limit_sweep(
                [&, j](unsigned p) -> std::optional<boxplus::PRepScalar> {
                    return boxplus::phi_p_cramer(doc.matrix, *doc.rhs, p)[j];
                },
                sched);
            reports.push_back(boxplus::io::convergence_report_to_json(report));
        }
        result["outputs"]["reports"] = std::move(reports);
        auto sol = boxplus::cramer_infty(doc.matrix, *doc.rhs);
        result["outputs"]["limit"] = boxplus::io::vec_to_json(sol.solution);
    } else if (quantity == "hull-member") {
        auto doc = boxplus::io::parse_point_set(in);
        Vec query = boxplus::io::parse_point_arg(args.point);
        if (query.size() != doc.dim)
            throw boxplus::ParseError("query point has wrong dimension");
        Json entries = Json::array();
        for (unsigned p : sched.ps) {
            Json entry;
            entry["p"] = p;
            entry["member"] = boxplus::phi_p_hull_member(query, doc.points, p);
            entries.push_back(std::move(entry));
        }
        result["outputs"]["entries"] = std::move(entries);
    } else {
        throw boxplus::ParseError("unknown oracle quantity: " + quantity);
    }
    emit(args, result);
    return 0;
}

int cmd_render(const CommonArgs& args, unsigned grid, const std::string& bbox) {
    Json in = boxplus::io::load_json_file(args.input);
    auto doc = boxplus::io::parse_point_set(in);
    size_t n = doc.dim;
    if (n != 2 && n != 3) throw boxplus::Error("render supports dim 2 and 3 only");
    if (grid < 2) throw boxplus::ParseError("--grid must be at least 2");

    Vec lo(n), hi(n);
    if (!bbox.empty()) {
        std::stringstream ss(bbox);
        std::string part;
        size_t i = 0;
        while (std::getline(ss, part, ';')) {
            if (i >= n) throw boxplus::ParseError("bbox has too many ranges");
            Vec range = boxplus::io::parse_point_arg(part);
            if (range.size() != 2) throw boxplus::ParseError("bbox range needs two values");
            lo[i] = range[0];
            hi[i] = range[1];
            ++i;
        }
        if (i != n) throw boxplus::ParseError("bbox has too few ranges");
    } else {
        for (size_t i = 0; i < n; ++i) {
            lo[i] = doc.points[0][i];
            hi[i] = doc.points[0][i];
            for (const Vec& pt : doc.points) {
                if (pt[i] < lo[i]) lo[i] = pt[i];
                if (pt[i] > hi[i]) hi[i] = pt[i];
            }
            Rat pad = (hi[i] - lo[i]) / 10 + Rat(1, 10);
            lo[i] -= pad;
            hi[i] += pad;
        }
    }

    boxplus::BuildOptions build;
    build.parallel = args.parallel;
    boxplus::BPolytope poly = boxplus::build_polytope(doc.points, build);

    std::string csv;
    auto format_coord = [](const Rat& v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", boxplus::to_double(v));
        return std::string(buf);
    };
    std::vector<unsigned> idx(n, 0);
    for (;;) {
        Vec pt(n);
        for (size_t i = 0; i < n; ++i)
            pt[i] = lo[i] + boxplus::make_rat(idx[i], grid - 1) * (hi[i] - lo[i]);
        for (size_t i = 0; i < n; ++i) {
            csv += format_coord(pt[i]);
            csv += ',';
        }
        csv += boxplus::member(poly, pt) ? '1' : '0';
        csv += '\n';
        size_t carry = n;
        while (carry > 0) {
            if (++idx[carry - 1] < grid) break;
            idx[carry - 1] = 0;
            --carry;
        }
        if (carry == 0) break;
    }
    write_output(args, csv.substr(0, csv.size() - 1));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Boxplus algebra and limit-polytope toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    unsigned grid = 41;
    unsigned samples = 256;
    std::string bbox;
    std::string quantity = "det";
    std::string slack = "1/1000";

    auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input) cmd->add_option("--input", args.input, "input JSON document")->required();
        cmd->add_option("--output", args.output, "output path (default stdout)");
        cmd->add_option("--p-schedule", args.schedule, "comma-separated p schedule");
        cmd->add_option("--tolerance", args.tolerance, "stabilization tolerance");
        cmd->add_option("--precision-bits", args.precision_bits, "mpfr precision");
        cmd->add_option("--seed", args.seed, "sampling seed");
        cmd->add_flag("--parallel", args.parallel, "parallel enumeration");
    };

    CLI::App* hull = app.add_subcommand("hull", "intermediate points and orthant decomposition");
    add_common(hull);
    CLI::App* member = app.add_subcommand("member", "exact membership in Co^inf");
    add_common(member);
    member->add_option("--point", args.point, "query point, comma-separated")->required();
    CLI::App* det = app.add_subcommand("det", "limit determinant");
    add_common(det);
    CLI::App* solve = app.add_subcommand("solve", "limit Cramer solution with certificate");
    add_common(solve);
    solve->add_option("--rhs", args.rhs, "right-hand side, comma-separated");
    CLI::App* hyperplane = app.add_subcommand("hyperplane", "limit hyperplane through n points");
    add_common(hyperplane);
    CLI::App* separate = app.add_subcommand("separate", "verified halfspace separation");
    add_common(separate);
    separate->add_option("--other", args.other, "second point set document")->required();
    CLI::App* hrep = app.add_subcommand("hrep", "outer halfspace representation");
    add_common(hrep);
    hrep->add_option("--samples", samples, "sandwich sample count");
    hrep->add_option("--slack", slack, "sandwich slack (rational)");
    CLI::App* oracle = app.add_subcommand("oracle", "order-p convergence oracle");
    add_common(oracle);
    oracle->add_option("--quantity", quantity, "sum | det | solve | hull-member");
    oracle->add_option("--point", args.point, "query point for hull-member");
    CLI::App* render = app.add_subcommand("render", "membership raster as CSV");
    add_common(render);
    render->add_option("--grid", grid, "grid resolution per axis");
    render->add_option("--bbox", bbox, "ranges 'lo,hi;lo,hi[;lo,hi]'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (hull->parsed()) return cmd_hull(args);
        if (member->parsed()) return cmd_member(args);
        if (det->parsed()) return cmd_det(args);
        if (solve->parsed()) return cmd_solve(args);
        if (hyperplane->parsed()) return cmd_hyperplane(args);
        if (separate->parsed()) return cmd_separate(args);
        if (hrep->parsed()) return cmd_hrep(args, samples, slack);
        if (oracle->parsed()) return cmd_oracle(args, quantity);
        if (render->parsed()) return cmd_render(args, grid, bbox);
    } catch (const boxplus::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const boxplus::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
