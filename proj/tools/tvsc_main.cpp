// tvsc: total-variation denoising toolkit.
//
// Subcommands: gen, denoise, levelset, flow, analyze, verify.
// Exit codes: 0 success, 1 check failure, 2 bad input, 3 non-convergence.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tvsc/datagen.hpp"
#include "tvsc/flow.hpp"
#include "tvsc/io.hpp"
#include "tvsc/levelset.hpp"
#include "tvsc/manifest.hpp"
#include "tvsc/parallel.hpp"
#include "tvsc/radial.hpp"
#include "tvsc/rof.hpp"
#include "tvsc/staircase.hpp"
#include "tvsc/verify.hpp"

namespace fs = std::filesystem;
using tvsc::json;

namespace {

tvsc::Datum read_datum(const fs::path& path) {
    switch (tvsc::sniff_datum_file(path)) {
    case tvsc::DatumFileKind::radial_csv: return tvsc::read_radial_csv(path);
    case tvsc::DatumFileKind::pgm: return tvsc::read_grid_pgm(path);
    default: return tvsc::read_grid_csv(path);
    }
}

void write_manifest_for(const fs::path& primary_output, tvsc::RunManifest& manifest) {
    fs::path p = primary_output;
    p += ".manifest.json";
    manifest.write(p);
}

json solver_report(const tvsc::SolveResult& r, const tvsc::SolverConfig& cfg) {
    return json{{"energy", r.energy},
                {"el_residual", r.el_residual},
                {"complementarity_defect", r.complementarity},
                {"iters", r.iters},
                {"converged", r.converged},
                {"lambda", cfg.lambda},
                {"tv", tvsc::to_string(cfg.tv_kind)},
                {"tol", cfg.tol}};
}

json radial_report(const tvsc::RadialSolveResult& r, const tvsc::RadialSolverConfig& cfg) {
    return json{{"kkt_residual", r.kkt_residual},
                {"iters", r.iters},
                {"converged", r.converged},
                {"lambda", cfg.lambda},
                {"tol", cfg.tol}};
}

json levelset_meta(const tvsc::LevelSet& e, double energy) {
    return json{{"level", e.level},
                {"energy", energy},
                {"area", e.area()},
                {"perimeter", e.perimeter()}};
}

json staircase_json(const tvsc::StaircaseReport& rep) {
    json zones = json::array();
    for (const auto& z : rep.flat_zones)
        zones.push_back(json{{"cells", z.cells.size()}, {"area", z.area}, {"level", z.level}});
    json j{{"dim", rep.dim},
           {"lambda", rep.lambda},
           {"flat_tol", rep.flat_tol},
           {"jump_tol", rep.jump_tol},
           {"flat_area", rep.flat_area},
           {"m_g", rep.m_g},
           {"min_g", rep.min_g},
           {"m_u", rep.m_u},
           {"min_u", rep.min_u},
           {"bound_value", rep.bound_value},
           {"max_level_area", rep.max_level_area},
           {"min_level_area", rep.min_level_area},
           {"strict_clipping", rep.strict_clipping},
           {"max_zone_positive", rep.max_zone_positive},
           {"zones", zones}};
    std::vector<std::uint8_t> flat(rep.zone_of.size(), 0);
    for (std::size_t i = 0; i < rep.zone_of.size(); ++i) flat[i] = rep.zone_of[i] >= 0;
    j["flat_mask_rle"] = tvsc::rle_encode(flat);
    // zone decomposition as [label, run_length] pairs over row-major cells,
    // label -1 marking non-flat cells
    json runs = json::array();
    std::size_t i = 0;
    while (i < rep.zone_of.size()) {
        std::size_t k = i;
        while (k < rep.zone_of.size() && rep.zone_of[k] == rep.zone_of[i]) ++k;
        runs.push_back(json::array({rep.zone_of[i], k - i}));
        i = k;
    }
    j["zone_labels_rle"] = runs;
    if (rep.dim != 2 || !rep.jump_radii.empty()) {
        j["jump_radii"] = rep.jump_radii;
        j["jump_magnitudes"] = rep.jump_magnitudes;
    } else {
        json edges = json::array();
        for (const auto& e : rep.grid_jumps)
            edges.push_back(json{{"x", e.x},
                                 {"y", e.y},
                                 {"dir", e.horizontal ? "x" : "y"},
                                 {"magnitude", e.magnitude}});
        j["jump_edges"] = edges;
    }
    return j;
}

json quant_json(const tvsc::QuantBoundReport& q) {
    return json{{"flat_area", q.flat_area},
                {"bound", q.bound},
                {"ok", q.overall_ok},
                {"sharp_bound", q.sharp_bound},
                {"sharp_ok", q.sharp_ok}};
}

int run(int argc, char** argv) {
    CLI::App app{"total-variation denoising toolkit: ROF solves, level-set cuts, "
                 "TV flow, staircase analysis"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "parallel worker count for parameter sweeps")
        ->capture_default_str();

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a synthetic datum");
    std::string gen_kind = "disc", gen_out, gen_spec_json;
    tvsc::DatumSpec spec;
    gen->add_option("kind", gen_kind,
                    "disc | two_squares | convex_polygon | radial_profile | ramp | bumps | noisy");
    gen->add_option("--out", gen_out, "output path (.csv, or .pgm for grids)")->required();
    gen->add_option("--spec-json", gen_spec_json, "read the full DatumSpec from a JSON file");
    gen->add_option("--width", spec.width);
    gen->add_option("--height", spec.height);
    gen->add_option("--spacing", spec.h, "grid spacing h");
    gen->add_option("--cx", spec.cx, "domain centre x");
    gen->add_option("--cy", spec.cy, "domain centre y");
    gen->add_option("--radius", spec.radius);
    gen->add_option("--disc-cx", spec.disc_cx);
    gen->add_option("--disc-cy", spec.disc_cy);
    gen->add_option("--R", spec.R, "radial domain radius");
    gen->add_option("--n", spec.n, "radial sample count");
    gen->add_option("--dim", spec.dim, "radial dimension N");
    gen->add_option("--noise-sigma", spec.noise_sigma);
    gen->add_option("--seed", spec.seed);
    std::vector<std::string> gen_vertices;
    gen->add_option("--vertex", gen_vertices, "polygon vertex 'x,y' (repeatable)");

    // ---- denoise ----
    auto* den = app.add_subcommand("denoise", "minimize the ROF energy");
    std::string den_in, den_out_u, den_out_z, den_report, den_tv = "iso";
    tvsc::SolverConfig den_cfg;
    den->add_option("--in", den_in, "datum file (grid CSV/PGM or radial CSV)")->required();
    den->add_option("--lambda", den_cfg.lambda, "regularization weight")->required();
    den->add_option("--tv", den_tv, "iso | aniso")->check(CLI::IsMember({"iso", "aniso"}));
    den->add_option("--tol", den_cfg.tol);
    den->add_option("--max-iters", den_cfg.max_iters);
    den->add_option("--out-u", den_out_u, "minimizer output CSV")->required();
    den->add_option("--out-z", den_out_z, "dual field output base (grid) or CSV (radial)");
    den->add_option("--report", den_report, "JSON report path");

    // ---- levelset ----
    auto* lvl = app.add_subcommand("levelset", "exact prescribed-curvature min cut");
    std::string lvl_in, lvl_out_min, lvl_out_max, lvl_report;
    double lvl_lambda = 0.1, lvl_t = 0.5;
    lvl->add_option("--in", lvl_in)->required();
    lvl->add_option("--lambda", lvl_lambda)->required();
    lvl->add_option("--t", lvl_t, "level")->required();
    lvl->add_option("--out-min", lvl_out_min, "minimal solution mask PGM");
    lvl->add_option("--out-max", lvl_out_max, "maximal solution mask PGM");
    lvl->add_option("--report", lvl_report, "JSON report path");

    // ---- flow ----
    auto* flw = app.add_subcommand("flow", "TV gradient flow by iterated resolvents");
    std::string flw_in, flw_out_dir;
    double flw_t = 0.1;
    int flw_substeps = 16;
    bool flw_study = false, flw_trace = false;
    double flw_trace_max = 0.26;
    int flw_trace_steps = 12;
    tvsc::SolverConfig flw_cfg;
    flw->add_option("--in", flw_in)->required();
    flw->add_option("--t", flw_t, "flow time")->required();
    flw->add_option("--substeps", flw_substeps, "resolvent substeps N");
    flw->add_option("--tol", flw_cfg.tol);
    flw->add_option("--out-dir", flw_out_dir, "trajectory output directory")->required();
    flw->add_flag("--study", flw_study, "double substeps 1,2,4,.. and log refinement defects");
    flw->add_flag("--origin-trace", flw_trace,
                  "record the centre four-pixel mean across a lambda grid (grids only)");
    flw->add_option("--trace-max", flw_trace_max, "largest lambda of the trace grid");
    flw->add_option("--trace-steps", flw_trace_steps, "number of trace grid points");

    // ---- analyze ----
    auto* ana = app.add_subcommand("analyze", "flat zones, jumps, staircase bounds");
    std::string ana_in, ana_u, ana_report, ana_mask;
    double ana_lambda = 0.1;
    tvsc::AnalysisConfig ana_cfg;
    tvsc::SolverConfig ana_solver;
    ana->add_option("--in", ana_in)->required();
    ana->add_option("--lambda", ana_lambda)->required();
    ana->add_option("--u", ana_u, "precomputed minimizer (else solved here)");
    ana->add_option("--tol", ana_solver.tol, "solver tolerance when solving here");
    ana->add_option("--flat-tol", ana_cfg.flat_tol, "gradient threshold (default 1e-4*osc/h)");
    ana->add_option("--jump-tol", ana_cfg.jump_tol, "jump threshold (default 0.05*osc)");
    ana->add_option("--report", ana_report, "JSON report path")->required();
    ana->add_option("--flat-mask", ana_mask, "optional flat-zone mask PGM (grids only)");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run a named acceptance suite");
    std::string ver_suite = "all";
    ver->add_option("suite", ver_suite, "suite name or 'all'");
    bool ver_list = false;
    ver->add_flag("--list", ver_list, "list suite names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    jobs = tvsc::effective_jobs(jobs);

    tvsc::RunManifest manifest;
    manifest.command_line = {argv, argv + argc};
    manifest.start();

    if (*gen) {
        if (!gen_spec_json.empty()) {
            const json j = tvsc::read_json_file(gen_spec_json);
            spec.kind = tvsc::parse_datum_kind(j.at("kind").get<std::string>());
            if (j.contains("width")) spec.width = j["width"].get<int>();
            if (j.contains("height")) spec.height = j["height"].get<int>();
            if (j.contains("h")) spec.h = j["h"].get<double>();
            if (j.contains("cx")) spec.cx = j["cx"].get<double>();
            if (j.contains("cy")) spec.cy = j["cy"].get<double>();
            if (j.contains("radius")) spec.radius = j["radius"].get<double>();
            if (j.contains("R")) spec.R = j["R"].get<double>();
            if (j.contains("n")) spec.n = j["n"].get<int>();
            if (j.contains("dim")) spec.dim = j["dim"].get<int>();
            if (j.contains("noise_sigma")) spec.noise_sigma = j["noise_sigma"].get<double>();
            if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("vertices"))
                for (const auto& v : j["vertices"])
                    spec.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
        } else {
            spec.kind = tvsc::parse_datum_kind(gen_kind);
            for (const auto& vs : gen_vertices) {
                const auto comma = vs.find(',');
                if (comma == std::string::npos)
                    throw tvsc::BadInput("--vertex expects 'x,y', got: " + vs);
                spec.vertices.emplace_back(std::stod(vs.substr(0, comma)),
                                           std::stod(vs.substr(comma + 1)));
            }
        }
        const tvsc::Datum d = tvsc::generate(spec);
        const fs::path out = gen_out;
        if (std::holds_alternative<tvsc::GridImage>(d)) {
            const auto& g = std::get<tvsc::GridImage>(d);
            if (out.extension() == ".pgm")
                tvsc::write_grid_pgm(out, g);
            else
                tvsc::write_grid_csv(out, g);
        } else {
            tvsc::write_radial_csv(out, std::get<tvsc::RadialProfile>(d));
        }
        manifest.config = json{{"kind", tvsc::to_string(spec.kind)}, {"seed", spec.seed}};
        manifest.outputs = {gen_out};
        write_manifest_for(out, manifest);
        return 0;
    }

    if (*den) {
        if (!(den_cfg.lambda > 0.0)) throw tvsc::BadInput("--lambda must be > 0");
        den_cfg.tv_kind = den_tv == "iso" ? tvsc::TvKind::isotropic : tvsc::TvKind::anisotropic;
        manifest.inputs = {den_in};
        const tvsc::Datum d = read_datum(den_in);
        json report;
        if (std::holds_alternative<tvsc::GridImage>(d)) {
            const auto& g = std::get<tvsc::GridImage>(d);
            const tvsc::SolveResult r = tvsc::solve_rof_cascade(g, den_cfg);
            tvsc::write_grid_csv(den_out_u, r.u);
            if (!den_out_z.empty()) tvsc::write_dual_csv(den_out_z, r.z);
            report = solver_report(r, den_cfg);
        } else {
            const auto& g = std::get<tvsc::RadialProfile>(d);
            tvsc::RadialSolverConfig rc;
            rc.lambda = den_cfg.lambda;
            rc.tol = std::min(den_cfg.tol, 1e-8);
            rc.max_iters = den_cfg.max_iters;
            const tvsc::RadialSolveResult r = tvsc::solve_radial_dual(g, rc);
            tvsc::write_radial_csv(den_out_u, r.u);
            if (!den_out_z.empty()) {
                // face-centred dual written as r, z rows
                std::ostringstream zout;
                zout.precision(17);
                zout << "# "
                     << json{{"R", g.R}, {"n", g.n}, {"dim", g.dim}, {"faces", true}}.dump()
                     << '\n';
                for (int k = 0; k <= g.n; ++k)
                    zout << r.z.face(k) << ',' << r.z.values[k] << '\n';
                tvsc::write_text_file(den_out_z, zout.str());
            }
            report = radial_report(r, rc);
        }
        if (!den_report.empty()) tvsc::write_json_file(den_report, report);
        manifest.config = json{{"lambda", den_cfg.lambda}, {"tv", den_tv}, {"tol", den_cfg.tol}};
        manifest.outputs = {den_out_u};
        if (!den_out_z.empty()) manifest.outputs.push_back(den_out_z);
        if (!den_report.empty()) manifest.outputs.push_back(den_report);
        write_manifest_for(den_out_u, manifest);
        return 0;
    }

    if (*lvl) {
        manifest.inputs = {lvl_in};
        const tvsc::Datum d = read_datum(lvl_in);
        if (!std::holds_alternative<tvsc::GridImage>(d))
            throw tvsc::BadInput("levelset expects a grid datum");
        const auto& g = std::get<tvsc::GridImage>(d);
        const tvsc::CutSolution s = tvsc::solve_cut({g, lvl_lambda, lvl_t});
        if (!lvl_out_min.empty()) tvsc::write_mask_pgm(lvl_out_min, s.minimal);
        if (!lvl_out_max.empty()) tvsc::write_mask_pgm(lvl_out_max, s.maximal);
        const fs::path report_path =
            lvl_report.empty() ? fs::path(lvl_in).replace_extension("levelset.json")
                               : fs::path(lvl_report);
        tvsc::write_json_file(
            report_path,
            json{{"lambda", lvl_lambda},
                 {"minimal", levelset_meta(s.minimal, s.energy)},
                 {"maximal", levelset_meta(
                                 s.maximal,
                                 tvsc::cut_energy(g, lvl_lambda, lvl_t, s.maximal.mask))}});
        manifest.config = json{{"lambda", lvl_lambda}, {"t", lvl_t}};
        manifest.outputs = {report_path.string()};
        if (!lvl_out_min.empty()) manifest.outputs.push_back(lvl_out_min);
        if (!lvl_out_max.empty()) manifest.outputs.push_back(lvl_out_max);
        write_manifest_for(report_path, manifest);
        return 0;
    }

    if (*flw) {
        manifest.inputs = {flw_in};
        fs::create_directories(flw_out_dir);
        const tvsc::Datum d = read_datum(flw_in);
        json mjson{{"t", flw_t}, {"substeps", flw_substeps}};
        json defects = json::array(), times = json::array(), study_substeps = json::array();
        if (std::holds_alternative<tvsc::GridImage>(d)) {
            const auto& g = std::get<tvsc::GridImage>(d);
            if (flw_study) {
                const auto study = tvsc::flow_study(g, flw_t, flw_substeps, flw_cfg);
                for (std::size_t i = 0; i < study.states.size(); ++i) {
                    char name[64];
                    std::snprintf(name, sizeof(name), "state_n%03d.csv", study.substeps[i]);
                    tvsc::write_grid_csv(fs::path(flw_out_dir) / name, study.states[i]);
                    study_substeps.push_back(study.substeps[i]);
                }
                for (double v : study.defects) defects.push_back(v);
            } else {
                tvsc::SolverConfig proto = flw_cfg;
                proto.lambda = flw_t / flw_substeps;
                tvsc::GridImage u = g;
                times.push_back(0.0);
                tvsc::write_grid_csv(fs::path(flw_out_dir) / "state_0000.csv", u);
                tvsc::SolveResult warm;
                bool have_warm = false;
                for (int k = 1; k <= flw_substeps; ++k) {
                    warm = tvsc::solve_rof(u, proto, have_warm ? &warm : nullptr);
                    have_warm = true;
                    u = warm.u;
                    times.push_back(flw_t * k / flw_substeps);
                    char name[64];
                    std::snprintf(name, sizeof(name), "state_%04d.csv", k);
                    tvsc::write_grid_csv(fs::path(flw_out_dir) / name, u);
                }
            }
            if (flw_trace) {
                std::vector<double> ts;
                for (int k = 1; k <= flw_trace_steps; ++k)
                    ts.push_back(flw_trace_max * k / flw_trace_steps);
                const tvsc::OriginTrace tr = tvsc::origin_trace(g, ts, flw_cfg, jobs);
                mjson["origin_trace"] =
                    json{{"times", tr.times},
                         {"values", tr.values},
                         {"second_differences", tr.second_differences},
                         {"convention", "mean of the four pixels adjacent to the centre corner"}};
            }
        } else {
            const auto& g = std::get<tvsc::RadialProfile>(d);
            tvsc::RadialSolverConfig proto;
            if (flw_study) {
                const auto study = tvsc::flow_study(g, flw_t, flw_substeps, proto);
                for (std::size_t i = 0; i < study.states.size(); ++i) {
                    char name[64];
                    std::snprintf(name, sizeof(name), "state_n%03d.csv", study.substeps[i]);
                    tvsc::write_radial_csv(fs::path(flw_out_dir) / name, study.states[i]);
                    study_substeps.push_back(study.substeps[i]);
                }
                for (double v : study.defects) defects.push_back(v);
            } else {
                proto.lambda = flw_t / flw_substeps;
                tvsc::RadialProfile u = g;
                times.push_back(0.0);
                tvsc::write_radial_csv(fs::path(flw_out_dir) / "state_0000.csv", u);
                tvsc::RadialDual warm;
                bool have_warm = false;
                for (int k = 1; k <= flw_substeps; ++k) {
                    auto r = tvsc::solve_radial_dual(u, proto, have_warm ? &warm : nullptr);
                    u = std::move(r.u);
                    warm = std::move(r.z);
                    have_warm = true;
                    times.push_back(flw_t * k / flw_substeps);
                    char name[64];
                    std::snprintf(name, sizeof(name), "state_%04d.csv", k);
                    tvsc::write_radial_csv(fs::path(flw_out_dir) / name, u);
                }
            }
        }
        mjson["times"] = times;
        mjson["defects"] = defects;
        if (flw_study) mjson["study_substeps"] = study_substeps;
        const fs::path mpath = fs::path(flw_out_dir) / "trajectory.json";
        tvsc::write_json_file(mpath, mjson);
        manifest.config = json{{"t", flw_t}, {"substeps", flw_substeps}, {"study", flw_study}};
        manifest.outputs = {mpath.string()};
        write_manifest_for(mpath, manifest);
        return 0;
    }

    if (*ana) {
        if (!(ana_lambda > 0.0)) throw tvsc::BadInput("--lambda must be > 0");
        manifest.inputs = {ana_in};
        const tvsc::Datum d = read_datum(ana_in);
        json report;
        if (std::holds_alternative<tvsc::GridImage>(d)) {
            const auto& g = std::get<tvsc::GridImage>(d);
            tvsc::GridImage u(1, 1, 1.0);
            if (!ana_u.empty()) {
                manifest.inputs.push_back(ana_u);
                u = tvsc::read_grid_csv(ana_u);
            } else {
                tvsc::SolverConfig cfg = ana_solver;
                cfg.lambda = ana_lambda;
                u = tvsc::solve_rof_cascade(g, cfg).u;
            }
            const tvsc::StaircaseReport rep = tvsc::analyze(g, u, ana_lambda, ana_cfg);
            report = staircase_json(rep);
            report["quantitative_bound"] = quant_json(tvsc::quantitative_bound_check(rep));
            if (!ana_mask.empty()) {
                tvsc::LevelSet flat(u.width, u.height, u.h, 0.0);
                for (std::size_t i = 0; i < rep.zone_of.size(); ++i)
                    flat.mask[i] = rep.zone_of[i] >= 0;
                tvsc::write_mask_pgm(ana_mask, flat);
                manifest.outputs.push_back(ana_mask);
            }
        } else {
            const auto& g = std::get<tvsc::RadialProfile>(d);
            tvsc::RadialProfile u(1.0, 1, 1);
            if (!ana_u.empty()) {
                manifest.inputs.push_back(ana_u);
                u = tvsc::read_radial_csv(ana_u);
            } else {
                tvsc::RadialSolverConfig cfg;
                cfg.lambda = ana_lambda;
                u = tvsc::solve_radial_dual(g, cfg).u;
            }
            const tvsc::StaircaseReport rep = tvsc::analyze(g, u, ana_lambda, ana_cfg);
            report = staircase_json(rep);
            report["quantitative_bound"] = quant_json(tvsc::quantitative_bound_check(rep));
        }
        tvsc::write_json_file(ana_report, report);
        manifest.config = json{{"lambda", ana_lambda},
                               {"flat_tol", ana_cfg.flat_tol},
                               {"jump_tol", ana_cfg.jump_tol}};
        manifest.outputs.push_back(ana_report);
        write_manifest_for(ana_report, manifest);
        return 0;
    }

    if (*ver) {
        if (ver_list) {
            for (const auto& n : tvsc::verify::suite_names()) std::printf("%s\n", n.c_str());
            return 0;
        }
        int failures = 0;
        const std::vector<std::string> suites = ver_suite == "all"
                                                    ? tvsc::verify::suite_names()
                                                    : std::vector<std::string>{ver_suite};
        for (const auto& name : suites)
            failures += tvsc::verify::print_suite(tvsc::verify::run_suite(name, jobs));
        return failures ? 1 : 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const tvsc::NonConvergence& e) {
        std::fprintf(stderr, "error: %s (iters=%ld, residual=%.3e)\n", e.what(), e.iters,
                     e.residual);
        return 3;
    } catch (const tvsc::BadInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
