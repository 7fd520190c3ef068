// wtfb: secrecy-rate bounds and coding-scheme simulations for discrete
// memoryless wiretap channels with noiseless feedback.
//
// Exit codes: 0 success, 1 check failure, 2 input/validation error,
// 3 infeasible simulation rates.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wtfb/binary_bounds.hpp"
#include "wtfb/bounds.hpp"
#include "wtfb/checks.hpp"
#include "wtfb/io.hpp"
#include "wtfb/sim_io.hpp"

namespace {

using namespace wtfb;

ExecMode exec_mode() {
    // WTFB_THREADS=1 selects the serial reference path
    return max_workers() <= 1 ? ExecMode::serial : ExecMode::openmp;
}

std::vector<double> parse_grid(const std::string& spec) {
    // start:stop:step, inclusive of start; stops past stop + step/2
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0)
        throw validation_error("grid spec must be start:stop:step with positive step, got \"" +
                               spec + "\"");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double v = start + k * step;
        if (v > stop + step / 2 - 1e-12) break;
        grid.push_back(v);
    }
    if (grid.empty()) throw validation_error("grid spec \"" + spec + "\" produces no points");
    return grid;
}

struct BoundRow {
    std::string name;
    BoundResult result;
};

void print_aux(const AuxiliarySystem& aux) {
    std::printf("    P(u) =");
    for (int u = 0; u < aux.u_size; ++u) std::printf(" %s", io::fmt(aux.pu[u]).c_str());
    std::printf("\n    P(x|u) =");
    for (std::size_t r = 0; r < aux.px_given_u.input_count(); ++r) {
        std::printf(" [");
        auto s = aux.px_given_u.slice(r);
        for (std::size_t x = 0; x < s.size(); ++x)
            std::printf("%s%s", x ? " " : "", io::fmt(s[x]).c_str());
        std::printf("]");
    }
    if (aux.v_size > 1) {
        std::printf("\n    P(v|u,y1) =");
        for (std::size_t r = 0; r < aux.pv_given_uy1.input_count(); ++r) {
            std::printf(" [");
            auto s = aux.pv_given_uy1.slice(r);
            for (std::size_t v = 0; v < s.size(); ++v)
                std::printf("%s%s", v ? " " : "", io::fmt(s[v]).c_str());
            std::printf("]");
        }
    }
    std::printf("\n");
}

int cmd_bounds(const std::string& channel_path, const std::vector<double>& binary,
               const std::string& bound, std::uint64_t seed, int resolution, int restarts,
               const std::string& csv_path, bool show_argmax) {
    std::optional<WiretapChannel> ch;
    if (!binary.empty())
        ch = make_binary_channel(BinaryWiretapParams(binary[0], binary[1]));
    else if (!channel_path.empty())
        ch = load_channel(channel_path);
    else
        throw validation_error("bounds: provide either --channel or --binary p1 p2");

    BoundSettings bs;
    bs.ascent.seed = seed;
    bs.ascent.grid_resolution = resolution;
    bs.ascent.restarts = restarts;
    bs.ascent.exec = exec_mode();

    const bool non_degraded = ch->structure() == ChannelStructure::non_degraded;
    std::vector<BoundRow> rows;
    auto want = [&](const char* k) { return bound == "all" || bound == k; };

    if (bound == "all" || bound == "cs" || bound == "rs" || bound == "rstar" || bound == "cfout") {
        const GeneralBounds g = compute_general_bounds(*ch, bs);
        if (want("cs")) rows.push_back({"cs", g.cs});
        if (want("rs")) rows.push_back({"rs", g.rs});
        if (want("rstar")) rows.push_back({"rstar", g.rstar});
        if (want("cfout")) rows.push_back({"cfout", g.cfout});
    }
    if (want("rdstar") || want("cfstarout") || want("rnon")) {
        if (!non_degraded && bound != "all") {
            throw validation_error(
                "bound \"" + bound + "\" requires a channel tagged non_degraded; this one is " +
                to_string(ch->structure()));
        }
        if (non_degraded) {
            if (want("rnon")) rows.push_back({"rnon", r_non_ahlswede_cai_nondegraded(*ch, bs)});
            if (want("rdstar")) rows.push_back({"rdstar", r_double_star_nondegraded(*ch, bs)});
            if (want("cfstarout"))
                rows.push_back({"cfstarout", c_f_star_out_nondegraded(*ch, bs)});
        } else if (bound == "all") {
            std::printf("note: skipping rnon/rdstar/cfstarout (channel structure is %s)\n",
                        to_string(ch->structure()));
        }
    }
    if (rows.empty()) throw validation_error("unknown bound \"" + bound + "\"");

    std::printf("channel: |X|=%d |Y1|=%d |Y2|=%d structure=%s\n", ch->x_size(), ch->y1_size(),
                ch->y2_size(), to_string(ch->structure()));
    for (const auto& r : rows) {
        std::printf("  %-10s %s bits/use   (restarts %d, evals %zu)\n", r.name.c_str(),
                    io::fmt(r.result.value).c_str(), r.result.trace.restarts,
                    r.result.trace.evaluations);
        if (show_argmax) print_aux(r.result.argmax);
    }

    if (!csv_path.empty()) {
        std::map<std::string, std::string> params{{"bound", bound}};
        if (!binary.empty())
            params["binary"] = io::fmt(binary[0]) + "," + io::fmt(binary[1]);
        else
            params["channel"] = channel_path;
        const auto manifest = io::RunManifest::make("bounds", params, seed);
        io::CsvTable t;
        t.header_comments = manifest.comment_lines();
        t.columns = {"bound", "value_bits"};
        for (const auto& r : rows) t.rows.push_back({r.name, io::fmt(r.result.value)});
        io::write_file(csv_path, io::render_csv(t));
    }
    return 0;
}

int cmd_sweep(double p1, const std::string& grid_spec, const std::string& out_csv,
              const std::string& out_svg, std::uint64_t seed) {
    const auto grid = parse_grid(grid_spec);
    BinaryOptSettings s;
    s.seed = seed;
    s.exec = exec_mode();
    const auto rows = sweep(p1, grid, s);

    const auto manifest = io::RunManifest::make(
        "sweep", {{"p1", io::fmt(p1)}, {"p2_grid", grid_spec}}, seed);
    std::printf("p2,cb_s,cb_in,cb_in_new,cb_out\n");
    for (const auto& r : rows)
        std::printf("%s,%s,%s,%s,%s\n", io::fmt(r.p2).c_str(), io::fmt(r.cb_s).c_str(),
                    io::fmt(r.cb_in).c_str(), io::fmt(r.cb_in_new).c_str(),
                    io::fmt(r.cb_out).c_str());
    if (!out_csv.empty()) io::write_file(out_csv, io::render_csv(io::sweep_to_csv(p1, rows, manifest)));
    if (!out_svg.empty()) io::write_file(out_svg, io::sweep_to_svg(p1, rows, manifest));
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_json,
                 const std::string& trend_csv, std::optional<std::uint64_t> seed_override) {
    auto cfg = io::load_sim_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    const auto manifest = io::RunManifest::make("simulate", {{"config", config_path}}, cfg.seed);
    const auto out = io::run_sim_from_config(cfg, manifest, exec_mode());
    if (!out_json.empty())
        io::write_file(out_json, out.report_json);
    else
        std::printf("%s", out.report_json.c_str());
    if (!trend_csv.empty()) io::write_file(trend_csv, io::render_csv(out.trend));
    return 0;
}

int cmd_check(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> results;
    auto run_suite = [&](const std::string& name) {
        if (name == "identities") {
            auto r = check_identities(seed);
            results.insert(results.end(), r.begin(), r.end());
        } else if (name == "ordering") {
            auto r = check_ordering(seed);
            results.insert(results.end(), r.begin(), r.end());
        } else if (name == "reduction") {
            auto r = check_reduction(seed);
            results.insert(results.end(), r.begin(), r.end());
        } else {
            throw validation_error("unknown check suite \"" + name + "\"");
        }
    };
    if (suite == "all") {
        run_suite("identities");
        run_suite("ordering");
        run_suite("reduction");
    } else {
        run_suite(suite);
    }

    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("[%s] %-26s worst %-13s tol %-8s %s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), io::fmt(r.worst).c_str(), io::fmt(r.tolerance).c_str(),
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy-rate bounds and feedback coding simulations for wiretap channels"};
    app.require_subcommand(1);

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate secrecy-rate bounds for a channel");
    std::string channel_path, bound = "all", csv_path;
    std::vector<double> binary;
    std::uint64_t seed = 42;
    int resolution = 9, restarts = 16;
    bool show_argmax = false;
    bounds_cmd->add_option("--channel", channel_path, "channel JSON file");
    bounds_cmd->add_option("--binary", binary, "binary channel crossovers p1 p2")->expected(2);
    bounds_cmd->add_option("--bound", bound,
                           "cs | rs | rstar | cfout | rdstar | cfstarout | rnon | all");
    bounds_cmd->add_option("--seed", seed, "optimizer seed");
    bounds_cmd->add_option("--resolution", resolution, "grid points per free coordinate");
    bounds_cmd->add_option("--restarts", restarts, "coordinate-ascent restarts");
    bounds_cmd->add_option("--csv", csv_path, "write values to a CSV file");
    bounds_cmd->add_flag("--argmax", show_argmax, "print the maximizing distributions");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "binary bound curves over a p2 grid");
    double p1 = 0.05;
    std::string grid_spec = "0.01:0.49:0.02", out_csv, out_svg;
    std::uint64_t sweep_seed = 42;
    sweep_cmd->add_option("--p1", p1, "main channel crossover")->required();
    sweep_cmd->add_option("--p2-grid", grid_spec,
                          "start:stop:step, inclusive of start, stops past stop+step/2");
    sweep_cmd->add_option("--out", out_csv, "output CSV path");
    sweep_cmd->add_option("--plot", out_svg, "output SVG path");
    sweep_cmd->add_option("--seed", sweep_seed, "optimizer seed");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run a coding-scheme simulation from a config");
    std::string sim_config, sim_out, sim_trend;
    std::string sim_mode_unused;
    std::optional<std::uint64_t> sim_seed;
    sim_cmd->add_option("--mode", sim_mode_unused,
                        "wynerziv | dmc | wiretap (must match the config file)");
    sim_cmd->add_option("--config", sim_config, "simulation config JSON")->required();
    sim_cmd->add_option("--out", sim_out, "report JSON path (stdout when omitted)");
    sim_cmd->add_option("--trend-csv", sim_trend, "per-N trend CSV path");
    std::uint64_t sim_seed_raw = 0;
    auto* seed_opt = sim_cmd->add_option("--seed", sim_seed_raw, "override the config seed");

    // check
    auto* check_cmd = app.add_subcommand("check", "run cross-module consistency suites");
    std::string suite = "all";
    std::uint64_t check_seed = 42;
    check_cmd->add_option("--suite", suite, "identities | ordering | reduction | all");
    check_cmd->add_option("--seed", check_seed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bounds_cmd->parsed())
            return cmd_bounds(channel_path, binary, bound, seed, resolution, restarts, csv_path,
                              show_argmax);
        if (sweep_cmd->parsed()) {
            for (double v : parse_grid(grid_spec))
                static_cast<void>(BinaryWiretapParams(p1, v)); // domain check up front
            return cmd_sweep(p1, grid_spec, out_csv, out_svg, sweep_seed);
        }
        if (sim_cmd->parsed()) {
            if (seed_opt->count() > 0) sim_seed = sim_seed_raw;
            const std::string declared_mode = sim_mode_unused;
            if (!declared_mode.empty()) {
                const auto cfg = io::load_sim_config(sim_config);
                if (declared_mode != io::to_string(cfg.mode))
                    throw validation_error("--mode " + declared_mode +
                                           " does not match the config file mode " +
                                           io::to_string(cfg.mode));
            }
            return cmd_simulate(sim_config, sim_out, sim_trend, sim_seed);
        }
        if (check_cmd->parsed()) return cmd_check(suite, check_seed);
    } catch (const rate_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        for (const auto& v : e.violations) std::fprintf(stderr, "  violated: %s\n", v.c_str());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
