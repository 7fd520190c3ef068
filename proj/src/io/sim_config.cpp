#include "wtfb/sim_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wtfb::io {

using nlohmann::json;

const char* to_string(SimMode m) {
    switch (m) {
        case SimMode::wynerziv: return "wynerziv";
        case SimMode::dmc: return "dmc";
        case SimMode::wiretap: return "wiretap";
    }
    return "?";
}

namespace {

std::vector<double> parse_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw validation_error(what + " must be an array");
    std::vector<double> v;
    for (const auto& e : j) {
        if (!e.is_number()) throw validation_error(what + " must hold numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

// nested array [in0][in1]...[out] flattened row-major
std::vector<double> parse_nested(const json& j, std::span<const int> dims, const std::string& what) {
    if (dims.size() == 1) {
        if (!j.is_array() || static_cast<int>(j.size()) != dims[0])
            throw validation_error(what + ": expected an array of length " + std::to_string(dims[0]));
        std::vector<double> v;
        for (const auto& e : j) {
            if (!e.is_number()) throw validation_error(what + ": entries must be numbers");
            v.push_back(e.get<double>());
        }
        return v;
    }
    if (!j.is_array() || static_cast<int>(j.size()) != dims[0])
        throw validation_error(what + ": expected an array of length " + std::to_string(dims[0]));
    std::vector<double> out;
    for (const auto& e : j) {
        auto sub = parse_nested(e, dims.subspan(1), what);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

double get_rate(const json& rates, const char* field) {
    if (!rates.contains(field)) return 0.0;
    const double v = rates.at(field).get<double>();
    if (v < 0.0) throw validation_error(std::string("rates.") + field + " must be nonnegative");
    return v;
}

AuxiliarySystem parse_aux(const json& j, const WiretapChannel& ch) {
    const int nu = j.at("u_size").get<int>();
    const int nv = j.at("v_size").get<int>();
    Pmf pu(parse_vector(j.at("pu"), "aux.pu"), "aux.pu");
    const int dims_px[] = {nu, ch.x_size()};
    ConditionalPmf pxu({nu}, ch.x_size(), parse_nested(j.at("px_given_u"), dims_px, "aux.px_given_u"),
                       "aux.px_given_u");
    const int dims_pv[] = {nu, ch.y1_size(), nv};
    ConditionalPmf pv({nu, ch.y1_size()}, nv,
                      parse_nested(j.at("pv_given_uy1"), dims_pv, "aux.pv_given_uy1"),
                      "aux.pv_given_uy1");
    return AuxiliarySystem(ch.x_size(), ch.y1_size(), std::move(pu), std::move(pxu), std::move(pv));
}

json report_common(const ParsedSimConfig& cfg, const RunManifest& manifest) {
    json j;
    j["manifest"] = json::parse(manifest.to_json());
    j["config"] = {{"mode", to_string(cfg.mode)},
                   {"seed", cfg.seed},
                   {"trials", cfg.trials},
                   {"epsilon", cfg.epsilon},
                   {"seed_reps", cfg.seed_reps},
                   {"block_lens", cfg.block_lens}};
    return j;
}

} // namespace

ParsedSimConfig parse_sim_config(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(origin + ": JSON parse error: " + e.what());
    }
    try {
        ParsedSimConfig cfg;
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "wynerziv")
            cfg.mode = SimMode::wynerziv;
        else if (mode == "dmc")
            cfg.mode = SimMode::dmc;
        else if (mode == "wiretap")
            cfg.mode = SimMode::wiretap;
        else
            throw validation_error("unknown mode \"" + mode + "\"");

        if (j.contains("N")) {
            if (j.at("N").is_array())
                for (const auto& e : j.at("N")) cfg.block_lens.push_back(e.get<int>());
            else
                cfg.block_lens.push_back(j.at("N").get<int>());
        } else {
            cfg.block_lens.push_back(16);
        }
        for (int N : cfg.block_lens)
            if (N < 1) throw validation_error("N must be >= 1");
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
        if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
        if (j.contains("seed_reps")) cfg.seed_reps = j.at("seed_reps").get<int>();
        if (cfg.trials < 1) throw validation_error("trials must be >= 1");
        if (cfg.seed_reps < 1) throw validation_error("seed_reps must be >= 1");

        if (cfg.mode == SimMode::wiretap) {
            if (j.contains("channel_path"))
                cfg.channel = load_channel(j.at("channel_path").get<std::string>());
            else if (j.contains("channel"))
                cfg.channel = parse_channel_json(j.at("channel").dump(), origin + ": channel");
            else if (j.contains("binary")) {
                const auto& b = j.at("binary");
                cfg.channel = make_binary_channel(
                    BinaryWiretapParams(b.at(0).get<double>(), b.at(1).get<double>()));
            } else {
                throw validation_error("wiretap mode needs \"channel\", \"channel_path\" or \"binary\"");
            }
            if (j.contains("n_blocks")) cfg.n_blocks = j.at("n_blocks").get<int>();
            const auto& r = j.at("rates");
            cfg.rates.r1 = get_rate(r, "r1");
            cfg.rates.r2 = get_rate(r, "r2");
            cfg.rates.r_prime = get_rate(r, "r_prime");
            cfg.rates.r_star = get_rate(r, "r_star");
            cfg.rates.r_tilde = get_rate(r, "r_tilde");
            if (j.contains("aux"))
                cfg.aux = parse_aux(j.at("aux"), *cfg.channel);
            else
                cfg.aux = AuxiliarySystem::identity_on_x(*cfg.channel);
            if (j.contains("exact_small")) cfg.exact_small_trials = j.at("exact_small").at("trials").get<int>();
        } else if (cfg.mode == SimMode::dmc) {
            cfg.px = Pmf(parse_vector(j.at("px"), "px"), "px");
            const int nx = cfg.px->size();
            const auto& law = j.at("channel_law");
            if (!law.is_array() || static_cast<int>(law.size()) != nx)
                throw validation_error("channel_law must have one row per x");
            const int ny = static_cast<int>(law.at(0).size());
            const int dims_ch[] = {nx, ny};
            cfg.dmc_channel = ConditionalPmf({nx}, ny, parse_nested(law, dims_ch, "channel_law"),
                                             "channel_law");
            const int nv = static_cast<int>(j.at("helper").at(0).at(0).size());
            const int dims_h[] = {nx, ny, nv};
            cfg.helper = ConditionalPmf({nx, ny}, nv, parse_nested(j.at("helper"), dims_h, "helper"),
                                        "helper");
            const auto& r = j.at("rates");
            cfg.rate_message = get_rate(r, "r");
            cfg.rate_help = get_rate(r, "r_star");
            cfg.rate_resolution = get_rate(r, "r_double_star");
            if (j.contains("n_blocks")) cfg.n_blocks = j.at("n_blocks").get<int>();
        } else {
            const auto& src = j.at("source_law");
            const int nx = static_cast<int>(src.size());
            const int ny = static_cast<int>(src.at(0).size());
            const int dims_s[] = {nx, ny};
            cfg.source_law = JointPmf({nx, ny}, parse_nested(src, dims_s, "source_law"),
                                      "source_law");
            const int nu = static_cast<int>(j.at("quantizer").at(0).size());
            const int dims_q[] = {nx, nu};
            cfg.quantizer = ConditionalPmf({nx}, nu, parse_nested(j.at("quantizer"), dims_q, "quantizer"),
                                           "quantizer");
            const auto& r = j.at("rates");
            cfg.rate_bins = get_rate(r, "r");
            cfg.rate_per_bin = get_rate(r, "r_star");
        }
        return cfg;
    } catch (const json::exception& e) {
        throw validation_error(origin + ": " + e.what());
    } catch (const validation_error& e) {
        throw validation_error(origin + ": " + e.what());
    }
}

ParsedSimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sim_config(buf.str(), path);
}

SimRunOutput run_sim_from_config(const ParsedSimConfig& cfg, const RunManifest& manifest,
                                 ExecMode exec) {
    SimRunOutput out;
    json rep = report_common(cfg, manifest);
    json runs = json::array();

    out.trend.header_comments = manifest.comment_lines();
    out.trend.columns = {"N", "seed", "decode_error_rate", "encoder_failure_rate", "success_rate"};

    for (int N : cfg.block_lens) {
        std::vector<double> errs;
        for (int rep_i = 0; rep_i < cfg.seed_reps; ++rep_i) {
            const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(rep_i);
            json run;
            run["N"] = N;
            run["seed"] = seed;
            double err = 0.0, encfail = 0.0, succ = 0.0;
            if (cfg.mode == SimMode::wiretap) {
                sim::SimConfig sc;
                sc.n_blocks = cfg.n_blocks;
                sc.block_len = N;
                sc.rates = cfg.rates;
                sc.epsilon = cfg.epsilon;
                sc.seed = seed;
                sc.trials = cfg.trials;
                sc.exec = exec;
                const auto r = sim::run_wiretap_feedback_sim(*cfg.channel, *cfg.aux, sc);
                err = r.decode_error_rate;
                encfail = r.encoder_failure_rate;
                succ = 1.0 - err;
                run["decode_error_rate"] = r.decode_error_rate;
                run["encoder_failure_rate"] = r.encoder_failure_rate;
                run["key_histogram"] = r.key_histogram;
                run["key_total"] = r.key_total;
                run["plug_in_equivocation_rate"] = r.plug_in_equivocation_rate;
                run["message_rate"] = r.message_rate;
                run["codebook_sizes"] = {{"m1", r.m1},
                                         {"m2", r.m2},
                                         {"m_prime", r.m_prime},
                                         {"m_star", r.m_star},
                                         {"m_tilde_per_bin", r.m_tilde_per_bin}};
                if (cfg.exact_small_trials > 0) {
                    const auto ex =
                        sim::exact_small_equivocation(*cfg.channel, *cfg.aux, sc, cfg.exact_small_trials);
                    run["exact_small"] = {{"trials", ex.trials},
                                          {"message_rate", ex.message_rate},
                                          {"mean_equivocation_rate", ex.mean_equivocation_rate},
                                          {"min_equivocation_rate", ex.min_equivocation_rate},
                                          {"per_trial", ex.per_trial}};
                }
            } else if (cfg.mode == SimMode::dmc) {
                sim::DmcConfig dc{*cfg.px,  *cfg.dmc_channel, *cfg.helper,
                                  cfg.rate_message, cfg.rate_help,   cfg.rate_resolution,
                                  cfg.n_blocks,     N,               cfg.epsilon,
                                  seed,             cfg.trials,      exec};
                const auto r = sim::run_dmc_feedback_sim(dc);
                err = r.message_error_rate;
                encfail = r.encoder_failure_rate;
                succ = 1.0 - err;
                run["decode_error_rate"] = r.message_error_rate;
                run["encoder_failure_rate"] = r.encoder_failure_rate;
                json margins = json::array();
                for (const auto& m : r.margins)
                    margins.push_back({{"label", m.label},
                                       {"formula", m.formula},
                                       {"lhs", m.lhs},
                                       {"rhs", m.rhs},
                                       {"satisfied", m.satisfied},
                                       {"margin", m.margin}});
                run["rate_margins"] = margins;
                run["codebook_sizes"] = {{"m_message", r.m_message},
                                         {"m_help", r.m_help},
                                         {"m_resolution", r.m_resolution}};
            } else {
                sim::WzConfig wc{*cfg.source_law, *cfg.quantizer, cfg.rate_bins, cfg.rate_per_bin,
                                 N,               cfg.epsilon,    seed,          cfg.trials,
                                 exec};
                const auto r = sim::run_wyner_ziv_sim(wc);
                err = 1.0 - r.success_rate;
                encfail = r.trials ? static_cast<double>(r.encoder_failures) / r.trials : 0.0;
                succ = r.success_rate;
                run["success_rate"] = r.success_rate;
                run["encoder_failures"] = r.encoder_failures;
                run["decoder_failures"] = r.decoder_failures;
                run["bins"] = r.bins;
                run["per_bin"] = r.per_bin;
            }
            runs.push_back(run);
            out.trend.rows.push_back({std::to_string(N), std::to_string(seed), fmt(err),
                                      fmt(encfail), fmt(succ)});
            errs.push_back(err);
        }
    }
    rep["runs"] = runs;
    out.report_json = rep.dump(2) + "\n";
    return out;
}

} // namespace wtfb::io
