// amclab: samplers and cross-validation for the critical-window component
// structure of continuous-time random (multi)graphs.
//
// Subcommands:
//   graph     sample the multigraph (or its simple projection) at time q and
//             emit the canonically ordered (mass, surplus) state per replica
//   sbfw      sample the breadth-first walk, emit excursions and the
//             (length, marks) state per replica
//   limit     sample the grid-discretized limiting path, emit (length, marks)
//             states; optionally dump one full path as CSV
//   chain     run the Gillespie jump chain and emit states at observation times
//   compare   two-sample KS test between any two samplers' largest mass
//   validate  run the full cross-validation suite and emit check reports
//
// Exit codes: 0 success, 1 validation failure, 2 invalid arguments.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "amc/acceptance.hpp"
#include "amc/chain.hpp"
#include "amc/graphsim.hpp"
#include "amc/json_io.hpp"
#include "amc/limit.hpp"
#include "amc/rng.hpp"
#include "amc/sbfw.hpp"
#include "amc/stats.hpp"

namespace {

using amc::core::ScalingParams;
using amc::json_io::json;

struct CommonOpts {
    std::uint64_t n = 100;
    double t = 0.0;
    std::uint64_t replicas = 1;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out;  // empty = stdout
    std::string format = "json";
    bool timestamp = false;
};

struct LimitOpts {
    double step = 1e-4;
    double horizon = 0.0;  // 0 = default t + 10
    double eps = 0.0;      // 0 = default 10 * step
};

void add_model_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n", o.n, "vertex count")->check(CLI::PositiveNumber);
    cmd->add_option("--t", o.t, "critical-window time");
}

void add_run_opts(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--replicas", o.replicas, "number of independent replicas")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--workers", o.workers, "worker threads (0 = auto)");
    cmd->add_option("--out,-o", o.out, "output file (default: stdout)");
    if (with_format)
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--timestamp,!--no-timestamp", o.timestamp,
                  "include a timestamp in meta (off by default for reproducible bytes)");
}

void add_limit_opts(CLI::App* cmd, LimitOpts& o) {
    cmd->add_option("--step", o.step, "grid step")->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", o.horizon, "grid horizon (default t + 10)");
    cmd->add_option("--eps", o.eps, "minimum excursion length (default 10 * step)");
}

amc::limit::LimitConfig make_limit_config(double t, const LimitOpts& o) {
    amc::limit::LimitConfig c;
    c.t = t;
    c.step = o.step;
    c.horizon = o.horizon > 0.0 ? o.horizon : t + 10.0;
    c.min_excursion_length = o.eps > 0.0 ? o.eps : 10.0 * o.step;
    c.validate();
    return c;
}

int write_output(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::cout << bytes;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "amclab: cannot open output file '" << path << "'\n";
        return 2;
    }
    f << bytes;
    return 0;
}

int emit_document(const CommonOpts& o, const std::string& command, json params, json data) {
    json doc = amc::json_io::document(
        amc::json_io::make_meta(command, o.seed, std::move(params), o.timestamp),
        std::move(data));
    return write_output(o.out, doc.dump(2) + "\n");
}

// ---- graph ----------------------------------------------------------------

int run_graph(const CommonOpts& o, const std::string& kind) {
    const ScalingParams params(o.n, o.t);
    const bool simple = kind == "simple";
    struct Rec {
        amc::core::AugmentedPartition state;
    };
    const auto recs = amc::run_replicas(
        o.seed, o.replicas, o.workers, [&](std::uint64_t, amc::Rng& rng) {
            auto mg = amc::graphsim::sample_multigraph(params, rng);
            const auto g = simple ? amc::graphsim::project_simple(mg) : std::move(mg);
            return Rec{amc::graphsim::psi_embedding(amc::graphsim::components(g))};
        });

    json params_json{{"n", o.n}, {"t", o.t}, {"q", params.q()},
                     {"kind", kind}, {"replicas", o.replicas}};
    if (o.format == "csv") {
        std::string out{amc::json_io::kCsvHeader};
        for (std::uint64_t r = 0; r < recs.size(); ++r)
            amc::json_io::append_state_csv(out, r, recs[r].state);
        return write_output(o.out, out);
    }
    json data = json::array();
    for (std::uint64_t r = 0; r < recs.size(); ++r)
        data.push_back({{"replica", r}, {"state", amc::json_io::state_to_json(recs[r].state)}});
    return emit_document(o, "graph", std::move(params_json), std::move(data));
}

// ---- sbfw -----------------------------------------------------------------

int run_sbfw(const CommonOpts& o) {
    const ScalingParams params(o.n, o.t);
    struct Rec {
        std::vector<amc::sbfw::ExcursionRecord> excursions;
        amc::core::AugmentedPartition state;
    };
    const auto recs = amc::run_replicas(
        o.seed, o.replicas, o.workers, [&](std::uint64_t, amc::Rng& rng) {
            const auto walk = amc::sbfw::sample_walk(params, rng);
            auto excs = amc::sbfw::mark_excursions(
                amc::sbfw::order_excursions(amc::sbfw::decompose(walk)), rng);
            auto state = amc::sbfw::to_augmented(excs);
            return Rec{std::move(excs), std::move(state)};
        });

    json params_json{{"n", o.n}, {"t", o.t}, {"q", params.q()}, {"replicas", o.replicas}};
    if (o.format == "csv") {
        std::string out{amc::json_io::kCsvHeader};
        for (std::uint64_t r = 0; r < recs.size(); ++r)
            amc::json_io::append_excursions_csv(out, r, recs[r].excursions);
        return write_output(o.out, out);
    }
    json data = json::array();
    for (std::uint64_t r = 0; r < recs.size(); ++r)
        data.push_back({{"replica", r},
                        {"excursions", amc::json_io::excursions_to_json(recs[r].excursions)},
                        {"state", amc::json_io::state_to_json(recs[r].state)}});
    return emit_document(o, "sbfw", std::move(params_json), std::move(data));
}

// ---- limit ----------------------------------------------------------------

int run_limit(const CommonOpts& o, const LimitOpts& lo, const std::string& dump_path) {
    const auto config = make_limit_config(o.t, lo);
    if (!dump_path.empty()) {
        // Full path of replica 0, via the materialized pipeline (same draws).
        amc::Rng rng = amc::make_rng(amc::derive_seed(o.seed, 0));
        const auto w = amc::limit::sample_wt(config, rng);
        const auto b = amc::limit::reflect_grid(w);
        std::ofstream f(dump_path);
        if (!f) {
            std::cerr << "amclab: cannot open dump file '" << dump_path << "'\n";
            return 2;
        }
        amc::limit::write_path_csv(f, w, b);
    }
    const auto states = amc::run_replicas(
        o.seed, o.replicas, o.workers, [&](std::uint64_t, amc::Rng& rng) {
            return amc::limit::sample_limit_state(config, rng);
        });

    json params_json{{"t", o.t},
                     {"horizon", config.horizon},
                     {"step", config.step},
                     {"eps", config.min_excursion_length},
                     {"replicas", o.replicas}};
    if (o.format == "csv") {
        std::string out{amc::json_io::kCsvHeader};
        for (std::uint64_t r = 0; r < states.size(); ++r)
            amc::json_io::append_state_csv(out, r, states[r]);
        return write_output(o.out, out);
    }
    json data = json::array();
    for (std::uint64_t r = 0; r < states.size(); ++r)
        data.push_back({{"replica", r}, {"state", amc::json_io::state_to_json(states[r])}});
    return emit_document(o, "limit", std::move(params_json), std::move(data));
}

// ---- chain ----------------------------------------------------------------

int run_chain(const CommonOpts& o, std::vector<double> obs_times) {
    const ScalingParams params(o.n, o.t);
    if (obs_times.empty()) obs_times.push_back(params.q());
    for (double ot : obs_times)
        if (ot < 0.0) throw CLI::ValidationError("--obs", "observation times must be >= 0");
    std::sort(obs_times.begin(), obs_times.end());

    struct Obs {
        double time;
        amc::core::AugmentedPartition state;
    };
    const auto recs = amc::run_replicas(
        o.seed, o.replicas, o.workers, [&](std::uint64_t, amc::Rng& rng) {
            std::vector<Obs> row;
            amc::chain::ChainState state = amc::chain::initial_state(params);
            double clock = 0.0;
            for (double ot : obs_times) {
                state = amc::chain::run(state, ot - clock, rng);
                clock = ot;
                row.push_back({ot, state.blocks});
            }
            return row;
        });

    json params_json{{"n", o.n}, {"t", o.t}, {"q", params.q()},
                     {"obs_times", obs_times}, {"replicas", o.replicas}};
    if (o.format == "csv") {
        // Rows for the final observation time only; earlier states have no
        // column in the shared schema.
        std::string out{amc::json_io::kCsvHeader};
        for (std::uint64_t r = 0; r < recs.size(); ++r)
            amc::json_io::append_state_csv(out, r, recs[r].back().state);
        return write_output(o.out, out);
    }
    json data = json::array();
    for (std::uint64_t r = 0; r < recs.size(); ++r) {
        json observations = json::array();
        for (const auto& obs : recs[r])
            observations.push_back(
                {{"time", obs.time}, {"state", amc::json_io::state_to_json(obs.state)}});
        data.push_back({{"replica", r}, {"observations", std::move(observations)}});
    }
    return emit_document(o, "chain", std::move(params_json), std::move(data));
}

// ---- compare ----------------------------------------------------------------

std::vector<double> collect_largest(const std::string& source, const CommonOpts& o,
                                    const LimitOpts& lo, std::uint64_t stream) {
    const std::uint64_t seed = amc::derive_seed(o.seed, stream);
    if (source == "limit") {
        const auto config = make_limit_config(o.t, lo);
        return amc::run_replicas(seed, o.replicas, o.workers,
                                 [&](std::uint64_t, amc::Rng& rng) -> double {
                                     const auto s = amc::limit::sample_limit_state(config, rng);
                                     return s.empty() ? 0.0 : s.pairs()[0].mass;
                                 });
    }
    const ScalingParams params(o.n, o.t);
    if (source == "sbfw") {
        return amc::run_replicas(seed, o.replicas, o.workers,
                                 [&](std::uint64_t, amc::Rng& rng) -> double {
                                     const auto excs =
                                         amc::sbfw::decompose(amc::sbfw::sample_walk(params, rng));
                                     double best = 0.0;
                                     for (const auto& e : excs) best = std::max(best, e.length);
                                     return best;
                                 });
    }
    if (source == "graph" || source == "simple") {
        const bool simple = source == "simple";
        return amc::run_replicas(
            seed, o.replicas, o.workers, [&](std::uint64_t, amc::Rng& rng) -> double {
                auto mg = amc::graphsim::sample_multigraph(params, rng);
                const auto g = simple ? amc::graphsim::project_simple(mg) : std::move(mg);
                const auto comps = amc::graphsim::components(g);
                return comps.empty() ? 0.0 : comps[0].mass;
            });
    }
    if (source == "chain") {
        return amc::run_replicas(
            seed, o.replicas, o.workers, [&](std::uint64_t, amc::Rng& rng) -> double {
                const auto s =
                    amc::chain::run(amc::chain::initial_state(params), params.q(), rng);
                return s.blocks.empty() ? 0.0 : s.blocks.pairs()[0].mass;
            });
    }
    throw CLI::ValidationError("--a/--b", "unknown sampler '" + source + "'");
}

int run_compare(const CommonOpts& o, const LimitOpts& lo, const std::string& a,
                const std::string& b) {
    const auto sa = collect_largest(a, o, lo, 1);
    const auto sb = collect_largest(b, o, lo, 2);
    const auto ks = amc::stats::ks_two_sample({sa, a}, {sb, b});

    json params_json{{"a", a}, {"b", b}, {"n", o.n}, {"t", o.t}, {"replicas", o.replicas}};
    json data = json::array();
    data.push_back({{"a", a},
                    {"b", b},
                    {"statistic", "largest_mass"},
                    {"ks", ks.statistic},
                    {"critical", ks.critical},
                    {"pass", ks.below_critical()}});
    const int rc = emit_document(o, "compare", std::move(params_json), std::move(data));
    if (rc != 0) return rc;
    return ks.below_critical() ? 0 : 1;
}

// ---- validate ----------------------------------------------------------------

int run_validate(const CommonOpts& o, const std::string& only_csv) {
    amc::acceptance::SuiteConfig cfg;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    std::vector<std::string> only;
    if (!only_csv.empty()) {
        std::string cur;
        for (char c : only_csv + ",") {
            if (c == ',') {
                if (!cur.empty()) only.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }
    const auto reports = amc::acceptance::run_suite(cfg, only, &std::cerr);

    json data = json::array();
    for (const auto& r : reports) data.push_back(amc::json_io::report_to_json(r));
    json params_json{{"checks", only.empty() ? json(amc::acceptance::check_names()) : json(only)},
                     {"workers", o.workers}};
    const int rc = emit_document(o, "validate", std::move(params_json), std::move(data));
    if (rc != 0) return rc;
    return amc::acceptance::all_passed(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"samplers and cross-validation for critical random graph components"};
    app.require_subcommand(1);

    CommonOpts graph_opts;
    std::string graph_kind = "multigraph";
    auto* graph_cmd = app.add_subcommand("graph", "sample the (multi)graph component state");
    add_model_opts(graph_cmd, graph_opts);
    graph_cmd->add_option("--kind", graph_kind, "multigraph or simple")
        ->check(CLI::IsMember({"multigraph", "simple"}));
    add_run_opts(graph_cmd, graph_opts);

    CommonOpts sbfw_opts;
    auto* sbfw_cmd = app.add_subcommand("sbfw", "sample the breadth-first walk excursions");
    add_model_opts(sbfw_cmd, sbfw_opts);
    add_run_opts(sbfw_cmd, sbfw_opts);

    CommonOpts limit_opts_common;
    LimitOpts limit_opts;
    std::string dump_path;
    auto* limit_cmd = app.add_subcommand("limit", "sample the discretized limiting state");
    limit_cmd->add_option("--t", limit_opts_common.t, "drift parameter t");
    add_limit_opts(limit_cmd, limit_opts);
    limit_cmd->add_option("--dump-path", dump_path, "write replica 0's full path (CSV: s,w,b)");
    add_run_opts(limit_cmd, limit_opts_common);

    CommonOpts chain_opts;
    std::vector<double> obs_times;
    auto* chain_cmd = app.add_subcommand("chain", "run the coalescent jump chain");
    add_model_opts(chain_cmd, chain_opts);
    chain_cmd->add_option("--obs", obs_times, "observation times (default: q = n^{1/3} + t)");
    add_run_opts(chain_cmd, chain_opts);

    CommonOpts compare_opts;
    LimitOpts compare_limit_opts;
    std::string cmp_a = "sbfw", cmp_b = "graph";
    auto* compare_cmd =
        app.add_subcommand("compare", "KS test between two samplers' largest mass");
    compare_cmd->add_option("--a", cmp_a, "first sampler: sbfw|graph|simple|chain|limit");
    compare_cmd->add_option("--b", cmp_b, "second sampler");
    add_model_opts(compare_cmd, compare_opts);
    add_limit_opts(compare_cmd, compare_limit_opts);
    compare_opts.replicas = 2000;
    add_run_opts(compare_cmd, compare_opts, /*with_format=*/false);

    CommonOpts validate_opts;
    std::string only_csv;
    auto* validate_cmd = app.add_subcommand("validate", "run the cross-validation suite");
    validate_cmd->add_option("--only", only_csv, "comma-separated subset of checks");
    validate_opts.seed = amc::acceptance::SuiteConfig{}.seed;
    add_run_opts(validate_cmd, validate_opts, /*with_format=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (graph_cmd->parsed()) return run_graph(graph_opts, graph_kind);
        if (sbfw_cmd->parsed()) return run_sbfw(sbfw_opts);
        if (limit_cmd->parsed()) return run_limit(limit_opts_common, limit_opts, dump_path);
        if (chain_cmd->parsed()) return run_chain(chain_opts, obs_times);
        if (compare_cmd->parsed())
            return run_compare(compare_opts, compare_limit_opts, cmp_a, cmp_b);
        if (validate_cmd->parsed()) return run_validate(validate_opts, only_csv);
    } catch (const CLI::Error& e) {
        std::cerr << "amclab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "amclab: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
