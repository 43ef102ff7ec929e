#include "amc/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "amc/chain.hpp"
#include "amc/graphsim.hpp"
#include "amc/limit.hpp"
#include "amc/sbfw.hpp"

namespace amc::acceptance {

using core::ScalingParams;
using stats::CheckReport;
using stats::MeanCi;

namespace {

constexpr std::uint64_t kCrossReps = 2000;

struct LargestPair {
    double mass = 0.0;   // largest component mass / excursion length
    double marks = 0.0;  // its surplus / Poisson mark count
};

LargestPair sbfw_largest(const ScalingParams& params, Rng& rng) {
    const auto walk = sbfw::sample_walk(params, rng);
    auto excs = sbfw::mark_excursions(sbfw::order_excursions(sbfw::decompose(walk)), rng);
    const auto state = sbfw::to_augmented(excs);
    LargestPair p;
    if (!state.empty()) {
        p.mass = state.pairs()[0].mass;
        p.marks = static_cast<double>(state.pairs()[0].surplus);
    }
    return p;
}

LargestPair graph_largest(const ScalingParams& params, Rng& rng) {
    const auto g = graphsim::sample_multigraph(params, rng);
    const auto state = graphsim::psi_embedding(graphsim::components(g));
    LargestPair p;
    if (!state.empty()) {
        p.mass = state.pairs()[0].mass;
        p.marks = static_cast<double>(state.pairs()[0].surplus);
    }
    return p;
}

std::vector<LargestPair> collect(std::uint64_t seed, std::uint64_t reps, unsigned workers,
                                 const ScalingParams& params,
                                 LargestPair (*sampler)(const ScalingParams&, Rng&)) {
    return run_replicas(seed, reps, workers,
                        [&](std::uint64_t, Rng& rng) { return sampler(params, rng); });
}

std::vector<double> component(const std::vector<LargestPair>& pairs, bool marks) {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(marks ? p.marks : p.mass);
    return out;
}

double se_of(const MeanCi& m) { return m.half_width / 3.0; }

bool means_agree_3se(const MeanCi& a, const MeanCi& b) {
    const double se = std::sqrt(se_of(a) * se_of(a) + se_of(b) * se_of(b));
    return std::abs(a.mean - b.mean) <= 3.0 * se;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5g", v);
    return buf;
}

// --- check 1: the reflected walk's largest excursion length has the same law
// as the largest component mass of the coupled graph, at matched (n, t).
CheckReport exact_law_coupling(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 101);
    CheckReport rep;
    rep.name = "exact_law_coupling";
    rep.seed = seed;
    rep.replicas = 0;
    bool pass = true;
    double crit = 0.0;
    int combo = 0;
    for (std::uint64_t n : {50ull, 200ull}) {
        for (double t : {-1.0, 0.0, 1.0}) {
            const ScalingParams params(n, t);
            const auto a = collect(derive_seed(seed, 2 * combo), kCrossReps, cfg.workers,
                                   params, &sbfw_largest);
            const auto b = collect(derive_seed(seed, 2 * combo + 1), kCrossReps, cfg.workers,
                                   params, &graph_largest);
            const auto ks = stats::ks_two_sample({component(a, false), "sbfw"},
                                                 {component(b, false), "graph"});
            crit = ks.critical;
            const std::string tag = "n" + std::to_string(n) + "_t" + fmt(t);
            rep.estimates.emplace_back("ks_" + tag, ks.statistic);
            pass = pass && ks.below_critical();
            rep.replicas += 2 * kCrossReps;
            ++combo;
        }
    }
    rep.threshold = crit;
    rep.pass = pass;
    return rep;
}

// --- check 2: mean and variance of the largest component's surplus agree
// between the multigraph sampler and the Poisson-marked walk.
CheckReport joint_surplus_moments(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 102);
    CheckReport rep;
    rep.name = "joint_surplus_moments";
    rep.seed = seed;
    rep.threshold = 3.0;
    bool pass = true;
    int combo = 0;
    for (std::uint64_t n : {50ull, 200ull}) {
        for (double t : {-1.0, 0.0, 1.0}) {
            const ScalingParams params(n, t);
            const auto a = collect(derive_seed(seed, 2 * combo), kCrossReps, cfg.workers,
                                   params, &sbfw_largest);
            const auto b = collect(derive_seed(seed, 2 * combo + 1), kCrossReps, cfg.workers,
                                   params, &graph_largest);
            const auto ma = component(a, true);
            const auto mb = component(b, true);
            const MeanCi mean_a = stats::mc_mean_ci(ma, 3.0);
            const MeanCi mean_b = stats::mc_mean_ci(mb, 3.0);
            const auto var_a = stats::variance_with_se(ma);
            const auto var_b = stats::variance_with_se(mb);
            const double var_se = std::sqrt(var_a.std_error * var_a.std_error +
                                            var_b.std_error * var_b.std_error);
            const bool ok = means_agree_3se(mean_a, mean_b) &&
                            std::abs(var_a.variance - var_b.variance) <= 3.0 * var_se;
            const std::string tag = "n" + std::to_string(n) + "_t" + fmt(t);
            rep.estimates.emplace_back("marks_mean_" + tag, mean_a.mean);
            rep.estimates.emplace_back("surplus_mean_" + tag, mean_b.mean);
            rep.std_errors.emplace_back("mean_diff_" + tag,
                                        std::abs(mean_a.mean - mean_b.mean));
            rep.std_errors.emplace_back("var_diff_" + tag,
                                        std::abs(var_a.variance - var_b.variance));
            pass = pass && ok;
            rep.replicas += 2 * kCrossReps;
            ++combo;
        }
    }
    rep.pass = pass;
    return rep;
}

// --- check 3: the Gillespie chain run for q time units from the equal-mass
// state matches the multigraph at time q (largest mass law, total surplus mean).
CheckReport chain_graph_prelimit(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 103);
    const ScalingParams params(30, 0.0);

    struct ChainDraw {
        double largest = 0.0;
        double total_surplus = 0.0;
    };
    const auto chain_draws = run_replicas(
        derive_seed(seed, 1), kCrossReps, cfg.workers, [&](std::uint64_t, Rng& rng) {
            const auto final_state = chain::run(chain::initial_state(params), params.q(), rng);
            ChainDraw d;
            if (!final_state.blocks.empty()) d.largest = final_state.blocks.pairs()[0].mass;
            d.total_surplus = static_cast<double>(final_state.blocks.total_surplus());
            return d;
        });
    const auto graph_draws = run_replicas(
        derive_seed(seed, 2), kCrossReps, cfg.workers, [&](std::uint64_t, Rng& rng) {
            const auto g = graphsim::sample_multigraph(params, rng);
            const auto state = graphsim::psi_embedding(graphsim::components(g));
            ChainDraw d;
            if (!state.empty()) d.largest = state.pairs()[0].mass;
            d.total_surplus = static_cast<double>(state.total_surplus());
            return d;
        });

    std::vector<double> a_largest, b_largest, a_sp, b_sp;
    for (const auto& d : chain_draws) {
        a_largest.push_back(d.largest);
        a_sp.push_back(d.total_surplus);
    }
    for (const auto& d : graph_draws) {
        b_largest.push_back(d.largest);
        b_sp.push_back(d.total_surplus);
    }
    const auto ks = stats::ks_two_sample({a_largest, "chain"}, {b_largest, "graph"});
    const MeanCi sp_a = stats::mc_mean_ci(a_sp, 3.0);
    const MeanCi sp_b = stats::mc_mean_ci(b_sp, 3.0);

    CheckReport rep;
    rep.name = "chain_graph_prelimit";
    rep.seed = seed;
    rep.replicas = 2 * kCrossReps;
    rep.threshold = ks.critical;
    rep.estimates = {{"ks_largest_mass", ks.statistic},
                     {"chain_total_surplus_mean", sp_a.mean},
                     {"graph_total_surplus_mean", sp_b.mean}};
    rep.std_errors = {{"chain_total_surplus", se_of(sp_a)},
                      {"graph_total_surplus", se_of(sp_b)}};
    rep.pass = ks.below_critical() && means_agree_3se(sp_a, sp_b);
    return rep;
}

// --- check 4: deterministic exact invariants.
CheckReport exact_invariants(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 104);
    constexpr double kRelTol = 1e-9;
    bool pass = true;
    double worst_tiling = 0.0, worst_mass_sum = 0.0;

    // Excursion lengths tile the total mass n^{1/3}.
    for (std::uint64_t n : {1000ull, 100000ull}) {
        const ScalingParams params(n, 0.0);
        const auto sums = run_replicas(
            derive_seed(seed, n), 100, cfg.workers, [&](std::uint64_t, Rng& rng) {
                const auto excs = sbfw::decompose(sbfw::sample_walk(params, rng));
                double sum = 0.0;
                for (const auto& e : excs) sum += e.length;
                return std::abs(sum - params.sigma1()) / params.sigma1();
            });
        for (double rel : sums) {
            worst_tiling = std::max(worst_tiling, rel);
            pass = pass && rel <= kRelTol;
        }
    }

    // Component masses sum to n^{1/3}; surpluses are nonnegative by the
    // edges - size + 1 formula evaluated in signed arithmetic.
    for (std::uint64_t n : {1000ull, 100000ull}) {
        const ScalingParams params(n, 0.0);
        const auto rels = run_replicas(
            derive_seed(seed, n + 1), 100, cfg.workers, [&](std::uint64_t, Rng& rng) -> double {
                const auto g = graphsim::sample_multigraph(params, rng);
                const auto comps = graphsim::components(g);
                double mass_sum = 0.0;
                std::uint64_t size_sum = 0;
                std::int64_t total_edges = 0;
                for (const auto& c : comps) {
                    mass_sum += c.mass;
                    size_sum += c.size;
                    total_edges +=
                        static_cast<std::int64_t>(c.surplus) + c.size - 1;
                }
                const std::int64_t actual_edges =
                    static_cast<std::int64_t>(g.total_edge_count());
                if (size_sum != n || total_edges != actual_edges) return 1.0;
                return std::abs(mass_sum - params.sigma1()) / params.sigma1();
            });
        for (double rel : rels) {
            worst_mass_sum = std::max(worst_mass_sum, rel);
            pass = pass && rel <= kRelTol;
        }
    }

    // Pathwise surplus domination in the multigraph/simple coupling.
    {
        const ScalingParams params(1000, 0.0);
        const auto oks = run_replicas(
            derive_seed(seed, 3), 100, cfg.workers, [&](std::uint64_t, Rng& rng) -> double {
                const auto cp = graphsim::sample_coupled_pair(params, rng);
                for (std::size_t i = 0; i < cp.multigraph.size(); ++i)
                    if (cp.simple[i].surplus > cp.multigraph[i].surplus) return 0.0;
                return 1.0;
            });
        for (double ok : oks) pass = pass && ok == 1.0;
    }

    // canonicalize is idempotent on random raw states.
    {
        Rng rng = make_rng(derive_seed(seed, 4));
        std::uniform_real_distribution<double> mass(0.0, 3.0);
        std::uniform_int_distribution<int> sp(0, 4);
        std::uniform_int_distribution<int> len(0, 12);
        for (int rep_i = 0; rep_i < 1000; ++rep_i) {
            std::vector<core::MassSurplus> raw(static_cast<std::size_t>(len(rng)));
            for (auto& p : raw) {
                const double m = mass(rng);
                p = {m < 0.3 ? 0.0 : m, sp(rng)};
            }
            const auto once = core::canonicalize(raw);
            const auto twice = core::canonicalize(
                std::vector<core::MassSurplus>(once.pairs().begin(), once.pairs().end()));
            pass = pass && once == twice;
        }
    }

    CheckReport rep;
    rep.name = "exact_invariants";
    rep.seed = seed;
    rep.replicas = 400;
    rep.threshold = kRelTol;
    rep.estimates = {{"worst_length_tiling_rel_err", worst_tiling},
                     {"worst_mass_sum_rel_err", worst_mass_sum}};
    rep.pass = pass;
    return rep;
}

CheckReport random_vertex_identity(const SuiteConfig& cfg) {
    return stats::check_random_vertex_identity(200, 0.0, 0.5, 5000,
                                            derive_seed(cfg.seed, 105), cfg.workers);
}

// --- check 6: truncated-area bound at several horizons, one report.
CheckReport poisson_area_bound(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 106);
    CheckReport rep;
    rep.name = "poisson_area_bound";
    rep.seed = seed;
    rep.replicas = 0;
    bool pass = true;
    for (double T : {1.0, 5.0, 10.0}) {
        const auto sub = stats::check_area_bound(T, 100000, derive_seed(seed, std::llround(T)),
                                                 cfg.workers);
        rep.estimates.emplace_back("area_mean_T" + fmt(T), sub.estimates[0].second);
        rep.std_errors.emplace_back("T" + fmt(T), sub.std_errors[0].second);
        pass = pass && sub.pass;
        rep.replicas += sub.replicas;
    }
    rep.threshold = 10.0;
    rep.pass = pass;
    return rep;
}

// --- check 7: the small-component area chain: n^{1/3} E[area of the first
// excursion restricted to length < delta] stays below delta.
CheckReport small_component_area_bound(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 107);
    constexpr std::uint64_t kReps = 20000;
    CheckReport rep;
    rep.name = "small_component_area_bound";
    rep.seed = seed;
    rep.replicas = 0;
    bool pass = true;
    int combo = 0;
    for (std::uint64_t n : {100ull, 1000ull}) {
        for (double delta : {0.1, 0.5}) {
            const ScalingParams params(n, 0.0);
            const auto vals = run_replicas(
                derive_seed(seed, combo), kReps, cfg.workers,
                [&](std::uint64_t, Rng& rng) -> double {
                    const auto walk = sbfw::sample_walk(params, rng);
                    const auto first = sbfw::first_excursion_stats(walk, delta);
                    return first.below_delta ? params.sigma1() * first.area : 0.0;
                });
            const MeanCi m = stats::mc_mean_ci(vals, 3.0);
            const std::string tag = "n" + std::to_string(n) + "_d" + fmt(delta);
            rep.estimates.emplace_back("scaled_area_" + tag, m.mean);
            rep.std_errors.emplace_back(tag, se_of(m));
            pass = pass && m.mean <= delta + m.half_width;
            rep.replicas += kReps;
            ++combo;
        }
    }
    rep.threshold = 0.5;
    rep.pass = pass;
    return rep;
}

CheckReport surplus_gap_trend(const SuiteConfig& cfg) {
    return stats::check_surplus_gap_trend({100, 400, 1600}, 0.0, 4000,
                                          derive_seed(cfg.seed, 108), cfg.workers);
}

// --- check 9: walk sampler at n = 5000 against the grid-discretized limit.
// The 0.1 tolerance is an engineering choice; the report carries the step
// halving sensitivity so the discretization error stays visible.
CheckReport limit_consistency(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 109);
    const ScalingParams params(5000, 0.0);

    const auto walk_largest = run_replicas(
        derive_seed(seed, 1), kCrossReps, cfg.workers, [&](std::uint64_t, Rng& rng) {
            const auto excs = sbfw::decompose(sbfw::sample_walk(params, rng));
            double best = 0.0;
            for (const auto& e : excs) best = std::max(best, e.length);
            return best;
        });

    auto grid_largest = [&](double step, std::uint64_t salt) {
        limit::LimitConfig config;
        config.t = 0.0;
        config.horizon = 10.0;
        config.step = step;
        config.min_excursion_length = 1e-3;
        return run_replicas(derive_seed(seed, salt), kCrossReps, cfg.workers,
                            [&](std::uint64_t, Rng& rng) -> double {
                                const auto state = limit::sample_limit_state(config, rng);
                                return state.empty() ? 0.0 : state.pairs()[0].mass;
                            });
    };
    const auto coarse = grid_largest(1e-4, 2);
    const auto fine = grid_largest(5e-5, 3);

    const auto ks = stats::ks_two_sample({walk_largest, "sbfw"}, {coarse, "limit"});
    const auto ks_fine = stats::ks_two_sample({walk_largest, "sbfw"}, {fine, "limit_half_step"});
    const MeanCi mc = stats::mc_mean_ci(coarse, 3.0);
    const MeanCi mf = stats::mc_mean_ci(fine, 3.0);

    CheckReport rep;
    rep.name = "limit_consistency";
    rep.seed = seed;
    rep.replicas = 3 * kCrossReps;
    rep.threshold = 0.1;
    rep.estimates = {{"ks_largest_length", ks.statistic},
                     {"ks_half_step", ks_fine.statistic},
                     {"grid_largest_mean", mc.mean},
                     {"half_step_largest_mean", mf.mean},
                     {"step_halving_mean_shift", std::abs(mc.mean - mf.mean)}};
    rep.std_errors = {{"grid_largest_mean", se_of(mc)}, {"half_step_largest_mean", se_of(mf)}};
    rep.pass = ks.statistic <= 0.1;
    return rep;
}

// --- check 10: superposition sampler against the per-pair oracle.
CheckReport superposition_oracle(const SuiteConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.seed, 110);
    constexpr std::uint64_t kReps = 100000;
    const ScalingParams params = ScalingParams::from_q(6, 3.0);

    struct Draw {
        double largest = 0.0;
        double edges = 0.0;
    };
    auto sample_with = [&](auto sampler, std::uint64_t salt) {
        return run_replicas(derive_seed(seed, salt), kReps, cfg.workers,
                            [&](std::uint64_t, Rng& rng) {
                                const auto g = sampler(params, rng);
                                const auto comps = graphsim::components(g);
                                Draw d;
                                if (!comps.empty()) d.largest = comps[0].mass;
                                d.edges = static_cast<double>(g.total_edge_count());
                                return d;
                            });
    };
    const auto fast = sample_with(&graphsim::sample_multigraph, 1);
    const auto naive = sample_with(&graphsim::sample_multigraph_perpair, 2);

    std::vector<double> fast_largest, naive_largest, fast_edges, naive_edges;
    for (const auto& d : fast) {
        fast_largest.push_back(d.largest);
        fast_edges.push_back(d.edges);
    }
    for (const auto& d : naive) {
        naive_largest.push_back(d.largest);
        naive_edges.push_back(d.edges);
    }
    const auto ks = stats::ks_two_sample({fast_largest, "superposition"}, {naive_largest, "perpair"});
    const MeanCi ef = stats::mc_mean_ci(fast_edges, 3.0);
    const MeanCi en = stats::mc_mean_ci(naive_edges, 3.0);

    CheckReport rep;
    rep.name = "superposition_oracle";
    rep.seed = seed;
    rep.replicas = 2 * kReps;
    rep.threshold = 0.02;
    rep.estimates = {{"ks_largest_mass", ks.statistic},
                     {"superposition_edge_mean", ef.mean},
                     {"perpair_edge_mean", en.mean}};
    rep.std_errors = {{"superposition_edges", se_of(ef)}, {"perpair_edges", se_of(en)}};
    rep.pass = ks.statistic <= 0.02 && means_agree_3se(ef, en);
    return rep;
}

using CheckFn = CheckReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"exact_law_coupling", &exact_law_coupling},
        {"joint_surplus_moments", &joint_surplus_moments},
        {"chain_graph_prelimit", &chain_graph_prelimit},
        {"exact_invariants", &exact_invariants},
        {"random_vertex_identity", &random_vertex_identity},
        {"poisson_area_bound", &poisson_area_bound},
        {"small_component_area_bound", &small_component_area_bound},
        {"surplus_gap_trend", &surplus_gap_trend},
        {"limit_consistency", &limit_consistency},
        {"superposition_oracle", &superposition_oracle},
    };
    return checks;
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

std::vector<stats::CheckReport> run_suite(const SuiteConfig& config,
                                          const std::vector<std::string>& only,
                                          std::ostream* progress) {
    for (const auto& name : only) {
        bool known = false;
        for (const auto& [known_name, fn] : registry()) known = known || known_name == name;
        if (!known) throw std::invalid_argument("run_suite: unknown check '" + name + "'");
    }
    std::vector<CheckReport> reports;
    for (const auto& [name, fn] : registry()) {
        if (!only.empty() &&
            std::find(only.begin(), only.end(), name) == only.end())
            continue;
        CheckReport rep = fn(config);
        if (progress) {
            *progress << (rep.pass ? "PASS " : "FAIL ") << rep.name;
            for (const auto& [key, value] : rep.estimates) *progress << "  " << key << "=" << value;
            *progress << "\n" << std::flush;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

bool all_passed(const std::vector<stats::CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace amc::acceptance
