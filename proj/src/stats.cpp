#include "amc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "amc/graphsim.hpp"

namespace amc::stats {

KsResult ks_two_sample(const SampleSet& a, const SampleSet& b, double critical_constant) {
    if (a.values.empty() || b.values.empty())
        throw std::invalid_argument("ks_two_sample: empty sample set");
    std::vector<double> x = a.values;
    std::vector<double> y = b.values;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());

    const double m = static_cast<double>(x.size());
    const double n = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    // Merge scan; at every distinct value both counters pass all ties before
    // the CDF difference is examined, so the statistic is exact under ties.
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
    }
    d = std::max(d, std::abs(1.0 - static_cast<double>(j) / n));
    d = std::max(d, std::abs(static_cast<double>(i) / m - 1.0));

    KsResult r;
    r.statistic = d;
    r.critical = critical_constant * std::sqrt((m + n) / (m * n));
    r.count_a = x.size();
    r.count_b = y.size();
    return r;
}

MeanCi mc_mean_ci(std::span<const double> samples, double z) {
    if (samples.size() < 2) throw std::invalid_argument("mc_mean_ci: need at least 2 samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    MeanCi r;
    r.mean = mean;
    r.stddev = sd;
    r.half_width = z * sd / std::sqrt(n);
    r.count = samples.size();
    return r;
}

VarianceEstimate variance_with_se(std::span<const double> samples) {
    if (samples.size() < 4) throw std::invalid_argument("variance_with_se: need >= 4 samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : samples) {
        const double c = v - mean;
        m2 += c * c;
        m4 += c * c * c * c;
    }
    const double s2 = m2 / (n - 1.0);
    m2 /= n;
    m4 /= n;
    // Var(s^2) = (m4 - m2^2 (n-3)/(n-1)) / n
    const double var_of_var = std::max(0.0, (m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n);
    return VarianceEstimate{s2, std::sqrt(var_of_var)};
}

CheckReport check_random_vertex_identity(std::uint64_t n, double t, double delta,
                                      std::uint64_t reps, std::uint64_t seed,
                                      unsigned workers) {
    if (n < 2) throw std::invalid_argument("check_random_vertex_identity: n < 2");
    if (reps < 100) throw std::invalid_argument("check_random_vertex_identity: reps < 100");
    const core::ScalingParams params(n, t);

    // Left side: surplus of the component of a uniform vertex, small components only.
    const auto lhs = run_replicas(
        derive_seed(seed, 1), reps, workers, [&](std::uint64_t, Rng& rng) -> double {
            const auto g = graphsim::sample_multigraph(params, rng);
            const auto dec = graphsim::decompose_components(g);
            std::uniform_int_distribution<std::uint32_t> pick(1, static_cast<std::uint32_t>(n));
            const auto& comp = dec.components[dec.component_of[pick(rng)]];
            return comp.mass < delta ? static_cast<double>(comp.surplus) : 0.0;
        });

    // Right side: n^{-1/3} sum_i mass_i surplus_i over small components.
    const auto rhs = run_replicas(
        derive_seed(seed, 2), reps, workers, [&](std::uint64_t, Rng& rng) -> double {
            const auto g = graphsim::sample_multigraph(params, rng);
            double sum = 0.0;
            for (const auto& c : graphsim::components(g))
                if (c.mass < delta) sum += c.mass * static_cast<double>(c.surplus);
            return params.sigma2() * sum;
        });

    const MeanCi l = mc_mean_ci(lhs, 3.0);
    const MeanCi r = mc_mean_ci(rhs, 3.0);
    const double se_l = l.half_width / 3.0;
    const double se_r = r.half_width / 3.0;
    const double combined = std::sqrt(se_l * se_l + se_r * se_r);

    CheckReport rep;
    rep.name = "random_vertex_identity";
    rep.replicas = reps;
    rep.seed = seed;
    rep.threshold = 3.0 * combined;
    rep.estimates = {{"lhs_uniform_vertex", l.mean},
                     {"rhs_size_biased_sum", r.mean},
                     {"abs_difference", std::abs(l.mean - r.mean)}};
    rep.std_errors = {{"lhs", se_l}, {"rhs", se_r}, {"combined", combined}};
    rep.pass = std::abs(l.mean - r.mean) <= rep.threshold;
    return rep;
}

PoissonExcursion first_poisson_excursion(Rng& rng, double cap) {
    std::exponential_distribution<double> exp1(1.0);
    PoissonExcursion e;
    e.start = exp1(rng);

    // Unit drift, unit jumps: after k arrivals the excursion exhausts at
    // start + k, so the length is the number of arrivals consumed.
    double arrivals = 1.0;
    double prev_time = e.start;
    double prev_value = 1.0;  // reflected value just after an arrival
    double area = 0.0;
    for (;;) {
        if (arrivals > cap) {
            e.capped = true;
            e.length = arrivals;
            e.area = 0.0;
            return e;
        }
        const double close = e.start + arrivals;
        const double next = prev_time + exp1(rng);
        if (next >= close) {
            area += 0.5 * prev_value * prev_value;
            e.length = arrivals;
            e.area = area;
            return e;
        }
        const double before = arrivals - (next - e.start);
        area += 0.5 * (prev_value + before) * (next - prev_time);
        arrivals += 1.0;
        prev_value = arrivals - (next - e.start);
        prev_time = next;
    }
}

CheckReport check_area_bound(double T, std::uint64_t reps, std::uint64_t seed,
                             unsigned workers) {
    if (T < 0.0) throw std::invalid_argument("check_area_bound: T < 0");
    const auto samples = run_replicas(
        derive_seed(seed, 1), reps, workers, [&](std::uint64_t, Rng& rng) -> double {
            const PoissonExcursion e = first_poisson_excursion(rng, T);
            return (!e.capped && e.length <= T) ? e.area : 0.0;
        });
    const MeanCi m = mc_mean_ci(samples, 3.0);

    CheckReport rep;
    rep.name = "poisson_area_bound";
    rep.replicas = reps;
    rep.seed = seed;
    rep.threshold = T;
    rep.estimates = {{"truncated_area_mean", m.mean}, {"bound", T}};
    rep.std_errors = {{"mean", m.half_width / 3.0}};
    rep.pass = m.mean <= T + m.half_width;
    return rep;
}

CheckReport check_surplus_gap_trend(const std::vector<std::uint64_t>& n_list, double t,
                                    std::uint64_t reps, std::uint64_t seed,
                                    unsigned workers) {
    if (n_list.size() < 2)
        throw std::invalid_argument("check_surplus_gap_trend: need at least two n values");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("check_surplus_gap_trend: n_list must be increasing");

    CheckReport rep;
    rep.name = "surplus_gap_trend";
    rep.replicas = reps * n_list.size();
    rep.seed = seed;
    rep.threshold = 3.0;

    struct PerN {
        double gap_mean, gap_se, bound_mean, bound_se;
        bool pathwise_ok;
    };
    std::vector<PerN> results;
    bool pass = true;
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const std::uint64_t n = n_list[idx];
        const core::ScalingParams params(n, t);
        const double qm = params.q() * params.vertex_mass();  // q / n^{2/3}

        struct Draw {
            double gap, bound;
            bool pathwise_ok;
        };
        const auto draws = run_replicas(
            derive_seed(seed, 10 + idx), reps, workers, [&](std::uint64_t, Rng& rng) -> Draw {
                const auto cp = graphsim::sample_coupled_pair(params, rng);
                bool ok = true;
                for (std::size_t i = 0; i < cp.multigraph.size(); ++i)
                    ok = ok && cp.simple[i].surplus <= cp.multigraph[i].surplus;
                const double x1 = cp.multigraph.empty() ? 0.0 : cp.multigraph[0].mass;
                const double gap = cp.multigraph.empty()
                                       ? 0.0
                                       : static_cast<double>(cp.multigraph[0].surplus) -
                                             static_cast<double>(cp.simple[0].surplus);
                const double bound = 1.5 * qm * x1 + 0.5 * qm * qm * x1 * x1;
                return Draw{gap, bound, ok};
            });

        std::vector<double> gaps, bounds;
        gaps.reserve(reps);
        bounds.reserve(reps);
        bool ok = true;
        for (const auto& d : draws) {
            gaps.push_back(d.gap);
            bounds.push_back(d.bound);
            ok = ok && d.pathwise_ok;
        }
        const MeanCi g = mc_mean_ci(gaps, 3.0);
        const MeanCi b = mc_mean_ci(bounds, 3.0);
        results.push_back({g.mean, g.half_width / 3.0, b.mean, b.half_width / 3.0, ok});

        const std::string tag = "n" + std::to_string(n);
        rep.estimates.emplace_back("gap_mean_" + tag, g.mean);
        rep.estimates.emplace_back("bound_" + tag, b.mean);
        rep.std_errors.emplace_back("gap_" + tag, g.half_width / 3.0);
        rep.std_errors.emplace_back("bound_" + tag, b.half_width / 3.0);

        const double combined = std::sqrt(g.half_width * g.half_width / 9.0 +
                                          b.half_width * b.half_width / 9.0);
        pass = pass && ok && g.mean <= b.mean + 3.0 * combined;
    }
    pass = pass && results.back().gap_mean < results.front().gap_mean;
    rep.estimates.emplace_back("trend_decrease",
                               results.front().gap_mean - results.back().gap_mean);
    rep.pass = pass;
    return rep;
}

}  // namespace amc::stats
