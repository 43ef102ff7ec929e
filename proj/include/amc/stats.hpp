// Statistical machinery for cross-validation: empirical two-sample
// Kolmogorov-Smirnov statistic, Monte Carlo means with confidence intervals,
// and the identity/bound checkers used by the validation suite.
//
// All checkers are deterministic functions of (parameters, seed): rerunning
// with the same seed reproduces the CheckReport bit for bit, independent of
// the worker count.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amc/core.hpp"
#include "amc/rng.hpp"

namespace amc::stats {

struct SampleSet {
    std::vector<double> values;
    std::string label;
};

struct KsResult {
    double statistic = 0.0;      // sup |F_a - F_b|, exact under ties
    double critical = 0.0;       // alpha = 0.01 asymptotic critical value
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    bool below_critical() const { return statistic <= critical; }
};

// Asymptotic two-sample critical value c * sqrt((m+n)/(m n)); the default
// constant 1.628 corresponds to alpha = 0.01.
inline constexpr double kKsAlpha01Constant = 1.628;

KsResult ks_two_sample(const SampleSet& a, const SampleSet& b,
                       double critical_constant = kKsAlpha01Constant);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;  // z * sd / sqrt(count)
    double stddev = 0.0;
    std::size_t count = 0;
};

// Sample mean with a z-sigma half width; requires count >= 2.
MeanCi mc_mean_ci(std::span<const double> samples, double z = 3.0);

struct VarianceEstimate {
    double variance = 0.0;
    double std_error = 0.0;  // moment-based standard error of the variance
};

VarianceEstimate variance_with_se(std::span<const double> samples);

// One validation check: named scalar estimates and standard errors plus the
// pass flag, which is a pure function of the numeric fields.
struct CheckReport {
    std::string name;
    bool pass = false;
    std::uint64_t replicas = 0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
    std::vector<std::pair<std::string, double>> estimates;
    std::vector<std::pair<std::string, double>> std_errors;
};

// Size-biased component identity: E[f(C(V))] with V a uniform vertex equals
// n^{-1/3} E[sum_i mass_i f(C_i)], checked with f = surplus * 1{mass < delta}
// on independent multigraph replica sets for the two sides.  Passes when the
// estimates agree within 3 combined standard errors.
CheckReport check_random_vertex_identity(std::uint64_t n, double t, double delta,
                                      std::uint64_t reps, std::uint64_t seed,
                                      unsigned workers = 0);

// First-excursion area bound for the compensated unit-rate Poisson path:
// E[integral over first excursion * 1{length <= T}] <= T.
CheckReport check_area_bound(double T, std::uint64_t reps, std::uint64_t seed,
                             unsigned workers = 0);

// Simulates the first excursion of S_u - u above its past infimum.  Work is
// capped: once the length exceeds `cap` the area is irrelevant (the indicator
// in the bound is zero) and simulation stops.
struct PoissonExcursion {
    double start = 0.0;   // first arrival time
    double length = 0.0;  // number of arrivals consumed (integer-valued)
    double area = 0.0;    // exact piecewise-linear integral, valid iff length <= cap
    bool capped = false;
};

PoissonExcursion first_poisson_excursion(Rng& rng, double cap);

// Surplus gap between the multigraph and its simple projection: checks that
// the gap is nonnegative pathwise, that the mean gap of the largest component
// decreases from the smallest to the largest n, and that each mean is below
// (3/2)(q/n^{2/3}) E[X1] + (q^2/(2 n^{4/3})) E[X1^2] + 3 SE.
CheckReport check_surplus_gap_trend(const std::vector<std::uint64_t>& n_list, double t,
                                    std::uint64_t reps, std::uint64_t seed,
                                    unsigned workers = 0);

}  // namespace amc::stats
