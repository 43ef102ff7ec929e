// Domain types for mass/surplus partitions, the two metrics on them, and the
// critical-window scaling parameters of the equal-mass model.
//
// A MassPartition is a finite, nonincreasing vector of positive component
// masses (an element of the square-summable nonincreasing cone, implicitly
// padded with zeros).  An AugmentedPartition pairs each mass with its surplus
// edge count, ordered mass-descending with ties broken surplus-descending.
#pragma once

#include <cstdint>
#include <vector>

namespace amc::core {

class MassPartition {
  public:
    MassPartition() = default;
    // Requires masses nonincreasing and strictly positive; throws otherwise.
    explicit MassPartition(std::vector<double> masses);
    // Sorts descending and drops zeros; negative entries throw.
    static MassPartition from_unsorted(std::vector<double> masses);

    const std::vector<double>& masses() const { return masses_; }
    std::size_t size() const { return masses_.size(); }
    bool empty() const { return masses_.empty(); }

  private:
    std::vector<double> masses_;
};

struct MassSurplus {
    double mass = 0.0;
    std::int64_t surplus = 0;
    friend bool operator==(const MassSurplus&, const MassSurplus&) = default;
};

class AugmentedPartition {
  public:
    AugmentedPartition() = default;

    const std::vector<MassSurplus>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    MassPartition masses() const;
    // Sum of surplus counts over all components.
    std::uint64_t total_surplus() const;

    friend AugmentedPartition canonicalize(std::vector<MassSurplus> raw);
    friend bool operator==(const AugmentedPartition&, const AugmentedPartition&) = default;

  private:
    explicit AugmentedPartition(std::vector<MassSurplus> pairs) : pairs_(std::move(pairs)) {}
    std::vector<MassSurplus> pairs_;
};

// Canonical form: zero-mass pairs dropped; sorted by mass descending, ties by
// surplus descending; pairs equal in both keys keep their input order.
// Negative mass or surplus throws std::invalid_argument.
AugmentedPartition canonicalize(std::vector<MassSurplus> raw);

// sqrt(sum (a_i - b_i)^2), the shorter vector zero-padded.
double l2_distance(const MassPartition& a, const MassPartition& b);

// l2 distance between the mass vectors plus the l1 distance between the
// mass-weighted surplus vectors, zero-padded.
double du_distance(const AugmentedPartition& a, const AugmentedPartition& b);

// Edge-inclusion probability of the discrete-time graph at continuous time t,
// p = 1 - exp(-t).  Requires t >= 0.
double p_of_time(double t);

// Mass n^{-2/3} of one vertex in the equal-mass model with n vertices.
// Identical to ScalingParams(n, t).vertex_mass() for every t.
double vertex_mass_of(std::uint64_t n);

// Scaling parameters of the equal-mass critical-window model with n vertices
// of mass n^{-2/3}, observed at rescaled time q = n^{1/3} + t.
//
// sigma_r is the r-th power sum of the initial mass vector: sigma1 = n^{1/3},
// sigma2 = n^{-1/3}, sigma3 = n^{-1}.  The stored values satisfy
// sigma1*sigma2 == 1 and sigma3 == sigma2^3 exactly (sigma2 is adjusted by at
// most a few ulps from 1/cbrt(n) to make the product exact).
class ScalingParams {
  public:
    // Throws if n == 0 or q = n^{1/3} + t <= 0.
    ScalingParams(std::uint64_t n, double t);
    // Same model addressed by the rescaled time q > 0 directly.
    static ScalingParams from_q(std::uint64_t n, double q);

    std::uint64_t n() const { return n_; }
    double t() const { return t_; }
    double q() const { return q_; }
    double sigma1() const { return sigma1_; }
    double sigma2() const { return sigma2_; }
    double sigma3() const { return sigma2_ * sigma2_ * sigma2_; }
    double vertex_mass() const { return sigma2_ * sigma2_; }  // n^{-2/3}

  private:
    ScalingParams() = default;
    std::uint64_t n_ = 0;
    double t_ = 0.0;
    double q_ = 0.0;
    double sigma1_ = 0.0;
    double sigma2_ = 0.0;
};

}  // namespace amc::core
