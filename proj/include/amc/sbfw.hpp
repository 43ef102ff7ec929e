// The breadth-first walk at a fixed rescaled time: a negative-drift path with
// positive jumps, its exact excursion decomposition above the past infimum,
// and Poisson surplus marking of the excursion areas.
//
// Excursion lengths of the reflected walk are the component masses of the
// coupled random graph at the same time, and conditionally on the walk each
// excursion's surplus count is Poisson with mean the enclosed area,
// independently across excursions.
#pragma once

#include <cstdint>
#include <vector>

#include "amc/core.hpp"
#include "amc/rng.hpp"

namespace amc::sbfw {

using core::AugmentedPartition;
using core::ScalingParams;

// Drift-plus-positive-jumps cadlag path, represented by its jump times and
// sizes plus the drift constant; never by a sampled trajectory.
class JumpWalk {
  public:
    // All jumps share one size; mass_per_jump = jump_size / |drift| is stored
    // exactly, so excursion lengths are exact integer multiples of it.
    static JumpWalk uniform(std::vector<double> jump_times, double drift, double mass_per_jump);
    // Per-jump sizes.
    static JumpWalk with_sizes(std::vector<double> jump_times, std::vector<double> jump_sizes,
                               double drift);

    std::size_t jump_count() const { return times_.size(); }
    const std::vector<double>& jump_times() const { return times_; }
    double drift() const { return drift_; }
    bool is_uniform() const { return uniform_; }
    double mass_per_jump() const { return mass_; }      // uniform walks only
    double jump_size(std::size_t i) const;
    // Mass (jump size divided by |drift|) of the i-th jump.
    double jump_mass(std::size_t i) const;

    // Walk value at time s: sum of jump sizes with time <= s, plus drift*s.
    double value_at(double s) const;

  private:
    JumpWalk() = default;
    std::vector<double> times_;
    std::vector<double> sizes_;  // empty when uniform
    double drift_ = -1.0;
    double mass_ = 0.0;
    bool uniform_ = true;
};

struct ExcursionRecord {
    double start = 0.0;
    double length = 0.0;
    double area = 0.0;          // integral of the reflected walk over the excursion
    std::uint64_t marks = 0;    // filled by mark_excursions
    double end() const { return start + length; }
};

// The walk of the equal-mass model at time q = params.q(): n jumps of mass
// n^{-2/3} at the order statistics of n exponentials (mean n^{2/3}) divided
// by q, drift -q.  Ties among jump times (probability zero) are resampled.
JumpWalk sample_walk(const ScalingParams& params, Rng& rng);

// Exact event-driven excursion decomposition of the walk reflected above its
// past infimum.  Between jumps the reflected value decreases at rate |drift|;
// an excursion opens at any jump landing on zero and closes at the
// closed-form exhaustion time, with areas accumulated as exact trapezoids
// between consecutive events.  Chronological order.
std::vector<ExcursionRecord> decompose(const JumpWalk& walk);

// Length descending; equal lengths keep the earlier start first.
std::vector<ExcursionRecord> order_excursions(std::vector<ExcursionRecord> excs);

// Fills marks[i] ~ Poisson(area[i]), independent across excursions.
std::vector<ExcursionRecord> mark_excursions(std::vector<ExcursionRecord> excs, Rng& rng);

// (length, marks) pairs in canonical order.
AugmentedPartition to_augmented(const std::vector<ExcursionRecord>& excs);

struct FirstExcursionStats {
    double length = 0.0;  // T1, the length of the chronologically first excursion
    double area = 0.0;
    bool below_delta = false;  // 1{T1 < delta}
};

FirstExcursionStats first_excursion_stats(const JumpWalk& walk, double delta);

}  // namespace amc::sbfw
