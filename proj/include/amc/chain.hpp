// Exact Gillespie simulation of the augmented multiplicative coalescent on
// finite states: blocks of masses x_i and surplus counters n_i, where blocks
// i != j merge at rate x_i x_j and block i gains one surplus at rate x_i^2/2.
//
// The total jump rate is (sum_i x_i)^2 / 2, and an ordered pair (i, j) drawn
// by two independent mass-proportional picks reproduces both rates exactly:
// i != j triggers the merge, i == j the surplus jump.
#pragma once

#include <cstdint>
#include <vector>

#include "amc/core.hpp"
#include "amc/rng.hpp"

namespace amc::chain {

using core::AugmentedPartition;
using core::ScalingParams;

struct ChainState {
    AugmentedPartition blocks;
    double clock = 0.0;
};

// The n-block state of the equal-mass model: n blocks of mass n^{-2/3},
// no surplus, clock zero.
ChainState initial_state(const ScalingParams& params);

struct StepResult {
    ChainState state;
    double holding_time = 0.0;
};

// One jump from the given state.  Throws on an empty state.
StepResult step(const ChainState& state, Rng& rng);

// Runs the jump chain for `duration` time units and returns the state at
// that time (the last state whose jump time does not exceed it).
ChainState run(const ChainState& initial, double duration, Rng& rng);

}  // namespace amc::chain
