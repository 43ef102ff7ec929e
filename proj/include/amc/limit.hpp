// Grid-discretized sampler of the limiting reflected path: Brownian motion
// with parabolic drift, reflected above its running minimum, decomposed into
// excursions with lengths, areas and Poisson marks.
#pragma once

#include <iosfwd>
#include <vector>

#include "amc/core.hpp"
#include "amc/rng.hpp"
#include "amc/sbfw.hpp"

namespace amc::limit {

using core::AugmentedPartition;
using sbfw::ExcursionRecord;

struct GridPath {
    double step = 0.0;
    std::vector<double> values;  // on {0, step, 2 step, ..., horizon}
    double horizon() const { return step * static_cast<double>(values.size() - 1); }
};

struct LimitConfig {
    double t = 0.0;
    double horizon = 10.0;
    double step = 1e-4;
    double min_excursion_length = 1e-3;  // runs shorter than this are grid noise

    // horizon = t + 10; step 1e-4; min length 10 * step.
    static LimitConfig defaults(double t);
    void validate() const;  // throws std::invalid_argument
    std::size_t grid_steps() const;  // number of steps, horizon / step rounded
};

// W(s) - s^2/2 + t s on the grid, W built from independent Gaussian
// increments of variance step.  values[0] = 0.
GridPath sample_wt(const LimitConfig& config, Rng& rng);

// Subtracts the running minimum; nonnegative output.
GridPath reflect_grid(const GridPath& path);

// Maximal runs of consecutive strictly positive grid values.  A run of k
// points has length k*step exactly and is integrated as if the path rose from
// zero half a cell before the first positive point and returned to zero half
// a cell after the last one (trapezoids with forced zero endpoints).  Runs
// shorter than min_len are discarded.  Ordered by length descending.
std::vector<ExcursionRecord> grid_excursions(const GridPath& b, double min_len);

// One approximate draw of the limiting (mass, surplus) state: sampled path,
// reflection, excursion extraction and Poisson marking, composed in a single
// streaming pass (memory independent of horizon/step).
AugmentedPartition sample_limit_state(const LimitConfig& config, Rng& rng);

// Writes "s,w,b" rows for plotting; header included.
void write_path_csv(std::ostream& os, const GridPath& w, const GridPath& b);

}  // namespace amc::limit
