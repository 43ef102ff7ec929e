#include "amc/limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace amc::limit {

LimitConfig LimitConfig::defaults(double t) {
    LimitConfig c;
    c.t = t;
    c.horizon = t + 10.0;
    c.step = 1e-4;
    c.min_excursion_length = 10.0 * c.step;
    c.validate();
    return c;
}

void LimitConfig::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("LimitConfig: step must be positive");
    if (!(horizon >= step)) throw std::invalid_argument("LimitConfig: horizon < step");
    if (min_excursion_length < 0.0)
        throw std::invalid_argument("LimitConfig: negative min excursion length");
    if (min_excursion_length > 0.0 && !(step < min_excursion_length))
        throw std::invalid_argument("LimitConfig: step must be below min excursion length");
    if (min_excursion_length > horizon)
        throw std::invalid_argument("LimitConfig: min excursion length exceeds horizon");
}

std::size_t LimitConfig::grid_steps() const {
    return static_cast<std::size_t>(std::llround(horizon / step));
}

GridPath sample_wt(const LimitConfig& config, Rng& rng) {
    config.validate();
    const std::size_t m = config.grid_steps();
    std::normal_distribution<double> gauss(0.0, std::sqrt(config.step));
    GridPath path;
    path.step = config.step;
    path.values.resize(m + 1);
    path.values[0] = 0.0;
    double w = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        w += gauss(rng);
        const double s = static_cast<double>(k) * config.step;
        path.values[k] = w - 0.5 * s * s + config.t * s;
    }
    return path;
}

GridPath reflect_grid(const GridPath& path) {
    GridPath out;
    out.step = path.step;
    out.values.resize(path.values.size());
    double running_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        running_min = std::min(running_min, path.values[k]);
        out.values[k] = path.values[k] - running_min;
    }
    return out;
}

namespace {

// Incremental accumulator for one positive run.  The area is the trapezoid
// integral over [first - step/2, last + step/2] with zero endpoints:
//   step * (v_first/4 + v_last/4 + sum of interior trapezoids).
struct RunState {
    bool open = false;
    std::size_t count = 0;
    std::size_t first_index = 0;
    double first_value = 0.0;
    double last_value = 0.0;
    double interior = 0.0;  // sum of (v_m + v_{m+1})/2 over in-run pairs

    void push(std::size_t index, double value) {
        if (!open) {
            open = true;
            count = 1;
            first_index = index;
            first_value = value;
            last_value = value;
            interior = 0.0;
        } else {
            interior += 0.5 * (last_value + value);
            last_value = value;
            ++count;
        }
    }

    ExcursionRecord close(double step) {
        ExcursionRecord rec;
        rec.start = std::max(0.0, (static_cast<double>(first_index) - 0.5) * step);
        rec.length = static_cast<double>(count) * step;
        rec.area = step * (0.25 * first_value + 0.25 * last_value + interior);
        open = false;
        return rec;
    }
};

}  // namespace

std::vector<ExcursionRecord> grid_excursions(const GridPath& b, double min_len) {
    for (double v : b.values)
        if (v < 0.0) throw std::invalid_argument("grid_excursions: path must be nonnegative");
    std::vector<ExcursionRecord> out;
    RunState run;
    for (std::size_t k = 0; k < b.values.size(); ++k) {
        if (b.values[k] > 0.0) {
            run.push(k, b.values[k]);
        } else if (run.open) {
            ExcursionRecord rec = run.close(b.step);
            if (rec.length >= min_len) out.push_back(rec);
        }
    }
    if (run.open) {
        ExcursionRecord rec = run.close(b.step);
        if (rec.length >= min_len) out.push_back(rec);
    }
    return sbfw::order_excursions(std::move(out));
}

AugmentedPartition sample_limit_state(const LimitConfig& config, Rng& rng) {
    config.validate();
    const std::size_t m = config.grid_steps();
    std::normal_distribution<double> gauss(0.0, std::sqrt(config.step));

    // Streamed composition of sample_wt, reflect_grid and grid_excursions;
    // draws the same variates in the same order as the materialized pipeline.
    std::vector<ExcursionRecord> excs;
    RunState run;
    double w = 0.0;
    double running_min = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        const double s = static_cast<double>(k) * config.step;
        w += gauss(rng);
        const double value = w - 0.5 * s * s + config.t * s;
        running_min = std::min(running_min, value);
        const double b = value - running_min;
        if (b > 0.0) {
            run.push(k, b);
        } else if (run.open) {
            ExcursionRecord rec = run.close(config.step);
            if (rec.length >= config.min_excursion_length) excs.push_back(rec);
        }
    }
    if (run.open) {
        ExcursionRecord rec = run.close(config.step);
        if (rec.length >= config.min_excursion_length) excs.push_back(rec);
    }
    excs = sbfw::mark_excursions(sbfw::order_excursions(std::move(excs)), rng);
    return sbfw::to_augmented(excs);
}

void write_path_csv(std::ostream& os, const GridPath& w, const GridPath& b) {
    os << "s,w,b\n";
    char buf[96];
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        const double s = static_cast<double>(k) * w.step;
        const double bv = k < b.values.size() ? b.values[k] : 0.0;
        std::snprintf(buf, sizeof(buf), "%.10g,%.17g,%.17g\n", s, w.values[k], bv);
        os << buf;
    }
}

}  // namespace amc::limit
