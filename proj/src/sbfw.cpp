#include "amc/sbfw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amc::sbfw {

namespace {

void validate_times(const std::vector<double>& times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0)
            throw std::invalid_argument("JumpWalk: jump times must be finite and nonnegative");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("JumpWalk: jump times must be strictly increasing");
    }
}

}  // namespace

JumpWalk JumpWalk::uniform(std::vector<double> jump_times, double drift, double mass_per_jump) {
    if (!(drift < 0.0)) throw std::invalid_argument("JumpWalk: drift must be negative");
    if (!(mass_per_jump > 0.0)) throw std::invalid_argument("JumpWalk: mass must be positive");
    validate_times(jump_times);
    JumpWalk w;
    w.times_ = std::move(jump_times);
    w.drift_ = drift;
    w.mass_ = mass_per_jump;
    w.uniform_ = true;
    return w;
}

JumpWalk JumpWalk::with_sizes(std::vector<double> jump_times, std::vector<double> jump_sizes,
                              double drift) {
    if (!(drift < 0.0)) throw std::invalid_argument("JumpWalk: drift must be negative");
    if (jump_times.size() != jump_sizes.size())
        throw std::invalid_argument("JumpWalk: times and sizes must have equal length");
    for (double h : jump_sizes)
        if (!(h > 0.0)) throw std::invalid_argument("JumpWalk: jump sizes must be positive");
    validate_times(jump_times);
    JumpWalk w;
    w.times_ = std::move(jump_times);
    w.sizes_ = std::move(jump_sizes);
    w.drift_ = drift;
    w.uniform_ = false;
    return w;
}

double JumpWalk::jump_size(std::size_t i) const {
    return uniform_ ? -drift_ * mass_ : sizes_[i];
}

double JumpWalk::jump_mass(std::size_t i) const {
    return uniform_ ? mass_ : sizes_[i] / -drift_;
}

double JumpWalk::value_at(double s) const {
    double v = drift_ * s;
    for (std::size_t i = 0; i < times_.size() && times_[i] <= s; ++i) v += jump_size(i);
    return v;
}

JumpWalk sample_walk(const ScalingParams& params, Rng& rng) {
    const std::uint64_t n = params.n();
    const double q = params.q();
    // Exponentials with mean n^{2/3}, i.e. rate n^{-2/3} = vertex mass.
    std::exponential_distribution<double> exp_draw(params.vertex_mass());
    std::vector<double> times(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (auto& t : times) t = exp_draw(rng) / q;
        std::sort(times.begin(), times.end());
        const bool distinct =
            std::adjacent_find(times.begin(), times.end()) == times.end();
        if (distinct) return JumpWalk::uniform(std::move(times), -q, params.vertex_mass());
    }
    throw std::runtime_error("sample_walk: could not draw distinct jump times");
}

// The sweep works in the drift-normalized domain where the walk has unit
// negative drift and the i-th jump has height jump_mass(i).  Lengths and
// intervals are identical for every drift, and the reflected value is |drift|
// times the normalized one, so areas are scaled once at the end.  For uniform
// walks the consumed mass is recomputed as (jump count) * mass_per_jump at
// every event, which keeps excursion lengths exact multiples of the jump mass.
std::vector<ExcursionRecord> decompose(const JumpWalk& walk) {
    if (walk.jump_count() == 0)
        throw std::invalid_argument("decompose: walk must have at least one jump");
    const auto& t = walk.jump_times();
    const std::size_t n = t.size();
    const double scale = -walk.drift();

    std::vector<ExcursionRecord> out;
    std::size_t i = 0;
    while (i < n) {
        const double a = t[i];
        std::uint64_t jumps = 1;
        double mass = walk.jump_mass(i);
        double close = a + mass;
        double prev_time = a;
        double prev_value = mass;  // normalized reflected value just after the jump
        double area = 0.0;

        std::size_t j = i + 1;
        while (j < n && t[j] < close) {
            const double before = mass - (t[j] - a);
            area += 0.5 * (prev_value + before) * (t[j] - prev_time);
            ++jumps;
            mass = walk.is_uniform() ? static_cast<double>(jumps) * walk.mass_per_jump()
                                     : mass + walk.jump_mass(j);
            prev_value = mass - (t[j] - a);
            prev_time = t[j];
            close = a + mass;
            ++j;
        }
        area += 0.5 * prev_value * prev_value;  // final wedge down to zero

        ExcursionRecord rec;
        rec.start = a;
        rec.length = mass;
        rec.area = area * scale;
        out.push_back(rec);
        i = j;
    }
    return out;
}

std::vector<ExcursionRecord> order_excursions(std::vector<ExcursionRecord> excs) {
    std::stable_sort(excs.begin(), excs.end(),
                     [](const ExcursionRecord& a, const ExcursionRecord& b) {
                         if (a.length != b.length) return a.length > b.length;
                         return a.start < b.start;
                     });
    return excs;
}

std::vector<ExcursionRecord> mark_excursions(std::vector<ExcursionRecord> excs, Rng& rng) {
    for (auto& e : excs) {
        if (e.area > 0.0) {
            std::poisson_distribution<std::uint64_t> d(e.area);
            e.marks = d(rng);
        } else {
            e.marks = 0;
        }
    }
    return excs;
}

AugmentedPartition to_augmented(const std::vector<ExcursionRecord>& excs) {
    std::vector<core::MassSurplus> raw;
    raw.reserve(excs.size());
    for (const auto& e : excs)
        raw.push_back({e.length, static_cast<std::int64_t>(e.marks)});
    return core::canonicalize(std::move(raw));
}

FirstExcursionStats first_excursion_stats(const JumpWalk& walk, double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("first_excursion_stats: delta < 0");
    // Only the chronologically first excursion is needed; run the same sweep
    // and stop after the first record.
    const auto& t = walk.jump_times();
    if (t.empty())
        throw std::invalid_argument("first_excursion_stats: walk must have at least one jump");
    const double scale = -walk.drift();
    const double a = t[0];
    std::uint64_t jumps = 1;
    double mass = walk.jump_mass(0);
    double close = a + mass;
    double prev_time = a;
    double prev_value = mass;
    double area = 0.0;
    for (std::size_t j = 1; j < t.size() && t[j] < close; ++j) {
        const double before = mass - (t[j] - a);
        area += 0.5 * (prev_value + before) * (t[j] - prev_time);
        ++jumps;
        mass = walk.is_uniform() ? static_cast<double>(jumps) * walk.mass_per_jump()
                                 : mass + walk.jump_mass(j);
        prev_value = mass - (t[j] - a);
        prev_time = t[j];
        close = a + mass;
    }
    area += 0.5 * prev_value * prev_value;

    FirstExcursionStats s;
    s.length = mass;
    s.area = area * scale;
    s.below_delta = s.length < delta;
    return s;
}

}  // namespace amc::sbfw
