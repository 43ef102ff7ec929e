#include <doctest.h>

#include <cmath>
#include <vector>

#include "amc/limit.hpp"
#include "amc/stats.hpp"

using namespace amc;
using namespace amc::limit;

namespace {

GridPath grid(double step, std::vector<double> values) {
    GridPath p;
    p.step = step;
    p.values = std::move(values);
    return p;
}

LimitConfig coarse_config(double t, double horizon, double step, double eps) {
    LimitConfig c;
    c.t = t;
    c.horizon = horizon;
    c.step = step;
    c.min_excursion_length = eps;
    return c;
}

}  // namespace

TEST_CASE("LimitConfig validation") {
    CHECK_NOTHROW(LimitConfig::defaults(0.0).validate());
    CHECK(LimitConfig::defaults(1.5).horizon == doctest::Approx(11.5));
    CHECK_THROWS_AS(coarse_config(0, 1, 0.0, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(coarse_config(0, 1, 0.2, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(coarse_config(0, 1, 0.01, 2.0).validate(), std::invalid_argument);
}

TEST_CASE("sample_wt starts at zero and has the parabolic mean and Brownian variance") {
    const auto config = coarse_config(0.0, 2.0, 0.05, 0.0);
    Rng rng = make_rng(31);
    const int reps = 100000;
    std::vector<double> at_one(reps), at_two(reps);
    const std::size_t k1 = 20, k2 = 40;  // s = 1 and s = 2
    for (int i = 0; i < reps; ++i) {
        const auto w = sample_wt(config, rng);
        CHECK(w.values[0] == 0.0);
        at_one[i] = w.values[k1];
        at_two[i] = w.values[k2];
    }
    // E[W^0(1)] = -1/2, sd = 1
    const auto m1 = stats::mc_mean_ci(at_one, 3.0);
    CHECK(std::abs(m1.mean - (-0.5)) <= m1.half_width);
    // Var[W^0(2)] = 2
    const auto v2 = stats::variance_with_se(at_two);
    CHECK(std::abs(v2.variance - 2.0) <= 3.0 * v2.std_error);
}

TEST_CASE("reflect_grid running-minimum subtraction") {
    // nonincreasing path reflects to zero
    const auto zero = reflect_grid(grid(1.0, {0.0, -1.0, -1.5, -2.0}));
    for (double v : zero.values) CHECK(v == 0.0);

    // nondecreasing path from 0 is unchanged
    const auto up = reflect_grid(grid(1.0, {0.0, 0.5, 0.5, 2.0}));
    CHECK(up.values == std::vector<double>{0.0, 0.5, 0.5, 2.0});

    const auto mixed = reflect_grid(grid(1.0, {0.0, 1.0, -1.0, 0.0}));
    CHECK(mixed.values == std::vector<double>{0.0, 1.0, 0.0, 1.0});

    // output is nonnegative and vanishes at running minima
    Rng rng = make_rng(32);
    std::normal_distribution<double> gauss(0.0, 1.0);
    GridPath path = grid(0.1, std::vector<double>(200, 0.0));
    for (std::size_t k = 1; k < path.values.size(); ++k)
        path.values[k] = path.values[k - 1] + gauss(rng);
    const auto b = reflect_grid(path);
    double running = path.values[0];
    for (std::size_t k = 0; k < b.values.size(); ++k) {
        running = std::min(running, path.values[k]);
        CHECK(b.values[k] >= 0.0);
        if (path.values[k] == running) CHECK(b.values[k] == 0.0);
    }
}

TEST_CASE("grid_excursions: runs, lengths, areas") {
    const double ds = 0.25, h = 1.3;
    CHECK(grid_excursions(grid(ds, {0, 0, 0, 0}), 0.0).empty());

    const auto single = grid_excursions(grid(ds, {0, h, 0}), ds);
    REQUIRE(single.size() == 1);
    CHECK(single[0].length == ds);
    CHECK(single[0].area == doctest::Approx(ds * h / 2.0).epsilon(1e-14));

    // runs of 3 and 5 points, ordered longest first
    std::vector<double> v = {0, 1, 1, 1, 0, 0, 2, 2, 2, 2, 2, 0};
    const auto runs = grid_excursions(grid(ds, v), 0.0);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].length == doctest::Approx(5 * ds));
    CHECK(runs[1].length == doctest::Approx(3 * ds));

    CHECK_THROWS_AS(grid_excursions(grid(ds, {0.0, -0.5}), 0.0), std::invalid_argument);
}

TEST_CASE("grid_excursions: filtering is monotone in the cutoff") {
    Rng rng = make_rng(33);
    const auto config = coarse_config(0.0, 5.0, 0.01, 0.0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto b = reflect_grid(sample_wt(config, rng));
        const auto all = grid_excursions(b, 0.0);
        const auto some = grid_excursions(b, 0.05);
        const auto fewer = grid_excursions(b, 0.2);
        CHECK(some.size() <= all.size());
        CHECK(fewer.size() <= some.size());
        for (const auto& e : fewer) CHECK(e.length >= 0.2);
        // every kept excursion appears in the less filtered list
        for (const auto& e : fewer) {
            bool found = false;
            for (const auto& f : some)
                found = found || (f.start == e.start && f.length == e.length);
            CHECK(found);
        }
    }
}

TEST_CASE("sample_limit_state produces canonical strictly positive states") {
    const auto config = coarse_config(0.0, 4.0, 0.01, 0.1);
    Rng rng = make_rng(34);
    for (int rep = 0; rep < 50; ++rep) {
        const auto state = sample_limit_state(config, rng);
        for (std::size_t i = 0; i < state.size(); ++i) {
            CHECK(state.pairs()[i].mass > 0.0);
            if (i > 0) CHECK(state.pairs()[i].mass <= state.pairs()[i - 1].mass);
        }
    }
}

TEST_CASE("sample_limit_state with cutoff at the horizon is empty") {
    // strong downward drift: the path returns to its minimum quickly, so no
    // run can span the whole grid
    const auto config = coarse_config(-1.0, 2.0, 0.01, 2.0);
    Rng rng = make_rng(35);
    for (int rep = 0; rep < 20; ++rep) CHECK(sample_limit_state(config, rng).empty());
}

TEST_CASE("halving the step moves the largest-length mean by less than the MC error") {
    auto mean_largest = [&](double step, std::uint64_t salt) {
        const auto config = coarse_config(0.0, 6.0, step, 0.05);
        const auto v = run_replicas(derive_seed(82, salt), 2000, 0,
                                    [&](std::uint64_t, Rng& rng) -> double {
                                        const auto s = sample_limit_state(config, rng);
                                        return s.empty() ? 0.0 : s.pairs()[0].mass;
                                    });
        return stats::mc_mean_ci(v, 3.0);
    };
    const auto coarse = mean_largest(5e-3, 1);
    const auto fine = mean_largest(2.5e-3, 2);
    const double se = std::sqrt(coarse.half_width * coarse.half_width +
                                fine.half_width * fine.half_width) /
                      3.0;
    CHECK(std::abs(coarse.mean - fine.mean) < se);
}

TEST_CASE("streaming state equals the materialized pipeline") {
    const auto config = coarse_config(0.5, 3.0, 0.02, 0.1);
    for (std::uint64_t seed : {41ull, 42ull, 43ull}) {
        Rng rng_stream = make_rng(seed);
        const auto streamed = sample_limit_state(config, rng_stream);

        Rng rng_mat = make_rng(seed);
        const auto w = sample_wt(config, rng_mat);
        const auto b = reflect_grid(w);
        auto excs = grid_excursions(b, config.min_excursion_length);
        excs = sbfw::mark_excursions(std::move(excs), rng_mat);
        const auto materialized = sbfw::to_augmented(excs);

        CHECK(streamed == materialized);
    }
}
