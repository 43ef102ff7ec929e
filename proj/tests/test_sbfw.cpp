#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "amc/sbfw.hpp"
#include "amc/stats.hpp"

using namespace amc;
using namespace amc::sbfw;
using core::ScalingParams;

namespace {

// Independent quadrature oracle: evaluates the reflected walk on a fine grid
// directly from the walk definition and integrates it over [lo, hi] with the
// trapezoid rule.  Never uses the event sweep.
double oracle_area(const JumpWalk& walk, double lo, double hi, double dt = 1e-6) {
    const auto& t = walk.jump_times();
    std::vector<double> prefix(t.size() + 1, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) prefix[i + 1] = prefix[i] + walk.jump_size(i);
    auto value = [&](double s) {
        const std::size_t k = static_cast<std::size_t>(
            std::upper_bound(t.begin(), t.end(), s) - t.begin());
        return prefix[k] + walk.drift() * s;
    };
    double running_min = 0.0;
    double area = 0.0;
    double prev_b = 0.0;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(hi / dt));
    for (std::size_t k = 1; k <= steps; ++k) {
        const double s = std::min(hi, static_cast<double>(k) * dt);
        running_min = std::min(running_min, value(s));
        const double b = value(s) - running_min;
        if (s > lo) area += 0.5 * (prev_b + b) * std::min(dt, s - lo);
        prev_b = b;
    }
    return area;
}

// Reflected value inside an excursion, straight from the definition.
double reflected_at(const JumpWalk& walk, const ExcursionRecord& exc, double s) {
    const auto& t = walk.jump_times();
    double jumps = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] >= exc.start && t[i] <= s) jumps += walk.jump_mass(i);
    return -walk.drift() * (jumps - (s - exc.start));
}

}  // namespace

TEST_CASE("decompose: two separate excursions, hand values and quadrature oracle") {
    const auto walk = JumpWalk::with_sizes({0.1, 0.6}, {0.2, 0.3}, -1.0);
    const auto excs = decompose(walk);
    REQUIRE(excs.size() == 2);
    CHECK(excs[0].start == 0.1);
    CHECK(excs[0].length == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(excs[0].area == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(excs[1].start == 0.6);
    CHECK(excs[1].length == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(excs[1].area == doctest::Approx(0.045).epsilon(1e-14));

    CHECK(oracle_area(walk, 0.1, 0.3) == doctest::Approx(0.02).epsilon(1e-3));
    CHECK(oracle_area(walk, 0.6, 0.9) == doctest::Approx(0.045).epsilon(1e-3));
}

TEST_CASE("decompose: overlapping jumps merge into one excursion") {
    const auto walk = JumpWalk::with_sizes({0.2, 0.5}, {0.4, 0.4}, -1.0);
    const auto excs = decompose(walk);
    REQUIRE(excs.size() == 1);
    CHECK(excs[0].start == 0.2);
    CHECK(excs[0].length == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(excs[0].end() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(excs[0].area == doctest::Approx(0.2).epsilon(1e-14));  // 0.075 + 0.125

    CHECK(oracle_area(walk, 0.2, 1.0) == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("decompose: single jump is a right triangle") {
    const double h = 0.37;
    const auto walk = JumpWalk::uniform({1.25}, -1.0, h);
    const auto excs = decompose(walk);
    REQUIRE(excs.size() == 1);
    CHECK(excs[0].start == 1.25);
    CHECK(excs[0].length == h);
    CHECK(excs[0].area == 0.5 * h * h);
}

TEST_CASE("JumpWalk validation") {
    CHECK_THROWS_AS(JumpWalk::uniform({0.3, 0.3}, -1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(JumpWalk::uniform({0.3}, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(JumpWalk::with_sizes({0.3}, {-0.1}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(decompose(JumpWalk::uniform({}, -1.0, 0.1)), std::invalid_argument);
}

TEST_CASE("sample_walk: n = 1 structure") {
    const ScalingParams params(1, 0.5);
    Rng rng = make_rng(21);
    const auto walk = sample_walk(params, rng);
    CHECK(walk.jump_count() == 1);
    CHECK(walk.drift() == -params.q());
    CHECK(walk.mass_per_jump() == params.vertex_mass());
    CHECK(walk.jump_times()[0] > 0.0);

    // value reconstruction: pure drift before the jump, shifted after
    const double tau = walk.jump_times()[0];
    CHECK(walk.value_at(0.5 * tau) == -params.q() * 0.5 * tau);
    CHECK(walk.value_at(tau) == doctest::Approx(walk.jump_size(0) - params.q() * tau));
}

TEST_CASE("sample_walk: times sorted, first jump mean n^{-1/3}") {
    const ScalingParams params(100, 0.0);
    Rng rng = make_rng(22);
    const int reps = 100000;
    double sum_min = 0.0;
    for (int i = 0; i < reps; ++i) {
        const auto walk = sample_walk(params, rng);
        const auto& t = walk.jump_times();
        CHECK(std::is_sorted(t.begin(), t.end()));
        sum_min += t[0] * params.q();  // xi_(1)
    }
    const double mean = sum_min / reps;
    const double expected = params.sigma2();  // n^{2/3} / n
    const double se = expected / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(mean - expected) <= 3.0 * se);
}

TEST_CASE("excursion lengths tile sigma1 and are exact jump-count multiples") {
    const ScalingParams params(1000, 0.3);
    Rng rng = make_rng(23);
    for (int rep = 0; rep < 50; ++rep) {
        const auto walk = sample_walk(params, rng);
        const auto excs = decompose(walk);
        double total = 0.0;
        for (const auto& e : excs) {
            total += e.length;
            const auto k = std::llround(e.length / params.vertex_mass());
            CHECK(e.length == static_cast<double>(k) * params.vertex_mass());
        }
        CHECK(std::abs(total - params.sigma1()) <= 1e-9 * params.sigma1());
    }
}

TEST_CASE("scale equivariance: unit-drift walk has identical intervals, areas / q") {
    const ScalingParams params(200, -0.5);
    Rng rng = make_rng(24);
    for (int rep = 0; rep < 20; ++rep) {
        const auto scaled = sample_walk(params, rng);
        const auto unscaled =
            JumpWalk::uniform(scaled.jump_times(), -1.0, params.vertex_mass());
        const auto a = decompose(scaled);
        const auto b = decompose(unscaled);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].start == b[i].start);
            CHECK(a[i].length == b[i].length);
            CHECK(a[i].area == params.q() * b[i].area);
        }
    }
}

TEST_CASE("order_excursions sorts by length, ties by start") {
    const auto walk = JumpWalk::with_sizes({0.1, 0.6}, {0.2, 0.3}, -1.0);
    const auto ordered = order_excursions(decompose(walk));
    CHECK(ordered[0].length == doctest::Approx(0.3));
    CHECK(ordered[1].length == doctest::Approx(0.2));

    const auto tied_walk = JumpWalk::uniform({0.1, 1.0}, -1.0, 0.3);
    const auto tied = order_excursions(decompose(tied_walk));
    REQUIRE(tied.size() == 2);
    CHECK(tied[0].length == tied[1].length);
    CHECK(tied[0].start == 0.1);
    CHECK(tied[1].start == 1.0);

    CHECK(order_excursions({}).empty());
}

TEST_CASE("mark_excursions: Poisson moments and zero area") {
    std::vector<ExcursionRecord> fixture = {{0.0, 1.0, 1.0, 0}, {2.0, 1.0, 0.0, 0}};
    Rng rng = make_rng(25);
    const int reps = 100000;
    std::vector<double> marks(reps);
    for (int i = 0; i < reps; ++i) {
        const auto marked = mark_excursions(fixture, rng);
        marks[i] = static_cast<double>(marked[0].marks);
        CHECK(marked[1].marks == 0);  // zero area never marks
    }
    const auto mean = stats::mc_mean_ci(marks, 3.0);
    CHECK(std::abs(mean.mean - 1.0) <= 0.01);
    const auto var = stats::variance_with_se(marks);
    CHECK(std::abs(var.variance - 1.0) <= 0.02);
}

TEST_CASE("marks of distinct excursions are uncorrelated") {
    std::vector<ExcursionRecord> fixture = {{0.0, 1.0, 1.0, 0}, {2.0, 2.0, 2.0, 0}};
    Rng rng = make_rng(26);
    const int reps = 100000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < reps; ++i) {
        const auto marked = mark_excursions(fixture, rng);
        const double x = static_cast<double>(marked[0].marks);
        const double y = static_cast<double>(marked[1].marks);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double n = reps;
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double corr = cov / std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
    CHECK(std::abs(corr) <= 0.01);
}

TEST_CASE("Poisson(area) marking agrees with the planar point process oracle") {
    const ScalingParams params(50, 0.0);
    Rng rng = make_rng(27);
    const auto walk = sample_walk(params, rng);
    const auto excs = order_excursions(decompose(walk));
    REQUIRE(!excs.empty());
    const auto& exc = excs[0];

    // bounding height: reflected value just after each in-excursion jump
    double height = 0.0;
    for (double t : walk.jump_times())
        if (t >= exc.start && t < exc.end())
            height = std::max(height, reflected_at(walk, exc, t));
    REQUIRE(height > 0.0);

    const int reps = 20000;
    std::vector<double> direct(reps), planar(reps);
    for (int i = 0; i < reps; ++i) {
        direct[i] = static_cast<double>(mark_excursions({exc}, rng)[0].marks);
        // unit-rate points in the bounding box, count those under the curve
        std::poisson_distribution<int> npts(exc.length * height);
        std::uniform_real_distribution<double> ux(exc.start, exc.end());
        std::uniform_real_distribution<double> uy(0.0, height);
        int below = 0;
        const int total = npts(rng);
        for (int p = 0; p < total; ++p) {
            const double x = ux(rng);
            const double y = uy(rng);
            if (y < reflected_at(walk, exc, x)) ++below;
        }
        planar[i] = below;
    }
    const auto md = stats::mc_mean_ci(direct, 3.0);
    const auto mp = stats::mc_mean_ci(planar, 3.0);
    const double se =
        std::sqrt(md.half_width * md.half_width + mp.half_width * mp.half_width) / 3.0;
    CHECK(std::abs(md.mean - mp.mean) <= 3.0 * se);
    CHECK(md.mean == doctest::Approx(exc.area).epsilon(0.05));
}

TEST_CASE("to_augmented canonicalizes (length, marks) pairs") {
    std::vector<ExcursionRecord> one = {{0.0, 0.8, 0.2, 2}};
    const auto state = to_augmented(one);
    REQUIRE(state.size() == 1);
    CHECK(state.pairs()[0].mass == 0.8);
    CHECK(state.pairs()[0].surplus == 2);

    std::vector<ExcursionRecord> tied = {{0.0, 0.5, 0.1, 0}, {1.0, 0.5, 0.1, 3}};
    const auto tied_state = to_augmented(tied);
    CHECK(tied_state.pairs()[0].surplus == 3);
    CHECK(tied_state.pairs()[1].surplus == 0);

    CHECK(to_augmented({}).empty());
}

TEST_CASE("first_excursion_stats") {
    const auto walk = JumpWalk::with_sizes({0.2, 0.5}, {0.4, 0.4}, -1.0);
    const auto s = first_excursion_stats(walk, 1.0);
    CHECK(s.length == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(s.area == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(s.below_delta);

    CHECK_FALSE(first_excursion_stats(walk, 0.0).below_delta);
    CHECK_FALSE(first_excursion_stats(walk, 0.8).below_delta);  // strict inequality

    const ScalingParams params(100, 0.0);
    Rng rng = make_rng(28);
    for (int rep = 0; rep < 50; ++rep) {
        const auto w = sample_walk(params, rng);
        // delta above the total mass: the flag is always on
        CHECK(first_excursion_stats(w, params.sigma1() + 1.0).below_delta);
        CHECK_FALSE(first_excursion_stats(w, 0.0).below_delta);
        // matches the chronological head of the full decomposition
        const auto excs = decompose(w);
        const auto fe = first_excursion_stats(w, 0.5);
        CHECK(fe.length == excs[0].length);
        CHECK(fe.area == excs[0].area);
    }
}
