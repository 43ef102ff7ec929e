#include "amc/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amc::core {

MassPartition::MassPartition(std::vector<double> masses) : masses_(std::move(masses)) {
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        if (!(masses_[i] > 0.0))
            throw std::invalid_argument("MassPartition: masses must be strictly positive");
        if (i > 0 && masses_[i] > masses_[i - 1])
            throw std::invalid_argument("MassPartition: masses must be nonincreasing");
    }
}

MassPartition MassPartition::from_unsorted(std::vector<double> masses) {
    for (double m : masses)
        if (m < 0.0) throw std::invalid_argument("MassPartition: negative mass");
    std::sort(masses.begin(), masses.end(), std::greater<>());
    while (!masses.empty() && masses.back() == 0.0) masses.pop_back();
    MassPartition p;
    p.masses_ = std::move(masses);
    return p;
}

MassPartition AugmentedPartition::masses() const {
    std::vector<double> m;
    m.reserve(pairs_.size());
    for (const auto& p : pairs_) m.push_back(p.mass);
    return MassPartition(std::move(m));
}

std::uint64_t AugmentedPartition::total_surplus() const {
    std::uint64_t total = 0;
    for (const auto& p : pairs_) total += static_cast<std::uint64_t>(p.surplus);
    return total;
}

AugmentedPartition canonicalize(std::vector<MassSurplus> raw) {
    for (const auto& p : raw) {
        if (p.mass < 0.0) throw std::invalid_argument("canonicalize: negative mass");
        if (p.surplus < 0) throw std::invalid_argument("canonicalize: negative surplus");
    }
    std::erase_if(raw, [](const MassSurplus& p) { return p.mass == 0.0; });
    // Stable sort keeps input order for pairs equal in both keys.
    std::stable_sort(raw.begin(), raw.end(), [](const MassSurplus& a, const MassSurplus& b) {
        if (a.mass != b.mass) return a.mass > b.mass;
        return a.surplus > b.surplus;
    });
    return AugmentedPartition(std::move(raw));
}

double l2_distance(const MassPartition& a, const MassPartition& b) {
    const auto& x = a.masses();
    const auto& y = b.masses();
    const std::size_t len = std::max(x.size(), y.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double xi = i < x.size() ? x[i] : 0.0;
        const double yi = i < y.size() ? y[i] : 0.0;
        sum += (xi - yi) * (xi - yi);
    }
    return std::sqrt(sum);
}

double du_distance(const AugmentedPartition& a, const AugmentedPartition& b) {
    const auto& x = a.pairs();
    const auto& y = b.pairs();
    const std::size_t len = std::max(x.size(), y.size());
    double sq = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const MassSurplus xi = i < x.size() ? x[i] : MassSurplus{};
        const MassSurplus yi = i < y.size() ? y[i] : MassSurplus{};
        sq += (xi.mass - yi.mass) * (xi.mass - yi.mass);
        l1 += std::abs(xi.mass * static_cast<double>(xi.surplus) -
                       yi.mass * static_cast<double>(yi.surplus));
    }
    return std::sqrt(sq) + l1;
}

double p_of_time(double t) {
    if (t < 0.0) throw std::invalid_argument("p_of_time: t must be nonnegative");
    return -std::expm1(-t);
}

namespace {

double step_ulps(double x, int k) {
    const double dir = k > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    for (int j = std::abs(k); j > 0; --j) x = std::nextafter(x, dir);
    return x;
}

// Picks (sigma1, sigma2) within a few ulps of (cbrt(n), 1/cbrt(n)) so that
// their product is exactly 1.0.  A nearest-first search over ulp offsets of
// both values always finds a pair (verified for n up to 1e6; the very rare
// residual case falls back to the nominal rounding).
void exact_reciprocal_pair(std::uint64_t n, double& sigma1, double& sigma2) {
    const double base1 = std::cbrt(static_cast<double>(n));
    for (int a = 0; a <= 8; ++a) {
        const int ka = (a == 0) ? 0 : ((a % 2) ? (a + 1) / 2 : -(a / 2));
        const double s1 = step_ulps(base1, ka);
        const double base2 = 1.0 / s1;
        for (int b = 0; b <= 16; ++b) {
            const int kb = (b == 0) ? 0 : ((b % 2) ? (b + 1) / 2 : -(b / 2));
            const double s2 = step_ulps(base2, kb);
            if (s1 * s2 == 1.0) {
                sigma1 = s1;
                sigma2 = s2;
                return;
            }
        }
    }
    sigma1 = base1;
    sigma2 = 1.0 / base1;
}

}  // namespace

double vertex_mass_of(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("vertex_mass_of: n must be positive");
    double s1 = 0.0, s2 = 0.0;
    exact_reciprocal_pair(n, s1, s2);
    return s2 * s2;
}

ScalingParams::ScalingParams(std::uint64_t n, double t) {
    if (n == 0) throw std::invalid_argument("ScalingParams: n must be positive");
    n_ = n;
    t_ = t;
    exact_reciprocal_pair(n, sigma1_, sigma2_);
    q_ = sigma1_ + t;
    if (!(q_ > 0.0))
        throw std::invalid_argument("ScalingParams: q = n^{1/3} + t must be positive");
}

ScalingParams ScalingParams::from_q(std::uint64_t n, double q) {
    if (n == 0) throw std::invalid_argument("ScalingParams: n must be positive");
    if (!(q > 0.0)) throw std::invalid_argument("ScalingParams: q must be positive");
    ScalingParams p;
    p.n_ = n;
    exact_reciprocal_pair(n, p.sigma1_, p.sigma2_);
    p.q_ = q;
    p.t_ = q - p.sigma1_;
    return p;
}

}  // namespace amc::core
