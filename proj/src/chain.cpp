#include "amc/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace amc::chain {

namespace {

// Fenwick tree over block masses; supports point updates and sampling an
// index with probability proportional to its mass in O(log k).
class MassIndex {
  public:
    explicit MassIndex(const std::vector<double>& masses)
        : tree_(masses.size() + 1, 0.0), n_(masses.size()) {
        for (std::size_t i = 0; i < n_; ++i) add(i, masses[i]);
    }

    void add(std::size_t i, double delta) {
        for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1)) tree_[k] += delta;
    }

    double total() const {
        double s = 0.0;
        for (std::size_t k = n_; k > 0; k -= k & (~k + 1)) s += tree_[k];
        return s;
    }

    // Smallest index whose prefix sum exceeds u; u in [0, total).
    std::size_t sample(double u) const {
        std::size_t pos = 0;
        std::size_t mask = 1;
        while ((mask << 1) <= n_) mask <<= 1;
        for (; mask > 0; mask >>= 1) {
            const std::size_t next = pos + mask;
            if (next <= n_ && tree_[next] <= u) {
                u -= tree_[next];
                pos = next;
            }
        }
        return pos;  // 0-based slot index
    }

  private:
    std::vector<double> tree_;
    std::size_t n_;
};

// Mutable trajectory engine; slots are never reordered, dead slots keep
// weight zero so the Fenwick structure stays valid across merges.
//
// When every input mass is an exact double multiple of a common unit (always
// the case for the equal-mass initial state, where the unit is the vertex
// mass), weights are integer counts and a merged block's mass is reported as
// count * unit.  This keeps chain states on the same float lattice as the
// graph and walk samplers, so cross-sampler comparisons see identical atoms
// instead of values an ulp apart.  Other states fall back to plain mass sums.
struct Engine {
    std::vector<double> weight;  // unit counts on a lattice, masses otherwise
    std::vector<std::uint64_t> surplus;
    MassIndex index;
    double unit;          // 0 = no common lattice
    double sigma1 = 0.0;  // total mass, invariant along the trajectory
    std::size_t live = 0;

    struct Lattice {
        std::vector<double> weights;
        double unit = 0.0;
    };

    explicit Engine(const AugmentedPartition& blocks) : Engine(blocks, analyze(blocks)) {}

    Engine(const AugmentedPartition& blocks, Lattice lattice)
        : weight(std::move(lattice.weights)), surplus(), index(weight), unit(lattice.unit) {
        surplus.reserve(weight.size());
        for (const auto& p : blocks.pairs())
            surplus.push_back(static_cast<std::uint64_t>(p.surplus));
        for (const auto& p : blocks.pairs()) sigma1 += p.mass;
        live = weight.size();
    }

    // Lattice detection: unit = smallest mass; accepted only if count * unit
    // reproduces every input mass bit for bit.
    static Lattice analyze(const AugmentedPartition& blocks) {
        Lattice out;
        out.weights.reserve(blocks.size());
        for (const auto& p : blocks.pairs()) out.weights.push_back(p.mass);
        if (out.weights.empty()) return out;
        double unit = out.weights.front();
        for (double m : out.weights) unit = std::min(unit, m);
        std::vector<double> counts;
        counts.reserve(out.weights.size());
        for (double m : out.weights) {
            const double c = std::round(m / unit);
            if (!(c >= 1.0) || c > 9.0e15 || c * unit != m) return out;
            counts.push_back(c);
        }
        out.weights = std::move(counts);
        out.unit = unit;
        return out;
    }

    double mass_of(std::size_t i) const { return unit > 0.0 ? weight[i] * unit : weight[i]; }

    std::size_t draw_index(Rng& rng) {
        const double total = index.total();
        std::uniform_real_distribution<double> unif(0.0, total);
        for (;;) {
            const std::size_t i = index.sample(unif(rng));
            if (i < weight.size() && weight[i] > 0.0) return i;
        }
    }

    // Applies one jump; the holding time is drawn by the caller.
    void jump(Rng& rng) {
        const std::size_t i = draw_index(rng);
        const std::size_t j = draw_index(rng);
        if (i == j) {
            surplus[i] += 1;
            return;
        }
        index.add(i, weight[j]);
        index.add(j, -weight[j]);
        weight[i] += weight[j];  // exact for integer counts
        surplus[i] += surplus[j];
        weight[j] = 0.0;
        surplus[j] = 0;
        --live;
    }

    double total_rate() const { return 0.5 * sigma1 * sigma1; }

    AugmentedPartition snapshot() const {
        std::vector<core::MassSurplus> raw;
        raw.reserve(live);
        for (std::size_t k = 0; k < weight.size(); ++k)
            if (weight[k] > 0.0)
                raw.push_back({mass_of(k), static_cast<std::int64_t>(surplus[k])});
        return core::canonicalize(std::move(raw));
    }
};

}  // namespace

ChainState initial_state(const ScalingParams& params) {
    std::vector<core::MassSurplus> raw(params.n(), {params.vertex_mass(), 0});
    return ChainState{core::canonicalize(std::move(raw)), 0.0};
}

StepResult step(const ChainState& state, Rng& rng) {
    if (state.blocks.empty()) throw std::invalid_argument("chain::step: empty state");
    Engine engine(state.blocks);
    std::exponential_distribution<double> hold(engine.total_rate());
    const double tau = hold(rng);
    engine.jump(rng);
    return StepResult{ChainState{engine.snapshot(), state.clock + tau}, tau};
}

ChainState run(const ChainState& initial, double duration, Rng& rng) {
    if (duration < 0.0) throw std::invalid_argument("chain::run: negative duration");
    if (duration == 0.0 || initial.blocks.empty()) return initial;
    Engine engine(initial.blocks);
    std::exponential_distribution<double> hold(engine.total_rate());
    double clock = 0.0;
    for (;;) {
        const double tau = hold(rng);
        if (clock + tau > duration) break;
        clock += tau;
        engine.jump(rng);
    }
    return ChainState{engine.snapshot(), initial.clock + duration};
}

}  // namespace amc::chain
