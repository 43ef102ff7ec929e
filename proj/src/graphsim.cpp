#include "amc/graphsim.hpp"

#include <algorithm>
#include <stdexcept>

#include "amc/union_find.hpp"

namespace amc::graphsim {

namespace {

// Rate of a single unordered pair: q / n^{4/3}.
double pair_rate(const ScalingParams& p) {
    return p.q() / (static_cast<double>(p.n()) * p.sigma1());
}

std::uint64_t poisson_count(double mean, Rng& rng) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::uint64_t> d(mean);
    return d(rng);
}

void merge_sorted_edges(std::vector<std::pair<std::uint32_t, std::uint32_t>>& raw,
                        std::vector<PairEdge>& out) {
    std::sort(raw.begin(), raw.end());
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        out.push_back({raw[i].first, raw[i].second, static_cast<std::uint32_t>(j - i)});
        i = j;
    }
}

void merge_sorted_loops(std::vector<std::uint32_t>& raw, std::vector<LoopCount>& out) {
    std::sort(raw.begin(), raw.end());
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        out.push_back({raw[i], static_cast<std::uint32_t>(j - i)});
        i = j;
    }
}

}  // namespace

std::uint64_t GraphSample::total_edge_count() const {
    std::uint64_t total = 0;
    for (const auto& e : edges) total += e.multiplicity;
    for (const auto& l : loops) total += l.count;
    return total;
}

GraphSample sample_multigraph(const ScalingParams& params, Rng& rng) {
    const std::uint64_t n = params.n();
    const double rate = pair_rate(params);
    const double pair_mean = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1) * rate;
    const double loop_mean = 0.5 * static_cast<double>(n) * rate;

    GraphSample g;
    g.n = static_cast<std::uint32_t>(n);
    g.kind = GraphKind::multigraph;

    const std::uint64_t n_edges = poisson_count(pair_mean, rng);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> raw;
    raw.reserve(n_edges);
    std::uniform_int_distribution<std::uint32_t> pick_u(1, static_cast<std::uint32_t>(n));
    std::uniform_int_distribution<std::uint32_t> pick_v(1, static_cast<std::uint32_t>(n - 1));
    for (std::uint64_t k = 0; k < n_edges; ++k) {
        const std::uint32_t u = pick_u(rng);
        std::uint32_t v = pick_v(rng);
        if (v >= u) ++v;  // uniform over the n-1 vertices distinct from u
        raw.emplace_back(std::min(u, v), std::max(u, v));
    }
    merge_sorted_edges(raw, g.edges);

    const std::uint64_t n_loops = poisson_count(loop_mean, rng);
    std::vector<std::uint32_t> raw_loops;
    raw_loops.reserve(n_loops);
    for (std::uint64_t k = 0; k < n_loops; ++k) raw_loops.push_back(pick_u(rng));
    merge_sorted_loops(raw_loops, g.loops);
    return g;
}

GraphSample sample_multigraph_perpair(const ScalingParams& params, Rng& rng) {
    const std::uint32_t n = static_cast<std::uint32_t>(params.n());
    const double rate = pair_rate(params);

    GraphSample g;
    g.n = n;
    g.kind = GraphKind::multigraph;
    for (std::uint32_t u = 1; u <= n; ++u) {
        for (std::uint32_t v = u + 1; v <= n; ++v) {
            const std::uint64_t m = poisson_count(rate, rng);
            if (m > 0) g.edges.push_back({u, v, static_cast<std::uint32_t>(m)});
        }
    }
    for (std::uint32_t v = 1; v <= n; ++v) {
        const std::uint64_t m = poisson_count(0.5 * rate, rng);
        if (m > 0) g.loops.push_back({v, static_cast<std::uint32_t>(m)});
    }
    return g;
}

GraphSample project_simple(const GraphSample& mg) {
    if (mg.kind != GraphKind::multigraph)
        throw std::invalid_argument("project_simple: input must be a multigraph");
    GraphSample g;
    g.n = mg.n;
    g.kind = GraphKind::simple;
    g.edges.reserve(mg.edges.size());
    for (const auto& e : mg.edges) g.edges.push_back({e.u, e.v, 1});
    return g;
}

namespace {

struct ComponentAccumulator {
    std::uint32_t min_vertex = 0;
    std::uint32_t size = 0;
    std::uint64_t edge_total = 0;
};

}  // namespace

ComponentDecomposition decompose_components(const GraphSample& g) {
    UnionFind uf(g.n);
    for (const auto& e : g.edges) uf.unite(e.u - 1, e.v - 1);

    // Aggregate per root, then index components by their smallest vertex so
    // the result is reproducible.
    std::vector<ComponentAccumulator> acc;
    std::vector<std::uint32_t> root_of_vertex(g.n);
    std::vector<std::int32_t> slot(g.n, -1);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        const std::uint32_t r = uf.find(v);
        root_of_vertex[v] = r;
        if (slot[r] < 0) {
            slot[r] = static_cast<std::int32_t>(acc.size());
            acc.push_back({v + 1, 0, 0});
        }
        acc[static_cast<std::size_t>(slot[r])].size += 1;
    }
    for (const auto& e : g.edges)
        acc[static_cast<std::size_t>(slot[root_of_vertex[e.u - 1]])].edge_total += e.multiplicity;
    for (const auto& l : g.loops)
        acc[static_cast<std::size_t>(slot[root_of_vertex[l.vertex - 1]])].edge_total += l.count;

    const double vm = core::vertex_mass_of(g.n);
    struct Keyed {
        ComponentSummary summary;
        std::uint32_t min_vertex;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(acc.size());
    for (const auto& a : acc) {
        ComponentSummary s;
        s.size = a.size;
        s.mass = static_cast<double>(a.size) * vm;
        // surplus = edges - (size - 1); never negative for a connected component
        s.surplus = a.edge_total + 1 - a.size;
        keyed.push_back({s, a.min_vertex});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.summary.size != b.summary.size) return a.summary.size > b.summary.size;
        if (a.summary.surplus != b.summary.surplus) return a.summary.surplus > b.summary.surplus;
        return a.min_vertex < b.min_vertex;
    });

    ComponentDecomposition out;
    out.components.reserve(keyed.size());
    std::vector<std::uint32_t> index_of_min(g.n + 1, 0);
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        out.components.push_back(keyed[i].summary);
        index_of_min[keyed[i].min_vertex] = static_cast<std::uint32_t>(i);
    }
    out.component_of.resize(g.n + 1, 0);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        const std::uint32_t r = root_of_vertex[v];
        out.component_of[v + 1] = index_of_min[acc[static_cast<std::size_t>(slot[r])].min_vertex];
    }
    return out;
}

std::vector<ComponentSummary> components(const GraphSample& g) {
    return decompose_components(g).components;
}

AugmentedPartition psi_embedding(const std::vector<ComponentSummary>& comps) {
    std::vector<core::MassSurplus> raw;
    raw.reserve(comps.size());
    for (const auto& c : comps)
        raw.push_back({c.mass, static_cast<std::int64_t>(c.surplus)});
    return core::canonicalize(std::move(raw));
}

CoupledSample sample_coupled_pair(const ScalingParams& params, Rng& rng) {
    const GraphSample mg = sample_multigraph(params, rng);

    // One union-find pass; multiplicity >= 1 connects in both graphs, so the
    // vertex partition is shared and components match index-by-index.
    UnionFind uf(mg.n);
    for (const auto& e : mg.edges) uf.unite(e.u - 1, e.v - 1);

    std::vector<std::int32_t> slot(mg.n, -1);
    struct Acc {
        std::uint32_t min_vertex = 0;
        std::uint32_t size = 0;
        std::uint64_t mg_edges = 0;
        std::uint64_t simple_edges = 0;
    };
    std::vector<Acc> acc;
    std::vector<std::uint32_t> root_of(mg.n);
    for (std::uint32_t v = 0; v < mg.n; ++v) {
        const std::uint32_t r = uf.find(v);
        root_of[v] = r;
        if (slot[r] < 0) {
            slot[r] = static_cast<std::int32_t>(acc.size());
            acc.push_back({v + 1, 0, 0, 0});
        }
        acc[static_cast<std::size_t>(slot[r])].size += 1;
    }
    for (const auto& e : mg.edges) {
        auto& a = acc[static_cast<std::size_t>(slot[root_of[e.u - 1]])];
        a.mg_edges += e.multiplicity;
        a.simple_edges += 1;
    }
    for (const auto& l : mg.loops)
        acc[static_cast<std::size_t>(slot[root_of[l.vertex - 1]])].mg_edges += l.count;

    const double vm = params.vertex_mass();
    struct Keyed {
        ComponentSummary mg_summary;
        ComponentSummary simple_summary;
        std::uint32_t min_vertex;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(acc.size());
    for (const auto& a : acc) {
        Keyed k;
        k.min_vertex = a.min_vertex;
        k.mg_summary.size = a.size;
        k.mg_summary.mass = static_cast<double>(a.size) * vm;
        k.mg_summary.surplus = a.mg_edges + 1 - a.size;
        k.simple_summary.size = a.size;
        k.simple_summary.mass = k.mg_summary.mass;
        k.simple_summary.surplus = a.simple_edges + 1 - a.size;
        keyed.push_back(k);
    }
    // Canonical order of the multigraph state; the simple list follows it so
    // the two stay aligned componentwise.
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.mg_summary.size != b.mg_summary.size) return a.mg_summary.size > b.mg_summary.size;
        if (a.mg_summary.surplus != b.mg_summary.surplus)
            return a.mg_summary.surplus > b.mg_summary.surplus;
        return a.min_vertex < b.min_vertex;
    });

    CoupledSample out;
    out.multigraph.reserve(keyed.size());
    out.simple.reserve(keyed.size());
    for (const auto& k : keyed) {
        out.multigraph.push_back(k.mg_summary);
        out.simple.push_back(k.simple_summary);
        out.gap_statistic +=
            k.mg_summary.mass *
            static_cast<double>(k.mg_summary.surplus - k.simple_summary.surplus);
    }
    return out;
}

}  // namespace amc::graphsim
