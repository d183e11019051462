#include "erg/instance_gen.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "erg/rng.hpp"

namespace erg {

namespace {

using Edge = std::pair<Vertex, Vertex>;
using Lists = std::vector<std::vector<AdjEntry>>;

std::uint64_t key(Vertex a, Vertex b) {
    if (a > b) {
        std::swap(a, b);
    }
    return (std::uint64_t{a} << 32) | b;
}

bool is_integer(Rational r) { return r.denominator() == 1; }

struct EdgeSet {
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;

    bool add(Vertex a, Vertex b) {
        if (a == b || !seen.insert(key(a, b)).second) {
            return false;
        }
        edges.emplace_back(a, b);
        return true;
    }
};

std::size_t count_components(const PartiallyErasedGraph& g) {
    const auto n = g.num_vertices();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::size_t comps = n;
    for (Vertex u = 0; u < n; ++u) {
        for (AdjEntry e : g.adj(u)) {
            if (e.is_erased()) {
                continue;
            }
            const auto a = find(u);
            const auto b = find(e.id());
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
    }
    return comps;
}

// Random tree on vertices first..first+size-1: each vertex attaches to an earlier one.
void add_random_tree(EdgeSet& es, Vertex first, std::size_t size, Rng& rng) {
    for (std::size_t i = 1; i < size; ++i) {
        const auto parent = static_cast<Vertex>(first + rng.below(i));
        es.add(first + static_cast<Vertex>(i), parent);
    }
}

Instance lower_bound_cycles(Rational eps, std::size_t k, std::uint64_t seed, bool plus) {
    if (eps <= 0 || eps > Rational(1, 7)) {
        throw InputError("eps must lie in (0, 1/7]");
    }
    const Rational t_exact = (1 - eps) / (2 * eps);
    if (!is_integer(t_exact) || t_exact < 3) {
        throw InputError("(1 - eps) / (2 eps) must be an integer >= 3");
    }
    if (k < 2 || k % 2 != 0) {
        throw InputError("k must be a positive even number");
    }
    const auto t = static_cast<std::size_t>(t_exact.numerator());
    const auto n = k * t + 1;
    const auto hub = static_cast<Vertex>(k * t);
    Lists lists(n);
    Instance inst;
    for (std::size_t c = 0; c < k; ++c) {
        const auto base = static_cast<Vertex>(c * t);
        for (std::size_t j = 0; j < t; ++j) {
            const auto v = base + static_cast<Vertex>(j);
            const auto prev = base + static_cast<Vertex>((j + t - 1) % t);
            const auto next = base + static_cast<Vertex>((j + 1) % t);
            lists[v] = {AdjEntry::vertex(prev), AdjEntry::vertex(next)};
        }
        lists[base].push_back(AdjEntry::erased());
        inst.marked.push_back(base);
        if (plus) {
            lists[hub].push_back(AdjEntry::vertex(base));
        }
    }
    inst.graph = PartiallyErasedGraph(std::move(lists));
    inst.family = plus ? "gplus" : "gminus";
    inst.hub = hub;
    if (!plus) {
        inst.certified_min_components = k / 2 + 1;
    }
    return permute_labels(std::move(inst), seed);
}

Instance lower_bound_degree(Rational alpha, std::size_t n, std::uint64_t seed, bool first) {
    if (alpha <= 0 || alpha > 1) {
        throw InputError("alpha must lie in (0, 1]");
    }
    if (n < 2) {
        throw InputError("n must be at least 2");
    }
    const Rational lambda = 2 * alpha / (1 + alpha);
    const Rational leaves_exact = lambda * static_cast<std::int64_t>(n - 1);
    if (!is_integer(leaves_exact) || leaves_exact.numerator() % 2 != 0) {
        throw InputError("lambda (n - 1) must be an even integer");
    }
    const auto leaves = static_cast<std::size_t>(leaves_exact.numerator());
    const auto cycle = n - 1 - leaves;
    if (cycle < 3) {
        throw InputError("(1 - lambda)(n - 1) must be at least 3");
    }
    Lists lists(n);
    for (std::size_t j = 0; j < cycle; ++j) {
        lists[j] = {AdjEntry::vertex(static_cast<Vertex>((j + cycle - 1) % cycle)),
                    AdjEntry::vertex(static_cast<Vertex>((j + 1) % cycle))};
    }
    const auto hub = static_cast<Vertex>(n - 1);
    Instance inst;
    for (std::size_t j = 0; j < leaves; ++j) {
        const auto v = static_cast<Vertex>(cycle + j);
        lists[v] = {AdjEntry::erased()};
        inst.marked.push_back(v);
        if (first) {
            lists[hub].push_back(AdjEntry::vertex(v));
        }
    }
    inst.graph = PartiallyErasedGraph(std::move(lists));
    inst.family = first ? "g1" : "g2";
    inst.hub = hub;
    return permute_labels(std::move(inst), seed);
}

// Components of the non-erased entries, as vertex lists.
std::vector<std::vector<Vertex>> components_of(const PartiallyErasedGraph& g) {
    const auto n = g.num_vertices();
    std::vector<std::int64_t> label(n, -1);
    std::vector<std::vector<Vertex>> out;
    // Undirected view: an entry in either direction links the pair.
    std::vector<std::vector<Vertex>> undirected(n);
    for (Vertex u = 0; u < n; ++u) {
        for (AdjEntry e : g.adj(u)) {
            if (!e.is_erased()) {
                undirected[u].push_back(e.id());
                undirected[e.id()].push_back(u);
            }
        }
    }
    for (Vertex s = 0; s < n; ++s) {
        if (label[s] >= 0) {
            continue;
        }
        std::vector<Vertex> comp{s};
        label[s] = static_cast<std::int64_t>(out.size());
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (Vertex w : undirected[comp[i]]) {
                if (label[w] < 0) {
                    label[w] = label[s];
                    comp.push_back(w);
                }
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

std::string to_string(ErasureStrategy s) {
    switch (s) {
        case ErasureStrategy::Uniform: return "uniform";
        case ErasureStrategy::Symmetric: return "symmetric";
        case ErasureStrategy::ComponentHiding: return "component-hiding";
    }
    return "unknown";
}

std::string to_string(GadgetKind k) {
    return k == GadgetKind::TwoErasure ? "two-erasure" : "one-erasure-anchored";
}

ErasureStrategy parse_strategy(std::string_view name) {
    if (name == "uniform") {
        return ErasureStrategy::Uniform;
    }
    if (name == "symmetric") {
        return ErasureStrategy::Symmetric;
    }
    if (name == "component-hiding") {
        return ErasureStrategy::ComponentHiding;
    }
    throw InputError("unknown erasure strategy '" + std::string(name) + "'");
}

PartiallyErasedGraph graph_from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    Lists lists(n);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) {
            throw InputError("edge endpoint out of range");
        }
        lists[a].push_back(AdjEntry::vertex(b));
        lists[b].push_back(AdjEntry::vertex(a));
    }
    return PartiallyErasedGraph(std::move(lists));
}

Instance permute_labels(Instance inst, std::uint64_t seed) {
    const auto n = inst.graph.num_vertices();
    Rng rng(seed);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm.begin(), perm.end());
    Lists lists(n);
    for (Vertex u = 0; u < n; ++u) {
        auto& out = lists[perm[u]];
        for (AdjEntry e : inst.graph.adj(u)) {
            out.push_back(e.is_erased() ? e : AdjEntry::vertex(perm[e.id()]));
        }
        rng.shuffle(out.begin(), out.end());
    }
    inst.graph = PartiallyErasedGraph(std::move(lists));
    if (inst.hub) {
        inst.hub = perm[*inst.hub];
    }
    for (auto& v : inst.marked) {
        v = perm[v];
    }
    return inst;
}

Instance gen_gplus(Rational eps, std::size_t k, std::uint64_t seed) {
    return lower_bound_cycles(eps, k, seed, true);
}

Instance gen_gminus(Rational eps, std::size_t k, std::uint64_t seed) {
    return lower_bound_cycles(eps, k, seed, false);
}

Instance gen_g1(Rational alpha, std::size_t n, std::uint64_t seed) {
    return lower_bound_degree(alpha, n, seed, true);
}

Instance gen_g2(Rational alpha, std::size_t n, std::uint64_t seed) {
    return lower_bound_degree(alpha, n, seed, false);
}

Instance gen_fig_component(GadgetKind kind, std::uint64_t seed, std::size_t copies,
                           std::size_t big_size) {
    if (copies == 0) {
        throw InputError("at least one gadget copy is required");
    }
    if (big_size != 0 && big_size < 3) {
        throw InputError("the connected part needs at least 3 vertices");
    }
    const std::size_t gadget = kind == GadgetKind::TwoErasure ? 4 : 3;
    const auto n = copies * gadget + big_size;
    Lists lists(n);
    Instance inst;
    auto v = [](std::size_t x) { return AdjEntry::vertex(static_cast<Vertex>(x)); };
    for (std::size_t c = 0; c < copies; ++c) {
        const auto b = c * gadget;
        if (kind == GadgetKind::TwoErasure) {
            // Cycle a-b-c-d-a; b has lost its entry for a, d its entry for c.
            lists[b + 0] = {v(b + 3), v(b + 1)};
            lists[b + 1] = {AdjEntry::erased(), v(b + 2)};
            lists[b + 2] = {v(b + 1), v(b + 3)};
            lists[b + 3] = {v(b + 0), AdjEntry::erased()};
        } else {
            // Path a-u-w; u has lost its entry for a.
            lists[b + 0] = {v(b + 1)};
            lists[b + 1] = {AdjEntry::erased(), v(b + 2)};
            lists[b + 2] = {v(b + 1)};
            if (c == 0) {
                inst.hub = static_cast<Vertex>(b);
            }
        }
        for (std::size_t j = 0; j < gadget; ++j) {
            inst.marked.push_back(static_cast<Vertex>(b + j));
        }
    }
    const auto base = copies * gadget;
    for (std::size_t j = 0; j < big_size; ++j) {
        lists[base + j] = {v(base + (j + big_size - 1) % big_size), v(base + (j + 1) % big_size)};
    }
    inst.graph = PartiallyErasedGraph(std::move(lists));
    inst.family = kind == GadgetKind::TwoErasure ? "fig1" : "fig2";
    inst.certified_min_components = copies + (big_size > 0 ? 1 : 0);
    return permute_labels(std::move(inst), seed);
}

PartiallyErasedGraph erase(const PartiallyErasedGraph& g, Rational alpha, ErasureStrategy strategy,
                           std::uint64_t seed) {
    if (alpha < 0 || alpha > 1) {
        throw InputError("alpha must lie in [0, 1]");
    }
    const auto m = static_cast<std::int64_t>(g.num_edges());
    const auto budget = static_cast<std::size_t>(boost::rational_cast<std::int64_t>(2 * alpha * m));
    const auto existing = g.erased_entries();
    if (budget <= existing) {
        return g;
    }
    auto remaining = budget - existing;
    Rng rng(seed);
    auto lists = g.to_lists();
    const auto n = g.num_vertices();
    switch (strategy) {
        case ErasureStrategy::Uniform: {
            std::vector<std::pair<Vertex, std::uint32_t>> slots;
            for (Vertex u = 0; u < n; ++u) {
                for (std::uint32_t i = 0; i < lists[u].size(); ++i) {
                    if (!lists[u][i].is_erased()) {
                        slots.emplace_back(u, i);
                    }
                }
            }
            rng.shuffle(slots.begin(), slots.end());
            slots.resize(std::min(slots.size(), remaining));
            for (auto [u, i] : slots) {
                lists[u][i] = AdjEntry::erased();
            }
            break;
        }
        case ErasureStrategy::Symmetric: {
            std::vector<Edge> edges;
            for (Vertex u = 0; u < n; ++u) {
                for (AdjEntry e : g.adj(u)) {
                    if (!e.is_erased() && u < e.id() && g.lists(e.id(), u)) {
                        edges.emplace_back(u, e.id());
                    }
                }
            }
            rng.shuffle(edges.begin(), edges.end());
            edges.resize(std::min(edges.size(), remaining / 2));
            for (auto [a, b] : edges) {
                std::replace(lists[a].begin(), lists[a].end(), AdjEntry::vertex(b), AdjEntry::erased());
                std::replace(lists[b].begin(), lists[b].end(), AdjEntry::vertex(a), AdjEntry::erased());
            }
            break;
        }
        case ErasureStrategy::ComponentHiding: {
            auto comps = components_of(g);
            std::stable_sort(comps.begin(), comps.end(),
                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
            for (const auto& comp : comps) {
                if (remaining == 0) {
                    break;
                }
                std::vector<Edge> mutual;
                bool hidden = false;
                for (Vertex u : comp) {
                    for (AdjEntry e : lists[u]) {
                        if (e.is_erased()) {
                            hidden = true;
                        } else if (u < e.id() && g.lists(e.id(), u)) {
                            mutual.emplace_back(u, e.id());
                        }
                    }
                }
                if (hidden || mutual.empty()) {
                    continue;
                }
                auto [a, b] = mutual[rng.below(mutual.size())];
                if (rng.below(2) == 1) {
                    std::swap(a, b);
                }
                // a keeps listing b; b loses its entry for a.
                std::replace(lists[b].begin(), lists[b].end(), AdjEntry::vertex(a), AdjEntry::erased());
                --remaining;
            }
            break;
        }
    }
    return PartiallyErasedGraph(std::move(lists));
}

std::size_t component_lower_bound(const PartiallyErasedGraph& g) {
    const auto forced = forced_fill_counts(g);
    const auto forced_total = std::accumulate(forced.begin(), forced.end(), std::size_t{0});
    const auto free_slots = g.erased_entries() > forced_total ? g.erased_entries() - forced_total : 0;
    const auto comps = count_components(g);
    const auto bound = comps > free_slots / 2 ? comps - free_slots / 2 : 0;
    return std::max<std::size_t>(bound, g.num_vertices() == 0 ? 0 : 1);
}

Instance gen_far_forest(Rational eps, Rational alpha, std::size_t n, double davg_target,
                        ErasureStrategy strategy, std::uint64_t seed, std::size_t max_small) {
    if (eps <= 0 || eps >= 1) {
        throw InputError("eps must lie in (0, 1)");
    }
    if (alpha < 0 || alpha >= 1) {
        throw InputError("alpha must lie in [0, 1)");
    }
    if (max_small < 2) {
        throw InputError("small components need at least 2 vertices");
    }
    Rng rng(seed);
    auto giant_edges = [&](std::size_t size) -> std::int64_t {
        if (size <= 1) {
            return 0;
        }
        const auto full = static_cast<std::int64_t>(size * (size - 1) / 2);
        const auto target = static_cast<std::int64_t>(davg_target * static_cast<double>(size) / 2.0);
        return std::min(full, std::max(static_cast<std::int64_t>(size - 1), target));
    };
    std::vector<std::size_t> sizes;
    std::size_t giant = n;
    std::int64_t small_edges = 0;
    auto certified = [&]() {
        const std::int64_t m = small_edges + giant_edges(giant);
        const Rational budget = 2 * alpha * m;
        const auto erasures = boost::rational_cast<std::int64_t>(budget);  // floor, budget >= 0
        const std::int64_t loss = strategy == ErasureStrategy::ComponentHiding ? 0 : erasures / 2;
        const auto comps = static_cast<std::int64_t>(sizes.size()) + (giant > 0 ? 1 : 0);
        return Rational(comps - loss - 1) >= eps * m;
    };
    while (!certified()) {
        const auto s = 2 + static_cast<std::size_t>(rng.below(max_small - 1));
        if (giant < s + 3) {
            throw InputError("no eps-far forest with these parameters fits in " + std::to_string(n) +
                             " vertices");
        }
        giant -= s;
        sizes.push_back(s);
        small_edges += static_cast<std::int64_t>(s - 1);
    }
    EdgeSet es;
    Vertex next = 0;
    for (auto s : sizes) {
        add_random_tree(es, next, s, rng);
        next += static_cast<Vertex>(s);
    }
    const Vertex giant_first = next;
    add_random_tree(es, giant_first, giant, rng);
    const auto want = static_cast<std::size_t>(giant_edges(giant));
    std::size_t have = giant > 0 ? giant - 1 : 0;
    while (have < want) {
        const auto a = giant_first + static_cast<Vertex>(rng.below(giant));
        const auto b = giant_first + static_cast<Vertex>(rng.below(giant));
        have += es.add(a, b) ? 1 : 0;
    }
    Instance inst;
    inst.graph = erase(graph_from_edges(n, es.edges), alpha, strategy, split_seed(seed, 1));
    inst.family = "far-forest";
    inst.certified_min_components = component_lower_bound(inst.graph);
    return permute_labels(std::move(inst), split_seed(seed, 2));
}

Instance gen_cycle_union(std::span<const std::size_t> lengths, std::uint64_t seed) {
    EdgeSet es;
    Vertex base = 0;
    for (auto len : lengths) {
        if (len < 3) {
            throw InputError("cycles need at least 3 vertices");
        }
        for (std::size_t j = 0; j < len; ++j) {
            es.add(base + static_cast<Vertex>(j), base + static_cast<Vertex>((j + 1) % len));
        }
        base += static_cast<Vertex>(len);
    }
    Instance inst;
    inst.graph = graph_from_edges(base, es.edges);
    inst.family = "cycle-union";
    inst.certified_min_components = lengths.size();
    return permute_labels(std::move(inst), seed);
}

Instance gen_random_regularish(std::size_t n, double d, std::uint64_t seed) {
    if (n < 3) {
        throw InputError("n must be at least 3");
    }
    if (!(d >= 0.0) || d > static_cast<double>(n - 1)) {
        throw InputError("target degree must lie in [0, n-1]");
    }
    Rng rng(seed);
    const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(n) * d / 2.0));
    EdgeSet es;
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (d >= 2.0) {
        rng.shuffle(order.begin(), order.end());
        for (std::size_t j = 0; j < n; ++j) {
            es.add(order[j], order[(j + 1) % n]);
        }
    }
    std::size_t stale_rounds = 0;
    while (es.edges.size() < target && stale_rounds < 64) {
        rng.shuffle(order.begin(), order.end());
        bool grew = false;
        for (std::size_t j = 0; j + 1 < n && es.edges.size() < target; j += 2) {
            grew = es.add(order[j], order[j + 1]) || grew;
        }
        stale_rounds = grew ? 0 : stale_rounds + 1;
    }
    Instance inst;
    inst.graph = graph_from_edges(n, es.edges);
    inst.family = "regularish";
    return permute_labels(std::move(inst), split_seed(seed, 1));
}

Instance gen_random_gnm(std::size_t n, std::size_t m, std::uint64_t seed,
                        std::optional<std::size_t> max_degree) {
    if (n < 2 && m > 0) {
        throw InputError("edges need at least 2 vertices");
    }
    const auto cap = max_degree ? std::min(*max_degree, n - 1) : n - 1;
    if (m > n * cap / 2) {
        throw InputError("too many edges for n and the degree bound");
    }
    Rng rng(seed);
    EdgeSet es;
    std::vector<std::size_t> deg(n, 0);
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 1000 * (std::uint64_t{m} + 1) + 100000;
    while (es.edges.size() < m) {
        if (++attempts > max_attempts) {
            throw InputError("could not place the requested edges");
        }
        const auto a = static_cast<Vertex>(rng.below(n));
        const auto b = static_cast<Vertex>(rng.below(n));
        if (a == b || deg[a] >= cap || deg[b] >= cap) {
            continue;
        }
        if (es.add(a, b)) {
            ++deg[a];
            ++deg[b];
        }
    }
    Instance inst;
    inst.graph = graph_from_edges(n, es.edges);
    inst.family = "gnm";
    return inst;
}

}  // namespace erg
