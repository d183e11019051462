#include "erg/exact.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace erg {

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
    if (a > b) {
        std::swap(a, b);
    }
    return (std::uint64_t{a} << 32) | b;
}

// Union-find with undo, for branch-and-bound over matchings.
class RollbackUnionFind {
public:
    explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
        for (std::size_t i = 0; i < n; ++i) {
            parent_[i] = static_cast<Vertex>(i);
        }
    }

    Vertex find(Vertex x) const {
        while (parent_[x] != x) {
            x = parent_[x];
        }
        return x;
    }

    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            history_.push_back(kNoMerge);
            return;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        history_.push_back(b);
    }

    void undo() {
        const Vertex b = history_.back();
        history_.pop_back();
        if (b == kNoMerge) {
            return;
        }
        const Vertex a = parent_[b];
        size_[a] -= size_[b];
        parent_[b] = b;
        ++components_;
    }

    std::size_t components() const { return components_; }

private:
    static constexpr Vertex kNoMerge = AdjEntry::kErasedMark;
    std::vector<Vertex> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_;
    std::vector<Vertex> history_;
};

// State after the forced fills: the realized edge set, the slots still free and
// where the next fill goes in each list.
struct Prepared {
    std::unordered_set<std::uint64_t> edges;
    std::vector<std::vector<std::uint32_t>> free_slots;  // per vertex, ascending
    std::vector<SlotFill> forced;
    std::size_t free_total = 0;
};

std::optional<Prepared> prepare(const PartiallyErasedGraph& g) {
    if (!validate(g).empty()) {
        return std::nullopt;
    }
    const auto n = g.num_vertices();
    Prepared p;
    p.free_slots.resize(n);
    for (Vertex u = 0; u < n; ++u) {
        const auto list = g.adj(u);
        for (std::uint32_t i = 0; i < list.size(); ++i) {
            if (list[i].is_erased()) {
                p.free_slots[u].push_back(i);
            } else {
                p.edges.insert(pair_key(u, list[i].id()));
            }
        }
    }
    std::vector<std::size_t> next(n, 0);
    for (Vertex u = 0; u < n; ++u) {
        for (AdjEntry e : g.adj(u)) {
            if (e.is_erased()) {
                continue;
            }
            const Vertex v = e.id();
            if (!g.lists(v, u)) {
                if (next[v] >= p.free_slots[v].size()) {
                    return std::nullopt;
                }
                p.forced.push_back({v, p.free_slots[v][next[v]++], u});
            }
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        p.free_slots[v].erase(p.free_slots[v].begin(),
                              p.free_slots[v].begin() + static_cast<std::ptrdiff_t>(next[v]));
        p.free_total += p.free_slots[v].size();
    }
    return p;
}

void check_limits(const Prepared& p, const EnumerationLimits& limits) {
    if (p.free_total > limits.max_free_slots) {
        throw InputError(std::to_string(p.free_total) +
                         " unforced erased slots exceed the enumeration bound of " +
                         std::to_string(limits.max_free_slots));
    }
}

// Visits every matching of the free slots once per resulting edge set. The
// lowest vertex with free slots picks partners in increasing order; returning
// false from `leaf` stops the search.
class MatchingSearch {
public:
    MatchingSearch(Prepared& p, std::function<bool()> leaf,
                   std::function<bool(Vertex, Vertex)> on_add = {},
                   std::function<void(Vertex, Vertex)> on_remove = {},
                   std::function<bool(std::size_t)> prune = {},
                   std::function<bool(Vertex, Vertex)> prefer = {})
        : p_(p),
          remaining_(p.free_slots.size()),
          leaf_(std::move(leaf)),
          on_add_(std::move(on_add)),
          on_remove_(std::move(on_remove)),
          prune_(std::move(prune)),
          prefer_(std::move(prefer)) {
        for (std::size_t v = 0; v < remaining_.size(); ++v) {
            remaining_[v] = p.free_slots[v].size();
        }
    }

    std::vector<std::pair<Vertex, Vertex>> matched;

    void run() { step(0, 0); }

private:
    bool step(Vertex v, Vertex min_partner) {
        const auto n = static_cast<Vertex>(remaining_.size());
        while (v < n && remaining_[v] == 0) {
            ++v;
            min_partner = 0;
        }
        if (v == n) {
            return leaf_();
        }
        if (prune_ && prune_(pairs_left())) {
            return true;
        }
        // Two passes when a preference is given: preferred partners first.
        const int passes = prefer_ ? 2 : 1;
        for (int pass = 0; pass < passes; ++pass) {
            for (Vertex w = std::max<Vertex>(min_partner, v + 1); w < n; ++w) {
                if (remaining_[w] == 0 || p_.edges.contains(pair_key(v, w))) {
                    continue;
                }
                if (prefer_ && prefer_(v, w) != (pass == 0)) {
                    continue;
                }
                --remaining_[v];
                --remaining_[w];
                p_.edges.insert(pair_key(v, w));
                matched.emplace_back(v, w);
                if (on_add_) {
                    on_add_(v, w);
                }
                const bool go_on = step(v, w + 1);
                if (on_remove_) {
                    on_remove_(v, w);
                }
                matched.pop_back();
                p_.edges.erase(pair_key(v, w));
                ++remaining_[v];
                ++remaining_[w];
                if (!go_on) {
                    return false;
                }
            }
        }
        return true;
    }

    std::size_t pairs_left() const {
        std::size_t total = 0;
        for (auto r : remaining_) {
            total += r;
        }
        return total / 2;
    }

    Prepared& p_;
    std::vector<std::size_t> remaining_;
    std::function<bool()> leaf_;
    std::function<bool(Vertex, Vertex)> on_add_;
    std::function<void(Vertex, Vertex)> on_remove_;
    std::function<bool(std::size_t)> prune_;
    std::function<bool(Vertex, Vertex)> prefer_;
};

}  // namespace

CompletionEnumeration enumerate_completions(const PartiallyErasedGraph& g,
                                            const EnumerationLimits& limits) {
    CompletionEnumeration out;
    auto prepared = prepare(g);
    if (!prepared) {
        return out;
    }
    check_limits(*prepared, limits);
    auto& p = *prepared;
    MatchingSearch* search_ptr = nullptr;
    MatchingSearch search(p, [&] {
        if (out.completions.size() >= limits.max_completions) {
            out.partial = true;
            return false;
        }
        Completion c;
        c.fills = p.forced;
        std::vector<std::size_t> used(p.free_slots.size(), 0);
        for (auto [a, b] : search_ptr->matched) {
            c.fills.push_back({a, p.free_slots[a][used[a]++], b});
            c.fills.push_back({b, p.free_slots[b][used[b]++], a});
        }
        out.completions.push_back(std::move(c));
        return true;
    });
    search_ptr = &search;
    search.run();
    return out;
}

std::size_t min_components_over_completions(const PartiallyErasedGraph& g,
                                            const EnumerationLimits& limits) {
    auto prepared = prepare(g);
    if (!prepared) {
        throw InputError("graph has no completion");
    }
    check_limits(*prepared, limits);
    auto& p = *prepared;
    const auto n = g.num_vertices();
    RollbackUnionFind uf(n);
    for (Vertex u = 0; u < n; ++u) {
        for (AdjEntry e : g.adj(u)) {
            if (!e.is_erased()) {
                uf.unite(u, e.id());
            }
        }
    }
    const std::size_t floor_value =
        std::max<std::size_t>(n == 0 ? 0 : 1,
                              uf.components() > p.free_total / 2 ? uf.components() - p.free_total / 2 : 0);
    std::optional<std::size_t> best;
    MatchingSearch search(
        p,
        [&] {
            if (!best || uf.components() < *best) {
                best = uf.components();
            }
            return *best > floor_value;
        },
        [&](Vertex a, Vertex b) {
            uf.unite(a, b);
            return true;
        },
        [&](Vertex, Vertex) { uf.undo(); },
        [&](std::size_t pairs_left) {
            const auto c = uf.components();
            const auto optimistic = c > pairs_left ? c - pairs_left : 0;
            return best && optimistic >= *best;
        },
        [&](Vertex a, Vertex b) { return uf.find(a) != uf.find(b); });
    search.run();
    if (!best) {
        throw InputError("graph has no completion");
    }
    return *best;
}

Rational distance_to_connectedness(const PartiallyErasedGraph& g, const EnumerationLimits& limits) {
    const auto comps = min_components_over_completions(g, limits);
    if (comps <= 1) {
        return Rational(0);
    }
    if (g.num_edges() == 0) {
        throw InputError("distance to connectedness is undefined for an edgeless graph");
    }
    return Rational(static_cast<std::int64_t>(comps - 1), static_cast<std::int64_t>(g.num_edges()));
}

WitnessInventory inventory_witnesses(const PartiallyErasedGraph& g) {
    const auto n = g.num_vertices();
    RollbackUnionFind uf(n);
    for (Vertex u = 0; u < n; ++u) {
        for (AdjEntry e : g.adj(u)) {
            if (!e.is_erased() && e.id() < n) {
                uf.unite(u, e.id());
            }
        }
    }
    std::vector<std::vector<Vertex>> groups(n);
    for (Vertex u = 0; u < n; ++u) {
        groups[uf.find(u)].push_back(u);
    }
    WitnessInventory inv;
    std::vector<std::uint8_t> in_set(n, 0);
    std::vector<std::uint8_t> seen(n, 0);
    for (auto& c : groups) {
        if (c.empty() || c.size() == n) {
            continue;
        }
        std::size_t erasures = 0;
        Vertex holder = 0;
        for (Vertex v : c) {
            const auto k = g.erased_in(v);
            erasures += k;
            if (k > 0) {
                holder = v;
            }
        }
        if (erasures == 0) {
            inv.plain.push_back(c);
            inv.generalized.push_back({c, c});
            continue;
        }
        if (erasures > 1) {
            continue;
        }
        for (Vertex v : c) {
            in_set[v] = 1;
        }
        GeneralizedWitness w{c, {}};
        for (Vertex v : c) {
            if (!g.lists(v, holder) || g.lists(holder, v)) {
                continue;
            }
            std::vector<Vertex> stack{v};
            std::vector<Vertex> touched{v};
            seen[v] = 1;
            while (!stack.empty()) {
                const Vertex x = stack.back();
                stack.pop_back();
                for (AdjEntry e : g.adj(x)) {
                    if (e.is_erased() || !in_set[e.id()] || seen[e.id()]) {
                        continue;
                    }
                    seen[e.id()] = 1;
                    touched.push_back(e.id());
                    stack.push_back(e.id());
                }
            }
            if (touched.size() == c.size()) {
                w.anchors.push_back(v);
            }
            for (Vertex x : touched) {
                seen[x] = 0;
            }
        }
        for (Vertex v : c) {
            in_set[v] = 0;
        }
        if (!w.anchors.empty()) {
            inv.generalized.push_back(std::move(w));
        }
    }
    return inv;
}

SetSize small_big_classify(std::span<const Vertex> c, Rational eps_star,
                           const PartiallyErasedGraph& g) {
    const Rational davg = g.average_degree_exact();
    if (eps_star <= 0 || (davg > 0 && eps_star * davg >= 2)) {
        throw InputError("eps_star must lie in (0, 2/davg)");
    }
    if (davg > 0 && eps_star * davg * davg >= 4) {
        const Rational size(static_cast<std::int64_t>(c.size()));
        return size * eps_star * davg <= 4 ? SetSize::Small : SetSize::Big;
    }
    std::int64_t length = 0;
    for (Vertex v : c) {
        length += static_cast<std::int64_t>(g.degree(v));
    }
    return Rational(length) * eps_star <= 4 ? SetSize::Small : SetSize::Big;
}

Rational exact_exp_chi(const PartiallyErasedGraph& g, double d_hat, double eps,
                       const EstimatorConstants& constants) {
    const auto n = g.num_vertices();
    if (n == 0) {
        throw InputError("graph has no vertices");
    }
    const double cut = degree_threshold(n, d_hat, eps, constants);
    std::int64_t sum = 0;
    for (Vertex u = 0; u < n; ++u) {
        if (within_threshold(g.degree(u), cut)) {
            sum += static_cast<std::int64_t>(d_plus(g, u) + d_bot(g, u));
        }
    }
    return Rational(sum, static_cast<std::int64_t>(n));
}

std::vector<Rational> quality_vertex_count(const PartiallyErasedGraph& g,
                                           const WitnessInventory& inv) {
    std::vector<Rational> q(g.num_vertices(), Rational(0));
    for (const auto& c : inv.plain) {
        for (Vertex v : c) {
            q[v] = Rational(1, static_cast<std::int64_t>(c.size()));
        }
    }
    return q;
}

std::vector<Rational> quality_edge_count(const PartiallyErasedGraph& g,
                                         const WitnessInventory& inv) {
    std::vector<Rational> q(g.num_vertices(), Rational(0));
    for (const auto& c : inv.plain) {
        std::int64_t length = 0;
        for (Vertex v : c) {
            length += static_cast<std::int64_t>(g.degree(v));
        }
        for (Vertex v : c) {
            q[v] = length == 0 ? Rational(1)
                               : Rational(static_cast<std::int64_t>(g.degree(v)), length);
        }
    }
    return q;
}

ExactReport exact_report(const PartiallyErasedGraph& g, std::optional<double> d_hat, double eps,
                         const EnumerationLimits& limits) {
    ExactReport r;
    const auto enumeration = enumerate_completions(g, limits);
    r.completions_count = enumeration.completions.size();
    r.completions_partial = enumeration.partial;
    if (enumeration.completions.empty()) {
        throw InputError("graph has no completion");
    }
    r.min_components = min_components_over_completions(g, limits);
    if (r.min_components <= 1 || g.num_edges() > 0) {
        r.distance = distance_to_connectedness(g, limits);
    }
    r.witnesses = inventory_witnesses(g);
    r.eps = eps;
    if (d_hat) {
        r.d_hat = d_hat;
        r.exp_chi = exact_exp_chi(g, *d_hat, eps);
    }
    return r;
}

}  // namespace erg
