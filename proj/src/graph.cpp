#include "erg/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace erg {

PartiallyErasedGraph::PartiallyErasedGraph(std::vector<std::vector<AdjEntry>> lists) {
    offsets_.reserve(lists.size() + 1);
    offsets_.push_back(0);
    std::size_t total = 0;
    for (const auto& list : lists) {
        total += list.size();
    }
    entries_.reserve(total);
    for (const auto& list : lists) {
        for (AdjEntry e : list) {
            entries_.push_back(e);
            erased_count_ += e.is_erased() ? 1 : 0;
        }
        offsets_.push_back(entries_.size());
    }
}

void PartiallyErasedGraph::check_vertex(Vertex u) const {
    if (u >= num_vertices()) {
        throw InputError("vertex " + std::to_string(u) + " out of range [0, " +
                         std::to_string(num_vertices()) + ")");
    }
}

double PartiallyErasedGraph::average_degree() const {
    const auto n = num_vertices();
    return n == 0 ? 0.0 : static_cast<double>(2 * num_edges()) / static_cast<double>(n);
}

Rational PartiallyErasedGraph::average_degree_exact() const {
    const auto n = num_vertices();
    if (n == 0) {
        return Rational(0);
    }
    return Rational(static_cast<std::int64_t>(2 * num_edges()), static_cast<std::int64_t>(n));
}

std::size_t PartiallyErasedGraph::degree(Vertex u) const {
    check_vertex(u);
    return offsets_[u + 1] - offsets_[u];
}

AdjEntry PartiallyErasedGraph::neighbor(Vertex u, std::size_t i) const {
    const auto d = degree(u);
    if (i < 1 || i > d) {
        throw InputError("neighbor index " + std::to_string(i) + " out of range [1, " +
                         std::to_string(d) + "] for vertex " + std::to_string(u));
    }
    return entries_[offsets_[u] + i - 1];
}

std::span<const AdjEntry> PartiallyErasedGraph::adj(Vertex u) const {
    check_vertex(u);
    return {entries_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

Rational PartiallyErasedGraph::erasure_fraction() const {
    if (entries_.empty()) {
        return Rational(0);
    }
    return Rational(static_cast<std::int64_t>(erased_count_),
                    static_cast<std::int64_t>(entries_.size()));
}

bool PartiallyErasedGraph::lists(Vertex u, Vertex v) const {
    const auto list = adj(u);
    return std::find(list.begin(), list.end(), AdjEntry::vertex(v)) != list.end();
}

EdgeStatus PartiallyErasedGraph::classify_pair(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw InputError("classify_pair requires distinct vertices");
    }
    const bool uv = lists(u, v);
    const bool vu = lists(v, u);
    if (uv && vu) {
        return {EdgeKind::NonErased, u, v};
    }
    if (uv) {
        return {EdgeKind::HalfErased, u, v};
    }
    if (vu) {
        return {EdgeKind::HalfErased, v, u};
    }
    return {EdgeKind::Absent, u, v};
}

std::size_t PartiallyErasedGraph::erased_in(Vertex u) const {
    const auto list = adj(u);
    return static_cast<std::size_t>(
        std::count_if(list.begin(), list.end(), [](AdjEntry e) { return e.is_erased(); }));
}

std::vector<std::vector<AdjEntry>> PartiallyErasedGraph::to_lists() const {
    std::vector<std::vector<AdjEntry>> out(num_vertices());
    for (Vertex u = 0; u < num_vertices(); ++u) {
        const auto list = adj(u);
        out[u].assign(list.begin(), list.end());
    }
    return out;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::OutOfRange: return "out-of-range";
        case ViolationKind::SelfLoop: return "self-loop";
        case ViolationKind::Duplicate: return "duplicate";
        case ViolationKind::OddTotalLength: return "odd-total-length";
        case ViolationKind::DegreeTooLarge: return "degree-too-large";
        case ViolationKind::HalfErasedIntoFullList: return "half-erased-into-full-list";
        case ViolationKind::InsufficientErasedSlots: return "insufficient-erased-slots";
        case ViolationKind::OddFreeSlots: return "odd-free-slots";
        case ViolationKind::UnmatchableSlots: return "unmatchable-slots";
    }
    return "unknown";
}

namespace {

// Sorted non-erased, in-range ids per vertex.
std::vector<std::vector<Vertex>> sorted_ids(const PartiallyErasedGraph& g) {
    const auto n = g.num_vertices();
    std::vector<std::vector<Vertex>> ids(n);
    for (Vertex u = 0; u < n; ++u) {
        for (AdjEntry e : g.adj(u)) {
            if (!e.is_erased() && e.id() < n) {
                ids[u].push_back(e.id());
            }
        }
        std::sort(ids[u].begin(), ids[u].end());
    }
    return ids;
}

bool contains(const std::vector<Vertex>& sorted, Vertex v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

std::vector<std::size_t> forced_fill_counts(const PartiallyErasedGraph& g) {
    const auto n = g.num_vertices();
    const auto ids = sorted_ids(g);
    std::vector<std::size_t> forced(n, 0);
    for (Vertex u = 0; u < n; ++u) {
        Vertex prev = AdjEntry::kErasedMark;
        for (Vertex v : ids[u]) {
            if (v == prev || v == u) {
                continue;
            }
            prev = v;
            if (!contains(ids[v], u)) {
                ++forced[v];
            }
        }
    }
    return forced;
}

std::vector<Violation> validate(const PartiallyErasedGraph& g) {
    std::vector<Violation> out;
    const auto n = g.num_vertices();
    if (g.total_entries() % 2 != 0) {
        out.push_back({ViolationKind::OddTotalLength, 0, 0,
                       "total list length " + std::to_string(g.total_entries()) + " is odd"});
    }
    for (Vertex u = 0; u < n; ++u) {
        if (n > 0 && g.degree(u) > n - 1) {
            out.push_back({ViolationKind::DegreeTooLarge, u, 0,
                           "degree " + std::to_string(g.degree(u)) + " exceeds n-1"});
        }
        std::unordered_set<Vertex> seen;
        for (AdjEntry e : g.adj(u)) {
            if (e.is_erased()) {
                continue;
            }
            if (e.id() >= n) {
                out.push_back({ViolationKind::OutOfRange, u, e.id(), "entry id out of range"});
            } else if (e.id() == u) {
                out.push_back({ViolationKind::SelfLoop, u, u, "vertex lists itself"});
            } else if (!seen.insert(e.id()).second) {
                out.push_back({ViolationKind::Duplicate, u, e.id(), "id listed twice"});
            }
        }
    }

    // Completability: forced fills first, then the leftover slots must pair up.
    const auto ids = sorted_ids(g);
    std::vector<std::size_t> forced(n, 0);
    for (Vertex u = 0; u < n; ++u) {
        Vertex prev = AdjEntry::kErasedMark;
        for (Vertex v : ids[u]) {
            if (v == prev || v == u) {
                continue;
            }
            prev = v;
            if (!contains(ids[v], u)) {
                ++forced[v];
                if (g.erased_in(v) == 0) {
                    out.push_back({ViolationKind::HalfErasedIntoFullList, u, v,
                                   "half-erased edge into a list without erased slots"});
                }
            }
        }
    }
    std::vector<std::size_t> free_slots(n, 0);
    std::size_t total_free = 0;
    for (Vertex v = 0; v < n; ++v) {
        const auto erased = g.erased_in(v);
        if (forced[v] > erased) {
            if (erased > 0) {
                out.push_back({ViolationKind::InsufficientErasedSlots, v, 0,
                               std::to_string(forced[v]) + " forced fills, " +
                                   std::to_string(erased) + " erased slots"});
            }
        } else {
            free_slots[v] = erased - forced[v];
            total_free += free_slots[v];
        }
    }
    if (total_free % 2 != 0) {
        out.push_back({ViolationKind::OddFreeSlots, 0, 0,
                       std::to_string(total_free) + " free erased slots cannot pair up"});
    }
    for (Vertex v = 0; v < n; ++v) {
        if (free_slots[v] == 0) {
            continue;
        }
        std::size_t partners = 0;
        for (Vertex w = 0; w < n; ++w) {
            if (w != v && free_slots[w] > 0 && !contains(ids[v], w) && !contains(ids[w], v)) {
                ++partners;
            }
        }
        if (partners < free_slots[v]) {
            out.push_back({ViolationKind::UnmatchableSlots, v, 0,
                           std::to_string(free_slots[v]) + " free slots, " +
                               std::to_string(partners) + " possible partners"});
        }
    }
    return out;
}

PartiallyErasedGraph apply_completion(const PartiallyErasedGraph& g, const Completion& c) {
    auto lists = g.to_lists();
    for (const auto& f : c.fills) {
        if (f.vertex >= lists.size() || f.slot >= lists[f.vertex].size()) {
            throw InputError("completion fill targets a nonexistent slot");
        }
        auto& slot = lists[f.vertex][f.slot];
        if (!slot.is_erased()) {
            throw InputError("completion fill targets a non-erased slot");
        }
        slot = AdjEntry::vertex(f.fill);
    }
    for (const auto& list : lists) {
        for (AdjEntry e : list) {
            if (e.is_erased()) {
                throw InputError("completion leaves an erased slot unfilled");
            }
        }
    }
    return PartiallyErasedGraph(std::move(lists));
}

PartiallyErasedGraph erase_slots(const PartiallyErasedGraph& g, std::span<const SlotFill> slots) {
    auto lists = g.to_lists();
    for (const auto& f : slots) {
        if (f.vertex >= lists.size() || f.slot >= lists[f.vertex].size()) {
            throw InputError("erase targets a nonexistent slot");
        }
        lists[f.vertex][f.slot] = AdjEntry::erased();
    }
    return PartiallyErasedGraph(std::move(lists));
}

bool is_valid_complete_graph(const PartiallyErasedGraph& g) {
    if (g.erased_entries() != 0) {
        return false;
    }
    if (!validate(g).empty()) {
        return false;
    }
    const auto ids = sorted_ids(g);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        for (Vertex v : ids[u]) {
            if (!contains(ids[v], u)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace erg
