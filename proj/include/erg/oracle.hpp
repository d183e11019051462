#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "erg/graph.hpp"
#include "erg/rng.hpp"

namespace erg {

/// Raised instead of answering once a session budget is spent.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BudgetScope { Total, Degree, Neighbor };

struct QueryBudget {
    BudgetScope scope = BudgetScope::Total;
    std::uint64_t cap = 0;
};

struct QueryCounts {
    std::uint64_t degree = 0;
    std::uint64_t neighbor = 0;
    std::uint64_t total() const { return degree + neighbor; }
};

/// The only path by which algorithms touch a graph. Counts every degree and
/// neighbor query, enforces an optional budget and owns the seeded random
/// source. Single-owner; run one session per trial.
class QuerySession {
public:
    QuerySession(const PartiallyErasedGraph& g, std::uint64_t seed);

    /// n is part of the input and free to read.
    std::size_t num_vertices() const { return graph_->num_vertices(); }

    std::size_t q_degree(Vertex u);
    /// 1-based index. Throws InputError when out of range.
    AdjEntry q_neighbor(Vertex u, std::size_t i);
    /// Uniformly random entry of adj(u). Charges a degree query first unless
    /// deg(u) was already charged in this session. Returns nullopt (and no
    /// neighbor charge) when deg(u) = 0.
    std::optional<AdjEntry> q_random_neighbor(Vertex u);

    /// Uniform vertex from the session stream; not a query.
    Vertex sample_vertex();
    Rng& rng() { return rng_; }
    std::uint64_t seed() const { return seed_; }

    const QueryCounts& counts() const { return counts_; }
    void set_budget(std::optional<QueryBudget> budget) { budget_ = budget; }
    const std::optional<QueryBudget>& budget() const { return budget_; }

    /// Newline-delimited `D u` / `N u i -> ans` records; nullptr disables.
    void set_trace(std::ostream* trace) { trace_ = trace; }

private:
    void charge(BudgetScope kind);

    const PartiallyErasedGraph* graph_;
    std::uint64_t seed_;
    Rng rng_;
    QueryCounts counts_;
    std::optional<QueryBudget> budget_;
    std::unordered_set<Vertex> degree_known_;
    std::ostream* trace_ = nullptr;
};

/// Bounded-degree view of the subgraph made of nonerased edges only.
///
/// Each list adj*(u) keeps the entries w of adj(u) with u in adj(w), in their
/// original order, padded with blanks up to the degree bound D. A list is
/// rebuilt on first use and cached; a cache hit charges nothing. One rebuild
/// charges at most D*(D+1) neighbor queries and D+1 degree queries.
class FilterOracle {
public:
    FilterOracle(QuerySession& session, std::size_t degree_bound);

    std::size_t degree_bound() const { return bound_; }
    /// Number of non-blank entries of adj*(u).
    std::size_t degree(Vertex u);
    /// i in [1, D]; nullopt denotes a blank.
    std::optional<Vertex> neighbor(Vertex u, std::size_t i);
    const std::vector<Vertex>& list(Vertex u);

    struct MissCharge {
        Vertex vertex;
        QueryCounts charged;
    };
    const std::vector<MissCharge>& misses() const { return misses_; }

private:
    QuerySession* session_;
    std::size_t bound_;
    std::unordered_map<Vertex, std::vector<Vertex>> cache_;
    std::vector<MissCharge> misses_;
};

}  // namespace erg
