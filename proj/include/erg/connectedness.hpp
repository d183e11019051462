#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "erg/graph.hpp"
#include "erg/oracle.hpp"

namespace erg {

/// Stop once this many distinct vertices (including the start) are discovered.
struct VertexCap {
    std::uint64_t k;
};
/// Stop before scanning adjacency entry number k+1.
struct EdgeCap {
    std::uint64_t k;
};
/// Stop before charging neighbor query number k+1.
struct QueryCap {
    std::uint64_t k;
};
using BfsStop = std::variant<VertexCap, EdgeCap, QueryCap>;

inline constexpr std::uint32_t kHaltOnErasure = 0;
inline constexpr std::uint32_t kNoErasureLimit = std::numeric_limits<std::uint32_t>::max();

/// Result of one breadth-first search through a QuerySession.
///
/// Lists are fetched in discovery order, so the list of explored[k] occupies
/// entries[list_begin[k], list_begin[k+1]) for every processed k.
struct BfsOutcome {
    Vertex start = 0;
    std::size_t graph_size = 0;
    std::vector<Vertex> explored;
    std::vector<std::size_t> list_begin{0};
    std::vector<AdjEntry> entries;
    std::unordered_map<Vertex, std::uint32_t> position;
    std::uint64_t entries_scanned = 0;
    std::uint64_t erasures_seen = 0;
    /// No frontier remains and every discovered list was scanned in full.
    bool closed = false;
    /// The session budget ran out mid-search.
    bool truncated = false;

    std::size_t processed() const { return list_begin.size() - 1; }
    std::span<const AdjEntry> fetched(std::size_t k) const {
        return {entries.data() + list_begin[k], list_begin[k + 1] - list_begin[k]};
    }
};

/// BFS over non-erased entries. The search stops at the cap, or when the
/// number of erased entries seen exceeds `erasure_limit` (kHaltOnErasure stops
/// at the first). `start_degree` reuses an already charged degree query.
BfsOutcome bfs_until(QuerySession& s, Vertex start, BfsStop stop, std::uint32_t erasure_limit,
                     std::optional<std::size_t> start_degree = std::nullopt);

enum class WitnessKind { Plain, Generalized };

struct WitnessReport {
    WitnessKind kind = WitnessKind::Plain;
    std::vector<Vertex> vertices;  // sorted
    std::optional<Vertex> anchor;
};

/// A closed, erasure-free explored set that is not the whole graph.
std::optional<WitnessReport> detect_plain_witness(const BfsOutcome& outcome);

/// Checks the generalized-witness conditions on a closed explored set using
/// only the lists already fetched: at most one erased entry, closure under
/// non-erased entries, and, when an erasure sits in adj(u), some v with u in
/// adj(v) and v not in adj(u) from which a replayed BFS reaches the whole set.
std::optional<WitnessReport> detect_generalized_witness(const BfsOutcome& outcome);

enum class Verdict { Accept, Reject };

struct ConnTesterConfig {
    double epsilon = 0.1;
    double alpha = 0.0;
    /// Average degree promise; required by all testers but the unknown-degree one.
    std::optional<double> davg;
    std::uint64_t seed = 0;
};

struct TesterVerdict {
    std::string algorithm;
    Verdict verdict = Verdict::Accept;
    std::optional<WitnessReport> witness;
    QueryCounts queries;
    /// Hard query cap in force, if any, with the counter it applies to.
    std::optional<QueryBudget> cap;
    /// Accepted because the cap was reached.
    bool aborted = false;
    std::uint64_t seed = 0;
    ConnTesterConfig params;
    double b = 0.0;
};

/// Cap and schedule of the small-alpha tester.
struct SmallAlphaPlan {
    double b = 0.0;
    bool vertex_capped = false;  // b <= davg * log2(b)
    std::vector<std::uint64_t> repetitions;  // index i-1 holds the count for round i
    double expected_queries = 0.0;
    std::uint64_t hard_cap = 0;
};
SmallAlphaPlan plan_small_alpha(const ConnTesterConfig& cfg);

struct NoErasurePlan {
    std::uint32_t rounds = 0;
    std::vector<std::uint64_t> repetitions;
};
NoErasurePlan plan_no_erasures(const ConnTesterConfig& cfg);

struct MidAlphaPlan {
    double b = 0.0;
    std::uint64_t repetitions = 0;
    std::uint64_t query_cap = 0;
};
MidAlphaPlan plan_mid_alpha(const ConnTesterConfig& cfg);

/// Neighbor-query budget of the unknown-degree tester for parameter eps.
std::uint64_t unknown_davg_budget(double eps);

/// Repetitions of round i in outer iteration t of the unknown-degree tester.
std::uint64_t unknown_davg_repetitions(std::uint32_t t, std::uint32_t i);

/// Work-investment tester for alpha < eps/2; looks for erasure-free components.
TesterVerdict tester_small_alpha(QuerySession& s, const ConnTesterConfig& cfg);
TesterVerdict tester_small_alpha(const PartiallyErasedGraph& g, const ConnTesterConfig& cfg);

/// Tester for alpha < eps that detects components with at most one erasure.
TesterVerdict tester_mid_alpha(QuerySession& s, const ConnTesterConfig& cfg);
TesterVerdict tester_mid_alpha(const PartiallyErasedGraph& g, const ConnTesterConfig& cfg);

/// Erasure-free special case with edge-budgeted BFS.
TesterVerdict tester_no_erasures(QuerySession& s, const ConnTesterConfig& cfg);
TesterVerdict tester_no_erasures(const PartiallyErasedGraph& g, const ConnTesterConfig& cfg);

/// Doubling schedule that needs no average degree. With alpha > 0 it runs the
/// halt-on-erasure BFS and uses eps - 2*alpha in the budget.
TesterVerdict tester_unknown_davg(QuerySession& s, const ConnTesterConfig& cfg);
TesterVerdict tester_unknown_davg(const PartiallyErasedGraph& g, const ConnTesterConfig& cfg);

std::string to_string(Verdict v);
std::string to_string(WitnessKind k);

}  // namespace erg
