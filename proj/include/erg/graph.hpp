#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace erg {

using Vertex = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

/// Thrown for malformed arguments: out-of-range vertices or indices, parameters
/// outside their documented range, unparsable input.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One slot of an adjacency list: either a vertex id or the erasure mark.
class AdjEntry {
public:
    static constexpr Vertex kErasedMark = std::numeric_limits<Vertex>::max();

    constexpr AdjEntry() = default;
    static constexpr AdjEntry vertex(Vertex v) { return AdjEntry(v); }
    static constexpr AdjEntry erased() { return AdjEntry(kErasedMark); }

    constexpr bool is_erased() const { return raw_ == kErasedMark; }
    constexpr Vertex id() const { return raw_; }

    friend constexpr bool operator==(AdjEntry, AdjEntry) = default;

private:
    constexpr explicit AdjEntry(Vertex raw) : raw_(raw) {}
    Vertex raw_ = kErasedMark;
};

enum class EdgeKind { NonErased, HalfErased, Absent };

/// Classification of an unordered pair. For HalfErased, `from` lists `to`
/// but `to` does not list `from`.
struct EdgeStatus {
    EdgeKind kind = EdgeKind::Absent;
    Vertex from = 0;
    Vertex to = 0;

    friend bool operator==(const EdgeStatus&, const EdgeStatus&) = default;
};

/// Adjacency lists over vertices 0..n-1 in which some entries may be erased.
///
/// Immutable after construction. Entry order is significant: neighbor queries
/// address entries by position. The edge count m is derived from the total
/// list length and is never stored separately.
class PartiallyErasedGraph {
public:
    PartiallyErasedGraph() = default;
    explicit PartiallyErasedGraph(std::vector<std::vector<AdjEntry>> lists);

    std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    /// Half the total list length.
    std::size_t num_edges() const { return entries_.size() / 2; }
    std::size_t total_entries() const { return entries_.size(); }
    std::size_t erased_entries() const { return erased_count_; }

    double average_degree() const;
    Rational average_degree_exact() const;

    std::size_t degree(Vertex u) const;
    /// 1-based, matching the query model. Throws InputError when i is not in [1, deg(u)].
    AdjEntry neighbor(Vertex u, std::size_t i) const;
    std::span<const AdjEntry> adj(Vertex u) const;

    /// Erased entries divided by the total entry count; 0 for an empty graph.
    Rational erasure_fraction() const;

    bool lists(Vertex u, Vertex v) const;
    EdgeStatus classify_pair(Vertex u, Vertex v) const;
    std::size_t erased_in(Vertex u) const;

    std::vector<std::vector<AdjEntry>> to_lists() const;

    friend bool operator==(const PartiallyErasedGraph&, const PartiallyErasedGraph&) = default;

private:
    void check_vertex(Vertex u) const;

    std::vector<std::size_t> offsets_;
    std::vector<AdjEntry> entries_;
    std::size_t erased_count_ = 0;
};

enum class ViolationKind {
    OutOfRange,
    SelfLoop,
    Duplicate,
    OddTotalLength,
    DegreeTooLarge,
    HalfErasedIntoFullList,
    InsufficientErasedSlots,
    OddFreeSlots,
    UnmatchableSlots,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    Vertex vertex = 0;
    Vertex other = 0;
    std::string detail;
};

/// Checks the structural invariants and necessary conditions for the
/// existence of a completion. Never throws on malformed graphs.
std::vector<Violation> validate(const PartiallyErasedGraph& g);

/// Per-vertex number of half-erased edges pointing into the vertex, i.e.
/// entries that every completion must place into its erased slots.
std::vector<std::size_t> forced_fill_counts(const PartiallyErasedGraph& g);

/// Assignment of vertex ids to erased slots.
struct SlotFill {
    Vertex vertex;
    std::uint32_t slot;  // 0-based position in adj(vertex)
    Vertex fill;

    friend bool operator==(const SlotFill&, const SlotFill&) = default;
};

struct Completion {
    std::vector<SlotFill> fills;
};

/// Applies the fills. Throws InputError when a fill targets a non-erased slot
/// or a slot is left erased.
PartiallyErasedGraph apply_completion(const PartiallyErasedGraph& g, const Completion& c);

/// Erases exactly the listed slots of a graph.
PartiallyErasedGraph erase_slots(const PartiallyErasedGraph& g, std::span<const SlotFill> slots);

/// True when lists are symmetric, simple, loop-free and erasure-free.
bool is_valid_complete_graph(const PartiallyErasedGraph& g);

}  // namespace erg
