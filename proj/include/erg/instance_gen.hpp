#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "erg/graph.hpp"

namespace erg {

enum class ErasureStrategy { Uniform, Symmetric, ComponentHiding };
enum class GadgetKind { TwoErasure, OneErasureAnchored };

std::string to_string(ErasureStrategy s);
std::string to_string(GadgetKind k);
/// Accepts "uniform", "symmetric", "component-hiding".
ErasureStrategy parse_strategy(std::string_view name);

/// A generated graph plus what the construction knows about it. All vertex
/// labels refer to the final, permuted graph.
struct Instance {
    PartiallyErasedGraph graph;
    std::string family;
    /// The special vertex v* of the lower-bound families, or the anchor of a
    /// one-erasure gadget.
    std::optional<Vertex> hub;
    /// Family-specific: the degree-3 nodes, the erased degree-1 nodes, or the
    /// gadget vertices.
    std::vector<Vertex> marked;
    /// Lower bound on the component count of every completion, where the
    /// construction certifies one.
    std::optional<std::size_t> certified_min_components;
};

/// Adjacency lists of an undirected edge list, entries in edge order.
PartiallyErasedGraph graph_from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

/// Uniform random relabeling, with every list shuffled as well.
Instance permute_labels(Instance inst, std::uint64_t seed);

/// t = (1 - eps) / (2 eps) must be an integer >= 3 and k even. k disjoint
/// t-cycles, each with one degree-3 node whose third entry is erased, plus a
/// hub listing those nodes (G+) or with an empty list (G-).
Instance gen_gplus(Rational eps, std::size_t k, std::uint64_t seed);
Instance gen_gminus(Rational eps, std::size_t k, std::uint64_t seed);

/// lambda = 2 alpha / (1 + alpha); lambda (n - 1) must be an even integer and
/// (1 - lambda)(n - 1) >= 3. A cycle, lambda (n - 1) degree-1 vertices whose
/// entry is erased, and a hub listing them (G1) or isolated (G2).
Instance gen_g1(Rational alpha, std::size_t n, std::uint64_t seed);
Instance gen_g2(Rational alpha, std::size_t n, std::uint64_t seed);

/// `copies` gadgets beside one cycle on `big_size` vertices (no cycle when 0).
/// TwoErasure: a 4-cycle with two half-erased edges, so every completion keeps
/// it closed but no BFS from inside sees fewer than two erasures.
/// OneErasureAnchored: a path a - u - w where u's entry for a is erased; only a
/// anchors it. `hub` is the anchor of the first copy.
Instance gen_fig_component(GadgetKind kind, std::uint64_t seed, std::size_t copies = 1,
                           std::size_t big_size = 16);

/// Erases at most floor(2 alpha m) entries of a graph. Uniform picks entries
/// uniformly; Symmetric erases both entries of floor(alpha m) uniform edges;
/// ComponentHiding removes one direction of one edge per component, smallest
/// components first, while budget remains.
PartiallyErasedGraph erase(const PartiallyErasedGraph& g, Rational alpha, ErasureStrategy strategy,
                           std::uint64_t seed);

/// Random trees of 2..max_small vertices carved off a connected giant part
/// until the component count certifies eps-farness under the erasure budget,
/// then erasures by `strategy`. The giant part has about davg_target * size / 2
/// edges (at least a spanning tree).
Instance gen_far_forest(Rational eps, Rational alpha, std::size_t n, double davg_target,
                        ErasureStrategy strategy, std::uint64_t seed, std::size_t max_small = 6);

/// Disjoint cycles of the given lengths (each >= 3).
Instance gen_cycle_union(std::span<const std::size_t> lengths, std::uint64_t seed);

/// About n * d / 2 edges with near-equal degrees: a Hamiltonian cycle when
/// d >= 2, then rounds of random matchings.
Instance gen_random_regularish(std::size_t n, double d, std::uint64_t seed);

/// Uniform random simple graph with m edges, optionally with degrees at most max_degree.
Instance gen_random_gnm(std::size_t n, std::size_t m, std::uint64_t seed,
                        std::optional<std::size_t> max_degree = std::nullopt);

/// Lower bound on the component count of any completion: components of the
/// non-erased entries minus half the unforced erased slots.
std::size_t component_lower_bound(const PartiallyErasedGraph& g);

}  // namespace erg
