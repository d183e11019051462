#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "erg/avg_degree.hpp"
#include "erg/graph.hpp"

namespace erg {

struct EnumerationLimits {
    /// Erased slots left after the forced fills; the search branches only over these.
    std::size_t max_free_slots = 20;
    std::size_t max_completions = 1'000'000;
};

struct CompletionEnumeration {
    std::vector<Completion> completions;
    /// Stopped at max_completions.
    bool partial = false;
};

/// Every completion up to the placement of ids among a vertex's erased slots.
/// Forced fills (the missing halves of half-erased edges) come first; the
/// remaining slots are matched across distinct non-adjacent pairs. Returns an
/// empty list for uncompletable graphs.
CompletionEnumeration enumerate_completions(const PartiallyErasedGraph& g,
                                            const EnumerationLimits& limits = {});

/// Minimum number of connected components over all completions.
/// Throws InputError for uncompletable graphs.
std::size_t min_components_over_completions(const PartiallyErasedGraph& g,
                                            const EnumerationLimits& limits = {});

/// (min components - 1) / m. Throws InputError for uncompletable graphs and for
/// edgeless graphs with two or more vertices.
Rational distance_to_connectedness(const PartiallyErasedGraph& g,
                                   const EnumerationLimits& limits = {});

struct GeneralizedWitness {
    std::vector<Vertex> vertices;  // sorted
    std::vector<Vertex> anchors;   // sorted

    friend bool operator==(const GeneralizedWitness&, const GeneralizedWitness&) = default;
};

struct WitnessInventory {
    std::vector<std::vector<Vertex>> plain;
    std::vector<GeneralizedWitness> generalized;
};

/// Witnesses are components of the undirected graph on non-erased entries,
/// excluding the whole vertex set. Erasure-free components are plain witnesses
/// and generalized witnesses anchored everywhere; a component with a single
/// erasure in adj(u) is a generalized witness anchored at every v with u in
/// adj(v), v not in adj(u), from which BFS over non-erased entries reaches it all.
WitnessInventory inventory_witnesses(const PartiallyErasedGraph& g);

enum class SetSize { Small, Big };

/// Small/big classification of a vertex set for parameter eps_star in (0, 2/davg).
SetSize small_big_classify(std::span<const Vertex> c, Rational eps_star,
                           const PartiallyErasedGraph& g);

/// (1/n) * sum over u outside the high-degree set of d+(u) + d_bot(u).
Rational exact_exp_chi(const PartiallyErasedGraph& g, double d_hat, double eps,
                       const EstimatorConstants& constants = {});

/// Per-vertex quality 1/|C| on plain witnesses C, 0 elsewhere.
std::vector<Rational> quality_vertex_count(const PartiallyErasedGraph& g,
                                           const WitnessInventory& inv);
/// Per-vertex quality deg(v)/(2E(C)) on plain witnesses C (1 when E(C) = 0), 0 elsewhere.
std::vector<Rational> quality_edge_count(const PartiallyErasedGraph& g,
                                         const WitnessInventory& inv);

struct ExactReport {
    std::uint64_t completions_count = 0;
    bool completions_partial = false;
    std::size_t min_components = 0;
    std::optional<Rational> distance;
    WitnessInventory witnesses;
    std::optional<Rational> exp_chi;
    std::optional<double> d_hat;
    double eps = 0.25;
};

ExactReport exact_report(const PartiallyErasedGraph& g, std::optional<double> d_hat = std::nullopt,
                         double eps = 0.25, const EnumerationLimits& limits = {});

}  // namespace erg
