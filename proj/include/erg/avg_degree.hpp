#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "erg/graph.hpp"
#include "erg/oracle.hpp"

namespace erg {

/// Degree-then-id rank; u precedes v iff deg(u) < deg(v), or equal degrees and u < v.
struct VertexRank {
    std::size_t degree;
    Vertex id;

    friend constexpr auto operator<=>(const VertexRank&, const VertexRank&) = default;
};

inline VertexRank rank_of(const PartiallyErasedGraph& g, Vertex u) { return {g.degree(u), u}; }

/// Number of non-erased entries of adj(u) ranked above u.
std::size_t d_plus(const PartiallyErasedGraph& g, Vertex u);
/// Number of erased entries of adj(u).
std::size_t d_bot(const PartiallyErasedGraph& g, Vertex u);

/// Constants of the estimator. The defaults are the proven ones; anything else
/// is a desk-scale override and is reported as non-conforming.
struct EstimatorConstants {
    double sample = 660.0;     // s = ceil(sample * ln(2/delta) * sqrt(n / (eps^5 * crude)))
    double repetition = 12.0;  // t = ceil(repetition * ln(4 * log2 n))
    double threshold = 4.0;    // high-degree cut at threshold * sqrt(n * crude / eps)

    bool conforming() const { return sample == 660.0 && repetition == 12.0 && threshold == 4.0; }
};

struct DegreeEstimatorConfig {
    double epsilon = 0.25;
    double delta = 0.25;
    double crude = 1.0;
    std::uint64_t seed = 0;
    EstimatorConstants constants;
    bool keep_trace = false;
};

struct DegreeEstimate {
    double value = 0.0;
    std::uint64_t samples = 0;
    QueryCounts queries;
    std::vector<std::uint64_t> trace;  // per-sample chi values, when requested
    /// Doubling-search iteration that produced the value; ceil(log2 n) + 1
    /// when the driver fell through and returned 1.
    std::optional<std::uint32_t> iteration;
    double crude_used = 0.0;
    std::uint64_t seed = 0;
    bool conforming = true;
};

/// High-degree cut threshold * sqrt(n * crude / eps).
double degree_threshold(std::size_t n, double crude, double eps, const EstimatorConstants& c = {});
/// deg <= cut, with a relative slack of 1e-12 on the floating-point cut.
bool within_threshold(std::size_t deg, double cut);

std::uint64_t refine_sample_count(std::size_t n, const DegreeEstimatorConfig& cfg);
std::uint32_t driver_repetitions(std::size_t n, const EstimatorConstants& c = {});
/// ceil(log2 n): the last doubling-search index.
std::uint32_t driver_last_iteration(std::size_t n);

/// One draw of the estimator's random variable: deg(u) for a uniform u when u is
/// not high-degree and its uniformly drawn entry is erased or ranked above u;
/// 0 otherwise.
std::uint64_t chi_sample(QuerySession& s, const DegreeEstimatorConfig& cfg);

/// Averages refine_sample_count() independent draws; the estimate is twice the mean.
DegreeEstimate refine_estimate(QuerySession& s, const DegreeEstimatorConfig& cfg);
DegreeEstimate refine_estimate(const PartiallyErasedGraph& g, const DegreeEstimatorConfig& cfg);

/// Doubling search over crude = n / 2^i with the median of t refinement runs
/// (delta = 1/4); run j of iteration i uses seed split_seed(seed, i * t + j).
DegreeEstimate estimate_avg_degree(const PartiallyErasedGraph& g, double eps, std::uint64_t seed,
                                   const EstimatorConstants& constants = {});

}  // namespace erg
