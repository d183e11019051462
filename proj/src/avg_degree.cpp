#include "erg/avg_degree.hpp"

#include <algorithm>
#include <cmath>

#include "erg/rng.hpp"

namespace erg {

std::size_t d_plus(const PartiallyErasedGraph& g, Vertex u) {
    const auto ru = rank_of(g, u);
    std::size_t count = 0;
    for (AdjEntry e : g.adj(u)) {
        if (!e.is_erased() && ru < rank_of(g, e.id())) {
            ++count;
        }
    }
    return count;
}

std::size_t d_bot(const PartiallyErasedGraph& g, Vertex u) { return g.erased_in(u); }

double degree_threshold(std::size_t n, double crude, double eps, const EstimatorConstants& c) {
    return c.threshold * std::sqrt(static_cast<double>(n) * crude / eps);
}

bool within_threshold(std::size_t deg, double cut) {
    return static_cast<double>(deg) <= cut + 1e-12 * std::max(1.0, cut);
}

namespace {

void check_refine_config(const DegreeEstimatorConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) {
        throw InputError("epsilon must lie in (0, 1/2)");
    }
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0 / 3.0)) {
        throw InputError("delta must lie in (0, 1/3)");
    }
    if (!(cfg.crude > 0.0) || !std::isfinite(cfg.crude)) {
        throw InputError("crude estimate must be positive");
    }
}

}  // namespace

std::uint64_t refine_sample_count(std::size_t n, const DegreeEstimatorConfig& cfg) {
    check_refine_config(cfg);
    const double eps5 = std::pow(cfg.epsilon, 5.0);
    const double s = cfg.constants.sample * std::log(2.0 / cfg.delta) *
                     std::sqrt(static_cast<double>(n) / (eps5 * cfg.crude));
    return static_cast<std::uint64_t>(std::ceil(s));
}

std::uint32_t driver_last_iteration(std::size_t n) {
    std::uint32_t k = 0;
    while ((std::uint64_t{1} << k) < n) {
        ++k;
    }
    return k;
}

std::uint32_t driver_repetitions(std::size_t n, const EstimatorConstants& c) {
    return static_cast<std::uint32_t>(
        std::ceil(c.repetition * std::log(4.0 * std::log2(static_cast<double>(n)))));
}

std::uint64_t chi_sample(QuerySession& s, const DegreeEstimatorConfig& cfg) {
    const auto n = s.num_vertices();
    const Vertex u = s.sample_vertex();
    const auto du = s.q_degree(u);
    const auto entry = s.q_random_neighbor(u);
    if (!entry) {
        return 0;
    }
    bool credited = entry->is_erased();
    if (!credited) {
        const Vertex v = entry->id();
        const auto dv = s.q_degree(v);
        credited = VertexRank{du, u} < VertexRank{dv, v};
    }
    const double cut = degree_threshold(n, cfg.crude, cfg.epsilon, cfg.constants);
    return (credited && within_threshold(du, cut)) ? du : 0;
}

DegreeEstimate refine_estimate(QuerySession& s, const DegreeEstimatorConfig& cfg) {
    if (s.num_vertices() == 0) {
        throw InputError("graph has no vertices");
    }
    const auto count = refine_sample_count(s.num_vertices(), cfg);
    DegreeEstimate est;
    est.samples = count;
    est.crude_used = cfg.crude;
    est.seed = s.seed();
    est.conforming = cfg.constants.conforming();
    if (cfg.keep_trace) {
        est.trace.reserve(count);
    }
    const auto before = s.counts();
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto chi = chi_sample(s, cfg);
        sum += chi;
        if (cfg.keep_trace) {
            est.trace.push_back(chi);
        }
    }
    const auto after = s.counts();
    est.queries = {after.degree - before.degree, after.neighbor - before.neighbor};
    est.value = 2.0 * static_cast<double>(sum) / static_cast<double>(count);
    return est;
}

DegreeEstimate refine_estimate(const PartiallyErasedGraph& g, const DegreeEstimatorConfig& cfg) {
    QuerySession s(g, cfg.seed);
    return refine_estimate(s, cfg);
}

DegreeEstimate estimate_avg_degree(const PartiallyErasedGraph& g, double eps, std::uint64_t seed,
                                   const EstimatorConstants& constants) {
    const auto n = g.num_vertices();
    if (n < 2) {
        throw InputError("average degree estimation needs n >= 2");
    }
    if (!(eps > 0.0 && eps < 0.5)) {
        throw InputError("epsilon must lie in (0, 1/2)");
    }
    const auto t = driver_repetitions(n, constants);
    const auto last = driver_last_iteration(n);
    DegreeEstimate out;
    out.seed = seed;
    out.conforming = constants.conforming();
    std::vector<double> values(t);
    for (std::uint32_t i = 0; i <= last; ++i) {
        const double crude = std::ldexp(static_cast<double>(n), -static_cast<int>(i));
        for (std::uint32_t j = 0; j < t; ++j) {
            DegreeEstimatorConfig cfg;
            cfg.epsilon = eps;
            cfg.delta = 0.25;
            cfg.crude = crude;
            cfg.constants = constants;
            QuerySession s(g, split_seed(seed, std::uint64_t{i} * t + j));
            const auto run = refine_estimate(s, cfg);
            values[j] = run.value;
            out.samples += run.samples;
            out.queries.degree += run.queries.degree;
            out.queries.neighbor += run.queries.neighbor;
        }
        std::sort(values.begin(), values.end());
        const double median = values[(t - 1) / 2];  // lower median
        if (median > crude) {
            out.value = median;
            out.iteration = i;
            out.crude_used = crude;
            return out;
        }
    }
    out.value = 1.0;
    out.iteration = last + 1;
    out.crude_used = std::ldexp(static_cast<double>(n), -static_cast<int>(last));
    return out;
}

}  // namespace erg
