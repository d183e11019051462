#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "erg/avg_degree.hpp"
#include "erg/exact.hpp"
#include "erg/instance_gen.hpp"
#include "erg/peg_io.hpp"
#include "erg/rng.hpp"

using namespace erg;

namespace {

DegreeEstimatorConfig refine_config(double eps, double crude, std::uint64_t seed = 1) {
    DegreeEstimatorConfig cfg;
    cfg.epsilon = eps;
    cfg.crude = crude;
    cfg.seed = seed;
    return cfg;
}

// chi for vertex u and entry slot i, straight from the sampling rule.
std::uint64_t chi_by_rule(const PartiallyErasedGraph& g, Vertex u, std::size_t i, double cut) {
    const auto du = g.degree(u);
    if (static_cast<double>(du) > cut + 1e-12 * std::max(1.0, cut)) {
        return 0;
    }
    const auto e = g.neighbor(u, i);
    if (e.is_erased()) {
        return du;
    }
    const auto dv = g.degree(e.id());
    const bool above = du < dv || (du == dv && u < e.id());
    return above ? du : 0;
}

// Mean and variance of chi by enumerating every (vertex, slot) outcome.
std::pair<Rational, Rational> chi_moments(const PartiallyErasedGraph& g, double d_hat, double eps) {
    const auto n = static_cast<std::int64_t>(g.num_vertices());
    const double cut = 4.0 * std::sqrt(static_cast<double>(n) * d_hat / eps);
    Rational mean(0);
    Rational second(0);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        const auto du = static_cast<std::int64_t>(g.degree(u));
        for (std::size_t i = 1; i <= g.degree(u); ++i) {
            const auto x = static_cast<std::int64_t>(chi_by_rule(g, u, i, cut));
            mean += Rational(x, n * du);
            second += Rational(x * x, n * du);
        }
    }
    return {mean, second - mean * mean};
}

PartiallyErasedGraph random_erased(std::size_t n, std::size_t m, Rational alpha, std::uint64_t seed) {
    const auto base = gen_random_gnm(n, m, seed).graph;
    return erase(base, alpha, ErasureStrategy::Uniform, split_seed(seed, 99));
}

}  // namespace

TEST(Rank, StrictTotalOrderOnRandomDegrees) {
    Rng rng(3);
    for (int round = 0; round < 200; ++round) {
        std::vector<VertexRank> ranks;
        for (Vertex v = 0; v < 12; ++v) {
            ranks.push_back({static_cast<std::size_t>(rng.below(4)), v});
        }
        for (const auto& a : ranks) {
            EXPECT_FALSE(a < a);
            for (const auto& b : ranks) {
                if (a.id != b.id) {
                    EXPECT_NE(a < b, b < a);
                }
                for (const auto& c : ranks) {
                    if (a < b && b < c) {
                        EXPECT_TRUE(a < c);
                    }
                }
            }
        }
    }
}

TEST(DPlus, MaxRankVertexHasNone) {
    const auto g = parse_peg("peg 1\nn 4\nv 0 1 2 3\nv 1 0\nv 2 0\nv 3 0\n");
    EXPECT_EQ(d_plus(g, 0), 0u);
    EXPECT_EQ(d_plus(g, 1), 1u);
}

TEST(DPlus, FullyErasedList) {
    const auto g = parse_peg("peg 1\nn 3\nv 0 * *\nv 1 *\nv 2 *\n");
    EXPECT_EQ(d_bot(g, 0), 2u);
    EXPECT_EQ(d_plus(g, 0), 0u);
}

TEST(DPlus, SumIsAtMostMAndExactWithoutErasures) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto base = gen_random_gnm(60, 150, seed).graph;
        std::size_t sum = 0;
        for (Vertex u = 0; u < base.num_vertices(); ++u) {
            sum += d_plus(base, u);
        }
        EXPECT_EQ(sum, base.num_edges());
        const auto erased = erase(base, Rational(3, 10), ErasureStrategy::Uniform, seed);
        sum = 0;
        for (Vertex u = 0; u < erased.num_vertices(); ++u) {
            sum += d_plus(erased, u);
        }
        EXPECT_LE(sum, erased.num_edges());
    }
}

TEST(Chi, SingleEdgeLowerEndpointCounts) {
    const auto g = parse_peg("peg 1\nn 2\nv 0 1\nv 1 0\n");
    const auto cfg = refine_config(0.25, 1.0);
    int zero_hits = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        QuerySession s(g, seed);
        std::ostringstream trace;
        s.set_trace(&trace);
        const auto chi = chi_sample(s, cfg);
        const bool sampled_zero = trace.str().rfind("D 0\n", 0) == 0;
        EXPECT_EQ(chi, sampled_zero ? 1u : 0u);
        zero_hits += sampled_zero;
    }
    EXPECT_GT(zero_hits, 0);
    EXPECT_EQ(exact_exp_chi(g, 1.0, 0.25), Rational(1, 2));
}

TEST(Chi, ErasedEntryCreditsDegree) {
    const auto g = parse_peg("peg 1\nn 3\nv 0 * *\nv 1 *\nv 2 *\n");
    const auto cfg = refine_config(0.25, 1.0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        QuerySession s(g, seed);
        std::ostringstream trace;
        s.set_trace(&trace);
        const auto chi = chi_sample(s, cfg);
        EXPECT_EQ(chi, trace.str().rfind("D 0\n", 0) == 0 ? 2u : 1u);
    }
}

TEST(Chi, HighDegreeVerticesContributeZero) {
    // Cut 4 * sqrt(5 * 0.001 / 0.25) is about 0.57, below every degree.
    const auto g = parse_peg("peg 1\nn 5\nv 0 1 2 3 4\nv 1 0\nv 2 0\nv 3 0\nv 4 0\n");
    const auto cfg = refine_config(0.25, 0.001);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        QuerySession s(g, seed);
        EXPECT_EQ(chi_sample(s, cfg), 0u);
    }
}

TEST(Chi, SamplesStayInRange) {
    const auto g = random_erased(80, 200, Rational(3, 10), 4);
    for (double d_hat : {0.5, 2.0, 5.0, 40.0}) {
        auto cfg = refine_config(0.25, d_hat);
        const double cut = degree_threshold(g.num_vertices(), d_hat, 0.25);
        QuerySession s(g, 9);
        for (int i = 0; i < 2000; ++i) {
            EXPECT_LE(static_cast<double>(chi_sample(s, cfg)), cut);
        }
    }
}

TEST(ExpChi, FormulaMatchesOutcomeEnumeration) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Rational alpha = std::vector<Rational>{0, Rational(1, 10), Rational(3, 10), Rational(3, 5)}[seed % 4];
        const auto g = random_erased(40, 30 + 5 * seed, alpha, seed);
        for (double d_hat : {0.25, 1.0, 3.0, 12.0}) {
            EXPECT_EQ(exact_exp_chi(g, d_hat, 0.25), chi_moments(g, d_hat, 0.25).first);
        }
    }
}

TEST(ExpChi, EmpiricalMeanWithinFourSigma) {
    const auto g = random_erased(50, 120, Rational(3, 10), 12);
    const double d_hat = g.average_degree();
    const auto [mean, var] = chi_moments(g, d_hat, 0.25);
    const auto cfg = refine_config(0.25, d_hat);
    QuerySession s(g, 5);
    const int draws = 100000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        sum += static_cast<double>(chi_sample(s, cfg));
    }
    const double sigma = std::sqrt(boost::rational_cast<double>(var) / draws);
    EXPECT_LE(std::abs(sum / draws - boost::rational_cast<double>(mean)), 4 * sigma);
}

TEST(ExpChi, BoundsHoldForReasonableCrudeEstimates) {
    const std::vector<Rational> alphas{0, Rational(1, 10), Rational(3, 10), Rational(3, 5)};
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto alpha = alphas[seed % 4];
        const auto g = random_erased(40, 40 + 3 * seed, alpha, seed);
        const double d = g.average_degree();
        const double a = std::min(boost::rational_cast<double>(alpha), 0.5);
        for (double scale : {0.125, 0.5, 1.0, 2.0, 8.0}) {
            const double e = boost::rational_cast<double>(exact_exp_chi(g, scale * d, 0.25));
            EXPECT_GT(e, (1 - 0.125) * d / 2);
            EXPECT_LE(e, (1 + 2 * a) * d / 2 + 1e-12);
        }
    }
}

TEST(Refine, SampleCountFormula) {
    auto cfg = refine_config(0.25, 4.0);
    const double expected = 660.0 * std::log(8.0) * std::sqrt(200.0 / (std::pow(0.25, 5) * 4.0));
    EXPECT_EQ(refine_sample_count(200, cfg), static_cast<std::uint64_t>(std::ceil(expected)));
    cfg.epsilon = 0.5;
    EXPECT_THROW(refine_sample_count(200, cfg), InputError);
    cfg.epsilon = 0.25;
    cfg.delta = 0.5;
    EXPECT_THROW(refine_sample_count(200, cfg), InputError);
}

TEST(Refine, ValueIsTwiceTraceMean) {
    const auto g = random_erased(30, 60, Rational(1, 10), 2);
    auto cfg = refine_config(0.25, 4.0);
    cfg.constants.sample = 2.0;
    cfg.keep_trace = true;
    const auto est = refine_estimate(g, cfg);
    ASSERT_EQ(est.trace.size(), est.samples);
    std::uint64_t sum = 0;
    for (auto x : est.trace) {
        sum += x;
    }
    EXPECT_DOUBLE_EQ(est.value, 2.0 * static_cast<double>(sum) / static_cast<double>(est.samples));
    EXPECT_FALSE(est.conforming);
}

TEST(Refine, QueryAccountingIsExact) {
    const auto g = random_erased(40, 100, Rational(3, 10), 6);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        ASSERT_GT(g.degree(u), 0u) << "test needs a graph without isolated vertices";
    }
    auto cfg = refine_config(0.25, 3.0);
    cfg.constants.sample = 3.0;
    QuerySession s(g, 8);
    std::ostringstream trace;
    s.set_trace(&trace);
    const auto est = refine_estimate(s, cfg);
    std::istringstream lines(trace.str());
    std::string line;
    std::uint64_t non_erased = 0;
    while (std::getline(lines, line)) {
        if (line[0] == 'N' && line.back() != '*') {
            ++non_erased;
        }
    }
    EXPECT_EQ(est.queries.neighbor, est.samples);
    EXPECT_EQ(est.queries.degree, est.samples + non_erased);
}

TEST(Refine, DefaultConstantsAccurateWithoutErasures) {
    const auto g = gen_random_regularish(200, 4.0, 3).graph;
    const double d = g.average_degree();
    int good = 0;
    const int runs = 12;
    for (int r = 0; r < runs; ++r) {
        const auto est = refine_estimate(g, refine_config(0.25, d, split_seed(4, r)));
        EXPECT_TRUE(est.conforming);
        good += est.value > 0.75 * d && est.value < 1.25 * d;
    }
    // Failure probability per run is at most delta = 1/4.
    EXPECT_GE(good, 9);
}

TEST(Driver, RepetitionsAndIterations) {
    EXPECT_EQ(driver_repetitions(100), static_cast<std::uint32_t>(std::ceil(12 * std::log(4 * std::log2(100.0)))));
    EXPECT_EQ(driver_last_iteration(100), 7u);
    EXPECT_EQ(driver_last_iteration(128), 7u);
    EXPECT_EQ(driver_last_iteration(2), 1u);
    const auto g = parse_peg("peg 1\nn 1\n");
    EXPECT_THROW(estimate_avg_degree(g, 0.25, 1), InputError);
}

TEST(Driver, DefaultConstantsRunWithGuard) {
    const auto g = gen_random_regularish(100, 4.0, 1).graph;
    const double d = g.average_degree();
    const auto est = estimate_avg_degree(g, 0.25, 17);
    ASSERT_TRUE(est.iteration.has_value());
    EXPECT_TRUE(est.conforming);
    EXPECT_DOUBLE_EQ(est.crude_used, 100.0 / std::pow(2.0, *est.iteration));
    EXPECT_GE(est.crude_used, d / 8);
    EXPECT_GT(est.value, 0.75 * d);
    EXPECT_LT(est.value, 1.25 * d);
}

TEST(Driver, StarGraphWithinBand) {
    const std::size_t n = 400;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v < n; ++v) {
        edges.emplace_back(0, v);
    }
    const auto g = graph_from_edges(n, edges);
    const double d = g.average_degree();
    EstimatorConstants fast;
    fast.sample = 20.0;
    fast.repetition = 3.0;
    int good = 0;
    const int trials = 30;
    for (int t = 0; t < trials; ++t) {
        const auto est = estimate_avg_degree(g, 0.25, split_seed(5, t), fast);
        EXPECT_FALSE(est.conforming);
        good += est.value > 0.75 * d && est.value < 1.25 * d;
    }
    EXPECT_GE(good, 18);
}
