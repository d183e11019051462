#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "erg/instance_gen.hpp"
#include "erg/oracle.hpp"
#include "erg/peg_io.hpp"

using namespace erg;

namespace {

const char* kTriangle = "peg 1\nn 3\nv 0 1 2\nv 1 2 0\nv 2 0 1\n";

}  // namespace

TEST(Session, DegreeQueryCounts) {
    const auto g = parse_peg(kTriangle);
    QuerySession s(g, 1);
    EXPECT_EQ(s.counts().degree, 0u);
    EXPECT_EQ(s.q_degree(0), 2u);
    EXPECT_EQ(s.counts().degree, 1u);
    s.q_degree(0);
    EXPECT_EQ(s.counts().degree, 2u);  // no dedup
    EXPECT_EQ(s.counts().neighbor, 0u);
}

TEST(Session, ZeroBudgetThrowsBeforeAnswering) {
    const auto g = parse_peg(kTriangle);
    QuerySession s(g, 1);
    s.set_budget(QueryBudget{BudgetScope::Total, 0});
    EXPECT_THROW(s.q_degree(0), BudgetExhausted);
    EXPECT_EQ(s.counts().total(), 0u);
}

TEST(Session, BudgetScopesCountTheirOwnCounter) {
    const auto g = parse_peg(kTriangle);
    QuerySession s(g, 1);
    s.set_budget(QueryBudget{BudgetScope::Neighbor, 2});
    for (int i = 0; i < 5; ++i) {
        s.q_degree(1);
    }
    s.q_neighbor(1, 1);
    s.q_neighbor(1, 2);
    EXPECT_THROW(s.q_neighbor(0, 1), BudgetExhausted);
    EXPECT_EQ(s.counts().neighbor, 2u);
    EXPECT_EQ(s.counts().degree, 5u);
}

TEST(Session, NeighborQueriesCountAndCheckRange) {
    const auto g = parse_peg("peg 1\nn 3\nv 0 1\nv 1 * 2\nv 2 1\n");
    QuerySession s(g, 1);
    EXPECT_EQ(s.q_neighbor(1, 2), AdjEntry::vertex(2));
    EXPECT_TRUE(s.q_neighbor(1, 1).is_erased());
    EXPECT_EQ(s.counts().neighbor, 2u);
    EXPECT_THROW(s.q_neighbor(1, 3), InputError);
    EXPECT_EQ(s.counts().neighbor, 2u);
}

TEST(Session, RandomNeighborOfDegreeOne) {
    const auto g = parse_peg("peg 1\nn 2\nv 0 1\nv 1 0\n");
    QuerySession s(g, 5);
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(s.q_random_neighbor(0), AdjEntry::vertex(1));
    }
    // Only the first draw charges the degree query.
    EXPECT_EQ(s.counts().degree, 1u);
    EXPECT_EQ(s.counts().neighbor, 20u);
}

TEST(Session, RandomNeighborOfIsolatedVertex) {
    const auto g = parse_peg("peg 1\nn 2\n");
    QuerySession s(g, 5);
    EXPECT_FALSE(s.q_random_neighbor(0).has_value());
    EXPECT_EQ(s.counts().degree, 1u);
    EXPECT_EQ(s.counts().neighbor, 0u);
}

TEST(Session, RandomNeighborHitsErasedSlotAtRateOneQuarter) {
    const auto g = parse_peg("peg 1\nn 5\nv 0 1 2 * 4\nv 1 0\nv 2 0\nv 3 *\nv 4 0\n");
    QuerySession s(g, 42);
    const int draws = 100000;
    int erased = 0;
    for (int i = 0; i < draws; ++i) {
        erased += s.q_random_neighbor(0)->is_erased() ? 1 : 0;
    }
    const double p = 0.25;
    const double sigma = std::sqrt(draws * p * (1 - p));
    EXPECT_LE(std::abs(erased - draws * p), 3 * sigma);
}

TEST(Session, DeterministicUnderSameSeed) {
    const auto g = gen_random_gnm(50, 120, 3).graph;
    auto run = [&](std::uint64_t seed) {
        QuerySession s(g, seed);
        std::ostringstream trace;
        s.set_trace(&trace);
        for (int i = 0; i < 200; ++i) {
            const auto v = s.sample_vertex();
            s.q_random_neighbor(v);
        }
        return trace.str();
    };
    EXPECT_EQ(run(11), run(11));
    EXPECT_NE(run(11), run(12));
}

TEST(Session, TraceFormat) {
    const auto g = parse_peg("peg 1\nn 3\nv 0 1\nv 1 * 2\nv 2 1\n");
    QuerySession s(g, 1);
    std::ostringstream trace;
    s.set_trace(&trace);
    s.q_degree(1);
    s.q_neighbor(1, 1);
    s.q_neighbor(1, 2);
    EXPECT_EQ(trace.str(), "D 1\nN 1 1 -> *\nN 1 2 -> 2\n");
}

TEST(Filter, MatchesDirectListsWithoutErasures) {
    const auto g = gen_random_gnm(30, 50, 8, 5).graph;
    QuerySession s(g, 1);
    FilterOracle f(s, 5);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        ASSERT_EQ(f.degree(u), g.degree(u));
        for (std::size_t i = 1; i <= g.degree(u); ++i) {
            EXPECT_EQ(f.neighbor(u, i), g.neighbor(u, i).id());
        }
        for (std::size_t i = g.degree(u) + 1; i <= 5; ++i) {
            EXPECT_FALSE(f.neighbor(u, i).has_value());
        }
    }
}

TEST(Filter, DropsHalfErasedEdgesOnBothSides) {
    const auto g = parse_peg("peg 1\nn 3\nv 0 1\nv 1 * 2\nv 2 1\n");
    QuerySession s(g, 1);
    FilterOracle f(s, 2);
    EXPECT_TRUE(f.list(0).empty());
    EXPECT_EQ(f.list(1), std::vector<Vertex>{2});
    EXPECT_EQ(f.list(2), std::vector<Vertex>{1});
}

TEST(Filter, CacheHitsAreFree) {
    const auto g = parse_peg(kTriangle);
    QuerySession s(g, 1);
    FilterOracle f(s, 2);
    f.list(0);
    const auto after_first = s.counts().total();
    f.degree(0);
    f.neighbor(0, 2);
    EXPECT_EQ(s.counts().total(), after_first);
    EXPECT_EQ(f.misses().size(), 1u);
}

TEST(Filter, DegreeAboveBoundIsInputError) {
    const auto g = parse_peg(kTriangle);
    QuerySession s(g, 1);
    FilterOracle f(s, 1);
    EXPECT_THROW(f.list(0), InputError);
}

TEST(Filter, PerMissChargeWithinBound) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t d = 2 + seed % 7;
        const auto base = gen_random_gnm(40, 40 * d / 3, seed, d).graph;
        const auto g = erase(base, Rational(1, 4), ErasureStrategy::Uniform, seed);
        QuerySession s(g, seed);
        FilterOracle f(s, d);
        for (Vertex u = 0; u < g.num_vertices(); ++u) {
            f.list(u);
        }
        for (const auto& miss : f.misses()) {
            EXPECT_LE(miss.charged.neighbor, d * (d + 1));
            EXPECT_LE(miss.charged.degree, d + 1);
        }
    }
}
