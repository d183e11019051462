#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "erg/exact.hpp"
#include "erg/instance_gen.hpp"

using namespace erg;

namespace {

std::int64_t as_int(std::size_t x) { return static_cast<std::int64_t>(x); }

// Sizes of the components formed by non-erased entries, sorted.
std::vector<std::size_t> component_sizes(const PartiallyErasedGraph& g) {
    const auto n = g.num_vertices();
    std::vector<int> label(n, -1);
    std::vector<std::vector<Vertex>> und(n);
    for (Vertex u = 0; u < n; ++u) {
        for (AdjEntry e : g.adj(u)) {
            if (!e.is_erased()) {
                und[u].push_back(e.id());
                und[e.id()].push_back(u);
            }
        }
    }
    std::vector<std::size_t> sizes;
    for (Vertex s = 0; s < n; ++s) {
        if (label[s] >= 0) {
            continue;
        }
        label[s] = static_cast<int>(sizes.size());
        std::vector<Vertex> stack{s};
        std::size_t size = 0;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            ++size;
            for (Vertex w : und[v]) {
                if (label[w] < 0) {
                    label[w] = label[s];
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<std::size_t> degree_multiset(const PartiallyErasedGraph& g) {
    std::vector<std::size_t> d;
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        d.push_back(g.degree(u));
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST(LowerBoundCycles, Arithmetic) {
    for (const auto& [eps, k] : {std::pair{Rational(1, 7), 4}, std::pair{Rational(1, 9), 6}, std::pair{Rational(1, 11), 2}}) {
        const auto t = ((1 - eps) / (2 * eps)).numerator();
        const auto plus = gen_gplus(eps, k, 5);
        const auto minus = gen_gminus(eps, k, 5);
        for (const auto* inst : {&plus, &minus}) {
            const auto& g = inst->graph;
            EXPECT_EQ(as_int(g.num_vertices()), k * t + 1);
            EXPECT_EQ(g.erased_entries(), static_cast<std::size_t>(k));
            EXPECT_TRUE(validate(g).empty());
            ASSERT_EQ(inst->marked.size(), static_cast<std::size_t>(k));
            for (Vertex v : inst->marked) {
                EXPECT_EQ(g.degree(v), 3u);
                EXPECT_EQ(g.erased_in(v), 1u);
            }
        }
        EXPECT_EQ(as_int(plus.graph.num_edges()), k * (t + 1));
        EXPECT_EQ(as_int(minus.graph.num_edges()), k * t + k / 2);
        EXPECT_EQ(plus.graph.degree(*plus.hub), static_cast<std::size_t>(k));
        EXPECT_EQ(minus.graph.degree(*minus.hub), 0u);
        EXPECT_EQ(plus.graph.erasure_fraction(), Rational(1, 2 * (t + 1)));
        EXPECT_EQ(minus.certified_min_components, static_cast<std::size_t>(k / 2 + 1));
    }
}

TEST(LowerBoundCycles, DistancesAndCompletions) {
    const auto plus = gen_gplus(Rational(1, 7), 4, 9);
    const auto minus = gen_gminus(Rational(1, 7), 4, 9);
    EXPECT_EQ(enumerate_completions(plus.graph).completions.size(), 1u);
    EXPECT_EQ(distance_to_connectedness(plus.graph), Rational(0));
    // The degree-3 nodes pair up among themselves: 3 matchings of 4 slots.
    EXPECT_EQ(enumerate_completions(minus.graph).completions.size(), 3u);
    EXPECT_EQ(min_components_over_completions(minus.graph), *minus.certified_min_components);
    EXPECT_EQ(distance_to_connectedness(minus.graph), Rational(1, 7));
}

TEST(LowerBoundCycles, SameShapeAcrossSeeds) {
    const auto a = gen_gminus(Rational(1, 9), 6, 1);
    const auto b = gen_gminus(Rational(1, 9), 6, 2);
    EXPECT_EQ(degree_multiset(a.graph), degree_multiset(b.graph));
    EXPECT_EQ(component_sizes(a.graph), component_sizes(b.graph));
    EXPECT_NE(a.graph, b.graph);
    EXPECT_EQ(gen_gminus(Rational(1, 9), 6, 1).graph, a.graph);
}

TEST(LowerBoundCycles, RejectsBadParameters) {
    EXPECT_THROW(gen_gplus(Rational(1, 5), 4, 0), InputError);   // t = 2
    EXPECT_THROW(gen_gplus(Rational(1, 8), 4, 0), InputError);   // t = 7/2
    EXPECT_THROW(gen_gminus(Rational(1, 7), 3, 0), InputError);  // odd k
    EXPECT_THROW(gen_gminus(Rational(1, 7), 0, 0), InputError);
    EXPECT_THROW(gen_gminus(Rational(0), 4, 0), InputError);
}

TEST(LowerBoundDegree, Arithmetic) {
    for (const auto& [alpha, n] : {std::pair{Rational(1, 3), 41}, std::pair{Rational(1, 7), 57}, std::pair{Rational(1, 2), 31}}) {
        const auto lambda = 2 * alpha / (1 + alpha);
        const auto leaves = lambda * as_int(n - 1);
        ASSERT_EQ(leaves.denominator(), 1);
        const auto g1 = gen_g1(alpha, n, 3);
        const auto g2 = gen_g2(alpha, n, 3);
        EXPECT_EQ(as_int(g1.marked.size()), leaves.numerator());
        EXPECT_EQ(g2.graph.degree(*g2.hub), 0u);
        EXPECT_EQ(as_int(g1.graph.degree(*g1.hub)), leaves.numerator());
        for (Vertex v : g2.marked) {
            EXPECT_EQ(g2.graph.degree(v), 1u);
            EXPECT_EQ(g2.graph.erased_in(v), 1u);
        }
        EXPECT_EQ(g2.graph.erasure_fraction(), lambda / (2 - lambda));
        EXPECT_EQ(g2.graph.erasure_fraction(), alpha);
        EXPECT_LE(g1.graph.erasure_fraction(), alpha);
        EXPECT_EQ(g1.graph.average_degree_exact() / g2.graph.average_degree_exact(), 1 + alpha);
        EXPECT_TRUE(validate(g1.graph).empty());
        EXPECT_TRUE(validate(g2.graph).empty());
    }
    const auto a = gen_g1(Rational(1, 3), 41, 0);
    const auto b = gen_g2(Rational(1, 3), 41, 0);
    EXPECT_EQ(a.graph.average_degree_exact() / b.graph.average_degree_exact(), Rational(4, 3));
}

TEST(LowerBoundDegree, CompletionsPairTheLeaves) {
    const auto g1 = gen_g1(Rational(1, 3), 13, 4);  // 6 leaves
    const auto g2 = gen_g2(Rational(1, 3), 13, 4);
    EXPECT_EQ(enumerate_completions(g1.graph).completions.size(), 1u);
    const auto e = enumerate_completions(g2.graph);
    EXPECT_EQ(e.completions.size(), 15u);  // 5!! matchings of 6 leaves
    for (const auto& c : e.completions) {
        const auto full = apply_completion(g2.graph, c);
        for (Vertex v : g2.marked) {
            const auto w = full.adj(v)[0].id();
            EXPECT_NE(std::find(g2.marked.begin(), g2.marked.end(), w), g2.marked.end());
        }
    }
}

TEST(LowerBoundDegree, RejectsBadParameters) {
    EXPECT_THROW(gen_g1(Rational(1, 3), 40, 0), InputError);  // lambda (n-1) = 39/2
    EXPECT_THROW(gen_g2(Rational(0), 41, 0), InputError);
    EXPECT_THROW(gen_g2(Rational(1), 9, 0), InputError);  // no room for the cycle
}

TEST(FigComponents, Shapes) {
    const auto two = gen_fig_component(GadgetKind::TwoErasure, 1, 3, 12);
    EXPECT_EQ(two.graph.num_vertices(), 3u * 4 + 12);
    EXPECT_EQ(two.graph.erased_entries(), 6u);
    EXPECT_TRUE(validate(two.graph).empty());
    const auto one = gen_fig_component(GadgetKind::OneErasureAnchored, 1, 5, 10);
    EXPECT_EQ(one.graph.num_vertices(), 5u * 3 + 10);
    EXPECT_EQ(one.graph.erased_entries(), 5u);
    EXPECT_EQ(one.marked.size(), 15u);
    EXPECT_EQ(one.marked.front(), *one.hub);
    EXPECT_EQ(one.graph.degree(*one.hub), 1u);
    EXPECT_EQ(distance_to_connectedness(one.graph), Rational(5, as_int(one.graph.num_edges())));
    EXPECT_THROW(gen_fig_component(GadgetKind::TwoErasure, 1, 0), InputError);
}

TEST(Erase, AlphaZeroIsIdentity) {
    const auto g = gen_random_gnm(50, 120, 3).graph;
    for (auto s : {ErasureStrategy::Uniform, ErasureStrategy::Symmetric, ErasureStrategy::ComponentHiding}) {
        EXPECT_EQ(erase(g, Rational(0), s, 7), g);
    }
}

TEST(Erase, AlphaOneUniformErasesEverything) {
    const auto g = gen_random_gnm(30, 60, 3).graph;
    const auto e = erase(g, Rational(1), ErasureStrategy::Uniform, 1);
    EXPECT_EQ(e.erased_entries(), e.total_entries());
    EXPECT_EQ(degree_multiset(e), degree_multiset(g));
}

TEST(Erase, BudgetAndCompletability) {
    const auto g = gen_random_gnm(60, 150, 8).graph;
    for (const auto& alpha : {Rational(1, 10), Rational(1, 4), Rational(3, 7)}) {
        const auto budget = alpha * 2 * as_int(g.num_edges());
        const auto u = erase(g, alpha, ErasureStrategy::Uniform, 2);
        EXPECT_EQ(as_int(u.erased_entries()), boost::rational_cast<std::int64_t>(budget));
        const auto s = erase(g, alpha, ErasureStrategy::Symmetric, 2);
        EXPECT_EQ(as_int(s.erased_entries()), 2 * boost::rational_cast<std::int64_t>(alpha * as_int(g.num_edges())));
        for (const auto* e : {&u, &s}) {
            EXPECT_LE(e->erasure_fraction(), alpha);
            EXPECT_TRUE(validate(*e).empty());
            EXPECT_EQ(degree_multiset(*e), degree_multiset(g));
        }
    }
}

TEST(Erase, SymmetricErasesBothDirections) {
    const auto g = gen_random_gnm(40, 100, 4).graph;
    const auto s = erase(g, Rational(1, 3), ErasureStrategy::Symmetric, 5);
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        for (std::size_t i = 1; i <= g.degree(u); ++i) {
            if (!s.neighbor(u, i).is_erased()) {
                EXPECT_EQ(s.neighbor(u, i), g.neighbor(u, i));
                continue;
            }
            const auto v = g.neighbor(u, i).id();
            bool erased_back = false;
            for (std::size_t j = 1; j <= g.degree(v); ++j) {
                erased_back = erased_back || (g.neighbor(v, j).id() == u && s.neighbor(v, j).is_erased());
            }
            EXPECT_TRUE(erased_back);
        }
    }
}

TEST(Erase, HidingTouchesSmallestComponentsFirst) {
    const std::size_t lengths[] = {3, 3, 4, 10, 20};
    const auto g = gen_cycle_union(lengths, 2).graph;  // m = 40
    const auto e = erase(g, Rational(3, 80), ErasureStrategy::ComponentHiding, 3);  // budget 3
    EXPECT_EQ(e.erased_entries(), 3u);
    std::map<std::size_t, std::size_t> erased_by_size;
    const auto sizes = component_sizes(g);
    // Component of each vertex in g, by size.
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        if (e.erased_in(u) > 0) {
            // A vertex on a cycle of length L has degree 2; find L by walking.
            std::size_t len = 1;
            Vertex prev = u;
            Vertex cur = g.adj(u)[0].id();
            while (cur != u) {
                const auto a = g.adj(cur);
                const Vertex next = a[0].id() == prev ? a[1].id() : a[0].id();
                prev = cur;
                cur = next;
                ++len;
            }
            ++erased_by_size[len];
        }
    }
    EXPECT_EQ(erased_by_size, (std::map<std::size_t, std::size_t>{{3, 2}, {4, 1}}));
    EXPECT_EQ(sizes.size(), 5u);
}

TEST(FarForest, PlainWitnessesWithoutErasures) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = gen_far_forest(Rational(1, 5), Rational(0), 200, 2.5, ErasureStrategy::Uniform, seed, 4);
        const auto& g = inst.graph;
        const auto comps = component_sizes(g).size();
        EXPECT_EQ(g.erased_entries(), 0u);
        EXPECT_EQ(inventory_witnesses(g).plain.size(), comps);
        EXPECT_GE(Rational(as_int(comps) - 1), Rational(1, 5) * as_int(g.num_edges()));
        EXPECT_EQ(inst.certified_min_components, comps);
    }
}

TEST(FarForest, CertificateHoldsUnderErasures) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto strategy = seed % 2 ? ErasureStrategy::ComponentHiding : ErasureStrategy::Uniform;
        const auto inst = gen_far_forest(Rational(1, 5), Rational(1, 10), 36, 2.0, strategy, seed, 4);
        const auto& g = inst.graph;
        EXPECT_LE(g.erasure_fraction(), Rational(1, 10));
        ASSERT_TRUE(inst.certified_min_components.has_value());
        const auto exact = min_components_over_completions(g);
        EXPECT_GE(exact, *inst.certified_min_components);
        EXPECT_GE(distance_to_connectedness(g), Rational(1, 5));
    }
}

TEST(FarForest, HidingLeavesNoPlainWitness) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = gen_far_forest(Rational(1, 5), Rational(3, 20), 300, 2.0,
                                         ErasureStrategy::ComponentHiding, seed, 4);
        EXPECT_TRUE(inventory_witnesses(inst.graph).plain.empty());
        EXPECT_GE(Rational(as_int(*inst.certified_min_components) - 1), Rational(1, 5) * as_int(inst.graph.num_edges()));
    }
}

TEST(FarForest, InfeasibleThrows) {
    EXPECT_THROW(gen_far_forest(Rational(9, 10), Rational(0), 20, 3.0, ErasureStrategy::Uniform, 0), InputError);
    EXPECT_THROW(gen_far_forest(Rational(1, 5), Rational(1), 50, 2.0, ErasureStrategy::Uniform, 0), InputError);
}

TEST(RandomFamilies, DegreesAndCounts) {
    const auto r = gen_random_regularish(100, 4, 2).graph;
    EXPECT_EQ(r.num_edges(), 200u);
    const auto d = degree_multiset(r);
    EXPECT_GE(d.front(), 2u);
    EXPECT_LE(d.back(), 7u);
    EXPECT_EQ(component_sizes(r).size(), 1u);
    const auto g = gen_random_gnm(80, 150, 2, 5).graph;
    EXPECT_EQ(g.num_edges(), 150u);
    EXPECT_LE(degree_multiset(g).back(), 5u);
    EXPECT_TRUE(is_valid_complete_graph(g));
    EXPECT_THROW(gen_random_gnm(4, 7, 0), InputError);
}

TEST(RandomFamilies, PermuteKeepsShape) {
    const std::size_t lengths[] = {3, 5, 8};
    auto inst = gen_cycle_union(lengths, 0);
    const auto moved = permute_labels(inst, 99);
    EXPECT_EQ(component_sizes(moved.graph), component_sizes(inst.graph));
    EXPECT_EQ(degree_multiset(moved.graph), degree_multiset(inst.graph));
    EXPECT_EQ(parse_strategy("component-hiding"), ErasureStrategy::ComponentHiding);
    EXPECT_THROW(parse_strategy("bogus"), InputError);
}
