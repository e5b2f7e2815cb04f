#include "support.hpp"

#include "ckspec/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ckspec;
using testsupport::corpus;

namespace {

Vertex core(const Graph& g, const std::string& name) { return *g.find_vertex(name); }

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("truncation basis is orthogonal with gram tau(p_r(mu))") {
        for (const char* name : {"loop1", "tree_2ends", "chain_tail"}) {
            CAPTURE(name);
            Graph g = corpus(name);
            GraphTrace t = solve_graph_trace(g);
            Truncation tr = build_truncation(g, t, 2);
            REQUIRE(tr.size() > 0);
            for (size_t i = 0; i < tr.size(); ++i) {
                CHECK(tr.gram[i] == t.value(g.range(tr.basis[i].mu)));
                for (size_t j = i; j < std::min(tr.size(), i + 6); ++j) {
                    Gauss ip = tr.inner(tr.element(i), tr.element(j));
                    CHECK(ip == (i == j ? Gauss(tr.gram[i]) : Gauss()));
                }
                auto coords = tr.project(tr.element(i));
                REQUIRE(coords.size() == 1);
                CHECK(coords.begin()->first == i);
            }
        }
    }

    TEST_CASE("D is self-adjoint with integer spectrum on 1-graphs") {
        Graph g = corpus("tree_2ends");
        Truncation tr = build_truncation(g, solve_graph_trace(g), 3);
        TruncatedOperator d = build_D(tr);
        CHECK(is_self_adjoint(d, tr));
        auto mult = eigen_multiplicities(d);
        size_t total = 0;
        for (const auto& [lambda, m] : mult) {
            CHECK(lambda.get_den() == 1);
            CHECK(abs(lambda) <= 3);
            total += m;
        }
        CHECK(total == tr.size());

        Graph torus = corpus("torus");
        Truncation tt = build_truncation(torus, solve_graph_trace(torus), 2);
        CHECK(is_self_adjoint(build_D(tt), tt));
    }

    TEST_CASE("p_v Phi_n decomposes into rank-one Theta terms") {
        for (const char* name : {"loop1", "tree_1end", "tree_2ends", "tree_3ends"}) {
            CAPTURE(name);
            Graph g = corpus(name);
            GraphTrace t = solve_graph_trace(g);
            Truncation tr = build_truncation(g, t, 3);
            for (size_t v = 0; v < g.num_vertices(); ++v) {
                Vertex x{static_cast<int>(v), 0};
                if (!tr.in_window(x))
                    continue;
                for (int n = -2; n <= 2; ++n) {
                    CAPTURE(n);
                    ThetaDecomposition d = decompose_projection(tr, x, {n});
                    CHECK_FALSE(projection_mismatch(tr, d, x, {n}).has_value());
                    CHECK(semifinite_trace(d, t) == Gauss(t.value(x)));
                    CHECK(projection_trace(g, t, x, {n}) == t.value(x));
                }
            }
        }
    }

    TEST_CASE("torus projections carry tau(p_v)") {
        Graph g = corpus("torus");
        GraphTrace t = solve_graph_trace(g);
        Vertex v{0, 0};
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b)
                CHECK(projection_trace(g, t, v, {a, b}) == t.value(v));
    }

    TEST_CASE("property: Theta composition agrees with operator composition") {
        std::mt19937 rng(4242);
        Graph g = corpus("tree_2ends");
        GraphTrace t = solve_graph_trace(g);
        auto theta = [&](int terms) {
            ThetaDecomposition d;
            d.graph = &g;
            for (int i = 0; i < terms; ++i)
                d.terms.push_back({testsupport::random_gauss(rng), testsupport::random_element(g, rng, 1, 2),
                                   testsupport::random_element(g, rng, 1, 2)});
            return d;
        };
        for (int trial = 0; trial < 25; ++trial) {
            ThetaDecomposition s = theta(2), u = theta(2);
            Element z = testsupport::random_element(g, rng);
            CHECK(apply(compose(s, u), z) == apply(s, apply(u, z)));
        }
    }

    TEST_CASE("circle profile approaches 2") {
        Graph g = corpus("loop1");
        GraphTrace t = solve_graph_trace(g);
        SpectralProfile p = singular_profile(g, t, core(g, "v"), 100000);
        REQUIRE(p.limit_estimate);
        CHECK(std::abs(*p.limit_estimate - 2.0) < 0.02);
        CHECK(p.band_low <= p.final_value);
        CHECK(p.final_value <= p.band_high);
        CHECK(p.multiplicities_validated);
        CHECK_FALSE(p.samples.empty());

        ZetaCheck z = zeta_check(p);
        CHECK(z.relative_error < 0.05);
    }

    TEST_CASE("tree profiles approach 2 tau(p_v)") {
        Graph g = corpus("tree_2ends");
        GraphTrace t = solve_graph_trace(g);
        for (size_t v = 0; v < g.num_vertices(); ++v) {
            Vertex x{static_cast<int>(v), 0};
            SpectralProfile p = singular_profile(g, t, x, 100000);
            REQUIRE(p.limit_estimate);
            double expected = 2.0 * t.value(x).get_d();
            CHECK(std::abs(*p.limit_estimate - expected) <= 0.05 * expected);
        }
    }

    TEST_CASE("closedness vanishes on generators") {
        Graph g = corpus("loop2");
        GraphTrace t = solve_graph_trace(g);
        for (const Element& a : algebra_generators(g)) {
            ClosednessResult r = closedness_eval(g, t, {a});
            CHECK(r.route == "gauge");
            CHECK(r.value == Gauss());
        }

        Graph torus = corpus("torus");
        GraphTrace tt = solve_graph_trace(torus);
        auto gens = algebra_generators(torus);
        for (const Element& a : gens)
            for (const Element& b : gens) {
                ClosednessResult r = closedness_eval(torus, tt, {a, b});
                CHECK(r.route == "determinant");
                CHECK(r.value == Gauss());
                CHECK(r.determinant_identity);
                CHECK(r.zero_sum_forces_zero_det);
            }
    }

    TEST_CASE("first order, reality and spin_c on 1-graphs") {
        for (const char* name : {"loop1", "tree_2ends", "chain_tail"}) {
            CAPTURE(name);
            Graph g = corpus(name);
            Truncation tr = build_truncation(g, solve_graph_trace(g), 3);
            FirstOrderReport f = first_order_check(tr);
            CHECK(f.order_zero);
            CHECK(f.first_order);
            CHECK(f.violations.empty());
            CHECK(f.checks > 0);
            // the circle algebra is commutative, so left and right actions agree there
            CHECK(f.left_action_counterexample_found == (std::string(name) != "loop1"));

            RealityReport r = reality_check_1graph(tr);
            CHECK(r.j_squared);
            CHECK(r.jdj);
            CHECK(r.right_action);
            CHECK(r.isometric);

            SpinCReport s = spin_c_generation_check(tr);
            CHECK(s.holds);
            CHECK(s.achieved_dimension == s.expected_dimension);
        }
    }

    TEST_CASE("commutant probe separates components") {
        Graph loop = corpus("loop1");
        CommutantReport one = commutant_probe(build_truncation(loop, solve_graph_trace(loop), 3));
        CHECK(one.interior_dimension == 1);

        Graph two = corpus("mutant_two_loops");
        CommutantReport both = commutant_probe(build_truncation(two, solve_graph_trace(two), 3));
        CHECK(both.interior_dimension == 2);
    }
}
