#include "support.hpp"

#include "ckspec/hochschild.hpp"
#include "ckspec/kgraph.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ckspec;
using testsupport::corpus;

namespace {

Element flatten(const Graph& g, const Chain& c) {
    REQUIRE(c.arity == 1);
    Element out(g);
    for (const auto& [f, coef] : c.terms)
        out += Element(g, f[0], coef);
    return out;
}

Chain random_chain(const Graph& g, std::mt19937& rng, size_t arity, int terms) {
    Chain c(g, arity);
    for (int t = 0; t < terms; ++t) {
        std::vector<Element> factors;
        for (size_t i = 0; i < arity; ++i)
            factors.push_back(testsupport::random_element(g, rng, 1, 2));
        c.add_tensor(factors, testsupport::random_gauss(rng));
    }
    return c;
}

// Coefficient of p_v in b(c) from entry counts alone.
Gauss entry_formula(const Graph& g, int v) {
    long entries = static_cast<long>(g.in_core[v].size()) + (g.head[v] ? 1 : 0);
    bool sink = g.out_core[v].empty() && !g.tail[v];
    return Gauss(sink ? entries : entries - 1);
}

}  // namespace

TEST_SUITE("hochschild") {
    TEST_CASE("boundary examples") {
        Graph g = corpus("tree_2ends");
        Element x = Element::edge(g, *g.find_edge("e"));
        Element y = Element::edge_star(g, *g.find_edge("e"));
        Chain c(g, 2);
        c.add_tensor({x, y}, Gauss(1));
        CHECK(flatten(g, boundary(c)) == x * y - y * x);

        Graph loop = corpus("loop1");
        Chain cyc = orientation_cycle_1graph(loop, 0);
        REQUIRE(cyc.terms.size() == 1);
        Element s = Element::edge(loop, Edge{0, 0});
        CHECK(cyc.terms.begin()->first == std::vector<Key>{star(s.terms.begin()->first), s.terms.begin()->first});
        CHECK(flatten(loop, boundary(cyc)) == involution(s) * s - s * involution(s));
        CHECK(flatten(loop, boundary(cyc)).is_zero());
        CHECK_THROWS_AS(boundary(Chain(g, 1)), Error);
    }

    TEST_CASE("property: b o b = 0 on random chains") {
        std::mt19937 rng(707);
        for (const char* name : {"loop2", "tree_2ends", "mutant_entry2", "torus", "two_vertex_2graph"}) {
            Graph g = corpus(name);
            for (int t = 0; t < 15; ++t) {
                CHECK(is_zero(boundary(boundary(random_chain(g, rng, 3, 3)))));
                CHECK(is_zero(boundary(boundary(random_chain(g, rng, 4, 2)))));
            }
        }
    }

    TEST_CASE("property: b(c) follows the entry-count formula") {
        std::vector<std::string> names = testsupport::good_1graphs();
        for (const char* m : {"mutant_entry2", "mutant_entry3", "mutant_sink", "mutant_two_loops", "mutant_loop_exit"})
            names.push_back(m);
        for (const auto& name : names) {
            Graph g = corpus(name);
            CAPTURE(name);
            for (int T = 1; T <= 3; ++T) {
                Element b = flatten(g, boundary(orientation_cycle_1graph(g, T)));
                CHECK(b == predicted_boundary_1graph(g, T));
                for (size_t v = 0; v < g.num_vertices(); ++v) {
                    Key pv = vertex_key(Vertex{static_cast<int>(v), 0});
                    Gauss coef = b.terms.count(pv) ? b.terms.at(pv) : Gauss(0);
                    CHECK(coef == entry_formula(g, static_cast<int>(v)));
                }
            }
        }
    }

    TEST_CASE("property: single entry without sinks gives b(c) = 0 and pi_D(c) = 1 inside the truncation") {
        for (const auto& name : testsupport::good_1graphs()) {
            Graph g = corpus(name);
            CAPTURE(name);
            for (int T = 1; T <= 4; ++T) {
                Chain c = orientation_cycle_1graph(g, T);
                for (const auto& [key, coef] : flatten(g, boundary(c)).terms)
                    CHECK(std::abs(key.mu.start.depth) >= T);
                Element pd = pi_D(c);
                for (size_t v = 0; v < g.num_vertices(); ++v)
                    CHECK(pd.terms.count(vertex_key(Vertex{static_cast<int>(v), 0})));
                for (const auto& [key, coef] : pd.terms) {
                    if (std::abs(key.mu.start.depth) >= T)
                        continue;
                    CHECK(key.mu == key.nu);
                    CHECK(key.mu.is_vertex());
                    CHECK(coef == Gauss(1));
                }
            }
        }
    }

    TEST_CASE("pi_D of an arity-2 chain unwinds to x[D,y] - y[D,x]") {
        std::mt19937 rng(808);
        Graph g = corpus("tree_3ends");
        for (int t = 0; t < 20; ++t) {
            Element x = testsupport::random_element(g, rng, 2, 2);
            Element y = testsupport::random_element(g, rng, 2, 2);
            Chain c(g, 2);
            c.add_tensor({x, y}, Gauss(1));
            c.add_tensor({y, x}, Gauss(-1));
            CHECK(pi_D(c) == x * dirac_commutator(y) - y * dirac_commutator(x));
        }
    }

    TEST_CASE("torus c_2 matches the hand expansion") {
        Graph t = corpus("torus");
        OrientationCycle oc = orientation_cycle_kgraph(t);
        CHECK(oc.scalar_i_power == 2);
        Path ef = path_of(t, {"e", "f"});
        Key mu_star = star(Key{ef, Path{t.range(ef), {}}});
        Key se{path_of(t, {"e"}), Path{Vertex{0, 0}, {}}};
        Key sf{path_of(t, {"f"}), Path{Vertex{0, 0}, {}}};
        Chain expected(t, 3);
        expected.add({mu_star, se, sf}, Gauss(Rational(1, 2)));
        expected.add({mu_star, sf, se}, Gauss(Rational(-1, 2)));
        Chain diff = oc.body;
        diff -= expected;
        CHECK(is_zero(diff));
    }

    TEST_CASE("k-graph cycles are closed and represent the volume form") {
        for (const auto& name : testsupport::good_kgraphs()) {
            Graph g = corpus(name);
            CAPTURE(name);
            OrientationCycle oc = orientation_cycle_kgraph(g);
            CHECK(is_zero(boundary(oc.body)));
            PiDReport pr = pi_D_report(g, oc);
            CHECK(pr.symbol_matches);
            CHECK(pr.projection_is_identity);
            CancellationReport cr = verify_cancellation_steps(g);
            CHECK(cr.first_step_identity);
            CHECK(cr.step_i);
            CHECK(cr.step_ii);
            CHECK(cr.step_iii);
            CHECK(cr.boundary_zero);
            CHECK(cr.failing_step.empty());
        }
    }

    TEST_CASE("single exit violation fails at step iii with a witness vertex") {
        Graph g = corpus("mutant_kgraph");
        CHECK_THROWS_AS(orientation_cycle_kgraph(g), Error);
        CancellationReport cr = verify_cancellation_steps(g);
        CHECK_FALSE(cr.boundary_zero);
        CHECK(cr.failing_step == "iii");
        REQUIRE_FALSE(cr.witnesses.empty());
        bool saw_v = false;
        for (const auto& w : cr.witnesses)
            saw_v |= w.vertex == "v" && w.multiplicity == 2;
        CHECK(saw_v);
    }

    TEST_CASE("property: cycles are equivariant under relabeling") {
        std::mt19937 rng(909);
        for (const char* name : {"tree_3ends", "mutant_entry2", "two_vertex_2graph"}) {
            Graph g = corpus(name);
            std::vector<std::string> names;
            for (size_t v = 0; v < g.num_vertices(); ++v)
                names.push_back("z" + std::to_string(v));
            std::shuffle(names.begin(), names.end(), rng);
            Graph h = testsupport::relabel(g, names);
            if (g.k == 1) {
                auto renamed = [](const Graph& x, const std::vector<std::string>& ids, const Element& b) {
                    std::multiset<std::string> out;
                    for (const auto& [key, c] : b.terms) {
                        REQUIRE(key.mu.is_vertex());
                        Vertex v = key.mu.start;
                        std::string full = x.name(v);
                        out.insert(ids[v.base] + full.substr(x.vertex_ids[v.base].size()) + ":" + to_string(c));
                    }
                    return out;
                };
                Element bg = flatten(g, boundary(orientation_cycle_1graph(g, 2)));
                Element bh = flatten(h, boundary(orientation_cycle_1graph(h, 2)));
                CHECK(renamed(g, names, bg) == renamed(h, h.vertex_ids, bh));
            } else {
                OrientationCycle cg = orientation_cycle_kgraph(g), ch = orientation_cycle_kgraph(h);
                CHECK(cg.body.terms.size() == ch.body.terms.size());
                CHECK(is_zero(boundary(ch.body)));
            }
        }
    }
}
