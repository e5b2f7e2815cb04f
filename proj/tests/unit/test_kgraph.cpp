#include "support.hpp"

#include "ckspec/kgraph.hpp"

#include <doctest.h>

#include <random>

using namespace ckspec;
using testsupport::corpus;

namespace {

Graph one_vertex(int k) {
    std::vector<EdgeSpec> es;
    std::vector<SquareSpec> sq;
    for (int c = 1; c <= k; ++c)
        es.push_back({"e" + std::to_string(c), "v", "v", c});
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
            std::string x = "e" + std::to_string(a), y = "e" + std::to_string(b);
            sq.push_back({x, y, y, x});
        }
    return make_graph(k, {"v"}, es, {}, sq);
}

std::vector<int> histogram(const Graph& g, const Path& p) {
    std::vector<int> h(g.k, 0);
    for (Edge e : p.edges)
        ++h[g.color(e) - 1];
    return h;
}

// All normal-form paths with degree <= bound starting at any vertex.
std::vector<Path> paths_up_to(const Graph& g, const Degree& bound) {
    std::vector<Path> out;
    Degree n(g.k, 0);
    std::function<void(int)> rec = [&](int c) {
        if (c == g.k) {
            for (size_t v = 0; v < g.num_vertices(); ++v)
                for (auto& p : enumerate_paths(g, n, Vertex{static_cast<int>(v), 0}, Direction::OutOf))
                    out.push_back(p);
            return;
        }
        for (int x = 0; x <= bound[c]; ++x) {
            n[c] = x;
            rec(c + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

TEST_SUITE("kgraph-model") {
    TEST_CASE("parse: torus and missing square") {
        Graph t = corpus("torus");
        CHECK(t.k == 2);
        CHECK(t.squares.size() == 2);
        CHECK_THROWS_AS(parse_kgraph(R"({"k": 2, "vertices": ["v"], "edges": [
            {"id": "e", "source": "v", "range": "v", "color": 1},
            {"id": "f", "source": "v", "range": "v", "color": 2}]})"),
                        Error);
    }

    TEST_CASE("parse: cube inconsistency is reported with the path") {
        // color-1 edges permuted by (a b) past f and by (b c) past g; the two do not commute
        const char* doc = R"({"k": 3, "vertices": ["v"], "edges": [
            {"id": "a", "source": "v", "range": "v", "color": 1},
            {"id": "b", "source": "v", "range": "v", "color": 1},
            {"id": "c", "source": "v", "range": "v", "color": 1},
            {"id": "f", "source": "v", "range": "v", "color": 2},
            {"id": "g", "source": "v", "range": "v", "color": 3}],
          "squares": [
            {"first": ["a", "f"], "second": ["f", "b"]},
            {"first": ["b", "f"], "second": ["f", "a"]},
            {"first": ["c", "f"], "second": ["f", "c"]},
            {"first": ["a", "g"], "second": ["g", "a"]},
            {"first": ["b", "g"], "second": ["g", "c"]},
            {"first": ["c", "g"], "second": ["g", "b"]},
            {"first": ["f", "g"], "second": ["g", "f"]}]})";
        try {
            parse_kgraph(doc);
            FAIL("expected a cube inconsistency");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("cube inconsistency") != std::string::npos);
        }
        // the same data with commuting permutations is accepted
        std::string ok = doc;
        auto swap_in = [&](const std::string& from, const std::string& to) { ok.replace(ok.find(from), from.size(), to); };
        swap_in(R"(["b", "g"], "second": ["g", "c"])", R"(["b", "g"], "second": ["g", "b"])");
        swap_in(R"(["c", "g"], "second": ["g", "b"])", R"(["c", "g"], "second": ["g", "c"])");
        CHECK_NOTHROW(parse_kgraph(ok));
    }

    TEST_CASE("segment examples") {
        Graph t = corpus("torus");
        Path ef = path_of(t, {"e", "f"});
        CHECK(segment(t, ef, {0, 0}, t.degree(ef)) == ef);
        CHECK(segment(t, ef, {0, 0}, {1, 0}) == path_of(t, {"e"}));
        CHECK(segment(t, ef, {1, 0}, {1, 1}) == path_of(t, {"f"}));
        CHECK_THROWS_AS(segment(t, ef, {0, 0}, {2, 0}), Error);
    }

    TEST_CASE("factorize examples") {
        Graph g = corpus("two_vertex_2graph");
        // ad = ca in the two-vertex 2-graph
        Path mu = path_of(g, {"a", "d"});
        CHECK(factorize(g, mu, {1, 2}) == std::vector<Path>{path_of(g, {"a"}), path_of(g, {"d"})});
        CHECK(factorize(g, mu, {2, 1}) == std::vector<Path>{path_of(g, {"c"}), path_of(g, {"a"})});
        Graph t = corpus("torus");
        Path ef = path_of(t, {"e", "f"});
        CHECK(factorize(t, ef, {2, 1}) == std::vector<Path>{path_of(t, {"f"}), path_of(t, {"e"})});
        CHECK_THROWS_AS(factorize(t, path_of(t, {"e"}), {1, 2}), Error);
    }

    TEST_CASE("enumerate_paths examples") {
        Graph t = corpus("torus");
        CHECK(enumerate_paths(t, {1, 1}, Vertex{0, 0}, Direction::OutOf).size() == 1);
        CHECK(enumerate_paths(t, {2, 1}, Vertex{0, 0}, Direction::Into).size() == 1);
        // 1-graph embedding agrees with a plain walk
        Graph tree = corpus("tree_4ends");
        Vertex r = *tree.find_vertex("r");
        auto two = enumerate_paths(tree, {2}, r, Direction::OutOf);
        size_t walk = 0;
        for (Edge e : tree.out_edges(r))
            walk += tree.out_edges(tree.range(e)).size();
        CHECK(two.size() == walk);
        CHECK(two.size() == 4);
    }

    TEST_CASE("single exit") {
        CHECK(single_exit_check(corpus("torus")).holds);
        CHECK(single_exit_check(corpus("two_vertex_2graph")).holds);
        CHECK(single_exit_check(corpus("cube_3graph")).holds);
        auto bad = single_exit_check(corpus("mutant_kgraph"));
        CHECK_FALSE(bad.holds);
        CHECK(bad.violations.at("v").at(1) == 2);
        CHECK(bad.violations.at("u").at(1) == 0);
    }

    TEST_CASE("permutations") {
        CHECK(all_permutations(3).size() == 6);
        CHECK(all_permutations(4).size() == 24);
        CHECK(permutation_sign({1, 2, 3}) == 1);
        CHECK(permutation_sign({2, 1, 3}) == -1);
        CHECK(permutation_sign({2, 3, 1}) == 1);
    }

    TEST_CASE("property: segment composition is exact up to degree (2,2)") {
        for (const char* name : {"torus", "two_vertex_2graph", "mutant_kgraph"}) {
            Graph g = corpus(name);
            for (const Path& lambda : paths_up_to(g, {2, 2})) {
                Degree d = g.degree(lambda);
                for (int m1 = 0; m1 <= d[0]; ++m1)
                    for (int m2 = 0; m2 <= d[1]; ++m2) {
                        Degree m{m1, m2};
                        Path left = segment(g, lambda, {0, 0}, m);
                        Path right = segment(g, lambda, m, d);
                        CHECK(g.degree(left) == m);
                        CHECK(concat(g, left, right) == lambda);
                    }
            }
        }
    }

    TEST_CASE("property: factorize then concatenate recovers mu for k <= 4") {
        std::vector<Graph> graphs = {corpus("torus"), corpus("two_vertex_2graph"), corpus("cube_3graph"), one_vertex(4)};
        for (const Graph& g : graphs) {
            for (size_t v = 0; v < g.num_vertices(); ++v)
                for (const Path& mu : enumerate_paths(g, Degree(g.k, 1), Vertex{static_cast<int>(v), 0}, Direction::OutOf))
                    for (const auto& sigma : all_permutations(g.k)) {
                        auto parts = factorize(g, mu, sigma);
                        REQUIRE(parts.size() == static_cast<size_t>(g.k));
                        Path acc = parts[0];
                        CHECK(g.degree(parts[0]) == basis_degree(g.k, sigma[0]));
                        for (int i = 1; i < g.k; ++i) {
                            CHECK(g.degree(parts[i]) == basis_degree(g.k, sigma[i]));
                            acc = concat(g, acc, parts[i]);
                        }
                        CHECK(acc == mu);
                    }
        }
    }

    TEST_CASE("property: degrees add and square moves keep the color histogram") {
        std::mt19937 rng(7);
        Graph g = corpus("two_vertex_2graph");
        for (int trial = 0; trial < 200; ++trial) {
            Path p = *testsupport::random_path(g, rng, 4);
            Path q{g.range(p), {}};
            int len = std::uniform_int_distribution<int>(0, 3)(rng);
            for (int i = 0; i < len; ++i) {
                auto out = g.out_edges(g.range(q));
                q.edges.push_back(out[std::uniform_int_distribution<size_t>(0, out.size() - 1)(rng)]);
            }
            Path raw = p;
            raw.edges.insert(raw.edges.end(), q.edges.begin(), q.edges.end());
            Path pq = concat(g, p, normalize(g, q));
            CHECK(g.degree(pq) == g.degree(p) + g.degree(q));
            CHECK(histogram(g, normalize(g, raw)) == histogram(g, raw));
            CHECK(normalize(g, raw) == pq);
        }
    }
}
