#pragma once

#include "ckspec/algebra.hpp"
#include "ckspec/graph.hpp"
#include "ckspec/kgraph.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline std::string corpus_path(const std::string& name) { return std::string(CKSPEC_CORPUS_DIR) + "/" + name + ".json"; }

inline ckspec::Graph corpus(const std::string& name) {
    std::ifstream in(corpus_path(name));
    std::ostringstream s;
    s << in.rdbuf();
    return ckspec::parse_presentation(s.str());
}

// Single-entry 1-graphs without sinks.
inline const std::vector<std::string>& good_1graphs() {
    static const std::vector<std::string> names = {"loop1",     "loop2",      "loop3",      "loop5",
                                                   "tree_1end", "tree_2ends", "tree_3ends", "tree_4ends",
                                                   "chain_tail", "spine",     "tail_only",  "dyadic_d3"};
    return names;
}

inline const std::vector<std::string>& good_kgraphs() {
    static const std::vector<std::string> names = {"torus", "two_vertex_2graph", "cube_3graph"};
    return names;
}

inline const std::vector<std::string>& mutants() {
    static const std::vector<std::string> names = {"mutant_entry2",    "mutant_sink",   "mutant_two_loops",
                                                   "mutant_loop_exit", "mutant_kgraph", "mutant_entry3"};
    return names;
}

// Renames every vertex through `names` (indexed like g.vertex_ids) and rebuilds.
inline ckspec::Graph relabel(const ckspec::Graph& g, const std::vector<std::string>& names) {
    std::vector<std::string> vs;
    std::vector<ckspec::EdgeSpec> es;
    std::vector<std::string> tails;
    std::vector<ckspec::SquareSpec> squares;
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        vs.push_back(names[v]);
        if (g.tail[v])
            tails.push_back(names[v]);
    }
    for (const auto& e : g.edges)
        es.push_back({e.id, names[e.source], names[e.range], e.color});
    for (const auto& [ef, ab] : g.squares)
        if (g.edges[ef.first].color < g.edges[ef.second].color)
            squares.push_back({g.edges[ef.first].id, g.edges[ef.second].id, g.edges[ab.first].id, g.edges[ab.second].id});
    return ckspec::make_graph(g.k, vs, es, tails, squares);
}

// Spine s0 -> s1 -> ... -> sD with a branch s_i -> b_i at every step; tails on every b_i
// and on sD. With end values 2^{-(i+1)} on b_i and 2^{-D} on sD the trace halves along
// the spine.
inline ckspec::Graph dyadic_spine(int depth) {
    std::vector<std::string> vs;
    std::vector<ckspec::EdgeSpec> es;
    std::vector<std::string> tails;
    auto s = [](int i) { return "s" + std::to_string(i); };
    auto b = [](int i) { return "b" + std::to_string(i); };
    for (int i = 0; i <= depth; ++i)
        vs.push_back(s(i));
    for (int i = 0; i < depth; ++i) {
        vs.push_back(b(i));
        tails.push_back(b(i));
        es.push_back({"e" + std::to_string(i), s(i), s(i + 1), 1});
        es.push_back({"f" + std::to_string(i), s(i), b(i), 1});
    }
    tails.push_back(s(depth));
    return ckspec::make_graph(1, vs, es, tails);
}

inline std::map<std::string, ckspec::Rational> dyadic_spine_ends(int depth) {
    std::map<std::string, ckspec::Rational> out;
    for (int i = 0; i < depth; ++i)
        out["tail:b" + std::to_string(i)] = ckspec::Rational(1, 1UL << (i + 1));
    out["tail:s" + std::to_string(depth)] = ckspec::Rational(1, 1UL << depth);
    return out;
}

// Random path of exact degree n from a random core vertex, following out-edges.
inline std::optional<ckspec::Path> random_path(const ckspec::Graph& g, std::mt19937& rng, int max_len) {
    using namespace ckspec;
    std::uniform_int_distribution<int> pick_v(0, static_cast<int>(g.num_vertices()) - 1);
    Vertex v{pick_v(rng), 0};
    int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    Path p{v, {}};
    for (int i = 0; i < len; ++i) {
        auto out = g.out_edges(g.range(p));
        if (out.empty())
            break;
        p.edges.push_back(out[std::uniform_int_distribution<size_t>(0, out.size() - 1)(rng)]);
    }
    if (g.k > 1 && !p.edges.empty())
        p = normalize(g, p);
    return p;
}

// Random key S_mu S_nu^* with r(mu) == r(nu): pick mu, then a path nu ending at r(mu)
// by walking backwards.
inline ckspec::Key random_key(const ckspec::Graph& g, std::mt19937& rng, int max_len) {
    using namespace ckspec;
    Path mu = *random_path(g, rng, max_len);
    Vertex r = g.range(mu);
    int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    std::vector<Edge> rev;
    Vertex cur = r;
    for (int i = 0; i < len; ++i) {
        auto in = g.in_edges(cur);
        if (in.empty())
            break;
        Edge e = in[std::uniform_int_distribution<size_t>(0, in.size() - 1)(rng)];
        rev.push_back(e);
        cur = g.source(e);
    }
    Path nu{cur, std::vector<Edge>(rev.rbegin(), rev.rend())};
    if (g.k > 1 && !nu.edges.empty())
        nu = normalize(g, nu);
    return Key{mu, nu};
}

inline ckspec::Gauss random_gauss(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    ckspec::Rational re(num(rng), den(rng)), im(num(rng), den(rng));
    re.canonicalize();
    im.canonicalize();
    return ckspec::Gauss(re, im);
}

inline ckspec::Element random_element(const ckspec::Graph& g, std::mt19937& rng, int terms = 3, int max_len = 2) {
    ckspec::Element a(g);
    for (int i = 0; i < terms; ++i)
        a += ckspec::Element(g, random_key(g, rng, max_len), random_gauss(rng));
    return a;
}

}  // namespace testsupport
