#include "ckspec/kgraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ckspec {

int permutation_sign(const Permutation& sigma) {
    int inversions = 0;
    for (size_t i = 0; i < sigma.size(); ++i)
        for (size_t j = i + 1; j < sigma.size(); ++j)
            if (sigma[i] > sigma[j])
                ++inversions;
    return inversions % 2 ? -1 : 1;
}

std::vector<Permutation> all_permutations(int k) {
    Permutation p(k);
    std::iota(p.begin(), p.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Path make_path(const Graph& g, Vertex start, std::vector<Edge> edges) {
    if (!g.valid(start))
        throw Error(Error::Kind::Validation, "invalid start vertex");
    Vertex at = start;
    for (Edge e : edges) {
        if (g.source(e) != at)
            throw Error(Error::Kind::Validation, "edge " + g.name(e) + " does not continue the path at " + g.name(at));
        at = g.range(e);
    }
    return Path{start, std::move(edges)};
}

Path path_of(const Graph& g, const std::vector<std::string>& edge_names) {
    if (edge_names.empty())
        throw Error(Error::Kind::Validation, "empty edge list");
    std::vector<Edge> edges;
    for (const auto& n : edge_names) {
        auto e = g.find_edge(n);
        if (!e)
            throw Error(Error::Kind::Validation, "unknown edge \"" + n + "\"");
        edges.push_back(*e);
    }
    Vertex s = g.source(edges.front());
    return make_path(g, s, std::move(edges));
}

std::vector<Edge> reorder(const Graph& g, std::vector<Edge> edges, const std::vector<int>& colors) {
    if (colors.size() != edges.size())
        throw Error(Error::Kind::Precondition, "color word length mismatch");
    for (size_t i = 0; i < edges.size(); ++i) {
        size_t j = i;
        while (j < edges.size() && g.color(edges[j]) != colors[i])
            ++j;
        if (j == edges.size())
            throw Error(Error::Kind::Precondition, "color word does not match the path's degree");
        for (; j > i; --j) {
            auto it = g.squares.find({edges[j - 1].base, edges[j].base});
            if (edges[j - 1].depth != 0 || edges[j].depth != 0 || it == g.squares.end())
                throw Error(Error::Kind::Internal, "no square for " + g.name(edges[j - 1]) + " " + g.name(edges[j]));
            edges[j - 1] = Edge{it->second.first, 0};
            edges[j] = Edge{it->second.second, 0};
        }
    }
    return edges;
}

namespace {

std::vector<int> sorted_colors(const Degree& d) {
    std::vector<int> out;
    for (size_t c = 0; c < d.size(); ++c)
        out.insert(out.end(), d[c], static_cast<int>(c) + 1);
    return out;
}

}  // namespace

Path normalize(const Graph& g, Path p) {
    if (g.k == 1 || p.edges.size() < 2)
        return p;
    p.edges = reorder(g, std::move(p.edges), sorted_colors(g.degree(p)));
    return p;
}

Path concat(const Graph& g, const Path& p, const Path& q) {
    if (g.range(p) != q.start)
        throw Error(Error::Kind::Precondition, "paths are not composable");
    Path r{p.start, p.edges};
    r.edges.insert(r.edges.end(), q.edges.begin(), q.edges.end());
    if (g.k == 1 || p.is_vertex() || q.is_vertex())
        return r;
    return normalize(g, std::move(r));
}

Path segment(const Graph& g, const Path& lambda, const Degree& m, const Degree& n) {
    Degree d = g.degree(lambda);
    if (m.size() != d.size() || n.size() != d.size())
        throw Error(Error::Kind::Precondition, "degree has wrong rank");
    for (size_t c = 0; c < d.size(); ++c)
        if (m[c] < 0 || m[c] > n[c] || n[c] > d[c])
            throw Error(Error::Kind::Precondition, "segment degrees out of range");
    std::vector<int> word = sorted_colors(m);
    auto mid = sorted_colors(n - m);
    auto rest = sorted_colors(d - n);
    size_t a = word.size(), b = a + mid.size();
    word.insert(word.end(), mid.begin(), mid.end());
    word.insert(word.end(), rest.begin(), rest.end());
    std::vector<Edge> edges = g.k == 1 ? lambda.edges : reorder(g, lambda.edges, word);
    Vertex start = a == 0 ? lambda.start : g.range(edges[a - 1]);
    return Path{start, std::vector<Edge>(edges.begin() + a, edges.begin() + b)};
}

std::vector<Path> factorize(const Graph& g, const Path& mu, const Permutation& sigma) {
    if (g.degree(mu) != unit_degree(g.k) || static_cast<int>(sigma.size()) != g.k)
        throw Error(Error::Kind::Precondition, "factorize needs a path of degree (1,...,1) and a permutation of rank k");
    std::vector<Edge> edges = reorder(g, mu.edges, sigma);
    std::vector<Path> out;
    for (Edge e : edges)
        out.push_back(g.edge_path(e));
    return out;
}

std::vector<Path> enumerate_paths(const Graph& g, const Degree& n, Vertex v, Direction dir, int max_level) {
    if (static_cast<int>(n.size()) != g.k)
        throw Error(Error::Kind::Precondition, "degree has wrong rank");
    for (int x : n) {
        if (x < 0)
            throw Error(Error::Kind::Precondition, "negative degree");
        if (x > max_level)
            throw Error(Error::Kind::Precondition, "truncation exceeded");
    }
    std::vector<int> word = sorted_colors(n);
    std::vector<Path> out;
    std::vector<Edge> stack;
    if (dir == Direction::OutOf) {
        std::function<void(Vertex, size_t)> walk = [&](Vertex at, size_t i) {
            if (i == word.size()) {
                out.push_back(Path{v, stack});
                return;
            }
            for (Edge e : g.out_edges(at, word[i])) {
                stack.push_back(e);
                walk(g.range(e), i + 1);
                stack.pop_back();
            }
        };
        walk(v, 0);
    } else {
        std::function<void(Vertex, size_t)> walk = [&](Vertex at, size_t i) {
            if (i == word.size()) {
                out.push_back(Path{at, std::vector<Edge>(stack.rbegin(), stack.rend())});
                return;
            }
            for (Edge e : g.in_edges(at, word[word.size() - 1 - i])) {
                stack.push_back(e);
                walk(g.source(e), i + 1);
                stack.pop_back();
            }
        };
        walk(v, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SingleExitReport single_exit_check(const Graph& g) {
    SingleExitReport r;
    for (size_t v = 0; v < g.num_vertices(); ++v)
        for (int c = 1; c <= g.k; ++c) {
            int count = static_cast<int>(g.in_edges(Vertex{static_cast<int>(v), 0}, c).size());
            if (count != 1) {
                r.holds = false;
                r.violations[g.vertex_ids[v]][c] = count;
            }
        }
    return r;
}

Degree unit_degree(int k) { return Degree(k, 1); }

Degree basis_degree(int k, int color) {
    Degree d(k, 0);
    d[color - 1] = 1;
    return d;
}

Degree operator+(const Degree& a, const Degree& b) {
    Degree r(a);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

Degree operator-(const Degree& a, const Degree& b) {
    Degree r(a);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] -= b[i];
    return r;
}

Degree join(const Degree& a, const Degree& b) {
    Degree r(a);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

bool leq(const Degree& a, const Degree& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

bool is_zero(const Degree& d) {
    return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

}  // namespace ckspec
