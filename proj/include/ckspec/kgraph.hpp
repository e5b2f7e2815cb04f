#pragma once

#include "ckspec/graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace ckspec {

// Permutation of {1..k} stored as the sequence (sigma(1), ..., sigma(k)).
using Permutation = std::vector<int>;

int permutation_sign(const Permutation& sigma);
// All permutations of {1..k} in lexicographic order.
std::vector<Permutation> all_permutations(int k);

// Validates composability; throws on a broken path.
Path make_path(const Graph& g, Vertex start, std::vector<Edge> edges);
// Path through the named edges (at least one).
Path path_of(const Graph& g, const std::vector<std::string>& edge_names);

// Reshuffles an edge sequence by square moves so that its colors read `colors`.
std::vector<Edge> reorder(const Graph& g, std::vector<Edge> edges, const std::vector<int>& colors);

// Color-sorted representative (nondecreasing colors).
Path normalize(const Graph& g, Path p);
// Requires r(p) == s(q).
Path concat(const Graph& g, const Path& p, const Path& q);
// The unique factor lambda(m, n) with 0 <= m <= n <= d(lambda).
Path segment(const Graph& g, const Path& lambda, const Degree& m, const Degree& n);
// (mu^sigma_1, ..., mu^sigma_k) for mu of degree (1, ..., 1).
std::vector<Path> factorize(const Graph& g, const Path& mu, const Permutation& sigma);

enum class Direction { Into, OutOf };

// Normal-form paths of degree n with range v (Into) or source v (OutOf).
std::vector<Path> enumerate_paths(const Graph& g, const Degree& n, Vertex v, Direction dir,
                                  int max_level = 16);

struct SingleExitReport {
    bool holds = true;
    // vertex -> color -> number of edges of that color entering the vertex
    std::map<std::string, std::map<int, int>> violations;
};

// Every vertex receives exactly one edge of each color. With this codebase's edge
// direction this is the condition |Lambda^{e_i} v| = 1 of the reversed convention.
SingleExitReport single_exit_check(const Graph& g);

Degree unit_degree(int k);
Degree basis_degree(int k, int color);
Degree operator+(const Degree& a, const Degree& b);
Degree operator-(const Degree& a, const Degree& b);
Degree join(const Degree& a, const Degree& b);
bool leq(const Degree& a, const Degree& b);
bool is_zero(const Degree& d);

}  // namespace ckspec
