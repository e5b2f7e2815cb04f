#pragma once

#include "ckspec/scalar.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ckspec {

// Vertex of the realized graph.
//   depth == 0: core vertex `base`
//   depth  > 0: vertex number `depth` of the tail rooted at `base`
//   depth  < 0: vertex number `-depth` of the head ray ending at `base`
struct Vertex {
    int base = 0;
    int depth = 0;
    auto operator<=>(const Vertex&) const = default;
};

// Edge of the realized graph.
//   depth == 0: core edge `base`
//   depth  > 0: tail edge entering tail vertex (base, depth)
//   depth  < 0: head edge leaving head vertex (base, depth)
struct Edge {
    int base = 0;
    int depth = 0;
    auto operator<=>(const Edge&) const = default;
};

using Degree = std::vector<int>;

// A path is its start vertex plus an edge sequence; length 0 is a vertex.
struct Path {
    Vertex start;
    std::vector<Edge> edges;

    size_t length() const { return edges.size(); }
    bool is_vertex() const { return edges.empty(); }
    auto operator<=>(const Path&) const = default;
};

struct CoreEdge {
    std::string id;
    int source = 0;
    int range = 0;
    int color = 1;
};

struct EdgeSpec {
    std::string id;
    std::string source;
    std::string range;
    int color = 1;
};

struct SquareSpec {
    std::string e, f;  // first pair, e then f
    std::string a, b;  // second pair, a then b
};

// Finitely presented directed graph (k = 1) or k-graph skeleton with squares.
//
// Edges run from source to range; a path e1 e2 ... has r(e_i) = s(e_{i+1}).
// For k = 1 every core vertex may carry a tail (an infinite ray leaving it), and every
// core vertex without entering edges carries an implied head (an infinite ray entering
// it), so the realized graph has no sources.
class Graph {
public:
    int k = 1;
    std::vector<std::string> vertex_ids;  // sorted
    std::vector<CoreEdge> edges;          // sorted by id
    std::vector<bool> tail;
    std::vector<bool> head;
    std::vector<std::vector<int>> out_core;
    std::vector<std::vector<int>> in_core;
    // (e, f) -> (a, b) with ef = ab; stored in both directions.
    std::map<std::pair<int, int>, std::pair<int, int>> squares;

    size_t num_vertices() const { return vertex_ids.size(); }
    size_t num_edges() const { return edges.size(); }
    bool has_rays() const;

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    std::optional<Vertex> find_vertex(const std::string& name) const;
    std::optional<Edge> find_edge(const std::string& name) const;
    std::string name(Vertex v) const;
    std::string name(Edge e) const;
    std::string name(const Path& p) const;

    Vertex source(Edge e) const;
    Vertex range(Edge e) const;
    int color(Edge e) const;
    std::vector<Edge> out_edges(Vertex v, int color = 0) const;
    std::vector<Edge> in_edges(Vertex v, int color = 0) const;
    bool is_sink(Vertex v) const;
    bool valid(Vertex v) const;

    Vertex range(const Path& p) const;
    Degree degree(const Path& p) const;
    Degree degree(Edge e) const;
    Path vertex_path(Vertex v) const { return Path{v, {}}; }
    Path edge_path(Edge e) const { return Path{source(e), {e}}; }
};

// Builds and validates a presentation. k = 1 permits tails; k >= 2 requires squares for
// every composable two-color pair and at least one edge of each color leaving each vertex.
Graph make_graph(int k, std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                 std::vector<std::string> tails = {}, std::vector<SquareSpec> squares = {});

Graph parse_graph(const std::string& text);
Graph parse_kgraph(const std::string& text);
// Dispatches on the "k" field.
Graph parse_presentation(const std::string& text);

struct StructuralReport {
    bool row_finite = true;
    bool locally_finite = true;
    std::vector<std::string> sinks;
    std::vector<std::string> sources;  // core sources; each carries an implied head
    int loops = 0;
    int loops_with_exit = 0;
    bool connected = true;
};

StructuralReport structural_report(const Graph& g);

struct End {
    enum class Kind { Sink, LoopWithoutExit, Tail };
    Kind kind = Kind::Sink;
    std::string id;
    int vertex = 0;          // sink, tail root, or first loop vertex
    std::vector<int> cycle;  // core edge indices for loops
};

std::vector<End> find_ends(const Graph& g);

// Simple cycles of the core, each as a core edge sequence starting at its smallest edge.
std::vector<std::vector<int>> simple_cycles(const Graph& g, size_t cap = 100000);
bool cycle_has_exit(const Graph& g, const std::vector<int>& cycle);

struct SingleEntryReport {
    bool holds = true;
    std::map<std::string, int> violations;  // vertex -> |v|_1
};

// Entry counts include the implied head of a source, so only |v|_1 >= 2 can fail.
SingleEntryReport single_entry_check(const Graph& g);

struct Classification {
    enum class Kind { SingleLoop, DirectedTree, Other };
    Kind kind = Kind::Other;
    int n = 0;
};

Classification classify(const Graph& g);
std::string to_string(const Classification& c);

// Connected components of the underlying undirected core graph, as vertex index lists.
std::vector<std::vector<int>> components(const Graph& g);

}  // namespace ckspec
