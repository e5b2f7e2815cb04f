#include "ckspec/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace ckspec {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Error::Kind::Validation, what); }
[[noreturn]] void syntax(const std::string& what) { throw Error(Error::Kind::Syntax, what); }

bool parse_suffix(const std::string& s, size_t pos, int& out) {
    if (pos >= s.size())
        return false;
    int v = 0;
    for (size_t i = pos; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            return false;
        v = v * 10 + (s[i] - '0');
        if (v > 100000000)
            return false;
    }
    if (v == 0)
        return false;
    out = v;
    return true;
}

}  // namespace

bool Graph::has_rays() const {
    for (size_t v = 0; v < num_vertices(); ++v)
        if (tail[v] || head[v])
            return true;
    return false;
}

int Graph::vertex_index(const std::string& id) const {
    auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), id);
    if (it == vertex_ids.end() || *it != id)
        return -1;
    return static_cast<int>(it - vertex_ids.begin());
}

int Graph::edge_index(const std::string& id) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), id,
                               [](const CoreEdge& e, const std::string& s) { return e.id < s; });
    if (it == edges.end() || it->id != id)
        return -1;
    return static_cast<int>(it - edges.begin());
}

std::optional<Vertex> Graph::find_vertex(const std::string& name) const {
    auto pos = name.find('~');
    if (pos == std::string::npos) {
        int v = vertex_index(name);
        if (v < 0)
            return std::nullopt;
        return Vertex{v, 0};
    }
    int base = vertex_index(name.substr(0, pos));
    if (base < 0 || pos + 1 >= name.size())
        return std::nullopt;
    int d = 0;
    char kind = name[pos + 1];
    if (!parse_suffix(name, pos + 2, d))
        return std::nullopt;
    if (kind == 't' && tail[base])
        return Vertex{base, d};
    if (kind == 'h' && head[base])
        return Vertex{base, -d};
    return std::nullopt;
}

std::optional<Edge> Graph::find_edge(const std::string& name) const {
    auto pos = name.find('~');
    if (pos == std::string::npos) {
        int e = edge_index(name);
        if (e < 0)
            return std::nullopt;
        return Edge{e, 0};
    }
    int base = vertex_index(name.substr(0, pos));
    if (base < 0 || pos + 2 >= name.size() || name[pos + 2] != 'e')
        return std::nullopt;
    int d = 0;
    char kind = name[pos + 1];
    if (!parse_suffix(name, pos + 3, d))
        return std::nullopt;
    if (kind == 't' && tail[base])
        return Edge{base, d};
    if (kind == 'h' && head[base])
        return Edge{base, -d};
    return std::nullopt;
}

std::string Graph::name(Vertex v) const {
    const std::string& b = vertex_ids[v.base];
    if (v.depth == 0)
        return b;
    if (v.depth > 0)
        return b + "~t" + std::to_string(v.depth);
    return b + "~h" + std::to_string(-v.depth);
}

std::string Graph::name(Edge e) const {
    if (e.depth == 0)
        return edges[e.base].id;
    const std::string& b = vertex_ids[e.base];
    if (e.depth > 0)
        return b + "~te" + std::to_string(e.depth);
    return b + "~he" + std::to_string(-e.depth);
}

std::string Graph::name(const Path& p) const {
    if (p.is_vertex())
        return name(p.start);
    std::string s;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        if (i)
            s += ' ';
        s += name(p.edges[i]);
    }
    return s;
}

Vertex Graph::source(Edge e) const {
    if (e.depth == 0)
        return Vertex{edges[e.base].source, 0};
    if (e.depth > 0)
        return Vertex{e.base, e.depth - 1};
    return Vertex{e.base, e.depth};
}

Vertex Graph::range(Edge e) const {
    if (e.depth == 0)
        return Vertex{edges[e.base].range, 0};
    if (e.depth > 0)
        return Vertex{e.base, e.depth};
    return Vertex{e.base, e.depth + 1};
}

int Graph::color(Edge e) const { return e.depth == 0 ? edges[e.base].color : 1; }

std::vector<Edge> Graph::out_edges(Vertex v, int c) const {
    std::vector<Edge> out;
    if (v.depth == 0) {
        for (int e : out_core[v.base])
            if (c == 0 || edges[e].color == c)
                out.push_back(Edge{e, 0});
        if (tail[v.base] && (c == 0 || c == 1))
            out.push_back(Edge{v.base, 1});
    } else if (c == 0 || c == 1) {
        out.push_back(v.depth > 0 ? Edge{v.base, v.depth + 1} : Edge{v.base, v.depth});
    }
    return out;
}

std::vector<Edge> Graph::in_edges(Vertex v, int c) const {
    std::vector<Edge> in;
    if (v.depth == 0) {
        if (head[v.base] && (c == 0 || c == 1))
            in.push_back(Edge{v.base, -1});
        for (int e : in_core[v.base])
            if (c == 0 || edges[e].color == c)
                in.push_back(Edge{e, 0});
    } else if (c == 0 || c == 1) {
        in.push_back(v.depth > 0 ? Edge{v.base, v.depth} : Edge{v.base, v.depth - 1});
    }
    return in;
}

bool Graph::is_sink(Vertex v) const {
    return v.depth == 0 && out_core[v.base].empty() && !tail[v.base];
}

bool Graph::valid(Vertex v) const {
    if (v.base < 0 || v.base >= static_cast<int>(num_vertices()))
        return false;
    if (v.depth > 0)
        return tail[v.base];
    if (v.depth < 0)
        return head[v.base];
    return true;
}

Vertex Graph::range(const Path& p) const { return p.is_vertex() ? p.start : range(p.edges.back()); }

Degree Graph::degree(const Path& p) const {
    Degree d(k, 0);
    for (Edge e : p.edges)
        ++d[color(e) - 1];
    return d;
}

Degree Graph::degree(Edge e) const {
    Degree d(k, 0);
    d[color(e) - 1] = 1;
    return d;
}

namespace {

// Applies the square move at position i of a colored edge sequence.
bool swap_at(const Graph& g, std::vector<int>& seq, size_t i) {
    auto it = g.squares.find({seq[i], seq[i + 1]});
    if (it == g.squares.end())
        return false;
    seq[i] = it->second.first;
    seq[i + 1] = it->second.second;
    return true;
}

void check_cubes(const Graph& g) {
    for (size_t e = 0; e < g.num_edges(); ++e)
        for (int f : g.out_core[g.edges[e].range])
            for (int h : g.out_core[g.edges[f].range]) {
                int ce = g.edges[e].color, cf = g.edges[f].color, ch = g.edges[h].color;
                if (ce == cf || cf == ch || ce == ch)
                    continue;
                std::vector<int> a{static_cast<int>(e), f, h};
                std::vector<int> b = a;
                bool ok = swap_at(g, a, 0) && swap_at(g, a, 1) && swap_at(g, a, 0);
                ok = ok && swap_at(g, b, 1) && swap_at(g, b, 0) && swap_at(g, b, 1);
                if (!ok || a != b)
                    invalid("cube inconsistency on path " + g.edges[e].id + " " + g.edges[f].id + " " +
                            g.edges[h].id);
            }
}

}  // namespace

Graph make_graph(int k, std::vector<std::string> vertices, std::vector<EdgeSpec> edge_specs,
                 std::vector<std::string> tails, std::vector<SquareSpec> squares) {
    if (k < 1)
        invalid("rank k must be positive");
    if (vertices.empty())
        invalid("presentation has no vertices");
    Graph g;
    g.k = k;
    std::sort(vertices.begin(), vertices.end());
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].empty() || vertices[i].find('~') != std::string::npos)
            invalid("invalid vertex id \"" + vertices[i] + "\"");
        if (i && vertices[i] == vertices[i - 1])
            invalid("duplicate vertex id \"" + vertices[i] + "\"");
    }
    g.vertex_ids = vertices;
    std::sort(edge_specs.begin(), edge_specs.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    for (size_t i = 0; i < edge_specs.size(); ++i) {
        const EdgeSpec& s = edge_specs[i];
        if (s.id.empty() || s.id.find('~') != std::string::npos)
            invalid("invalid edge id \"" + s.id + "\"");
        if (i && s.id == edge_specs[i - 1].id)
            invalid("duplicate edge id \"" + s.id + "\"");
        int src = g.vertex_index(s.source), rng = g.vertex_index(s.range);
        if (src < 0)
            invalid("edge \"" + s.id + "\" references undeclared vertex \"" + s.source + "\"");
        if (rng < 0)
            invalid("edge \"" + s.id + "\" references undeclared vertex \"" + s.range + "\"");
        if (s.color < 1 || s.color > k)
            invalid("edge \"" + s.id + "\" has color " + std::to_string(s.color) + " outside 1.." +
                    std::to_string(k));
        g.edges.push_back(CoreEdge{s.id, src, rng, s.color});
    }
    size_t n = g.num_vertices();
    g.out_core.assign(n, {});
    g.in_core.assign(n, {});
    for (size_t e = 0; e < g.num_edges(); ++e) {
        g.out_core[g.edges[e].source].push_back(static_cast<int>(e));
        g.in_core[g.edges[e].range].push_back(static_cast<int>(e));
    }
    g.tail.assign(n, false);
    g.head.assign(n, false);
    if (k > 1 && !tails.empty())
        invalid("tails are only supported for k = 1");
    for (const auto& t : tails) {
        int v = g.vertex_index(t);
        if (v < 0)
            invalid("tail mark references undeclared vertex \"" + t + "\"");
        if (g.tail[v])
            invalid("duplicate tail mark on \"" + t + "\"");
        if (!g.out_core[v].empty())
            invalid("tail mark on \"" + t + "\", which emits edges; a tail root must be a sink of the core");
        g.tail[v] = true;
    }
    if (k == 1) {
        if (!squares.empty())
            invalid("squares require k >= 2");
        for (size_t v = 0; v < n; ++v)
            g.head[v] = g.in_core[v].empty();
        return g;
    }

    for (const auto& sq : squares) {
        int e = g.edge_index(sq.e), f = g.edge_index(sq.f), a = g.edge_index(sq.a), b = g.edge_index(sq.b);
        for (auto [id, idx] : {std::pair{sq.e, e}, {sq.f, f}, {sq.a, a}, {sq.b, b}})
            if (idx < 0)
                invalid("square references undeclared edge \"" + id + "\"");
        const CoreEdge &E = g.edges[e], &F = g.edges[f], &A = g.edges[a], &B = g.edges[b];
        std::string label = sq.e + " " + sq.f + " = " + sq.a + " " + sq.b;
        if (E.range != F.source || A.range != B.source || E.source != A.source || F.range != B.range)
            invalid("square endpoint mismatch in " + label);
        if (E.color == F.color || A.color != F.color || B.color != E.color)
            invalid("square color mismatch in " + label);
        if (!g.squares.emplace(std::pair{e, f}, std::pair{a, b}).second ||
            !g.squares.emplace(std::pair{a, b}, std::pair{e, f}).second)
            invalid("duplicate square for " + label);
    }
    for (size_t e = 0; e < g.num_edges(); ++e)
        for (int f : g.out_core[g.edges[e].range])
            if (g.edges[e].color != g.edges[f].color && !g.squares.count({static_cast<int>(e), f}))
                invalid("missing square for composable pair " + g.edges[e].id + " " + g.edges[f].id);
    for (size_t v = 0; v < n; ++v)
        for (int c = 1; c <= k; ++c)
            if (g.out_edges(Vertex{static_cast<int>(v), 0}, c).empty())
                invalid("vertex \"" + g.vertex_ids[v] + "\" emits no edge of color " + std::to_string(c));
    if (k >= 3)
        check_cubes(g);
    return g;
}

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        size_t upto = e.byte == 0 ? 0 : std::min<size_t>(e.byte - 1, text.size());
        for (size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        syntax("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
               e.what());
    }
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    if (!obj.is_object())
        syntax(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            known = known || it.key() == k;
        if (!known)
            syntax("unknown field \"" + it.key() + "\" in " + where);
    }
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string())
        syntax(where + " needs string field \"" + key + "\"");
    return obj[key].get<std::string>();
}

std::vector<std::string> get_strings(const json& obj, const char* key, bool required) {
    std::vector<std::string> out;
    if (!obj.contains(key)) {
        if (required)
            syntax(std::string("missing field \"") + key + "\"");
        return out;
    }
    if (!obj[key].is_array())
        syntax(std::string("field \"") + key + "\" must be an array");
    for (const auto& v : obj[key]) {
        if (!v.is_string())
            syntax(std::string("field \"") + key + "\" must contain strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

Graph from_document(const json& doc, bool allow_k_graph) {
    only_keys(doc, {"k", "vertices", "edges", "tails", "squares"}, "presentation");
    if (!doc.contains("k") || !doc["k"].is_number_integer())
        syntax("missing integer field \"k\"");
    int k = doc["k"].get<int>();
    if (k < 1)
        invalid("rank k must be positive");
    if (k > 1 && !allow_k_graph)
        invalid("expected a 1-graph (k = 1)");
    auto vertices = get_strings(doc, "vertices", true);
    auto tails = get_strings(doc, "tails", false);
    std::vector<EdgeSpec> edges;
    if (!doc.contains("edges") || !doc["edges"].is_array())
        syntax("missing array field \"edges\"");
    for (const auto& e : doc["edges"]) {
        only_keys(e, {"id", "source", "range", "color"}, "edge");
        EdgeSpec s;
        s.id = get_string(e, "id", "edge");
        s.source = get_string(e, "source", "edge \"" + s.id + "\"");
        s.range = get_string(e, "range", "edge \"" + s.id + "\"");
        if (e.contains("color")) {
            if (!e["color"].is_number_integer())
                syntax("edge \"" + s.id + "\" color must be an integer");
            s.color = e["color"].get<int>();
        } else if (k > 1) {
            syntax("edge \"" + s.id + "\" needs a color");
        }
        edges.push_back(s);
    }
    std::vector<SquareSpec> squares;
    if (doc.contains("squares")) {
        if (!doc["squares"].is_array())
            syntax("field \"squares\" must be an array");
        for (const auto& sq : doc["squares"]) {
            only_keys(sq, {"first", "second"}, "square");
            auto first = get_strings(sq, "first", true);
            auto second = get_strings(sq, "second", true);
            if (first.size() != 2 || second.size() != 2)
                syntax("square pairs must have two edge ids each");
            squares.push_back(SquareSpec{first[0], first[1], second[0], second[1]});
        }
    }
    return make_graph(k, vertices, edges, tails, squares);
}

}  // namespace

Graph parse_graph(const std::string& text) { return from_document(parse_json(text), false); }

Graph parse_kgraph(const std::string& text) {
    json doc = parse_json(text);
    Graph g = from_document(doc, true);
    if (g.k == 1) {
        for (size_t v = 0; v < g.num_vertices(); ++v)
            if (g.out_core[v].empty() || g.tail[v])
                invalid("vertex \"" + g.vertex_ids[v] + "\" emits no edge of color 1");
    }
    return g;
}

Graph parse_presentation(const std::string& text) { return from_document(parse_json(text), true); }

std::vector<std::vector<int>> components(const Graph& g) {
    size_t n = g.num_vertices();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& e : g.edges)
        parent[find(e.source)] = find(e.range);
    std::map<int, std::vector<int>> groups;
    for (size_t v = 0; v < n; ++v)
        groups[find(static_cast<int>(v))].push_back(static_cast<int>(v));
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups)
        out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> simple_cycles(const Graph& g, size_t cap) {
    std::vector<std::vector<int>> cycles;
    size_t n = g.num_vertices();
    std::vector<bool> on_path(n, false);
    std::vector<int> stack;
    for (size_t s = 0; s < n; ++s) {
        std::function<void(int)> dfs = [&](int v) {
            for (int e : g.out_core[v]) {
                int w = g.edges[e].range;
                if (w == static_cast<int>(s)) {
                    stack.push_back(e);
                    cycles.push_back(stack);
                    stack.pop_back();
                    if (cycles.size() > cap)
                        throw Error(Error::Kind::Precondition, "too many cycles to enumerate");
                } else if (w > static_cast<int>(s) && !on_path[w]) {
                    on_path[w] = true;
                    stack.push_back(e);
                    dfs(w);
                    stack.pop_back();
                    on_path[w] = false;
                }
            }
        };
        on_path[s] = true;
        dfs(static_cast<int>(s));
        on_path[s] = false;
    }
    for (auto& c : cycles)
        std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

bool cycle_has_exit(const Graph& g, const std::vector<int>& cycle) {
    for (int e : cycle) {
        int v = g.edges[e].source;
        if (g.out_core[v].size() + (g.tail[v] ? 1 : 0) > 1)
            return true;
    }
    return false;
}

StructuralReport structural_report(const Graph& g) {
    StructuralReport r;
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        if (g.is_sink(Vertex{static_cast<int>(v), 0}))
            r.sinks.push_back(g.vertex_ids[v]);
        if (g.in_core[v].empty())
            r.sources.push_back(g.vertex_ids[v]);
    }
    for (const auto& c : simple_cycles(g)) {
        ++r.loops;
        if (cycle_has_exit(g, c))
            ++r.loops_with_exit;
    }
    r.connected = components(g).size() == 1;
    return r;
}

std::vector<End> find_ends(const Graph& g) {
    std::vector<End> ends;
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        int vi = static_cast<int>(v);
        if (g.is_sink(Vertex{vi, 0}))
            ends.push_back(End{End::Kind::Sink, "sink:" + g.vertex_ids[v], vi, {}});
        if (g.tail[v])
            ends.push_back(End{End::Kind::Tail, "tail:" + g.vertex_ids[v], vi, {}});
    }
    for (const auto& c : simple_cycles(g)) {
        if (cycle_has_exit(g, c))
            continue;
        std::string id = "loop:";
        for (size_t i = 0; i < c.size(); ++i)
            id += (i ? "," : "") + g.edges[c[i]].id;
        ends.push_back(End{End::Kind::LoopWithoutExit, id, g.edges[c[0]].source, c});
    }
    std::sort(ends.begin(), ends.end(), [](const End& a, const End& b) { return a.id < b.id; });
    return ends;
}

SingleEntryReport single_entry_check(const Graph& g) {
    SingleEntryReport r;
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        int count = static_cast<int>(g.in_core[v].size()) + (g.head[v] ? 1 : 0);
        if (count != 1) {
            r.holds = false;
            r.violations[g.vertex_ids[v]] = count;
        }
    }
    return r;
}

Classification classify(const Graph& g) {
    Classification c;
    if (g.k != 1 || components(g).size() != 1 || !single_entry_check(g).holds ||
        !structural_report(g).sinks.empty())
        return c;
    auto cycles = simple_cycles(g);
    if (cycles.empty()) {
        c.kind = Classification::Kind::DirectedTree;
        return c;
    }
    if (cycles.size() == 1 && cycles[0].size() == g.num_edges() && g.num_edges() == g.num_vertices() &&
        !g.has_rays()) {
        c.kind = Classification::Kind::SingleLoop;
        c.n = static_cast<int>(g.num_vertices());
    }
    return c;
}

std::string to_string(const Classification& c) {
    switch (c.kind) {
    case Classification::Kind::SingleLoop: return "SingleLoop(" + std::to_string(c.n) + ")";
    case Classification::Kind::DirectedTree: return "DirectedTree";
    default: return "Other";
    }
}

}  // namespace ckspec
