#include "ckspec/trace.hpp"

#include "ckspec/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ckspec {

namespace {

void require_loops_without_exit(const Graph& g) {
    for (const auto& cyc : simple_cycles(g))
        if (cycle_has_exit(g, cyc)) {
            std::string names;
            for (int e : cyc)
                names += (names.empty() ? "" : " ") + g.edges[e].id;
            throw Error(Error::Kind::Precondition, "loop with exit (" + names + "): no faithful graph trace exists");
        }
}

GraphTrace solve_kgraph_trace(const Graph& g) {
    size_t n = g.num_vertices();
    Matrix m(n * g.k, n);
    for (int c = 1; c <= g.k; ++c)
        for (size_t v = 0; v < n; ++v) {
            size_t row = (c - 1) * n + v;
            m(row, v) += Gauss(1);
            for (Edge e : g.out_edges(Vertex{static_cast<int>(v), 0}, c))
                m(row, g.range(e).base) -= Gauss(1);
        }
    auto basis = nullspace(m);
    std::vector<std::vector<Gauss>> candidates = basis;
    if (!basis.empty()) {
        std::vector<Gauss> sum(n);
        for (const auto& b : basis)
            for (size_t i = 0; i < n; ++i)
                sum[i] += b[i];
        candidates.push_back(sum);
    }
    for (auto cand : candidates) {
        if (sgn(cand[0].re) < 0)
            for (auto& z : cand)
                z = -z;
        bool positive = std::all_of(cand.begin(), cand.end(), [](const Gauss& z) { return sgn(z.re) > 0; });
        if (!positive)
            continue;
        GraphTrace t;
        t.graph = &g;
        for (const auto& z : cand)
            t.values.push_back(z.re / cand[0].re);
        return t;
    }
    throw Error(Error::Kind::Precondition, "no faithful graph trace found");
}

}  // namespace

bool GraphTrace::faithful() const {
    return std::all_of(values.begin(), values.end(), [](const Rational& q) { return sgn(q) > 0; });
}

std::map<std::string, Rational> default_end_values(const Graph& g) {
    std::map<std::string, Rational> out;
    if (g.k == 1)
        for (const auto& e : find_ends(g))
            out[e.id] = 1;
    return out;
}

GraphTrace solve_graph_trace(const Graph& g) { return solve_graph_trace(g, default_end_values(g)); }

GraphTrace solve_graph_trace(const Graph& g, const std::map<std::string, Rational>& end_values) {
    if (g.k > 1)
        return solve_kgraph_trace(g);
    require_loops_without_exit(g);
    auto ends = find_ends(g);
    std::vector<std::optional<Rational>> fixed(g.num_vertices());
    GraphTrace t;
    t.graph = &g;
    for (const auto& e : ends) {
        auto it = end_values.find(e.id);
        if (it == end_values.end())
            throw Error(Error::Kind::Precondition, "missing end value for " + e.id);
        if (sgn(it->second) <= 0)
            throw Error(Error::Kind::Precondition, "end value for " + e.id + " must be positive");
        t.end_values[e.id] = it->second;
        if (e.kind == End::Kind::LoopWithoutExit) {
            for (int edge : e.cycle)
                fixed[g.edges[edge].source] = it->second;
        } else {
            fixed[e.vertex] = it->second;
        }
    }
    for (const auto& [id, v] : end_values)
        if (!t.end_values.count(id))
            throw Error(Error::Kind::Precondition, "unknown end " + id);
    enum class State { Unvisited, Active, Done };
    std::vector<State> state(g.num_vertices(), State::Unvisited);
    t.values.assign(g.num_vertices(), Rational(0));
    std::function<void(int)> visit = [&](int v) {
        if (state[v] == State::Done)
            return;
        if (state[v] == State::Active)
            throw Error(Error::Kind::Internal, "cycle outside the ends during trace propagation");
        if (fixed[v]) {
            t.values[v] = *fixed[v];
            state[v] = State::Done;
            return;
        }
        state[v] = State::Active;
        Rational sum = 0;
        for (int e : g.out_core[v]) {
            visit(g.edges[e].range);
            sum += t.values[g.edges[e].range];
        }
        t.values[v] = sum;
        state[v] = State::Done;
    };
    for (size_t v = 0; v < g.num_vertices(); ++v)
        visit(static_cast<int>(v));
    return t;
}

bool satisfies_trace_condition(const GraphTrace& t) {
    const Graph& g = *t.graph;
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        Vertex x{static_cast<int>(v), 0};
        for (int c = 1; c <= g.k; ++c) {
            auto out = g.out_edges(x, c);
            if (out.empty())
                continue;
            Rational sum = 0;
            for (Edge e : out)
                sum += t.value(g.range(e));
            if (sum != t.value(x))
                return false;
        }
    }
    return true;
}

Gauss trace_functional(const GraphTrace& t, const Element& a) {
    if (a.graph && a.graph != t.graph)
        throw Error(Error::Kind::Precondition, "trace and element live over different presentations");
    Gauss out;
    for (const auto& [key, c] : a.terms)
        if (key.mu == key.nu)
            out += c * Gauss(t.value(t.graph->range(key.mu)));
    return out;
}

KTheoryRanks ktheory_ranks(const Graph& g) {
    if (g.k != 1)
        throw Error(Error::Kind::Precondition, "K-theory ranks are computed for 1-graphs");
    require_loops_without_exit(g);
    KTheoryRanks r;
    r.k0 = static_cast<int>(find_ends(g).size());
    r.k1 = static_cast<int>(simple_cycles(g).size());
    return r;
}

FixedPointCanonicalForm canonical_F_form(const Element& f) {
    if (!f.graph)
        return {};
    const Graph& g = *f.graph;
    if (g.k != 1)
        throw Error(Error::Kind::Precondition, "canonical_F_form is implemented for 1-graphs");
    require_loops_without_exit(g);
    // core vertex -> end id for vertices that already lie inside an end
    std::map<Vertex, std::string> end_of;
    for (const auto& e : find_ends(g)) {
        if (e.kind == End::Kind::LoopWithoutExit) {
            for (int edge : e.cycle)
                end_of[Vertex{g.edges[edge].source, 0}] = e.id;
        } else {
            end_of[Vertex{e.vertex, 0}] = e.id;
        }
    }
    auto end_at = [&](Vertex v) -> const std::string* {
        if (v.depth > 0)
            return &end_of.at(Vertex{v.base, 0});
        auto it = end_of.find(v);
        return it == end_of.end() ? nullptr : &it->second;
    };

    FixedPointCanonicalForm form;
    form.graph = &g;
    std::vector<std::pair<Path, Gauss>> stack;
    for (const auto& [key, c] : f.terms) {
        if (key.mu != key.nu)
            throw Error(Error::Kind::Precondition,
                        "non-diagonal degree-0 term S_{" + g.name(key.mu) + "}S_{" + g.name(key.nu) + "}^*");
        stack.push_back({key.mu, c});
    }
    while (!stack.empty()) {
        auto [alpha, c] = std::move(stack.back());
        stack.pop_back();
        Vertex at = alpha.start;
        const std::string* end = end_at(at);
        size_t cut = 0;
        for (size_t i = 0; !end && i < alpha.edges.size(); ++i) {
            at = g.range(alpha.edges[i]);
            end = end_at(at);
            cut = i + 1;
        }
        if (!end) {
            for (Edge e : g.out_edges(at)) {
                Path longer = alpha;
                longer.edges.push_back(e);
                stack.push_back({std::move(longer), c});
            }
            continue;
        }
        Path p{alpha.start, std::vector<Edge>(alpha.edges.begin(), alpha.edges.begin() + cut)};
        auto key = std::make_pair(alpha.start, *end);
        auto it = form.terms.find(key);
        if (it == form.terms.end()) {
            form.terms.emplace(key, FixedPointCanonicalForm::Term{alpha.start, *end, p, c});
        } else if (it->second.path != p) {
            throw Error(Error::Kind::Precondition, "two paths from " + g.name(alpha.start) + " into " + *end +
                                                       ": the graph violates single entry");
        } else {
            it->second.coefficient += c;
        }
    }
    for (auto it = form.terms.begin(); it != form.terms.end();) {
        if (it->second.coefficient.is_zero())
            it = form.terms.erase(it);
        else
            ++it;
    }
    return form;
}

Element to_element(const FixedPointCanonicalForm& form) {
    Element out;
    if (!form.graph)
        return out;
    out = Element(*form.graph);
    for (const auto& [key, term] : form.terms)
        out += Element(*form.graph, Key{term.path, term.path}, term.coefficient);
    return out;
}

namespace {

Rational min_end_value(const GraphTrace& t) {
    Rational m = 0;
    bool first = true;
    for (const auto& [id, v] : t.end_values) {
        if (first || v < m)
            m = v;
        first = false;
    }
    return m;
}

}  // namespace

FixedPointNorms fixed_point_norms(const FixedPointCanonicalForm& form, const GraphTrace& t) {
    FixedPointNorms n;
    n.cstar_norm_sq = 0;
    n.hilbert_norm_sq = 0;
    for (const auto& [key, term] : form.terms) {
        Rational a = term.coefficient.norm_sq();
        n.cstar_norm_sq = std::max(n.cstar_norm_sq, a);
        n.hilbert_norm_sq += a * t.value(form.graph->range(term.path));
    }
    n.module_norm_sq = n.cstar_norm_sq;
    n.min_end_trace = min_end_value(t);
    n.inequality_holds = n.hilbert_norm_sq >= n.min_end_trace * n.module_norm_sq;
    return n;
}

FixedPointNormsF fixed_point_norms_float(const std::vector<double>& weights,
                                         const std::vector<FixedPointCanonicalForm>& parts,
                                         const GraphTrace& t) {
    if (weights.size() != parts.size())
        throw Error(Error::Kind::Precondition, "weights and parts differ in length");
    std::map<std::pair<Vertex, std::string>, std::pair<double, double>> merged;  // (re, im)
    std::map<std::pair<Vertex, std::string>, double> trace_of;
    for (size_t i = 0; i < parts.size(); ++i)
        for (const auto& [key, term] : parts[i].terms) {
            auto& z = merged[key];
            z.first += weights[i] * term.coefficient.re.get_d();
            z.second += weights[i] * term.coefficient.im.get_d();
            trace_of[key] = t.value(parts[i].graph->range(term.path)).get_d();
        }
    FixedPointNormsF n;
    for (const auto& [key, z] : merged) {
        double a = z.first * z.first + z.second * z.second;
        n.cstar_norm_sq = std::max(n.cstar_norm_sq, a);
        n.hilbert_norm_sq += a * trace_of[key];
    }
    n.module_norm_sq = n.cstar_norm_sq;
    n.min_end_trace = min_end_value(t).get_d();
    return n;
}

}  // namespace ckspec
