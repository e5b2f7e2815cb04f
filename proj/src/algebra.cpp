#include "ckspec/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ckspec {

namespace {

constexpr int kUnbounded = 1 << 20;

void add_term(std::map<Key, Gauss>& terms, const Key& key, const Gauss& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }
}

Path drop_last(const Path& p) {
    return Path{p.start, std::vector<Edge>(p.edges.begin(), p.edges.end() - 1)};
}

Path append(const Path& p, Edge e) {
    Path r = p;
    r.edges.push_back(e);
    return r;
}

bool is_prefix(const Path& p, const Path& q) {
    return p.start == q.start && p.edges.size() <= q.edges.size() &&
           std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
}

Path suffix(const Graph& g, const Path& p, const Path& q) {
    return Path{g.range(p), std::vector<Edge>(q.edges.begin() + p.edges.size(), q.edges.end())};
}

void require_same(const Element& a, const Element& b) {
    if (a.graph && b.graph && a.graph != b.graph)
        throw Error(Error::Kind::Precondition, "elements live over different presentations");
}

// Leavitt-basis reduction for 1-graphs: S_{m g} S_{n g}^* with g special is replaced by
// S_m S_n^* minus the sum over the other edges e leaving s(g) of S_{m e} S_{n e}^*.
std::map<Key, Gauss> reduce_1graph(const Graph& g, std::map<Key, Gauss> in) {
    std::vector<std::pair<Key, Gauss>> stack(in.begin(), in.end());
    std::map<Key, Gauss> out;
    while (!stack.empty()) {
        auto [key, c] = std::move(stack.back());
        stack.pop_back();
        if (c.is_zero())
            continue;
        const auto& mu = key.mu.edges;
        const auto& nu = key.nu.edges;
        if (!mu.empty() && !nu.empty() && mu.back() == nu.back()) {
            Edge gamma = mu.back();
            Vertex u = g.source(gamma);
            auto out_edges = g.out_edges(u);
            if (out_edges.front() == gamma) {
                Key parent{drop_last(key.mu), drop_last(key.nu)};
                for (Edge e : out_edges)
                    if (e != gamma)
                        stack.push_back({Key{append(parent.mu, e), append(parent.nu, e)}, -c});
                stack.push_back({std::move(parent), c});
                continue;
            }
        }
        add_term(out, key, c);
    }
    return out;
}

std::map<Key, Gauss> expand_k(const Graph& g, const std::map<Key, Gauss>& in, const Degree& n) {
    std::map<Key, Gauss> out;
    for (const auto& [key, c] : in) {
        Degree ext = n - g.degree(key.nu);
        for (const Path& lambda : enumerate_paths(g, ext, g.range(key.mu), Direction::OutOf, kUnbounded))
            add_term(out, Key{concat(g, key.mu, lambda), concat(g, key.nu, lambda)}, c);
    }
    return out;
}

// Greedy contraction of complete families sum over e in r(m)Lambda^{e_c} of S_{m e}S_{n e}^*.
std::map<Key, Gauss> contract_k(const Graph& g, std::map<Key, Gauss> terms) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int c = 1; c <= g.k && !changed; ++c) {
            Degree ec = basis_degree(g.k, c);
            std::map<Key, std::map<Path, Gauss>> groups;
            for (const auto& [key, coef] : terms) {
                Degree dm = g.degree(key.mu), dn = g.degree(key.nu);
                if (dm[c - 1] == 0 || dn[c - 1] == 0)
                    continue;
                Path l1 = segment(g, key.mu, dm - ec, dm);
                Path l2 = segment(g, key.nu, dn - ec, dn);
                if (l1 != l2)
                    continue;
                Key parent{segment(g, key.mu, Degree(g.k, 0), dm - ec), segment(g, key.nu, Degree(g.k, 0), dn - ec)};
                groups[parent][l1] = coef;
            }
            for (const auto& [parent, members] : groups) {
                auto family = g.out_edges(g.range(parent.mu), c);
                if (members.size() != family.size())
                    continue;
                const Gauss& c0 = members.begin()->second;
                bool uniform = std::all_of(members.begin(), members.end(),
                                           [&](const auto& m) { return m.second == c0; });
                if (!uniform)
                    continue;
                Gauss coef = c0;
                for (const auto& [lambda, unused] : members)
                    terms.erase(Key{concat(g, parent.mu, lambda), concat(g, parent.nu, lambda)});
                add_term(terms, parent, coef);
                changed = true;
            }
        }
    }
    return terms;
}

}  // namespace

Key vertex_key(Vertex v) { return Key{Path{v, {}}, Path{v, {}}}; }

Key star(const Key& k) { return Key{k.nu, k.mu}; }

Element::Element(const Graph& g, const Key& key, const Gauss& c) : graph(&g) {
    if (g.range(key.mu) != g.range(key.nu))
        throw Error(Error::Kind::Precondition, "generator key with r(mu) != r(nu)");
    add_term(terms, key, c);
    reduce();
}

Element Element::vertex(const Graph& g, Vertex v) { return Element(g, vertex_key(v)); }

Element Element::edge(const Graph& g, Edge e) { return Element(g, Key{g.edge_path(e), g.vertex_path(g.range(e))}); }

Element Element::edge_star(const Graph& g, Edge e) {
    return Element(g, Key{g.vertex_path(g.range(e)), g.edge_path(e)});
}

Element Element::path(const Graph& g, const Path& mu) {
    return Element(g, Key{normalize(g, mu), g.vertex_path(g.range(mu))});
}

Element Element::monomial(const Graph& g, const Path& mu, const Path& nu, const Gauss& c) {
    return Element(g, Key{normalize(g, mu), normalize(g, nu)}, c);
}

void Element::reduce() {
    if (!graph || terms.empty())
        return;
    const Graph& g = *graph;
    if (g.k == 1) {
        terms = reduce_1graph(g, std::move(terms));
        return;
    }
    terms = contract_k(g, expand_k(g, terms, nu_join(*this)));
}

Element& Element::operator+=(const Element& o) {
    require_same(*this, o);
    if (!graph)
        graph = o.graph;
    for (const auto& [key, c] : o.terms)
        add_term(terms, key, c);
    if (graph && graph->k > 1)
        reduce();
    return *this;
}

Element& Element::operator-=(const Element& o) {
    require_same(*this, o);
    if (!graph)
        graph = o.graph;
    for (const auto& [key, c] : o.terms)
        add_term(terms, key, -c);
    if (graph && graph->k > 1)
        reduce();
    return *this;
}

Element& Element::operator*=(const Gauss& c) {
    if (c.is_zero()) {
        terms.clear();
        return *this;
    }
    for (auto& [key, v] : terms)
        v *= c;
    return *this;
}

Element multiply(const Element& a, const Element& b) {
    require_same(a, b);
    const Graph* gp = a.graph ? a.graph : b.graph;
    Element out;
    out.graph = gp;
    if (!gp)
        return out;
    const Graph& g = *gp;
    for (const auto& [x, cx] : a.terms)
        for (const auto& [y, cy] : b.terms) {
            Gauss c = cx * cy;
            if (g.k == 1) {
                if (is_prefix(x.nu, y.mu)) {
                    Path rest = suffix(g, x.nu, y.mu);
                    Path mu = x.mu;
                    mu.edges.insert(mu.edges.end(), rest.edges.begin(), rest.edges.end());
                    add_term(out.terms, Key{mu, y.nu}, c);
                } else if (is_prefix(y.mu, x.nu)) {
                    Path rest = suffix(g, y.mu, x.nu);
                    Path nu = y.nu;
                    nu.edges.insert(nu.edges.end(), rest.edges.begin(), rest.edges.end());
                    add_term(out.terms, Key{x.mu, nu}, c);
                }
                continue;
            }
            if (x.nu.start != y.mu.start)
                continue;
            Degree dn = g.degree(x.nu), da = g.degree(y.mu);
            Degree m = join(dn, da);
            for (const Path& xi : enumerate_paths(g, m - dn, g.range(x.nu), Direction::OutOf, kUnbounded)) {
                Path lambda = concat(g, x.nu, xi);
                if (segment(g, lambda, Degree(g.k, 0), da) != y.mu)
                    continue;
                Path eta = segment(g, lambda, da, m);
                add_term(out.terms, Key{concat(g, x.mu, xi), concat(g, y.nu, eta)}, c);
            }
        }
    out.reduce();
    return out;
}

Element involution(const Element& a) {
    Element out;
    out.graph = a.graph;
    for (const auto& [key, c] : a.terms)
        out.terms.emplace(star(key), c.conj());
    return out;
}

Degree key_degree(const Graph& g, const Key& k) { return g.degree(k.mu) - g.degree(k.nu); }

std::map<Degree, Element> grade(const Element& a) {
    std::map<Degree, Element> out;
    for (const auto& [key, c] : a.terms) {
        auto [it, inserted] = out.try_emplace(key_degree(*a.graph, key));
        it->second.graph = a.graph;
        it->second.terms.emplace(key, c);
    }
    return out;
}

Element expectation(const Element& a) {
    Element out;
    out.graph = a.graph;
    for (const auto& [key, c] : a.terms)
        if (is_zero(key_degree(*a.graph, key)))
            out.terms.emplace(key, c);
    return out;
}

bool is_homogeneous(const Element& a) { return grade(a).size() <= 1; }

Element local_unit(const std::vector<Element>& as) {
    const Graph* gp = nullptr;
    std::set<Vertex> vs;
    for (const auto& a : as) {
        if (gp && a.graph && gp != a.graph)
            throw Error(Error::Kind::Precondition, "elements live over different presentations");
        if (a.graph)
            gp = a.graph;
        for (const auto& [key, c] : a.terms) {
            vs.insert(key.mu.start);
            vs.insert(key.nu.start);
        }
    }
    Element out;
    out.graph = gp;
    for (Vertex v : vs)
        out.terms.emplace(vertex_key(v), Gauss(1));
    out.reduce();
    return out;
}

std::map<Key, Gauss> expand_to_level(const Element& a, int level) {
    std::map<Key, Gauss> out;
    if (!a.graph)
        return out;
    const Graph& g = *a.graph;
    for (const auto& [key, c] : a.terms) {
        Degree top = join(g.degree(key.mu), g.degree(key.nu));
        Degree ext(g.k, 0);
        for (int i = 0; i < g.k; ++i) {
            if (top[i] > level)
                throw Error(Error::Kind::Precondition, "term " + g.name(key.mu) + " exceeds the truncation level");
            ext[i] = level - top[i];
        }
        if (g.k == 1) {
            // paths of length ext[0], or shorter ones stopping at a sink
            std::vector<Edge> stack;
            std::function<void(Vertex)> walk = [&](Vertex at) {
                if (static_cast<int>(stack.size()) == ext[0] || g.is_sink(at)) {
                    Path lambda{g.range(key.mu), stack};
                    add_term(out, Key{concat(g, key.mu, lambda), concat(g, key.nu, lambda)}, c);
                    return;
                }
                for (Edge e : g.out_edges(at)) {
                    stack.push_back(e);
                    walk(g.range(e));
                    stack.pop_back();
                }
            };
            walk(g.range(key.mu));
            continue;
        }
        for (const Path& lambda : enumerate_paths(g, ext, g.range(key.mu), Direction::OutOf, kUnbounded))
            add_term(out, Key{concat(g, key.mu, lambda), concat(g, key.nu, lambda)}, c);
    }
    return out;
}

Degree nu_join(const Element& a) {
    Degree n(a.graph ? a.graph->k : 1, 0);
    for (const auto& [key, c] : a.terms)
        n = join(n, a.graph->degree(key.nu));
    return n;
}

std::map<Key, Gauss> expand_nu_to(const Element& a, const Degree& n) {
    if (!a.graph)
        return {};
    return expand_k(*a.graph, a.terms, n);
}

std::vector<Key> expand_key(const Graph& g, const Key& key, const Degree& n) {
    std::vector<Key> out;
    for (const Path& lambda : enumerate_paths(g, n - g.degree(key.nu), g.range(key.mu), Direction::OutOf, kUnbounded))
        out.push_back(Key{concat(g, key.mu, lambda), concat(g, key.nu, lambda)});
    return out;
}

Element dirac_commutator(const Element& a) {
    Element out;
    out.graph = a.graph;
    for (const auto& [key, c] : a.terms) {
        long n = static_cast<long>(key.mu.length()) - static_cast<long>(key.nu.length());
        if (a.graph->k != 1)
            throw Error(Error::Kind::Precondition, "scalar [D, a] is defined for 1-graphs; use dirac_commutator_k");
        if (n != 0)
            out.terms.emplace(key, c * Gauss(n));
    }
    return out;
}

CliffordCommutator dirac_commutator_k(const Element& a) {
    CliffordCommutator out;
    int k = a.graph ? a.graph->k : 1;
    out.parts.assign(k, Element());
    for (auto& p : out.parts)
        p.graph = a.graph;
    for (const auto& [key, c] : a.terms) {
        Degree n = key_degree(*a.graph, key);
        for (int i = 0; i < k; ++i)
            if (n[i] != 0)
                out.parts[i].terms.emplace(key, c * Gauss(n[i]));
    }
    return out;
}

DeltaSummary delta_action(const Element& a, int order) {
    if (order < 0)
        throw Error(Error::Kind::Precondition, "negative order");
    DeltaSummary s;
    s.norm_bound_sq = 0;
    s.norm_bound = 0;
    for (const auto& [n, part] : grade(a)) {
        mpz_class len_sq = 0;
        for (int x : n)
            len_sq += x * x;
        mpz_class sq;
        mpz_pow_ui(sq.get_mpz_t(), len_sq.get_mpz_t(), order);
        s.norm_bound_sq = std::max(s.norm_bound_sq, Rational(sq));
        if (n.size() == 1) {
            mpz_class b;
            mpz_class base = n[0] < 0 ? -n[0] : n[0];
            mpz_pow_ui(b.get_mpz_t(), base.get_mpz_t(), order);
            s.norm_bound = std::max(s.norm_bound, Rational(b));
        }
    }
    return s;
}

std::string to_string(const Element& a) {
    if (a.terms.empty())
        return "0";
    const Graph& g = *a.graph;
    std::string out;
    for (const auto& [key, coef] : a.terms) {
        Gauss c = coef;
        bool negative = c.is_real() && sgn(c.re) < 0;
        if (negative)
            c = -c;
        if (!out.empty())
            out += negative ? " - " : " + ";
        else if (negative)
            out += "-";
        if (c != Gauss(1))
            out += c.is_real() ? to_string(c) + " " : "(" + to_string(c) + ") ";
        if (key.mu.is_vertex() && key.nu.is_vertex()) {
            out += "p_" + g.name(key.mu.start);
            continue;
        }
        if (!key.mu.is_vertex())
            out += "S_{" + g.name(key.mu) + "}";
        if (!key.nu.is_vertex())
            out += "S_{" + g.name(key.nu) + "}^*";
    }
    return out;
}

}  // namespace ckspec
