#include "ckspec/hochschild.hpp"

#include "ckspec/kgraph.hpp"

#include <set>

namespace ckspec {

namespace {

void add_chain_term(std::map<std::vector<Key>, Gauss>& terms, const std::vector<Key>& key, const Gauss& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }
}

Element element_of(const Graph& g, const Key& k) { return Element(g, k); }

Key edge_key(const Graph& g, Edge e) { return Key{g.edge_path(e), g.vertex_path(g.range(e))}; }
Key edge_star_key(const Graph& g, Edge e) { return Key{g.vertex_path(g.range(e)), g.edge_path(e)}; }

Matrix gamma_of(const CliffordGenerators& cl, const Degree& d) {
    Matrix m(cl.dim, cl.dim);
    for (size_t c = 0; c < d.size(); ++c)
        if (d[c] != 0)
            m += Gauss(d[c]) * cl.gamma[c];
    return m;
}

Gauss factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return Gauss(f);
}

}  // namespace

void Chain::add(const std::vector<Key>& factors, const Gauss& c) {
    if (factors.size() != arity)
        throw Error(Error::Kind::Precondition, "chain arity mismatch");
    add_chain_term(terms, factors, c);
}

void Chain::add_tensor(const std::vector<Element>& factors, const Gauss& c) {
    if (factors.size() != arity)
        throw Error(Error::Kind::Precondition, "chain arity mismatch");
    if (c.is_zero())
        return;
    std::vector<std::map<Key, Gauss>::const_iterator> it(arity);
    for (size_t i = 0; i < arity; ++i) {
        if (factors[i].terms.empty())
            return;
        it[i] = factors[i].terms.begin();
    }
    std::vector<Key> key(arity);
    while (true) {
        Gauss coef = c;
        for (size_t i = 0; i < arity; ++i) {
            key[i] = it[i]->first;
            coef *= it[i]->second;
        }
        add_chain_term(terms, key, coef);
        size_t i = 0;
        while (i < arity && ++it[i] == factors[i].terms.end()) {
            it[i] = factors[i].terms.begin();
            ++i;
        }
        if (i == arity)
            break;
    }
}

Chain& Chain::operator+=(const Chain& o) {
    if (!graph) {
        graph = o.graph;
        arity = o.arity;
    }
    for (const auto& [k, c] : o.terms)
        add(k, c);
    return *this;
}

Chain& Chain::operator-=(const Chain& o) {
    if (!graph) {
        graph = o.graph;
        arity = o.arity;
    }
    for (const auto& [k, c] : o.terms)
        add(k, -c);
    return *this;
}

Chain& Chain::operator*=(const Gauss& c) {
    if (c.is_zero()) {
        terms.clear();
        return *this;
    }
    for (auto& [k, v] : terms)
        v *= c;
    return *this;
}

Chain canonical(const Chain& ch) {
    if (!ch.graph || ch.graph->k == 1)
        return ch;
    const Graph& g = *ch.graph;
    std::vector<Degree> n(ch.arity, Degree(g.k, 0));
    for (const auto& [factors, c] : ch.terms)
        for (size_t i = 0; i < ch.arity; ++i)
            n[i] = join(n[i], g.degree(factors[i].nu));
    Chain out(g, ch.arity);
    for (const auto& [factors, c] : ch.terms) {
        std::vector<Element> parts;
        for (size_t i = 0; i < ch.arity; ++i) {
            Element e;
            e.graph = &g;
            for (const Key& k : expand_key(g, factors[i], n[i]))
                e.terms.emplace(k, Gauss(1));
            parts.push_back(std::move(e));
        }
        out.add_tensor(parts, c);
    }
    return out;
}

bool is_zero(const Chain& ch) { return canonical(ch).terms.empty(); }

Chain boundary(const Chain& ch) {
    if (ch.arity < 2)
        throw Error(Error::Kind::Precondition, "boundary needs arity >= 2");
    const Graph& g = *ch.graph;
    size_t n = ch.arity - 1;
    Chain out(g, n);
    for (const auto& [f, c] : ch.terms) {
        for (size_t j = 0; j < n; ++j) {
            std::vector<Element> parts;
            for (size_t i = 0; i < j; ++i)
                parts.push_back(element_of(g, f[i]));
            parts.push_back(element_of(g, f[j]) * element_of(g, f[j + 1]));
            for (size_t i = j + 2; i <= n; ++i)
                parts.push_back(element_of(g, f[i]));
            out.add_tensor(parts, j % 2 ? -c : c);
        }
        std::vector<Element> parts;
        parts.push_back(element_of(g, f[n]) * element_of(g, f[0]));
        for (size_t i = 1; i < n; ++i)
            parts.push_back(element_of(g, f[i]));
        out.add_tensor(parts, n % 2 ? -c : c);
    }
    return out;
}

Chain orientation_cycle_1graph(const Graph& g, int truncation) {
    if (g.k != 1)
        throw Error(Error::Kind::Precondition, "orientation_cycle_1graph needs a 1-graph");
    if (truncation < 1 && g.has_rays())
        throw Error(Error::Kind::Precondition, "truncation must be positive for graphs with tails or heads");
    Chain c(g, 2);
    std::vector<Edge> edges;
    for (size_t e = 0; e < g.num_edges(); ++e)
        edges.push_back(Edge{static_cast<int>(e), 0});
    for (size_t v = 0; v < g.num_vertices(); ++v)
        for (int d = 1; d <= truncation; ++d) {
            if (g.tail[v])
                edges.push_back(Edge{static_cast<int>(v), d});
            if (g.head[v])
                edges.push_back(Edge{static_cast<int>(v), -d});
        }
    for (Edge e : edges)
        c.add({edge_star_key(g, e), edge_key(g, e)}, Gauss(1));
    return c;
}

Element predicted_boundary_1graph(const Graph& g, int truncation) {
    Element out(g);
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        Vertex x{static_cast<int>(v), 0};
        long entries = static_cast<long>(g.in_core[v].size()) + (g.head[v] ? 1 : 0);
        long coef = g.is_sink(x) ? entries : entries - 1;
        if (coef != 0)
            out += Element(g, vertex_key(x), Gauss(coef));
        if (g.tail[v])
            out += Element(g, vertex_key(Vertex{x.base, truncation}), Gauss(1));
        if (g.head[v])
            out += Element(g, vertex_key(Vertex{x.base, -truncation}), Gauss(-1));
    }
    return out;
}

OrientationCycle orientation_cycle_kgraph(const Graph& g, bool require_single_exit) {
    if (require_single_exit) {
        auto se = single_exit_check(g);
        if (!se.holds) {
            const auto& [v, counts] = *se.violations.begin();
            const auto& [color, n] = *counts.begin();
            throw Error(Error::Kind::Precondition, "single exit fails at " + v + " (color " + std::to_string(color) +
                                                       " count " + std::to_string(n) + ")");
        }
    }
    if (g.has_rays())
        throw Error(Error::Kind::Precondition, "orientation_cycle_kgraph needs a finite presentation");
    int k = g.k;
    OrientationCycle oc;
    oc.body = Chain(g, k + 1);
    oc.scalar_i_power = (k + 2) / 2;
    oc.scalar_differs_from_1graph_cycle = k == 1;
    Gauss weight = Gauss(1) / factorial(k);
    auto perms = all_permutations(k);
    for (size_t v = 0; v < g.num_vertices(); ++v)
        for (const Path& mu : enumerate_paths(g, unit_degree(k), Vertex{static_cast<int>(v), 0}, Direction::OutOf)) {
            Key mu_star{g.vertex_path(g.range(mu)), mu};
            for (const auto& sigma : perms) {
                std::vector<Key> factors{mu_star};
                for (const Path& p : factorize(g, mu, sigma))
                    factors.push_back(Key{p, g.vertex_path(g.range(p))});
                oc.body.add(factors, weight * Gauss(permutation_sign(sigma)));
            }
        }
    return oc;
}

Element pi_D(const Chain& ch) {
    const Graph& g = *ch.graph;
    Element out(g);
    for (const auto& [f, c] : ch.terms) {
        Element acc = element_of(g, f[0]);
        for (size_t j = 1; j < f.size(); ++j)
            acc = acc * dirac_commutator(element_of(g, f[j]));
        out += c * acc;
    }
    return out;
}

SpinorMatrix::SpinorMatrix(const Graph& g, size_t d) : dim(d), entries(d * d, Element(g)) {}

bool operator==(const SpinorMatrix& a, const SpinorMatrix& b) {
    if (a.dim != b.dim)
        return false;
    for (size_t i = 0; i < a.entries.size(); ++i)
        if (!(a.entries[i] == b.entries[i]))
            return false;
    return true;
}

SpinorMatrix tensor(const Matrix& m, const Element& a) {
    SpinorMatrix out(*a.graph, m.rows());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero())
                out.at(r, c) = m(r, c) * a;
    return out;
}

SpinorMatrix scale(const Gauss& c, SpinorMatrix m) {
    for (auto& e : m.entries)
        e *= c;
    return m;
}

std::optional<Gauss> proportionality(const SpinorMatrix& a, const SpinorMatrix& b) {
    if (a.dim != b.dim)
        return std::nullopt;
    for (size_t i = 0; i < b.entries.size(); ++i) {
        const Element& eb = b.entries[i];
        if (eb.is_zero())
            continue;
        Degree n = join(nu_join(eb), nu_join(a.entries[i]));
        auto xb = expand_nu_to(eb, n);
        auto xa = expand_nu_to(a.entries[i], n);
        const auto& [key, cb] = *xb.begin();
        auto hit = xa.find(key);
        if (hit == xa.end())
            return std::nullopt;
        Gauss c = hit->second / cb;
        if (scale(c, b) == a)
            return c;
        return std::nullopt;
    }
    return std::nullopt;
}

SpinorMatrix pi_D_k(const Chain& ch, const CliffordGenerators& cl, CommutatorConvention conv) {
    const Graph& g = *ch.graph;
    SpinorMatrix out(g, cl.dim);
    for (const auto& [f, c] : ch.terms) {
        Matrix m = Matrix::identity(cl.dim);
        Element acc = element_of(g, f[0]);
        for (size_t j = 1; j < f.size(); ++j) {
            Matrix gj = gamma_of(cl, key_degree(g, f[j]));
            if (conv == CommutatorConvention::WithI)
                gj *= Gauss::i();
            m = m * gj;
            acc = acc * element_of(g, f[j]);
        }
        if (acc.is_zero())
            continue;
        for (size_t r = 0; r < cl.dim; ++r)
            for (size_t s = 0; s < cl.dim; ++s)
                if (!m(r, s).is_zero())
                    out.at(r, s) += (c * m(r, s)) * acc;
    }
    return out;
}

PiDReport pi_D_report(const Graph& g, const OrientationCycle& c) {
    CliffordGenerators cl = generators(g.k);
    PiDReport r;
    Gauss scalar = i_pow(c.scalar_i_power);
    r.raw = scale(scalar, pi_D_k(c.body, cl, CommutatorConvention::WithI));
    r.symbol = scale(scalar, pi_D_k(c.body, cl, CommutatorConvention::Symbol));
    r.projection_sum = Element(g);
    Element identity(g);
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        Vertex x{static_cast<int>(v), 0};
        identity += Element::vertex(g, x);
        for (const Path& mu : enumerate_paths(g, unit_degree(g.k), x, Direction::OutOf))
            r.projection_sum += Element::vertex(g, g.range(mu));
    }
    r.projection_is_identity = r.projection_sum == identity;
    VolumeForm vf = volume_form(cl);
    r.expected = tensor(vf.omega, r.projection_sum);
    r.symbol_matches = r.symbol == r.expected;
    r.raw_matches = r.raw == r.expected;
    r.raw_over_expected = proportionality(r.raw, r.expected);
    vf.omega_sq.is_scalar(&r.omega_sq_scalar);
    return r;
}

CancellationReport verify_cancellation_steps(const Graph& g) {
    int k = g.k;
    CancellationReport rep;
    rep.first_step_identity = rep.step_i = rep.step_ii = rep.step_iii = true;
    auto perms = all_permutations(k);
    auto S = [&](const Path& p) { return Element::path(g, p); };
    auto Sstar = [&](const Path& p) { return involution(Element::path(g, p)); };

    // trailing edge tuple -> accumulated first slot (heads plus tails)
    std::map<std::vector<Key>, Element> groups;
    std::map<std::vector<Key>, std::pair<Path, int>> group_info;  // lambda, missing color

    for (size_t v = 0; v < g.num_vertices(); ++v)
        for (const Path& mu : enumerate_paths(g, unit_degree(k), Vertex{static_cast<int>(v), 0}, Direction::OutOf)) {
            std::map<Permutation, std::vector<Path>> fac;
            for (const auto& sigma : perms)
                fac[sigma] = factorize(g, mu, sigma);

            Chain block(g, k + 1), head(g, k), tail(g, k);
            for (const auto& sigma : perms) {
                Gauss sign(permutation_sign(sigma));
                const auto& f = fac[sigma];
                std::vector<Element> parts{Sstar(mu)};
                for (const auto& p : f)
                    parts.push_back(S(p));
                block.add_tensor(parts, sign);

                std::vector<Element> hp{Sstar(mu) * S(f[0])};
                std::vector<Key> trailing_h;
                for (int i = 1; i < k; ++i) {
                    hp.push_back(S(f[i]));
                    trailing_h.push_back(edge_key(g, f[i].edges[0]));
                }
                head.add_tensor(hp, sign);

                Gauss tsign = sign * Gauss(k % 2 ? -1 : 1);
                std::vector<Element> tp{S(f[k - 1]) * Sstar(mu)};
                std::vector<Key> trailing_t;
                for (int i = 0; i + 1 < k; ++i) {
                    tp.push_back(S(f[i]));
                    trailing_t.push_back(edge_key(g, f[i].edges[0]));
                }
                tail.add_tensor(tp, tsign);

                auto add_group = [&](const std::vector<Key>& t, const Element& e, const Path& lambda, int color) {
                    auto [it, inserted] = groups.try_emplace(t, Element(g));
                    it->second += e;
                    if (inserted)
                        group_info[t] = {lambda, color};
                };
                Path lambda{f.size() > 1 ? f[1].start : g.range(mu), {}};
                for (int i = 1; i < k; ++i)
                    lambda.edges.push_back(f[i].edges[0]);
                add_group(trailing_h, sign * hp[0], lambda, sigma[0]);
                Path lambda_t{f[0].start, {}};
                for (int i = 0; i + 1 < k; ++i)
                    lambda_t.edges.push_back(f[i].edges[0]);
                if (k == 1)
                    lambda_t.start = mu.start;
                add_group(trailing_t, tsign * tp[0], lambda_t, sigma[k - 1]);

                // factorisation identity behind the tail rewrite: (lambda alpha)^{sigma psi} = (lambda, alpha)
                if (k > 1) {
                    Permutation sp(sigma.begin() + 1, sigma.end());
                    sp.push_back(sigma[0]);
                    Path lam = make_path(g, f[1].start, lambda.edges);
                    for (Edge alpha : g.out_edges(g.range(lam), sigma[0])) {
                        Path la = concat(g, lam, g.edge_path(alpha));
                        auto fa = factorize(g, la, sp);
                        bool ok = fa[k - 1].edges[0] == alpha;
                        for (int i = 0; i + 1 < k; ++i)
                            ok &= fa[i].edges[0] == f[i + 1].edges[0];
                        if (!ok)
                            rep.step_iii = false;
                    }
                }
            }

            Chain middle_total(g, k);
            for (int j = 1; j < k; ++j) {
                // (i): A_j -> B_j via sigma o t_j, opposite signs, middle sum vanishes
                std::set<Permutation> a, b, image;
                for (const auto& sigma : perms)
                    (sigma[j - 1] < sigma[j] ? a : b).insert(sigma);
                for (const auto& sigma : a) {
                    Permutation st = sigma;
                    std::swap(st[j - 1], st[j]);
                    image.insert(st);
                    if (permutation_sign(sigma) + permutation_sign(st) != 0)
                        rep.step_i = false;
                    // (ii): the two elementary tensors agree slot by slot
                    const auto& f1 = fac[sigma];
                    const auto& f2 = fac[st];
                    for (int i = 0; i < k; ++i)
                        if (i != j - 1 && i != j && f1[i] != f2[i])
                            rep.step_ii = false;
                    if (!(S(f1[j - 1]) * S(f1[j]) == S(f2[j - 1]) * S(f2[j])))
                        rep.step_ii = false;
                }
                if (image != b)
                    rep.step_i = false;
                Chain middle(g, k);
                for (const auto& sigma : perms) {
                    const auto& f = fac[sigma];
                    std::vector<Element> parts{Sstar(mu)};
                    for (int i = 0; i < k; ++i) {
                        if (i == j - 1) {
                            parts.push_back(S(f[i]) * S(f[i + 1]));
                            ++i;
                        } else {
                            parts.push_back(S(f[i]));
                        }
                    }
                    middle.add_tensor(parts, Gauss(permutation_sign(sigma)) * Gauss(j % 2 ? -1 : 1));
                }
                if (!is_zero(middle))
                    rep.step_i = false;
                middle_total += middle;
            }
            Chain diff = boundary(block);
            diff -= head;
            diff -= tail;
            diff -= middle_total;
            if (!is_zero(diff))
                rep.first_step_identity = false;
        }

    for (const auto& [trailing, e] : groups) {
        if (e.is_zero())
            continue;
        rep.step_iii = false;
        const auto& [lambda, color] = group_info[trailing];
        CancellationWitness w;
        w.vertex = g.name(lambda.start);
        int missing = 0;
        Degree d = g.degree(lambda);
        for (int c = 0; c < k; ++c)
            if (d[c] == 0)
                missing = c + 1;
        w.color = missing ? missing : color;
        w.multiplicity = static_cast<int>(g.in_edges(lambda.start, w.color).size());
        w.lambda = g.name(lambda);
        rep.witnesses.push_back(w);
    }
    OrientationCycle oc = orientation_cycle_kgraph(g, false);
    rep.boundary_zero = is_zero(boundary(oc.body));
    if (!rep.step_i)
        rep.failing_step = "i";
    else if (!rep.step_ii)
        rep.failing_step = "ii";
    else if (!rep.step_iii)
        rep.failing_step = "iii";
    return rep;
}

}  // namespace ckspec
