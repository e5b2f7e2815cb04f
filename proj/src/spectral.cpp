#include "ckspec/spectral.hpp"

#include "ckspec/kgraph.hpp"
#include "ckspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace ckspec {

namespace {

std::vector<Vertex> window_vertices(const Graph& g, int level) {
    std::vector<Vertex> out;
    for (size_t b = 0; b < g.num_vertices(); ++b) {
        int base = static_cast<int>(b);
        out.push_back(Vertex{base, 0});
        if (g.k != 1)
            continue;
        for (int d = 1; d <= level; ++d) {
            if (g.tail[b])
                out.push_back(Vertex{base, d});
            if (g.head[b])
                out.push_back(Vertex{base, -d});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Degree> box_degrees(int k, int level) {
    std::vector<Degree> out;
    Degree d(k, 0);
    while (true) {
        out.push_back(d);
        int i = 0;
        while (i < k && d[i] == level) {
            d[i] = 0;
            ++i;
        }
        if (i == k)
            break;
        ++d[i];
    }
    return out;
}

Degree positive_part(const Degree& n) {
    Degree out(n.size());
    for (size_t i = 0; i < n.size(); ++i)
        out[i] = std::max(n[i], 0);
    return out;
}

Degree negative_part(const Degree& n) {
    Degree out(n.size());
    for (size_t i = 0; i < n.size(); ++i)
        out[i] = std::max(-n[i], 0);
    return out;
}

std::vector<Element> d_parts(const Element& z) {
    if (z.graph->k == 1)
        return {dirac_commutator(z)};
    return dirac_commutator_k(z).parts;
}

// [D, a] y, one entry per color
std::vector<Element> commutator_on(const Element& a, const Element& y) {
    std::vector<Element> lhs = d_parts(a * y);
    std::vector<Element> rhs = d_parts(y);
    for (size_t c = 0; c < lhs.size(); ++c)
        lhs[c] -= a * rhs[c];
    return lhs;
}

Matrix clifford_of(const CliffordGenerators& cl, const Degree& n) {
    Matrix m(cl.dim, cl.dim);
    for (size_t c = 0; c < n.size(); ++c)
        if (n[c] != 0)
            m += (Gauss(n[c]) * Gauss::i()) * cl.gamma[c];
    return m;
}

bool sources_interior(const Key& key, int level) {
    return std::abs(key.mu.start.depth) < level - 1 && std::abs(key.nu.start.depth) < level - 1;
}

SparseRow flatten(const Matrix& m) {
    SparseRow row;
    const auto& e = m.entries();
    for (size_t i = 0; i < e.size(); ++i)
        if (!e[i].is_zero())
            row.emplace(i, e[i]);
    return row;
}

// Forward masses w_n = sum over paths mu from v with |mu| = n of tau(p_{r(mu)}), n = 0..N.
std::vector<Rational> forward_masses(const Graph& g, const GraphTrace& t, Vertex v, long N) {
    std::vector<Rational> w(static_cast<size_t>(N) + 1);
    std::map<Vertex, mpz_class> state{{v, 1}};
    Rational absorbed = 0;
    w[0] = t.value(v);
    long cap = static_cast<long>(g.num_vertices()) + std::abs(v.depth) + 2;
    for (long step = 1; step <= N; ++step) {
        if (step > cap) {
            w[step] = w[cap];
            continue;
        }
        std::map<Vertex, mpz_class> next;
        for (const auto& [x, cnt] : state)
            for (Edge e : g.out_edges(x)) {
                Vertex y = g.range(e);
                if (y.depth > 0)
                    absorbed += Rational(cnt) * t.value(y);
                else
                    next[y] += cnt;
            }
        state = std::move(next);
        Rational m = absorbed;
        for (const auto& [x, cnt] : state)
            m += Rational(cnt) * t.value(x);
        w[step] = m;
    }
    return w;
}

}  // namespace

bool Truncation::in_window(Vertex v) const { return graph->k != 1 || std::abs(v.depth) <= level; }

std::map<size_t, Gauss> Truncation::project(const Element& a) const {
    std::map<size_t, Gauss> out;
    if (a.terms.empty())
        return out;
    const Graph& g = *graph;
    Element kept(g);
    int top = level;
    for (const auto& [key, c] : a.terms) {
        if (!in_window(key.mu.start) || !in_window(key.nu.start))
            continue;
        kept.terms.emplace(key, c);
        for (int x : join(g.degree(key.mu), g.degree(key.nu)))
            top = std::max(top, x);
    }
    for (const auto& [key, c] : expand_to_level(kept, top)) {
        Degree dm = g.degree(key.mu), dn = g.degree(key.nu);
        Degree s(g.k);
        bool strip = false;
        for (int i = 0; i < g.k; ++i) {
            s[i] = std::max(0, std::max(dm[i], dn[i]) - level);
            strip |= s[i] > 0;
        }
        Key x = key;
        if (strip) {
            if (!leq(s, dm) || !leq(s, dn))
                continue;
            if (segment(g, key.mu, dm - s, dm) != segment(g, key.nu, dn - s, dn))
                continue;
            x = Key{segment(g, key.mu, Degree(g.k, 0), dm - s), segment(g, key.nu, Degree(g.k, 0), dn - s)};
        }
        auto it = index.find(x);
        if (it == index.end())
            throw Error(Error::Kind::Internal, "projection left the truncation basis at " + g.name(x.mu));
        Gauss coef = c * Gauss(trace.value(g.range(key.mu)) / gram[it->second]);
        auto [pos, inserted] = out.emplace(it->second, coef);
        if (!inserted) {
            pos->second += coef;
            if (pos->second.is_zero())
                out.erase(pos);
        }
    }
    return out;
}

Element Truncation::from_coordinates(const std::map<size_t, Gauss>& x) const {
    Element out(*graph);
    for (const auto& [i, c] : x)
        out += Element(*graph, basis[i], c);
    return out;
}

Gauss Truncation::inner(const Element& x, const Element& y) const { return trace_functional(trace, involution(x) * y); }

Truncation build_truncation(const Graph& g, const GraphTrace& t, int level) {
    if (level < 0)
        throw Error(Error::Kind::Precondition, "truncation level must be nonnegative");
    if (!t.faithful())
        throw Error(Error::Kind::Precondition, "truncation needs a faithful trace");
    Truncation tr;
    tr.graph = &g;
    tr.trace = t;
    tr.level = level;
    std::map<Vertex, std::vector<Path>> by_range;
    for (Vertex u : window_vertices(g, level))
        for (const Degree& d : box_degrees(g.k, level))
            for (Path& p : enumerate_paths(g, d, u, Direction::OutOf, std::max(level, 16)))
                by_range[g.range(p)].push_back(std::move(p));
    for (const auto& [w, paths] : by_range) {
        bool sink = g.k == 1 && g.is_sink(w);
        for (const Path& mu : paths)
            for (const Path& nu : paths) {
                Degree top = join(g.degree(mu), g.degree(nu));
                bool full = std::all_of(top.begin(), top.end(), [&](int x) { return x == level; });
                if (full || sink)
                    tr.basis.push_back(Key{mu, nu});
            }
    }
    if (tr.basis.empty())
        throw Error(Error::Kind::Precondition, "empty truncation basis");
    std::sort(tr.basis.begin(), tr.basis.end());
    for (size_t i = 0; i < tr.basis.size(); ++i) {
        tr.index.emplace(tr.basis[i], i);
        tr.gram.push_back(t.value(g.range(tr.basis[i].mu)));
    }
    return tr;
}

TruncatedOperator build_D(const Truncation& tr) {
    const Graph& g = *tr.graph;
    TruncatedOperator d;
    d.size = tr.size();
    if (g.k == 1) {
        for (size_t i = 0; i < tr.size(); ++i) {
            Matrix m(1, 1);
            m(0, 0) = Gauss(key_degree(g, tr.basis[i])[0]);
            if (!m.is_zero())
                d.blocks.emplace(std::make_pair(i, i), m);
        }
        return d;
    }
    CliffordGenerators cl = generators(g.k);
    d.spinor_dim = cl.dim;
    for (size_t i = 0; i < tr.size(); ++i) {
        Matrix m = clifford_of(cl, key_degree(g, tr.basis[i]));
        if (!m.is_zero())
            d.blocks.emplace(std::make_pair(i, i), m);
    }
    return d;
}

bool is_self_adjoint(const TruncatedOperator& op, const Truncation& tr) {
    Matrix zero(op.spinor_dim, op.spinor_dim);
    for (const auto& [rc, m] : op.blocks) {
        auto [r, c] = rc;
        auto it = op.blocks.find({c, r});
        const Matrix& other = it == op.blocks.end() ? zero : it->second;
        if (Gauss(tr.gram[r]) * m != Gauss(tr.gram[c]) * other.adjoint())
            return false;
    }
    return true;
}

std::map<Rational, size_t> eigen_multiplicities(const TruncatedOperator& d) {
    if (d.spinor_dim != 1)
        throw Error(Error::Kind::Precondition, "eigen_multiplicities expects a scalar D");
    std::map<Rational, size_t> out;
    for (size_t i = 0; i < d.size; ++i) {
        auto it = d.blocks.find({i, i});
        ++out[it == d.blocks.end() ? Rational(0) : it->second(0, 0).re];
    }
    return out;
}

SparseOperator left_action(const Truncation& tr, const Element& a) {
    SparseOperator op;
    for (size_t i = 0; i < tr.size(); ++i)
        for (const auto& [j, c] : tr.project(a * tr.element(i)))
            op.emplace(std::make_pair(j, i), c);
    return op;
}

Element apply(const ThetaDecomposition& d, const Element& z) {
    Element out(*z.graph);
    for (const auto& term : d.terms)
        out += term.c * (term.x * expectation(involution(term.y) * z));
    return out;
}

ThetaDecomposition compose(const ThetaDecomposition& s, const ThetaDecomposition& t) {
    ThetaDecomposition out;
    out.graph = s.graph ? s.graph : t.graph;
    for (const auto& a : s.terms)
        for (const auto& b : t.terms) {
            Element x = a.x * expectation(involution(a.y) * b.x);
            if (!x.is_zero())
                out.terms.push_back({a.c * b.c, x, b.y});
        }
    return out;
}

Gauss semifinite_trace(const ThetaDecomposition& d, const GraphTrace& t) {
    Gauss out;
    for (const auto& term : d.terms)
        out += term.c * trace_functional(t, expectation(involution(term.y) * term.x));
    return out;
}

std::optional<size_t> projection_mismatch(const Truncation& tr, const ThetaDecomposition& d, Vertex v,
                                          const Degree& n) {
    const Graph& g = *tr.graph;
    Element pv = Element::vertex(g, v);
    for (size_t i = 0; i < tr.size(); ++i) {
        Element x = tr.element(i);
        Element expected = key_degree(g, tr.basis[i]) == n ? pv * x : Element(g);
        if (!(apply(d, x) == expected))
            return i;
    }
    return std::nullopt;
}

ThetaDecomposition decompose_projection(const Truncation& tr, Vertex v, const Degree& n) {
    const Graph& g = *tr.graph;
    if (static_cast<int>(n.size()) != g.k)
        throw Error(Error::Kind::Precondition, "degree has wrong rank");
    for (int x : n)
        if (std::abs(x) > tr.level)
            throw Error(Error::Kind::Precondition, "degree exceeds the truncation level");
    if (!g.valid(v))
        throw Error(Error::Kind::Precondition, "unknown vertex");
    ThetaDecomposition d;
    d.graph = &g;
    Degree plus = positive_part(n), minus = negative_part(n);
    for (const Path& mu : enumerate_paths(g, plus, v, Direction::OutOf)) {
        auto lambdas = enumerate_paths(g, minus, g.range(mu), Direction::Into);
        if (lambdas.empty())
            continue;
        Gauss w = Gauss(1) / Gauss(static_cast<long>(lambdas.size()));
        for (const Path& lambda : lambdas) {
            Element y = Element::monomial(g, mu, lambda);
            d.terms.push_back({w, y, y});
        }
    }
    if (auto bad = projection_mismatch(tr, d, v, n))
        throw Error(Error::Kind::Internal, "Theta decomposition of p_" + g.name(v) + " Phi_n fails on basis vector " +
                                               g.name(tr.basis[*bad].mu) + " / " + g.name(tr.basis[*bad].nu));
    return d;
}

Rational projection_trace(const Graph& g, const GraphTrace& t, Vertex v, const Degree& n) {
    if (static_cast<int>(n.size()) != g.k)
        throw Error(Error::Kind::Precondition, "degree has wrong rank");
    if (g.k == 1) {
        if (n[0] < 0)
            return t.value(v);  // every realized vertex receives paths of every length
        return forward_masses(g, t, v, n[0])[n[0]];
    }
    if (single_exit_check(g).holds)
        return t.value(v);
    Rational out = 0;
    for (const Path& mu : enumerate_paths(g, positive_part(n), v, Direction::OutOf))
        if (!enumerate_paths(g, negative_part(n), g.range(mu), Direction::Into).empty())
            out += t.value(g.range(mu));
    return out;
}

SpectralProfile singular_profile(const Graph& g, const GraphTrace& t, std::optional<Vertex> v, long window,
                                 int samples_per_decade, int check_level) {
    if (window < 1)
        throw Error(Error::Kind::Precondition, "window must be positive");
    if (!v && g.has_rays())
        throw Error(Error::Kind::Precondition, "(1 + D^2)^{-1/2} has infinite trace on a graph with rays; pick a vertex");
    SpectralProfile p;
    p.k = g.k;
    p.window = window;
    if (v)
        p.vertex = g.name(*v);
    std::vector<Vertex> vertices;
    if (v)
        vertices.push_back(*v);
    else
        for (size_t b = 0; b < g.num_vertices(); ++b)
            vertices.push_back(Vertex{static_cast<int>(b), 0});

    // (eigenvalue, mass) in decreasing eigenvalue order
    if (g.k == 1) {
        std::vector<double> plus(static_cast<size_t>(window) + 1, 0.0);
        double minus = 0;
        for (Vertex x : vertices) {
            auto w = forward_masses(g, t, x, window);
            for (long m = 0; m <= window; ++m)
                plus[m] += to_double(w[m]);
            minus += to_double(t.value(x));
        }
        for (long m = 0; m <= window; ++m) {
            double mass = plus[m] + (m > 0 ? minus : 0.0);
            if (mass > 0)
                p.eigenvalues.emplace_back(1.0 / std::sqrt(1.0 + double(m) * double(m)), mass);
        }
    } else {
        if (!single_exit_check(g).holds)
            throw Error(Error::Kind::Precondition, "k-graph profiles need single exit");
        double per_point = 0;
        for (Vertex x : vertices)
            per_point += to_double(t.value(x));
        per_point *= static_cast<double>(spinor_dim(g.k));
        long r_max = window * window;
        std::vector<double> count(static_cast<size_t>(r_max) + 1, 0.0);
        if (g.k == 2) {
            std::function<void(int, long)> walk = [&](int c, long r) {
                if (c == g.k) {
                    count[r] += 1;
                    return;
                }
                walk(c + 1, r);
                for (long a = 1; r + a * a <= r_max; ++a) {
                    walk(c + 1, r + a * a);  // +a and -a
                    walk(c + 1, r + a * a);
                }
            };
            walk(0, 0);
        } else {
            // representation counts of r as a sum of k squares, one color at a time
            count[0] = 1;
            for (int c = 0; c < g.k; ++c) {
                std::vector<double> next(count.size(), 0.0);
                for (long r = 0; r <= r_max; ++r) {
                    if (count[r] == 0)
                        continue;
                    next[r] += count[r];
                    for (long a = 1; r + a * a <= r_max; ++a)
                        next[r + a * a] += 2 * count[r];
                }
                count.swap(next);
            }
        }
        for (long r = 0; r <= r_max; ++r)
            if (count[r] > 0)
                p.eigenvalues.emplace_back(std::pow(1.0 + double(r), -0.5 * g.k), count[r] * per_point);
    }

    for (const auto& [e, m] : p.eigenvalues)
        p.total_mass += m;
    std::vector<double> ts;
    for (int j = 0;; ++j) {
        double t_j = std::pow(10.0, double(j) / samples_per_decade);
        if (t_j >= p.total_mass)
            break;
        ts.push_back(t_j);
    }
    ts.push_back(p.total_mass);
    size_t gi = 0;
    double mass_before = 0, integral_before = 0;
    for (double t_j : ts) {
        while (gi < p.eigenvalues.size() && mass_before + p.eigenvalues[gi].second < t_j) {
            mass_before += p.eigenvalues[gi].second;
            integral_before += p.eigenvalues[gi].second * p.eigenvalues[gi].first;
            ++gi;
        }
        double partial = gi < p.eigenvalues.size() ? (t_j - mass_before) * p.eigenvalues[gi].first : 0.0;
        p.samples.push_back({t_j, (integral_before + partial) / std::log1p(t_j)});
    }
    p.final_value = p.samples.back().F;

    double decade_start = p.total_mass / 10;
    p.band_low = p.band_high = p.final_value;
    double first_in_decade = p.final_value;
    bool seen = false;
    for (const auto& s : p.samples)
        if (s.t >= decade_start) {
            p.band_low = std::min(p.band_low, s.F);
            p.band_high = std::max(p.band_high, s.F);
            if (!seen)
                first_in_decade = s.F;
            seen = true;
        }
    p.increasing_tail = p.final_value > first_in_decade;

    std::vector<std::pair<double, double>> fit;
    for (const auto& s : p.samples)
        if (s.t >= std::sqrt(p.total_mass) && s.t >= 10)
            fit.emplace_back(1.0 / std::log1p(s.t), s.F);
    if (window < 100 || fit.size() < 3) {
        p.diagnostics = "window " + std::to_string(window) + " too small for a stable estimate (" +
                        std::to_string(fit.size()) + " fit samples)";
    } else {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, n = double(fit.size());
        for (const auto& [x, y] : fit) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        p.fit_slope = slope;
        p.limit_estimate = (sy - slope * sx) / n;
        p.diagnostics = "linear fit in 1/log(1+t) over " + std::to_string(fit.size()) + " samples";
    }

    if (check_level > 0) {
        int level = g.k == 1 ? check_level : 1;
        Truncation tr = build_truncation(g, t, level);
        bool ok = true;
        std::vector<Degree> degrees;
        for (const Degree& d : box_degrees(g.k, 2 * level)) {
            Degree n = d;
            for (int& x : n)
                x -= level;
            degrees.push_back(n);
        }
        for (Vertex x : vertices)
            for (const Degree& n : degrees) {
                Gauss tau = semifinite_trace(decompose_projection(tr, x, n), t);
                Rational formula = projection_trace(g, t, x, n);
                if (g.k > 1)
                    ok &= tau == Gauss(t.value(x));
                ok &= tau == Gauss(formula);
            }
        p.multiplicity_check_level = level;
        p.multiplicities_validated = ok;
    }
    return p;
}

ZetaCheck zeta_check(const SpectralProfile& profile) {
    ZetaCheck z;
    double eps = 1.0 / std::log(double(profile.window));
    z.s = 0.5 * profile.k + eps;
    double power = 2 * z.s / profile.k;
    double sum = 0;
    for (const auto& [e, m] : profile.eigenvalues)
        sum += m * std::pow(e, power);
    z.residue = eps * sum;
    z.half_limit = 0.5 * profile.limit_estimate.value_or(profile.final_value);
    z.relative_error = std::abs(z.residue - z.half_limit) / std::abs(z.half_limit);
    return z;
}

ClosednessResult closedness_eval(const Graph& g, const GraphTrace& t, const std::vector<Element>& gens) {
    ClosednessResult r;
    if (g.k == 1) {
        if (gens.size() != 1)
            throw Error(Error::Kind::Precondition, "closedness for 1-graphs takes one generator");
        r.route = "gauge";
        r.value = Gauss(2) * trace_functional(t, dirac_commutator(gens[0]));
        return r;
    }
    if (static_cast<int>(gens.size()) != g.k)
        throw Error(Error::Kind::Precondition, "closedness for k-graphs takes k generators");
    r.route = "determinant";
    CliffordGenerators cl = generators(g.k);
    Matrix gamma = g.k % 2 == 0 ? grading(cl) : Matrix::identity(cl.dim);
    Gauss base = (gamma * (i_pow(g.k) * product_of_generators(cl))).trace();
    std::vector<std::vector<std::pair<Key, Gauss>>> slots;
    for (const auto& a : gens)
        slots.emplace_back(a.terms.begin(), a.terms.end());
    std::vector<size_t> pick(slots.size(), 0);
    for (const auto& s : slots)
        if (s.empty())
            return r;
    while (true) {
        Matrix n(g.k, g.k);
        Matrix prod = gamma;
        Gauss coef(1);
        Element product = Element::vertex(g, slots[0][pick[0]].first.mu.start);
        Degree total(g.k, 0);
        for (size_t j = 0; j < slots.size(); ++j) {
            const auto& [key, c] = slots[j][pick[j]];
            Degree d = key_degree(g, key);
            total = total + d;
            for (int m = 0; m < g.k; ++m)
                n(j, m) = Gauss(d[m]);
            prod = prod * clifford_of(cl, d);
            coef *= c;
            product = product * Element(g, key);
        }
        Gauss det = determinant(n);
        Gauss cliff = prod.trace();
        Gauss tau = trace_functional(t, product);
        r.determinants.push_back(det.re);
        r.clifford_traces.push_back(cliff);
        r.tau_products.push_back(tau);
        bool sum_zero = is_zero(total);
        r.degree_sum_zero.push_back(sum_zero);
        if (cliff != det * base)
            r.determinant_identity = false;
        if (sum_zero && !det.is_zero())
            r.zero_sum_forces_zero_det = false;
        r.value += coef * cliff * tau;
        size_t i = 0;
        while (i < slots.size() && ++pick[i] == slots[i].size()) {
            pick[i] = 0;
            ++i;
        }
        if (i == slots.size())
            break;
    }
    return r;
}

std::vector<Element> algebra_generators(const Graph& g) {
    std::vector<Element> out;
    for (size_t b = 0; b < g.num_vertices(); ++b)
        out.push_back(Element::vertex(g, Vertex{static_cast<int>(b), 0}));
    std::vector<Edge> edges;
    for (size_t e = 0; e < g.num_edges(); ++e)
        edges.push_back(Edge{static_cast<int>(e), 0});
    for (size_t b = 0; b < g.num_vertices(); ++b) {
        if (g.k == 1 && g.tail[b])
            edges.push_back(Edge{static_cast<int>(b), 1});
        if (g.k == 1 && g.head[b])
            edges.push_back(Edge{static_cast<int>(b), -1});
    }
    for (Edge e : edges) {
        out.push_back(Element::edge(g, e));
        out.push_back(Element::edge_star(g, e));
    }
    return out;
}

FirstOrderReport first_order_check(const Truncation& tr) {
    const Graph& g = *tr.graph;
    FirstOrderReport rep;
    auto gens = algebra_generators(g);
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (size_t i = 0; i < tr.size(); ++i) {
                Element x = tr.element(i);
                ++rep.checks;
                Element xb = x * b;
                if (!((a * x) * b == a * xb)) {
                    rep.order_zero = false;
                    rep.violations.push_back({"[a, b^op] != 0", to_string(a), to_string(b), to_string(x)});
                }
                auto lhs = commutator_on(a, xb);
                auto inner = commutator_on(a, x);
                for (size_t c = 0; c < lhs.size(); ++c)
                    if (!(lhs[c] == inner[c] * b)) {
                        rep.first_order = false;
                        rep.violations.push_back({"[[D, a], b^op] != 0", to_string(a), to_string(b), to_string(x)});
                        break;
                    }
                if (!rep.left_action_counterexample_found) {
                    auto left = commutator_on(a, b * x);
                    for (size_t c = 0; c < left.size(); ++c)
                        if (!(left[c] == b * inner[c])) {
                            rep.left_action_counterexample_found = true;
                            rep.left_action_witness =
                                Witness{"[[D, a], b] != 0 with b acting on the left", to_string(a), to_string(b),
                                        to_string(x)};
                            break;
                        }
                }
            }
    return rep;
}

RealityReport reality_check_1graph(const Truncation& tr) {
    const Graph& g = *tr.graph;
    if (g.k != 1)
        throw Error(Error::Kind::Precondition, "J(x) = x^* is the 1-graph reality operator");
    RealityReport rep;
    auto gens = algebra_generators(g);
    auto fail = [&](bool& flag, const std::string& what, const Element& a, const Element& x) {
        flag = false;
        rep.violations.push_back({what, to_string(a), "", to_string(x)});
    };
    for (size_t i = 0; i < tr.size(); ++i) {
        Element x = tr.element(i);
        Element jx = involution(x);
        ++rep.checks;
        if (!(involution(jx) == x))
            fail(rep.j_squared, "J^2 x != x", Element(g), x);
        if (!(involution(dirac_commutator(jx)) == -dirac_commutator(x)))
            fail(rep.jdj, "J D J x != -D x", Element(g), x);
        for (const auto& a : gens) {
            ++rep.checks;
            if (!(involution(involution(a) * jx) == x * a))
                fail(rep.right_action, "J a^* J x != x a", a, x);
        }
        for (size_t j = i; j < tr.size(); ++j) {
            if (key_degree(g, tr.basis[i]) != key_degree(g, tr.basis[j]))
                continue;
            Element y = tr.element(j);
            ++rep.checks;
            if (tr.inner(jx, involution(y)) != tr.inner(y, x))
                fail(rep.isometric, "<Jx, Jy> != <y, x>", y, x);
        }
    }
    return rep;
}

SpinCReport spin_c_generation_check(const Truncation& tr) {
    const Graph& g = *tr.graph;
    SpinCReport rep;
    for (size_t i = 0; i < tr.size(); ++i) {
        Element x = tr.element(i);
        Degree d = key_degree(g, tr.basis[i]);
        auto parts = d_parts(x);
        ++rep.checks;
        for (int c = 0; c < g.k; ++c)
            if (!(parts[c] == Gauss(d[c]) * x)) {
                rep.holds = false;
                rep.violations.push_back({"[D, x] leaves A_c", to_string(x), "", std::to_string(c + 1)});
            }
    }
    if (g.k == 1) {
        rep.achieved_dimension = rep.expected_dimension = 1;
        return rep;
    }
    CliffordGenerators cl = generators(g.k);
    std::vector<Matrix> coeffs;
    std::set<int> colors;
    for (size_t e = 0; e < g.num_edges(); ++e) {
        Edge edge{static_cast<int>(e), 0};
        Element s = Element::edge(g, edge);
        auto parts = dirac_commutator_k(s).parts;
        Degree d = g.degree(edge);
        ++rep.checks;
        for (int c = 0; c < g.k; ++c)
            if (!(parts[c] == Gauss(d[c]) * s)) {
                rep.holds = false;
                rep.violations.push_back({"[D, S_e] not a Clifford multiple of S_e", to_string(s), "", ""});
            }
        if (colors.insert(g.color(edge)).second)
            coeffs.push_back(clifford_of(cl, d));
    }
    RowReducer rr(cl.dim * cl.dim);
    std::vector<Matrix> span;
    auto offer = [&](const Matrix& m) {
        if (rr.add(flatten(m)))
            span.push_back(m);
    };
    offer(Matrix::identity(cl.dim));
    for (const auto& m : coeffs)
        offer(m);
    for (size_t i = 0; i < span.size(); ++i)
        for (const auto& q : coeffs)
            offer(span[i] * q);
    rep.achieved_dimension = rr.rank();
    rep.expected_dimension = size_t(1) << (g.k % 2 == 0 ? g.k : g.k - 1);
    if (rep.achieved_dimension != rep.expected_dimension) {
        rep.holds = false;
        rep.violations.push_back({"Clifford span has dimension " + std::to_string(rep.achieved_dimension), "", "", ""});
    }
    return rep;
}

CommutantReport commutant_probe(const Truncation& tr) {
    const Graph& g = *tr.graph;
    CommutantReport rep;
    std::vector<size_t> fixed;  // degree-zero basis keys span the truncated F
    for (size_t i = 0; i < tr.size(); ++i)
        if (is_zero(key_degree(g, tr.basis[i])))
            fixed.push_back(i);
    rep.unknowns = fixed.size();
    std::vector<SparseOperator> candidates;
    for (size_t i : fixed)
        candidates.push_back(left_action(tr, tr.element(i)));

    std::vector<Edge> edges;
    for (size_t e = 0; e < g.num_edges(); ++e)
        edges.push_back(Edge{static_cast<int>(e), 0});
    if (g.k == 1)
        for (size_t b = 0; b < g.num_vertices(); ++b)
            for (int d = 1; d <= tr.level; ++d) {
                if (g.tail[b])
                    edges.push_back(Edge{static_cast<int>(b), d});
                if (g.head[b])
                    edges.push_back(Edge{static_cast<int>(b), -d});
            }
    std::vector<Element> gens;
    for (Edge e : edges) {
        gens.push_back(Element::edge(g, e));
        gens.push_back(Element::edge_star(g, e));
    }

    auto multiply_ops = [](const SparseOperator& x, const SparseOperator& y) {
        std::map<size_t, std::vector<std::pair<size_t, Gauss>>> x_by_col;
        for (const auto& [rc, c] : x)
            x_by_col[rc.second].emplace_back(rc.first, c);
        SparseOperator out;
        for (const auto& [rc, c] : y) {
            auto it = x_by_col.find(rc.first);
            if (it == x_by_col.end())
                continue;
            for (const auto& [r, xc] : it->second)
                out[{r, rc.second}] += xc * c;
        }
        return out;
    };

    RowReducer rr(fixed.size());
    for (const auto& a : gens) {
        SparseOperator op = left_action(tr, a);
        std::map<std::pair<size_t, size_t>, SparseRow> eqs;
        for (size_t u = 0; u < candidates.size(); ++u) {
            SparseOperator xa = multiply_ops(candidates[u], op);
            for (const auto& [rc, c] : multiply_ops(op, candidates[u]))
                xa[rc] -= c;
            for (const auto& [rc, c] : xa)
                if (!c.is_zero())
                    eqs[rc][u] += c;
        }
        for (auto& [rc, row] : eqs) {
            for (auto it = row.begin(); it != row.end();)
                it = it->second.is_zero() ? row.erase(it) : std::next(it);
            if (!row.empty())
                rr.add(std::move(row));
        }
    }
    auto null = rr.nullspace();
    rep.solution_dimension = null.size();

    std::vector<bool> interior(fixed.size());
    for (size_t u = 0; u < fixed.size(); ++u) {
        interior[u] = g.k != 1 || sources_interior(tr.basis[fixed[u]], tr.level);
        rep.interior_vectors += interior[u];
    }
    RowReducer restricted(fixed.size());
    for (const auto& v : null) {
        SparseRow row;
        for (const auto& [u, c] : v)
            if (interior[u])
                row.emplace(u, c);
        if (!row.empty())
            restricted.add(std::move(row));
    }
    rep.interior_dimension = restricted.rank();
    rep.boundary_artifacts = rep.solution_dimension > rep.interior_dimension;
    return rep;
}

}  // namespace ckspec
