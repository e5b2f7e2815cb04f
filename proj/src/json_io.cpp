#include "ckspec/json_io.hpp"

#include "ckspec/kgraph.hpp"

#include <cstdio>
#include <sstream>

namespace ckspec {

using nlohmann::json;

namespace {

json edge_names(const Graph& g, const Path& p) {
    json out = json::array();
    for (Edge e : p.edges)
        out.push_back(g.name(e));
    return out;
}

json term_json(const Graph& g, const Key& key, const Gauss& c) {
    json t = {{"mu", edge_names(g, key.mu)}, {"nu", edge_names(g, key.nu)}};
    if (key.mu.is_vertex() && key.nu.is_vertex())
        t["vertex"] = g.name(key.mu.start);
    t["re"] = to_string(c.re);
    t["im"] = to_string(c.im);
    return t;
}

Rational rational_field(const json& t, const char* name) {
    if (!t.contains(name))
        return Rational(0);
    if (!t[name].is_string())
        throw Error(Error::Kind::Validation, std::string("\"") + name + "\" must be a string \"p/q\"");
    return parse_rational(t[name].get<std::string>());
}

Path path_field(const Graph& g, const json& t, const char* name) {
    std::vector<std::string> ids;
    for (const auto& x : t.at(name)) {
        if (!x.is_string())
            throw Error(Error::Kind::Validation, std::string("\"") + name + "\" entries must be edge ids");
        ids.push_back(x.get<std::string>());
    }
    if (ids.empty())
        return Path{};
    return path_of(g, ids);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

json to_json(const Element& a) {
    json out = json::array();
    for (const auto& [key, c] : a.terms)
        out.push_back(term_json(*a.graph, key, c));
    return out;
}

Element element_from_json(const Graph& g, const json& j) {
    if (!j.is_array())
        throw Error(Error::Kind::Validation, "element must be a JSON array of terms");
    Element out(g);
    for (const auto& t : j) {
        if (!t.is_object())
            throw Error(Error::Kind::Validation, "element term must be an object");
        for (const auto& [field, v] : t.items()) {
            (void)v;
            if (field != "mu" && field != "nu" && field != "re" && field != "im" && field != "vertex")
                throw Error(Error::Kind::Validation, "unknown field \"" + field + "\" in element term");
        }
        if (!t.contains("mu") || !t.contains("nu"))
            throw Error(Error::Kind::Validation, "element term needs \"mu\" and \"nu\"");
        Path mu = path_field(g, t, "mu");
        Path nu = path_field(g, t, "nu");
        bool mu_empty = t["mu"].empty(), nu_empty = t["nu"].empty();
        if (mu_empty && nu_empty) {
            if (!t.contains("vertex") || !t["vertex"].is_string())
                throw Error(Error::Kind::Validation, "vertex term needs \"vertex\"");
            auto v = g.find_vertex(t["vertex"].get<std::string>());
            if (!v)
                throw Error(Error::Kind::Validation, "unknown vertex \"" + t["vertex"].get<std::string>() + "\"");
            mu = nu = g.vertex_path(*v);
        } else if (mu_empty) {
            mu = g.vertex_path(g.range(nu));
        } else if (nu_empty) {
            nu = g.vertex_path(g.range(mu));
        }
        if (g.range(mu) != g.range(nu))
            throw Error(Error::Kind::Validation, "r(mu) != r(nu) in element term");
        out += Element::monomial(g, mu, nu, Gauss(rational_field(t, "re"), rational_field(t, "im")));
    }
    return out;
}

json to_json(const Chain& c) {
    json out = json::array();
    for (const auto& [factors, coef] : c.terms) {
        json fs = json::array();
        for (const auto& key : factors)
            fs.push_back(term_json(*c.graph, key, Gauss(1)));
        out.push_back({{"factors", fs}, {"re", to_string(coef.re)}, {"im", to_string(coef.im)}});
    }
    return out;
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            out.push_back(to_string(m(r, c).re) + "," + to_string(m(r, c).im));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", out}};
}

json to_json(const GraphTrace& t) {
    json out = json::object();
    for (size_t v = 0; v < t.values.size(); ++v)
        out[t.graph->vertex_ids[v]] = to_string(t.values[v]);
    return out;
}

json to_json(const KTheoryRanks& r) { return {{"k0", r.k0}, {"k1", r.k1}}; }

json to_json(const std::vector<SignTableRow>& rows) {
    json out = json::object();
    auto signs = [](const RealitySigns& s) {
        return json{{"eps", s.eps}, {"eps_prime", s.eps_prime}, {"eps_dprime", s.eps_dprime}};
    };
    for (const auto& r : rows)
        out[std::to_string(r.k)] = {{"computed", signs(r.computed)},
                                    {"expected", signs(r.expected)},
                                    {"degree_reversal_ok", r.degree_reversal_ok},
                                    {"pass", r.pass}};
    return out;
}

json to_json(const CancellationReport& r) {
    json ws = json::array();
    for (const auto& w : r.witnesses)
        ws.push_back({{"vertex", w.vertex}, {"color", w.color}, {"multiplicity", w.multiplicity}, {"lambda", w.lambda}});
    return {{"first_step_identity", r.first_step_identity},
            {"step_i", r.step_i},
            {"step_ii", r.step_ii},
            {"step_iii", r.step_iii},
            {"boundary_zero", r.boundary_zero},
            {"failing_step", r.failing_step},
            {"witnesses", ws}};
}

json to_json(const SpectralProfile& p) {
    json j = {{"k", p.k},
              {"window", p.window},
              {"vertex", p.vertex ? json(*p.vertex) : json(nullptr)},
              {"limit", p.limit_estimate ? json(*p.limit_estimate) : json(nullptr)},
              {"final_value", p.final_value},
              {"band", {p.band_low, p.band_high}},
              {"increasing_tail", p.increasing_tail},
              {"fit_slope", p.fit_slope},
              {"total_mass", p.total_mass},
              {"samples", p.samples.size()},
              {"multiplicity_check_level", p.multiplicity_check_level},
              {"multiplicities_validated", p.multiplicities_validated}};
    if (!p.diagnostics.empty())
        j["diagnostics"] = p.diagnostics;
    return j;
}

json to_json(const ZetaCheck& z) {
    return {{"s", z.s}, {"residue", z.residue}, {"half_limit", z.half_limit}, {"relative_error", z.relative_error}};
}

std::string profile_csv(const SpectralProfile& p) {
    std::ostringstream out;
    out << "t,F\n";
    for (const auto& s : p.samples)
        out << fmt(s.t) << ',' << fmt(s.F) << '\n';
    return out.str();
}

}  // namespace ckspec
