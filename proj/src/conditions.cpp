#include "ckspec/conditions.hpp"

#include "ckspec/algebra.hpp"
#include "ckspec/clifford.hpp"
#include "ckspec/hochschild.hpp"
#include "ckspec/kgraph.hpp"
#include "ckspec/spectral.hpp"
#include "ckspec/trace.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ckspec {

const std::vector<std::string> kConditionNames = {"dimension",   "regularity", "orientability",
                                                  "closedness",  "finiteness", "first_order",
                                                  "spin_c",      "reality",    "irreducibility"};

namespace {

using json = nlohmann::json;

ConditionEntry entry(const std::string& name, Status s, const std::string& method, json witness = json::object()) {
    ConditionEntry e;
    e.name = name;
    e.status = s;
    e.method = method;
    e.witness = std::move(witness);
    return e;
}

ConditionEntry not_applicable(const std::string& name, const std::string& method, const std::string& hypothesis,
                              const std::string& detail = "") {
    json w = {{"violated_hypothesis", hypothesis}};
    if (!detail.empty())
        w["detail"] = detail;
    return entry(name, Status::NotApplicable, method, w);
}

int entry_count(const Graph& g, int v) {
    return static_cast<int>(g.in_core[v].size()) + (g.head[v] ? 1 : 0);
}

// Cycle with an exit and the vertex whose trace it forces to zero.
json loop_exit_witness(const Graph& g) {
    for (const auto& cyc : simple_cycles(g)) {
        if (!cycle_has_exit(g, cyc))
            continue;
        std::set<int> on_cycle;
        for (int e : cyc)
            on_cycle.insert(g.edges[e].source);
        json names = json::array();
        for (int e : cyc)
            names.push_back(g.edges[e].id);
        for (int e : cyc) {
            int v = g.edges[e].source;
            for (int f : g.out_core[v])
                if (std::find(cyc.begin(), cyc.end(), f) == cyc.end())
                    return {{"loop", names},
                            {"exit", g.edges[f].id},
                            {"vertex", g.vertex_ids[g.edges[f].range]},
                            {"reason", "the trace condition around the loop forces tau(p_" +
                                           g.vertex_ids[g.edges[f].range] + ") = 0"}};
            if (g.tail[v])
                return {{"loop", names},
                        {"exit", "tail:" + g.vertex_ids[v]},
                        {"vertex", g.vertex_ids[v] + "~t1"},
                        {"reason", "the trace condition around the loop forces the tail trace to 0"}};
        }
    }
    return json::object();
}

ConditionEntry dimension(const Graph& g, const GraphTrace& t, const ConditionOptions& o) {
    json samples = json::array();
    bool ok = true;
    long window = o.window;
    if (g.k > 1)
        window = std::min<long>(o.window, g.k == 2 ? 1000 : 100);
    for (size_t b = 0; b < g.num_vertices(); ++b) {
        Vertex v{static_cast<int>(b), 0};
        SpectralProfile p = singular_profile(g, t, v, window);
        json s = {{"vertex", g.name(v)}, {"final_value", p.final_value}, {"window", window}};
        if (p.limit_estimate) {
            s["limit_estimate"] = *p.limit_estimate;
            if (g.k == 1) {
                double target = 2 * to_double(t.value(v));
                s["two_tau"] = target;
                s["relative_error"] = std::abs(*p.limit_estimate - target) / target;
            }
        } else {
            s["diagnostics"] = p.diagnostics;
        }
        ok &= p.limit_estimate.has_value() && *p.limit_estimate > 0;
        samples.push_back(s);
    }
    ConditionEntry e = entry("dimension", ok ? Status::Holds : Status::Fails, "numeric", {{"samples", samples}});
    e.tolerance = o.tolerance;
    return e;
}

ConditionEntry regularity(const Graph& g) {
    bool ok = true;
    json bounds = json::array();
    for (const auto& a : algebra_generators(g))
        for (int order = 1; order <= 3; ++order) {
            DeltaSummary d = delta_action(a, order);
            ok &= d.bounded;
            if (order == 3)
                bounds.push_back({{"generator", to_string(a)}, {"norm_bound_sq", to_string(d.norm_bound_sq)}});
        }
    return entry("regularity", ok ? Status::Holds : Status::Fails, "exact", {{"delta_cubed", bounds}});
}

ConditionEntry orientability(const Graph& g, int level) {
    if (g.k == 1) {
        int T = std::max(level, 1);
        Chain c = orientation_cycle_1graph(g, T);
        Chain b = boundary(c);
        Element bc(g);
        for (const auto& [f, coef] : b.terms)
            bc += Element(g, f[0], coef);
        Element pd = pi_D(c);
        json bad = json::array();
        for (const auto& [key, coef] : bc.terms) {
            Vertex v = key.mu.start;
            if (std::abs(v.depth) >= T)
                continue;
            json w = {{"term", g.name(key.mu) + (key.mu == key.nu ? "" : "/" + g.name(key.nu))},
                      {"coefficient", to_string(coef)}};
            if (v.depth == 0 && key.mu == key.nu && key.mu.is_vertex())
                w["entry_count"] = entry_count(g, v.base);
            bad.push_back(w);
        }
        bool pi_ok = true;
        json pi_bad = json::array();
        for (const auto& [key, coef] : pd.terms) {
            if (std::abs(key.mu.start.depth) >= T)
                continue;
            if (!(key.mu == key.nu && key.mu.is_vertex() && coef == Gauss(1))) {
                pi_ok = false;
                pi_bad.push_back({{"term", g.name(key.mu)}, {"coefficient", to_string(coef)}});
            }
        }
        // every core vertex must appear in pi_D(c)
        for (size_t x = 0; x < g.num_vertices(); ++x) {
            Key k = vertex_key(Vertex{static_cast<int>(x), 0});
            if (!pd.terms.count(k)) {
                pi_ok = false;
                pi_bad.push_back({{"term", g.vertex_ids[x]}, {"coefficient", "0"}});
            }
        }
        bool ok = bad.empty() && pi_ok;
        return entry("orientability", ok ? Status::Holds : Status::Fails, "exact",
                     {{"cycle_depth", T}, {"boundary_terms", bad}, {"pi_D_mismatch", pi_bad}});
    }
    OrientationCycle oc = orientation_cycle_kgraph(g, false);
    bool b_zero = is_zero(boundary(oc.body));
    PiDReport pr = pi_D_report(g, oc);
    json w = {{"boundary_zero", b_zero}, {"pi_D_equals_omega", pr.symbol_matches}};
    if (pr.raw_over_expected)
        w["pi_D_with_i_over_omega"] = to_string(*pr.raw_over_expected);
    if (!b_zero) {
        CancellationReport cr = verify_cancellation_steps(g);
        w["failing_step"] = cr.failing_step;
        json ws = json::array();
        for (const auto& x : cr.witnesses)
            ws.push_back({{"vertex", x.vertex}, {"color", x.color}, {"multiplicity", x.multiplicity}, {"lambda", x.lambda}});
        w["witnesses"] = ws;
    }
    return entry("orientability", b_zero && pr.symbol_matches ? Status::Holds : Status::Fails, "exact", w);
}

ConditionEntry closedness(const Graph& g, const GraphTrace& t, const Truncation& tr) {
    size_t evaluated = 0;
    json nonzero = json::array();
    auto gens = algebra_generators(g);
    if (g.k == 1) {
        std::vector<Element> sample = gens;
        for (size_t i = 0; i < tr.size(); ++i)
            sample.push_back(tr.element(i));
        for (const auto& a : sample) {
            ClosednessResult r = closedness_eval(g, t, {a});
            ++evaluated;
            if (!r.value.is_zero())
                nonzero.push_back({{"generator", to_string(a)}, {"value", to_string(r.value)}});
        }
        return entry("closedness", nonzero.empty() ? Status::Holds : Status::Fails, "exact",
                     {{"route", "gauge"}, {"evaluated", evaluated}, {"nonzero", nonzero}});
    }
    bool det_ok = true;
    std::vector<size_t> pick(g.k, 0);
    while (true) {
        std::vector<Element> tuple;
        for (size_t j : pick)
            tuple.push_back(gens[j]);
        ClosednessResult r = closedness_eval(g, t, tuple);
        ++evaluated;
        det_ok &= r.determinant_identity && r.zero_sum_forces_zero_det;
        if (!r.value.is_zero()) {
            json names = json::array();
            for (const auto& a : tuple)
                names.push_back(to_string(a));
            nonzero.push_back({{"generators", names}, {"value", to_string(r.value)}});
        }
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == gens.size()) {
            pick[i] = 0;
            ++i;
        }
        if (i == pick.size())
            break;
    }
    bool ok = nonzero.empty() && det_ok;
    return entry("closedness", ok ? Status::Holds : Status::Fails, "exact",
                 {{"route", "determinant"}, {"evaluated", evaluated}, {"determinant_identity", det_ok}, {"nonzero", nonzero}});
}

ConditionEntry finiteness(const Graph& g, const GraphTrace& t) {
    if (g.k > 1)
        return entry("finiteness", Status::Holds, "exact",
                     {{"argument", "finite vertex set: the algebra is unital"}, {"vertices", g.num_vertices()}});
    Classification c = classify(g);
    int ends = static_cast<int>(find_ends(g).size());
    if (c.kind == Classification::Kind::SingleLoop)
        return entry("finiteness", Status::Holds, "exact",
                     {{"argument", "single loop: the algebra is unital"}, {"classification", to_string(c)}, {"ends", ends}});
    if (c.kind != Classification::Kind::DirectedTree)
        return not_applicable("finiteness", "exact", "connected single-entry directed tree without sinks",
                              "classification " + to_string(c));
    json checked = json::array();
    bool ok = true;
    Element sum(g);
    for (size_t v = 0; v < g.num_vertices(); ++v) {
        Element pv = Element::vertex(g, Vertex{static_cast<int>(v), 0});
        sum += Gauss(static_cast<long>(v) + 1) * pv;
        FixedPointNorms n = fixed_point_norms(canonical_F_form(pv), t);
        ok &= n.inequality_holds;
        checked.push_back({{"element", to_string(pv)},
                           {"hilbert_norm_sq", to_string(n.hilbert_norm_sq)},
                           {"module_norm_sq", to_string(n.module_norm_sq)},
                           {"min_end_trace", to_string(n.min_end_trace)}});
    }
    FixedPointNorms n = fixed_point_norms(canonical_F_form(sum), t);
    ok &= n.inequality_holds;
    checked.push_back({{"element", to_string(sum)},
                       {"hilbert_norm_sq", to_string(n.hilbert_norm_sq)},
                       {"module_norm_sq", to_string(n.module_norm_sq)},
                       {"min_end_trace", to_string(n.min_end_trace)}});
    return entry("finiteness", ok ? Status::Holds : Status::Fails, "exact",
                 {{"ends", ends}, {"ktheory", {{"k0", ktheory_ranks(g).k0}, {"k1", ktheory_ranks(g).k1}}}, {"norms", checked}});
}

json witness_json(const Witness& w) {
    json j = {{"description", w.description}};
    if (!w.a.empty())
        j["a"] = w.a;
    if (!w.b.empty())
        j["b"] = w.b;
    if (!w.x.empty())
        j["x"] = w.x;
    return j;
}

json first_witnesses(const std::vector<Witness>& ws, size_t limit = 5) {
    json out = json::array();
    for (size_t i = 0; i < ws.size() && i < limit; ++i)
        out.push_back(witness_json(ws[i]));
    return out;
}

ConditionEntry first_order(const Truncation& tr) {
    FirstOrderReport r = first_order_check(tr);
    json w = {{"checks", r.checks},
              {"order_zero", r.order_zero},
              {"first_order", r.first_order},
              {"violations", first_witnesses(r.violations)},
              {"left_action_counterexample_found", r.left_action_counterexample_found}};
    if (r.left_action_witness)
        w["left_action_witness"] = witness_json(*r.left_action_witness);
    return entry("first_order", r.order_zero && r.first_order ? Status::Holds : Status::Fails, "exact", w);
}

ConditionEntry spin_c(const Truncation& tr) {
    SpinCReport r = spin_c_generation_check(tr);
    return entry("spin_c", r.holds ? Status::Holds : Status::Fails, "exact",
                 {{"checks", r.checks},
                  {"clifford_span", r.achieved_dimension},
                  {"expected_span", r.expected_dimension},
                  {"violations", first_witnesses(r.violations)}});
}

ConditionEntry reality(const Graph& g, const Truncation& tr) {
    if (g.k == 1) {
        RealityReport r = reality_check_1graph(tr);
        bool ok = r.j_squared && r.jdj && r.right_action && r.isometric;
        return entry("reality", ok ? Status::Holds : Status::Fails, "exact",
                     {{"checks", r.checks},
                      {"J_squared", r.j_squared},
                      {"JDJ_minus_D", r.jdj},
                      {"right_action", r.right_action},
                      {"violations", first_witnesses(r.violations)}});
    }
    SignTableRow row = sign_table_check(g.k).back();
    RealityData d = reality_operator(g.k);
    bool ok = row.pass && d.chi_real && d.antiunitary;
    return entry("reality", ok ? Status::Holds : Status::Fails, "exact",
                 {{"eps", row.computed.eps},
                  {"eps_prime", row.computed.eps_prime},
                  {"eps_dprime", row.computed.eps_dprime},
                  {"matches_table", row.computed == row.expected},
                  {"degree_reversal_ok", row.degree_reversal_ok},
                  {"chi_real", d.chi_real}});
}

ConditionEntry irreducibility(const Graph& g, const Truncation& tr) {
    auto comps = components(g);
    CommutantReport r = commutant_probe(tr);
    json cj = json::array();
    for (const auto& c : comps) {
        json names = json::array();
        for (int v : c)
            names.push_back(g.vertex_ids[v]);
        cj.push_back(names);
    }
    bool ok = comps.size() == 1 && r.interior_dimension == 1;
    return entry("irreducibility", ok ? Status::Holds : Status::Fails, "exact",
                 {{"components", cj},
                  {"commutant_dimension", r.solution_dimension},
                  {"interior_dimension", r.interior_dimension},
                  {"boundary_artifacts", r.boundary_artifacts}});
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
    case Status::Holds:
        return "holds";
    case Status::Fails:
        return "fails";
    default:
        return "not_applicable";
    }
}

HypothesisReport hypothesis_check(const Graph& g) {
    return hypothesis_check(g, g.k == 1 ? default_end_values(g) : std::map<std::string, Rational>{});
}

HypothesisReport hypothesis_check(const Graph& g, const std::map<std::string, Rational>& end_values) {
    HypothesisReport h;
    h.connected = components(g).size() == 1;
    h.locally_finite = true;  // finite presentations; rays emit and receive one edge per step
    if (g.k == 1) {
        StructuralReport s = structural_report(g);
        h.no_sinks = s.sinks.empty();
        h.single_entry = single_entry_check(g).holds;
    } else {
        h.no_sinks = true;  // enforced when the presentation is built
        h.single_entry = single_exit_check(g).holds;
    }
    try {
        GraphTrace t = g.k == 1 ? solve_graph_trace(g, end_values) : solve_graph_trace(g);
        h.faithful_graph_trace_exists = t.faithful();
        if (!h.faithful_graph_trace_exists)
            h.trace_error = "graph trace is not faithful";
    } catch (const Error& e) {
        h.trace_error = e.what();
    }
    h.fg_ktheory = true;  // finitely many vertices and edges
    h.ends = g.k == 1 ? static_cast<int>(find_ends(g).size()) : 0;
    if (!h.connected)
        h.violated.push_back("connected");
    if (!h.locally_finite)
        h.violated.push_back("locally_finite");
    if (!h.no_sinks)
        h.violated.push_back("no_sinks");
    if (!h.faithful_graph_trace_exists)
        h.violated.push_back("faithful_graph_trace_exists");
    if (!h.single_entry)
        h.violated.push_back(g.k == 1 ? "single_entry" : "single_exit");
    if (!h.fg_ktheory)
        h.violated.push_back("fg_ktheory");
    return h;
}

const ConditionEntry& ConditionReport::at(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name)
            return e;
    throw Error(Error::Kind::Precondition, "unknown condition " + name);
}

int ConditionReport::exit_code() const {
    bool na = false;
    for (const auto& e : entries) {
        if (e.status == Status::Fails)
            return 2;
        na |= e.status == Status::NotApplicable;
    }
    return na ? 3 : 0;
}

ConditionReport evaluate_all(const Graph& g, const ConditionOptions& options) {
    return evaluate_all(g, g.k == 1 ? default_end_values(g) : std::map<std::string, Rational>{}, options);
}

ConditionReport evaluate_all(const Graph& g, const std::map<std::string, Rational>& end_values,
                             const ConditionOptions& options) {
    if (options.level < 1)
        throw Error(Error::Kind::Precondition, "level must be at least 1");
    ConditionReport r;
    r.k = g.k;
    r.options = options;
    r.hypotheses = hypothesis_check(g, end_values);

    std::optional<GraphTrace> trace;
    if (r.hypotheses.faithful_graph_trace_exists)
        trace = g.k == 1 ? solve_graph_trace(g, end_values) : solve_graph_trace(g);
    std::optional<Truncation> tr;
    if (trace)
        tr = build_truncation(g, *trace, options.level);

    std::map<std::string, ConditionEntry> out;
    const std::string no_trace = "faithful_graph_trace_exists";
    // A precondition raised inside an evaluator means a hypothesis it relies on is missing.
    auto guarded = [&](const std::string& name, const std::string& method, auto&& fn) {
        try {
            out[name] = fn();
        } catch (const Error& e) {
            if (e.kind() != Error::Kind::Precondition)
                throw;
            std::string h = r.hypotheses.violated.empty() ? "evaluator precondition" : r.hypotheses.violated.front();
            out[name] = not_applicable(name, method, h, e.what());
        }
    };
    if (trace) {
        guarded("dimension", "numeric", [&] { return dimension(g, *trace, options); });
        guarded("closedness", "exact", [&] { return closedness(g, *trace, *tr); });
        guarded("finiteness", "exact", [&] { return finiteness(g, *trace); });
        guarded("first_order", "exact", [&] { return first_order(*tr); });
        guarded("spin_c", "exact", [&] { return spin_c(*tr); });
        guarded("reality", "exact", [&] { return reality(g, *tr); });
        guarded("irreducibility", "exact", [&] { return irreducibility(g, *tr); });
    } else {
        json loop = g.k == 1 ? loop_exit_witness(g) : json::object();
        if (!loop.empty())
            out["dimension"] = entry("dimension", Status::Fails, "exact", loop);
        else
            out["dimension"] = not_applicable("dimension", "numeric", no_trace, r.hypotheses.trace_error);
        for (const char* name : {"closedness", "finiteness", "first_order", "spin_c", "reality", "irreducibility"})
            out[name] = not_applicable(name, "exact", no_trace, r.hypotheses.trace_error);
    }
    guarded("regularity", "exact", [&] { return regularity(g); });
    guarded("orientability", "exact", [&] { return orientability(g, options.level); });
    for (const auto& name : kConditionNames)
        r.entries.push_back(out.at(name));
    return r;
}

nlohmann::json to_json(const HypothesisReport& h) {
    json j = {{"connected", h.connected},
              {"locally_finite", h.locally_finite},
              {"no_sinks", h.no_sinks},
              {"faithful_graph_trace_exists", h.faithful_graph_trace_exists},
              {"single_entry", h.single_entry},
              {"fg_ktheory", h.fg_ktheory},
              {"ends", h.ends},
              {"violated", h.violated}};
    if (!h.trace_error.empty())
        j["trace_error"] = h.trace_error;
    return j;
}

nlohmann::json to_json(const ConditionReport& r) {
    json conditions = json::array();
    for (const auto& e : r.entries) {
        json j = {{"name", e.name}, {"status", to_string(e.status)}, {"method", e.method}, {"witness", e.witness}};
        if (e.tolerance)
            j["tolerance"] = *e.tolerance;
        conditions.push_back(j);
    }
    return {{"report_version", 1},
            {"k", r.k},
            {"parameters", {{"level", r.options.level}, {"window", r.options.window}, {"tolerance", r.options.tolerance}}},
            {"hypotheses", to_json(r.hypotheses)},
            {"conditions", conditions},
            {"exit_code", r.exit_code()}};
}

}  // namespace ckspec
