#include "ckspec/cli.hpp"

#include "ckspec/conditions.hpp"
#include "ckspec/hochschild.hpp"
#include "ckspec/json_io.hpp"
#include "ckspec/kgraph.hpp"
#include "ckspec/spectral.hpp"
#include "ckspec/trace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace ckspec::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string input;
    int level = 3;
    long window = 100000;
    std::string vertex;
    std::string out_path;
    std::string format = "json";
    std::optional<double> tolerance;
    bool csv = false;
    bool check_cycle = false;
    std::vector<std::string> end_values;
    std::string element_path;
    int k = 0;
    int kmax = 0;
};

struct Failure {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Failure{kNoInput, "cannot read " + path};
    std::ostringstream s;
    s << in.rdbuf();
    if (in.bad())
        throw Failure{kNoInput, "cannot read " + path};
    return s.str();
}

Graph load_graph(const Config& c) {
    if (c.input.empty())
        throw Failure{kUsage, "missing input file"};
    return parse_presentation(read_file(c.input));
}

std::map<std::string, Rational> end_values(const Graph& g, const Config& c) {
    std::map<std::string, Rational> out = g.k == 1 ? default_end_values(g) : std::map<std::string, Rational>{};
    for (const auto& item : c.end_values) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Failure{kUsage, "--end-value expects id=p/q, got " + item};
        std::string id = item.substr(0, eq);
        if (!out.count(id))
            throw Error(Error::Kind::Validation, "unknown end \"" + id + "\"");
        out[id] = parse_rational(item.substr(eq + 1));
    }
    return out;
}

GraphTrace trace_for(const Graph& g, const Config& c) {
    return g.k == 1 ? solve_graph_trace(g, end_values(g, c)) : solve_graph_trace(g);
}

std::string end_kind(End::Kind k) {
    switch (k) {
    case End::Kind::Sink:
        return "sink";
    case End::Kind::LoopWithoutExit:
        return "loop_without_exit";
    default:
        return "tail";
    }
}

// Text rendering of a JSON report: one "key: value" line per scalar leaf.
void flatten(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

std::string render(const json& j, const Config& c) {
    if (c.format == "text") {
        std::ostringstream s;
        flatten(j, "", s);
        return s.str();
    }
    return j.dump(2) + "\n";
}

json analyze(const Graph& g) {
    json j = {{"k", g.k}, {"vertices", g.num_vertices()}, {"edges", g.num_edges()}};
    json comps = json::array();
    for (const auto& comp : components(g)) {
        json names = json::array();
        for (int v : comp)
            names.push_back(g.vertex_ids[v]);
        comps.push_back(names);
    }
    j["components"] = comps;
    if (g.k == 1) {
        StructuralReport s = structural_report(g);
        j["structure"] = {{"row_finite", s.row_finite},
                          {"locally_finite", s.locally_finite},
                          {"sinks", s.sinks},
                          {"sources", s.sources},
                          {"loops", s.loops},
                          {"loops_with_exit", s.loops_with_exit},
                          {"connected", s.connected}};
        json ends = json::array();
        for (const auto& e : find_ends(g))
            ends.push_back({{"id", e.id}, {"kind", end_kind(e.kind)}, {"vertex", g.vertex_ids[e.vertex]}});
        j["ends"] = ends;
        SingleEntryReport se = single_entry_check(g);
        j["single_entry"] = {{"holds", se.holds}, {"violations", se.violations}};
        j["classification"] = to_string(classify(g));
    } else {
        SingleExitReport se = single_exit_check(g);
        j["single_exit"] = {{"holds", se.holds}, {"violations", se.violations}};
    }
    j["hypotheses"] = to_json(hypothesis_check(g));
    return j;
}

json trace_report(const Graph& g, const Config& c) {
    GraphTrace t = trace_for(g, c);
    json j = {{"trace", to_json(t)}, {"faithful", t.faithful()}};
    if (!c.element_path.empty()) {
        Element a = element_from_json(g, json::parse(read_file(c.element_path)));
        Gauss v = trace_functional(t, a);
        j["element_trace"] = {{"re", to_string(v.re)}, {"im", to_string(v.im)}};
    }
    return j;
}

json hochschild_report(const Graph& g, const Config& c) {
    json j = {{"k", g.k}};
    if (g.k == 1) {
        Chain cyc = orientation_cycle_1graph(g, c.level);
        Chain b = boundary(cyc);
        Element be(g);
        for (const auto& [f, coef] : b.terms)
            be += Element(g, f[0], coef);
        j["truncation"] = c.level;
        j["boundary"] = to_json(be);
        j["boundary_matches_prediction"] = be == predicted_boundary_1graph(g, c.level);
        j["pi_D"] = to_json(pi_D(cyc));
        if (c.check_cycle) {
            bool interior_zero = true;
            for (const auto& [key, coef] : be.terms)
                interior_zero &= std::abs(key.mu.start.depth) >= c.level;
            j["interior_boundary_zero"] = interior_zero;
        }
        return j;
    }
    if (c.check_cycle)
        j["cancellation"] = to_json(verify_cancellation_steps(g));
    OrientationCycle oc = orientation_cycle_kgraph(g, false);
    j["cycle_terms"] = oc.body.terms.size();
    j["cycle_scalar_i_power"] = oc.scalar_i_power;
    j["boundary_zero"] = is_zero(boundary(oc.body));
    PiDReport pr = pi_D_report(g, oc);
    j["pi_D"] = {{"symbol_matches", pr.symbol_matches},
                 {"raw_matches", pr.raw_matches},
                 {"projection_is_identity", pr.projection_is_identity},
                 {"omega_sq", to_string(pr.omega_sq_scalar)}};
    if (pr.raw_over_expected)
        j["pi_D"]["raw_over_expected"] = to_string(*pr.raw_over_expected);
    return j;
}

json clifford_report(const Config& c) {
    json j = json::object();
    if (c.k > 0) {
        CliffordGenerators cl = generators(c.k);
        json gens = json::array();
        for (const auto& m : cl.gamma)
            gens.push_back(to_json(m));
        VolumeForm w = volume_form(cl);
        RealityData r = reality_operator(c.k);
        j["k"] = c.k;
        j["spinor_dim"] = spinor_dim(c.k);
        j["gamma"] = gens;
        j["omega"] = to_json(w.omega);
        j["omega_sq"] = to_json(w.omega_sq);
        j["chi"] = to_json(r.chi);
        j["signs"] = {{"eps", r.signs.eps}, {"eps_prime", r.signs.eps_prime}, {"eps_dprime", r.signs.eps_dprime}};
        j["degree_reversal_sign"] = r.degree_reversal_sign;
    }
    if (c.kmax > 0)
        j["sign_table"] = to_json(sign_table_check(c.kmax));
    if (j.empty())
        throw Failure{kUsage, "clifford needs --k or --kmax"};
    return j;
}

struct SpectralOutput {
    json report;
    std::string csv;
};

SpectralOutput spectral_report(const Graph& g, const Config& c) {
    if (c.window < 100)
        throw Failure{kUsage, "--window must be at least 100"};
    GraphTrace t = trace_for(g, c);
    std::optional<Vertex> v;
    if (!c.vertex.empty()) {
        v = g.find_vertex(c.vertex);
        if (!v)
            throw Error(Error::Kind::Validation, "unknown vertex \"" + c.vertex + "\"");
    }
    SpectralProfile p = singular_profile(g, t, v, c.window);
    json j = to_json(p);
    j["zeta"] = to_json(zeta_check(p));
    if (v && g.k == 1 && p.limit_estimate) {
        double target = 2 * to_double(t.value(*v));
        double rel = std::abs(*p.limit_estimate - target) / target;
        j["two_tau"] = target;
        j["relative_error"] = rel;
        if (c.tolerance)
            j["within_tolerance"] = rel <= *c.tolerance;
    }
    return {j, profile_csv(p)};
}

int dispatch(const std::string& cmd, const Config& c, std::string& text) {
    if (cmd == "clifford") {
        text = render(clifford_report(c), c);
        return 0;
    }
    Graph g = load_graph(c);
    if (cmd == "analyze") {
        text = render(analyze(g), c);
    } else if (cmd == "trace") {
        text = render(trace_report(g, c), c);
    } else if (cmd == "ktheory") {
        if (g.k != 1)
            throw Error(Error::Kind::Precondition, "ktheory is defined for 1-graphs");
        text = render(to_json(ktheory_ranks(g)), c);
    } else if (cmd == "hochschild") {
        text = render(hochschild_report(g, c), c);
    } else if (cmd == "spectral") {
        SpectralOutput s = spectral_report(g, c);
        text = (c.csv || c.format == "csv") ? s.csv : render(s.report, c);
    } else if (cmd == "conditions") {
        ConditionOptions o;
        o.level = c.level;
        o.window = c.window;
        if (c.tolerance)
            o.tolerance = *c.tolerance;
        ConditionReport r = g.k == 1 ? evaluate_all(g, end_values(g, c), o) : evaluate_all(g, o);
        json j = to_json(r);
        if (c.format == "text") {
            std::ostringstream s;
            for (const auto& e : r.entries)
                s << e.name << ": " << to_string(e.status) << " (" << e.method << ")\n";
            text = s.str();
        } else {
            text = j.dump(2) + "\n";
        }
        return r.exit_code();
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral triples of graph and k-graph algebras", "ckspec"};
    app.require_subcommand(1);
    Config c;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "structure, ends, entry/exit conditions and hypotheses"},
        {"trace", "graph trace from end values"},
        {"ktheory", "ranks of K0 and K1"},
        {"hochschild", "orientation cycle, its boundary and pi_D"},
        {"clifford", "gamma matrices, chi and the reality sign table"},
        {"spectral", "singular value profile of (1 + D^2)^(-k/2)"},
        {"conditions", "the nine conditions with witnesses"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", c.input, "presentation JSON file")->required(name != "clifford");
        sub->add_option("--out", c.out_path, "write the report to this file");
        sub->add_option("--format", c.format, "json, text or csv")
            ->check(CLI::IsMember({"json", "text", "csv"}));
        if (name == "trace" || name == "spectral" || name == "conditions")
            sub->add_option("--end-value", c.end_values, "end id=p/q (repeatable)");
        if (name == "trace")
            sub->add_option("--element", c.element_path, "element JSON to evaluate the trace on");
        if (name == "hochschild" || name == "conditions")
            sub->add_option("--level", c.level, "truncation level L")->check(CLI::PositiveNumber);
        if (name == "hochschild")
            sub->add_flag("--check-cycle", c.check_cycle, "verify b(c) = 0 step by step");
        if (name == "spectral" || name == "conditions") {
            sub->add_option("--window", c.window, "spectral window N")->check(CLI::Range(100L, 1000000000L));
            sub->add_option("--tolerance", c.tolerance, "relative tolerance for numeric checks");
        }
        if (name == "spectral") {
            sub->add_option("--vertex", c.vertex, "profile p_v (1 + D^2)^(-k/2)");
            sub->add_flag("--csv", c.csv, "emit t,F samples");
        }
        if (name == "clifford") {
            sub->add_option("--k", c.k, "rank")->check(CLI::Range(1, 12));
            sub->add_option("--kmax", c.kmax, "sign table for k = 1..kmax")->check(CLI::Range(1, 12));
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ckspec: " << e.what() << '\n';
        return kUsage;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    if (c.format == "csv" && cmd != "spectral") {
        err << "ckspec: csv output is only available for spectral\n";
        return kUsage;
    }

    std::string text;
    int code = 0;
    try {
        code = dispatch(cmd, c, text);
    } catch (const Failure& f) {
        err << "ckspec: " << f.message << '\n';
        return f.code;
    } catch (const Error& e) {
        err << "ckspec: " << e.what() << '\n';
        return e.kind() == Error::Kind::Internal ? kSoftware : kDataError;
    } catch (const nlohmann::json::exception& e) {
        err << "ckspec: " << e.what() << '\n';
        return kDataError;
    }

    if (c.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!(f << text)) {
            err << "ckspec: cannot write " << c.out_path << '\n';
            return 73;
        }
    }
    return code;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace ckspec::cli
