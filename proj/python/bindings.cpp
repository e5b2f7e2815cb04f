#include "ckspec/algebra.hpp"
#include "ckspec/cli.hpp"
#include "ckspec/clifford.hpp"
#include "ckspec/conditions.hpp"
#include "ckspec/graph.hpp"
#include "ckspec/hochschild.hpp"
#include "ckspec/json_io.hpp"
#include "ckspec/spectral.hpp"
#include "ckspec/trace.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ckspec;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const nlohmann::json& j) { return j.dump(); }

std::map<std::string, Rational> end_values(const Graph& g, const std::map<std::string, std::string>& given) {
    auto out = g.k == 1 ? default_end_values(g) : std::map<std::string, Rational>{};
    for (const auto& [id, v] : given)
        out[id] = parse_rational(v);
    return out;
}

GraphTrace trace_of(const Graph& g, const std::map<std::string, std::string>& given) {
    return g.k == 1 ? solve_graph_trace(g, end_values(g, given)) : solve_graph_trace(g);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Graph and k-graph algebra spectral triples";

    py::register_exception<Error>(m, "CkspecError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def_readonly("k", &Graph::k)
        .def_readonly("vertices", &Graph::vertex_ids)
        .def("num_vertices", &Graph::num_vertices)
        .def("num_edges", &Graph::num_edges)
        .def("edge_ids", [](const Graph& g) {
            std::vector<std::string> out;
            for (const auto& e : g.edges)
                out.push_back(e.id);
            return out;
        });

    m.def("parse", &parse_presentation, py::arg("text"), "Parse a presentation JSON document.");

    m.def("ktheory", [](const Graph& g) {
        KTheoryRanks r = ktheory_ranks(g);
        return std::make_pair(r.k0, r.k1);
    });

    m.def(
        "graph_trace",
        [](const Graph& g, const std::map<std::string, std::string>& ends) {
            return dump(to_json(trace_of(g, ends)));
        },
        py::arg("graph"), py::arg("end_values") = std::map<std::string, std::string>{});

    m.def("hypotheses", [](const Graph& g) { return dump(to_json(hypothesis_check(g))); });

    m.def(
        "conditions",
        [](const Graph& g, int level, long window, double tolerance, const std::map<std::string, std::string>& ends) {
            ConditionOptions o{level, window, tolerance};
            return dump(to_json(evaluate_all(g, end_values(g, ends), o)));
        },
        py::arg("graph"), py::arg("level") = 3, py::arg("window") = 100000, py::arg("tolerance") = 0.05,
        py::arg("end_values") = std::map<std::string, std::string>{});

    m.def(
        "profile",
        [](const Graph& g, std::optional<std::string> vertex, long window) {
            GraphTrace t = trace_of(g, {});
            std::optional<Vertex> v;
            if (vertex) {
                v = g.find_vertex(*vertex);
                if (!v)
                    throw Error(Error::Kind::Validation, "unknown vertex \"" + *vertex + "\"");
            }
            SpectralProfile p = singular_profile(g, t, v, window);
            nlohmann::json j = to_json(p);
            j["zeta"] = to_json(zeta_check(p));
            return dump(j);
        },
        py::arg("graph"), py::arg("vertex") = py::none(), py::arg("window") = 100000);

    m.def("orientation_boundary_1graph", [](const Graph& g, int truncation) {
        Chain b = boundary(orientation_cycle_1graph(g, truncation));
        Element be(g);
        for (const auto& [f, c] : b.terms)
            be += Element(g, f[0], c);
        return dump(to_json(be));
    });

    m.def("cancellation_steps", [](const Graph& g) { return dump(to_json(verify_cancellation_steps(g))); });

    m.def("sign_table", [](int kmax) { return dump(to_json(sign_table_check(kmax))); }, py::arg("kmax") = 8);

    m.def("multiply", [](const Graph& g, const std::string& a, const std::string& b) {
        Element x = element_from_json(g, nlohmann::json::parse(a));
        Element y = element_from_json(g, nlohmann::json::parse(b));
        return dump(to_json(x * y));
    });

    m.def("element_str", [](const Graph& g, const std::string& a) {
        return to_string(element_from_json(g, nlohmann::json::parse(a)));
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
