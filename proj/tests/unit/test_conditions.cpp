#include "support.hpp"

#include "ckspec/conditions.hpp"
#include "ckspec/trace.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ckspec;
using testsupport::corpus;

TEST_SUITE("conditions") {
    TEST_CASE("hypotheses on valid presentations") {
        for (const auto& name : testsupport::good_1graphs()) {
            CAPTURE(name);
            HypothesisReport h = hypothesis_check(corpus(name));
            CHECK(h.all());
            CHECK(h.connected);
            CHECK(h.single_entry);
            CHECK(h.faithful_graph_trace_exists);
            CHECK(h.trace_error.empty());
        }
        HypothesisReport d = hypothesis_check(corpus("dyadic_d3"));
        CHECK(d.ends == 8);
        for (const auto& name : testsupport::good_kgraphs()) {
            CAPTURE(name);
            HypothesisReport h = hypothesis_check(corpus(name));
            CHECK(h.all());
            CHECK(h.no_sinks);
        }
    }

    TEST_CASE("hypothesis violations are named") {
        HypothesisReport e = hypothesis_check(corpus("mutant_entry2"));
        CHECK_FALSE(e.single_entry);
        CHECK(std::find(e.violated.begin(), e.violated.end(), "single_entry") != e.violated.end());

        HypothesisReport k = hypothesis_check(corpus("mutant_kgraph"));
        CHECK(std::find(k.violated.begin(), k.violated.end(), "single_exit") != k.violated.end());
    }

    TEST_CASE("valid presentations satisfy all nine conditions") {
        std::vector<std::string> names = testsupport::good_1graphs();
        names.push_back("torus");
        names.push_back("two_vertex_2graph");
        for (const auto& name : names) {
            CAPTURE(name);
            ConditionReport r = evaluate_all(corpus(name));
            REQUIRE(r.entries.size() == kConditionNames.size());
            for (size_t i = 0; i < r.entries.size(); ++i) {
                CAPTURE(r.entries[i].name);
                CHECK(r.entries[i].name == kConditionNames[i]);
                CHECK(r.entries[i].status == Status::Holds);
            }
            CHECK(r.exit_code() == 0);
        }
    }

    TEST_CASE("mutants flip the expected condition with a witness") {
        ConditionReport e2 = evaluate_all(corpus("mutant_entry2"));
        CHECK(e2.at("orientability").status == Status::Fails);
        CHECK_FALSE(e2.at("orientability").witness.empty());
        CHECK(e2.exit_code() == 2);

        ConditionReport e3 = evaluate_all(corpus("mutant_entry3"));
        CHECK(e3.at("orientability").status == Status::Fails);

        ConditionReport sink = evaluate_all(corpus("mutant_sink"));
        CHECK(sink.at("orientability").status == Status::Fails);

        ConditionReport two = evaluate_all(corpus("mutant_two_loops"));
        CHECK(two.at("irreducibility").status == Status::Fails);
        CHECK_FALSE(two.at("irreducibility").witness.empty());

        ConditionReport exit = evaluate_all(corpus("mutant_loop_exit"));
        CHECK(exit.at("dimension").status == Status::Fails);
        CHECK(exit.at("dimension").witness.contains("loop"));
        CHECK(exit.at("closedness").status == Status::NotApplicable);

        ConditionReport kg = evaluate_all(corpus("mutant_kgraph"));
        CHECK(kg.at("orientability").status == Status::Fails);
        CHECK(kg.at("dimension").status == Status::NotApplicable);
        CHECK(kg.exit_code() == 2);
    }

    TEST_CASE("report json shape") {
        ConditionReport r = evaluate_all(corpus("loop1"));
        nlohmann::json j = to_json(r);
        CHECK(j["report_version"] == 1);
        CHECK(j["k"] == 1);
        CHECK(j["exit_code"] == 0);
        REQUIRE(j["conditions"].size() == 9);
        for (const auto& c : j["conditions"]) {
            CHECK(c.contains("name"));
            CHECK(c["status"] == "holds");
            CHECK((c["method"] == "exact" || c["method"] == "numeric"));
        }
        CHECK(j["hypotheses"].is_object());
        CHECK(j["parameters"]["level"] == 3);
    }

    TEST_CASE("end values change the trace but not the verdicts") {
        Graph g = corpus("tree_2ends");
        std::map<std::string, Rational> ends;
        for (const auto& [id, value] : default_end_values(g))
            ends[id] = value;
        ends.begin()->second = Rational(3);
        ConditionReport r = evaluate_all(g, ends);
        CHECK(r.exit_code() == 0);
    }
}
