#include "support.hpp"

#include "ckspec/graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace ckspec;
using testsupport::corpus;

namespace {

Graph parse(const std::string& text) { return parse_graph(text); }

Error::Kind error_kind(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected a parse error");
    return Error::Kind::Internal;
}

}  // namespace

TEST_SUITE("graph-model") {
    TEST_CASE("parse: smallest loop and smallest tail graph") {
        Graph loop = parse(R"({"k": 1, "vertices": ["v"], "edges": [{"id": "e", "source": "v", "range": "v"}]})");
        CHECK(loop.num_vertices() == 1);
        CHECK(loop.num_edges() == 1);
        CHECK_FALSE(loop.has_rays());

        Graph t = parse(R"({"k": 1, "vertices": ["v", "w"], "edges": [{"id": "e", "source": "v", "range": "w"}],
                            "tails": ["w"]})");
        CHECK(t.tail[t.vertex_index("w")]);
        CHECK(t.head[t.vertex_index("v")]);  // implied head on the source
        auto ends = find_ends(t);
        REQUIRE(ends.size() == 1);
        CHECK(ends[0].kind == End::Kind::Tail);
    }

    TEST_CASE("parse: validation errors") {
        CHECK(error_kind(R"({"k": 1, "vertices": ["v"], "edges": [{"id": "e", "source": "v", "range": "w"}]})") ==
              Error::Kind::Validation);
        CHECK(error_kind(R"({"k": 1, "vertices": ["v"], "edges": [{"id": "e", "source": "v", "range": "v"},
                                                                 {"id": "e", "source": "v", "range": "v"}]})") ==
              Error::Kind::Validation);
        // a tail root must not emit core edges
        CHECK(error_kind(R"({"k": 1, "vertices": ["v", "w"], "edges": [{"id": "e", "source": "v", "range": "w"}],
                             "tails": ["v"]})") == Error::Kind::Validation);
        CHECK(error_kind(R"({"k": 1, "vertices": ["v"], "edges": [], "extra": 1})") == Error::Kind::Syntax);
        CHECK(error_kind(R"({"k": 2, "vertices": ["v"], "edges": []})") == Error::Kind::Validation);
    }

    TEST_CASE("parse: syntax errors carry line and column") {
        try {
            parse("{\"k\": 1,\n \"vertices\": [\"v\",]\n}");
            FAIL("expected a syntax error");
        } catch (const Error& e) {
            CHECK(e.kind() == Error::Kind::Syntax);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }

    TEST_CASE("structural_report examples") {
        auto loop = structural_report(corpus("loop1"));
        CHECK(loop.loops == 1);
        CHECK(loop.loops_with_exit == 0);
        CHECK(loop.sinks.empty());
        CHECK(loop.connected);

        auto exit = structural_report(corpus("mutant_loop_exit"));
        CHECK(exit.loops_with_exit == 1);

        auto two = structural_report(corpus("mutant_two_loops"));
        CHECK_FALSE(two.connected);

        auto sink = structural_report(corpus("mutant_sink"));
        CHECK(sink.sinks == std::vector<std::string>{"v"});
        CHECK(sink.sources == std::vector<std::string>{"u"});
    }

    TEST_CASE("find_ends examples") {
        auto sink = find_ends(corpus("mutant_sink"));
        REQUIRE(sink.size() == 1);
        CHECK(sink[0].kind == End::Kind::Sink);

        auto loop = find_ends(corpus("loop3"));
        REQUIRE(loop.size() == 1);
        CHECK(loop[0].kind == End::Kind::LoopWithoutExit);
        CHECK(loop[0].cycle.size() == 3);

        auto tree = find_ends(corpus("tree_2ends"));
        REQUIRE(tree.size() == 2);
        CHECK(tree[0].kind == End::Kind::Tail);
        CHECK(tree[0].id < tree[1].id);
    }

    TEST_CASE("single_entry_check examples") {
        CHECK(single_entry_check(corpus("loop1")).holds);
        CHECK(single_entry_check(corpus("tree_4ends")).holds);
        auto bad = single_entry_check(corpus("mutant_entry2"));
        CHECK_FALSE(bad.holds);
        CHECK(bad.violations == std::map<std::string, int>{{"w", 2}});
    }

    TEST_CASE("classify examples") {
        auto c = classify(corpus("loop3"));
        CHECK(c.kind == Classification::Kind::SingleLoop);
        CHECK(c.n == 3);
        CHECK(classify(corpus("tree_3ends")).kind == Classification::Kind::DirectedTree);
        CHECK(classify(corpus("mutant_loop_exit")).kind == Classification::Kind::Other);
    }

    TEST_CASE("property: ends are invariant under vertex relabeling") {
        std::mt19937 rng(20240501);
        for (const auto& name : testsupport::good_1graphs()) {
            Graph g = corpus(name);
            std::vector<std::string> names;
            for (size_t v = 0; v < g.num_vertices(); ++v)
                names.push_back("x" + std::to_string(v));
            std::shuffle(names.begin(), names.end(), rng);
            Graph h = testsupport::relabel(g, names);
            auto a = find_ends(g), b = find_ends(h);
            REQUIRE(a.size() == b.size());
            std::multiset<std::pair<int, std::string>> mapped, direct;
            for (const auto& e : a)
                mapped.insert({static_cast<int>(e.kind), names[e.vertex]});
            for (const auto& e : b)
                direct.insert({static_cast<int>(e.kind), h.vertex_ids[e.vertex]});
            CHECK(mapped == direct);
            CHECK(single_entry_check(g).holds == single_entry_check(h).holds);
        }
    }

    TEST_CASE("property: single entry without sinks allows at most one loop") {
        for (const auto& name : testsupport::good_1graphs()) {
            Graph g = corpus(name);
            CAPTURE(name);
            REQUIRE(single_entry_check(g).holds);
            auto s = structural_report(g);
            REQUIRE(s.sinks.empty());
            CHECK(s.loops <= 1);
            auto c = classify(g);
            if (c.kind == Classification::Kind::SingleLoop) {
                auto ends = find_ends(g);
                CHECK(ends.size() == 1);
                CHECK(ends[0].kind == End::Kind::LoopWithoutExit);
                CHECK(s.loops == 1);
            }
        }
    }

    TEST_CASE("property: violations report the entry count") {
        for (const auto& name : testsupport::mutants()) {
            Graph g = corpus(name);
            if (g.k != 1)
                continue;
            auto r = single_entry_check(g);
            for (const auto& [v, n] : r.violations) {
                int idx = g.vertex_index(v);
                CHECK(n == static_cast<int>(g.in_core[idx].size()) + (g.head[idx] ? 1 : 0));
                CHECK(n != 1);
            }
        }
    }

    TEST_CASE("components") {
        CHECK(components(corpus("mutant_two_loops")).size() == 2);
        CHECK(components(corpus("tree_4ends")).size() == 1);
    }
}
