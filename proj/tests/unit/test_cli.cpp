#include "support.hpp"

#include "ckspec/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using testsupport::corpus_path;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = ckspec::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("ktheory json") {
        Result r = run({"ktheory", corpus_path("tree_3ends")});
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["k0"] == 3);
        CHECK(j["k1"] == 0);
    }

    TEST_CASE("trace with end values") {
        Result r = run({"trace", corpus_path("tree_2ends"), "--end-value", "tail:a=1/3"});
        CHECK(r.code == 0);
        CHECK(r.out.find("1/3") != std::string::npos);

        Result bad = run({"trace", corpus_path("tree_2ends"), "--end-value", "tail:nowhere=1"});
        CHECK(bad.code == ckspec::cli::kDataError);
    }

    TEST_CASE("conditions exit codes") {
        CHECK(run({"conditions", corpus_path("loop1")}).code == 0);
        Result m = run({"conditions", corpus_path("mutant_entry2")});
        CHECK(m.code == 2);
        auto j = nlohmann::json::parse(m.out);
        CHECK(j["exit_code"] == 2);

        Result text = run({"conditions", corpus_path("loop1"), "--format", "text"});
        CHECK(text.out.find("orientability: holds") != std::string::npos);
    }

    TEST_CASE("usage and input errors") {
        CHECK(run({"ktheory", corpus_path("loop1"), "--bogus"}).code == ckspec::cli::kUsage);
        CHECK(run({}).code == ckspec::cli::kUsage);
        CHECK(run({"ktheory", "/nonexistent/file.json"}).code == ckspec::cli::kNoInput);
        std::string broken = temp_file("ckspec_broken.json", "{\"vertices\": [\"v\"], ");
        Result r = run({"ktheory", broken});
        CHECK(r.code == ckspec::cli::kDataError);
        CHECK_FALSE(r.err.empty());
        CHECK(run({"ktheory", corpus_path("loop1"), "--format", "csv"}).code == ckspec::cli::kUsage);
        CHECK(run({"spectral", corpus_path("loop1"), "--window", "5"}).code == ckspec::cli::kUsage);
        CHECK(run({"--help"}).code == 0);
    }

    TEST_CASE("spectral csv") {
        Result r = run({"spectral", corpus_path("loop1"), "--vertex", "v", "--window", "1000", "--csv"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("t,F\n", 0) == 0);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') > 5);
    }

    TEST_CASE("clifford sign table and hochschild cycle") {
        Result c = run({"clifford", "--kmax", "8"});
        REQUIRE(c.code == 0);
        CHECK_FALSE(nlohmann::json::parse(c.out).empty());

        Result h = run({"hochschild", corpus_path("torus"), "--check-cycle"});
        CHECK(h.code == 0);
    }

    TEST_CASE("out writes a file") {
        auto path = (std::filesystem::temp_directory_path() / "ckspec_out.json").string();
        std::remove(path.c_str());
        Result r = run({"analyze", corpus_path("loop2"), "--out", path});
        CHECK(r.code == 0);
        CHECK(r.out.empty());
        CHECK(std::filesystem::file_size(path) > 0);
    }
}
