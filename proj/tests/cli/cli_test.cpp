#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "sepa/io.hpp"
#include "sepa/monoid.hpp"
#include "sepa/nfa.hpp"
#include "sepa/pieces.hpp"
#include "sepa/pt.hpp"
#include "testlib.hpp"

// key order must survive parsing for the byte level comparisons below
using json = nlohmann::ordered_json;

namespace {

const std::string kBin = SEPA_CLI_BIN;
const std::string kData = SEPA_TEST_DATA_DIR;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = kBin + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    r.code = WEXITSTATUS(status);
    return r;
}

json parse_report(const RunResult& r) {
    INFO(r.out);
    REQUIRE_FALSE(r.out.empty());
    return json::parse(r.out);
}

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("sepa_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

const std::string kFig1 = kData + "/example_a.json";
const std::string kFig2 = kData + "/example_b.json";
const std::string kAstar = kData + "/astar.json";
const std::string kBbstar = kData + "/bbstar.json";

}  // namespace

TEST_CASE("pt-separate reports the canonical witness") {
    const RunResult r = run_cli("pt-separate " + kFig1 + " " + kFig2);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);

    REQUIRE(doc["schema"] == "sepa-report/1");
    REQUIRE(doc["command"] == "pt-separate");
    REQUIRE(doc["budget"]["limit"] == 2000000);
    REQUIRE(doc["inputs"].size() == 2);
    REQUIRE(doc["inputs"][0]["source"] == kFig1);
    REQUIRE(doc["inputs"][0]["digest"].get<std::string>().size() == 16);
    REQUIRE(doc["timing_ms"].is_number());

    const json& v = doc["verdict"];
    REQUIRE(v["separable"] == false);
    REQUIRE(v["witness"]["u"] == json::parse(R"([[], ["c"], []])"));
    REQUIRE(v["witness"]["B"] == json::parse(R"([["a", "b"], ["a"]])"));
    REQUIRE_FALSE(v["witness"].contains("path1"));
    REQUIRE(v["kappa_bound"] == sepa::kappa_bound(4, 4, 3).str());
}

TEST_CASE("pt-separate with paths and pumping") {
    const RunResult r =
        run_cli("pt-separate --witness --pump 2 " + kFig1 + " " + kFig2);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);

    const json& w = doc["verdict"]["witness"];
    REQUIRE(w.contains("path1"));
    REQUIRE(w.contains("path2"));
    REQUIRE(w["path1"][0]["kind"] == "word");
    bool has_block = false;
    for (const auto& seg : w["path1"]) {
        if (seg["kind"] == "block") {
            has_block = true;
            REQUIRE(seg.contains("loop"));
            REQUIRE_FALSE(seg["loop"]["labels"].empty());
        }
    }
    REQUIRE(has_block);

    const json& pump = doc["pump"];
    REQUIRE(pump["kappa"] == 2);
    REQUIRE(pump["accepted1"] == true);
    REQUIRE(pump["accepted2"] == true);
    REQUIRE(pump["kpeq"] == true);
    REQUIRE(pump["word1"].is_array());
}

TEST_CASE("pt-separate on a separable pair") {
    const RunResult r = run_cli("pt-separate " + kAstar + " " + kBbstar);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["separable"] == true);
    REQUIRE(doc["verdict"]["witness"].is_null());

    const RunResult re = run_cli("pt-separate 're:a*' 're:bb*'");
    REQUIRE(re.code == 0);
    REQUIRE(parse_report(re)["verdict"]["separable"] == true);
}

TEST_CASE("reports are deterministic up to timing") {
    const RunResult r1 = run_cli("pt-separate --witness " + kFig1 + " " + kFig2);
    const RunResult r2 = run_cli("pt-separate --witness " + kFig1 + " " + kFig2);
    json d1 = parse_report(r1);
    json d2 = parse_report(r2);
    d1.erase("timing_ms");
    d2.erase("timing_ms");
    REQUIRE(d1.dump() == d2.dump());
}

TEST_CASE("input errors exit with the input code") {
    const RunResult malformed = run_cli("pt-separate " + kData + "/malformed.json " + kFig2);
    REQUIRE(malformed.code == 2);
    const json doc = parse_report(malformed);
    REQUIRE(doc["error"]["type"] == "schema");
    REQUIRE_FALSE(doc.contains("verdict"));

    const RunResult missing = run_cli("pt-separate /nonexistent.json " + kFig2);
    REQUIRE(missing.code == 2);
    REQUIRE(parse_report(missing)["error"]["type"] == "schema");

    const RunResult badre = run_cli("pt-separate 're:(a' " + kFig2);
    REQUIRE(badre.code == 2);
    const json redoc = parse_report(badre);
    REQUIRE(redoc["error"]["type"] == "parse");
    REQUIRE(redoc["error"]["position"] == 0);

    const RunResult badfmt = run_cli("pt-separate --format xml " + kFig1 + " " + kFig2);
    REQUIRE(badfmt.code == 2);
    REQUIRE(parse_report(badfmt)["error"]["type"] == "schema");

    REQUIRE(run_cli("bogus-subcommand").code == 2);
    REQUIRE(run_cli("").code == 2);
}

TEST_CASE("budget exhaustion exits with the budget code") {
    const RunResult r = run_cli("pt-min-kappa --budget 1 " + kFig1 + " " + kFig2);
    REQUIRE(r.code == 3);
    const json doc = parse_report(r);
    REQUIRE(doc["error"]["type"] == "budget");
    REQUIRE(doc["error"]["reached"].get<long long>() >= 1);
    REQUIRE(doc["budget"]["limit"] == 1);

    const RunResult ul = run_cli("ul-separate --budget 1 " + kAstar + " " + kBbstar);
    REQUIRE(ul.code == 3);
    REQUIRE(parse_report(ul)["error"]["type"] == "budget");
}

TEST_CASE("pt-min-kappa finds the least level and a valid separator") {
    const RunResult r = run_cli("pt-min-kappa " + kAstar + " " + kBbstar);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["kappa"] == 1);
    REQUIRE(doc["verdict"]["num_abstractions"] == 2);

    const auto expected = sepa::separator_dfa(testlib::astar(), 1);
    REQUIRE(doc["verdict"]["separator"].dump(2) == sepa::dfa_to_json(expected.dfa));

    const sepa::Nfa sep = sepa::parse_nfa(doc["verdict"]["separator"].dump());
    REQUIRE(sepa::is_empty(sepa::product(testlib::bbstar(), sep)));
    REQUIRE(sepa::accepts(sep, {}));
    REQUIRE(sepa::accepts(sep, sepa::Word{0, 0}));
}

TEST_CASE("pt-min-kappa reports unseparable pairs") {
    const RunResult r = run_cli("pt-min-kappa --max 3 " + kFig1 + " " + kFig2);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["kappa"].is_null());
    REQUIRE(doc["verdict"]["ptime_separable"] == false);
}

TEST_CASE("pt-separator emits the closure automaton") {
    const RunResult r = run_cli("pt-separator --kappa 1 " + kAstar);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["kappa"] == 1);
    REQUIRE(doc["verdict"]["states"] == 2);
    REQUIRE(doc["verdict"]["num_abstractions"] == 2);
    const sepa::Nfa sep = sepa::parse_nfa(doc["verdict"]["automaton"].dump());
    REQUIRE(sep.num_states() == 2);
}

TEST_CASE("ul-separate reports the product verdict") {
    const RunResult r = run_cli("ul-separate " + kAstar + " " + kBbstar);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["verdict"] == "separable_at");
    REQUIRE(doc["verdict"]["kappa"] == 0);
    REQUIRE(doc["verdict"]["kappa_bound"] == "117");
    REQUIRE(doc["verdict"]["monoid_sizes"] == json::array({2, 3}));
}

TEST_CASE("bounds reports both saturation levels") {
    const RunResult r = run_cli("bounds " + kFig1 + " " + kFig2);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    const json& v = doc["verdict"];
    REQUIRE(v["state_counts"] == json::array({4, 4}));
    REQUIRE(v["alphabet_size"] == 3);
    REQUIRE(v["pt_bound"] == sepa::kappa_bound(4, 4, 3).str());

    const int m1 = v["monoid_sizes"][0].get<int>();
    const int m2 = v["monoid_sizes"][1].get<int>();
    const auto joint = testlib::abc(3);
    REQUIRE(m1 == sepa::transition_monoid(
                      sepa::minimize(sepa::determinize(testlib::example_a())))
                      .size());
    REQUIRE(v["ul_bound"] == sepa::ul_kappa_bound(m1, m2, joint.size()).str());
}

TEST_CASE("bounds reports an unrepresentable pt bound as null") {
    // thirty symbols push the exponent past the hundred megabit cutoff
    std::string big = "re:";
    for (char c = 'a'; c < 'a' + 26; ++c) big += c;
    for (char c = 'A'; c < 'A' + 4; ++c) big += c;
    const RunResult r = run_cli("bounds " + big + " " + big);
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["pt_bound"].is_null());
    REQUIRE(doc["verdict"]["alphabet_size"] == 30);
}

TEST_CASE("monoid reports the closure") {
    const RunResult r = run_cli("monoid 're:(ab)*'");
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["size"] == 6);
    REQUIRE(doc["verdict"]["monoid"]["size"] == 6);
    REQUIRE(doc["verdict"]["monoid"]["table"].size() == 6);
}

TEST_CASE("selfcheck passes on a seeded stream") {
    const RunResult r = run_cli("selfcheck --seed 1 --pairs 25");
    REQUIRE(r.code == 0);
    const json doc = parse_report(r);
    REQUIRE(doc["verdict"]["violations"] == 0);
    REQUIRE(doc["verdict"]["pairs"] == 25);
    REQUIRE_FALSE(doc["verdict"].contains("failures"));
}

TEST_CASE("reports can be written to a file") {
    const auto dir = scratch_dir();
    const auto out = (dir / "report.json").string();
    const RunResult r = run_cli("pt-separate --out " + out + " " + kAstar + " " + kBbstar);
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    std::ifstream f(out);
    REQUIRE(f.good());
    json doc;
    f >> doc;
    REQUIRE(doc["verdict"]["separable"] == true);
}

TEST_CASE("dot files are emitted on request") {
    const auto dir = scratch_dir() / "dots";
    const RunResult r = run_cli("pt-separate --witness --dot " + dir.string() + " " +
                                kFig1 + " " + kFig2);
    REQUIRE(r.code == 0);
    for (const char* name : {"a1.dot", "a2.dot", "witness.dot"}) {
        std::ifstream f(dir / name);
        INFO(name);
        REQUIRE(f.good());
        std::string first;
        std::getline(f, first);
        REQUIRE(first.rfind("digraph", 0) == 0);
    }

    const auto dir2 = scratch_dir() / "dots2";
    const RunResult r2 = run_cli("pt-min-kappa --dot " + dir2.string() + " " + kAstar +
                                 " " + kBbstar);
    REQUIRE(r2.code == 0);
    REQUIRE(std::ifstream(dir2 / "separator.dot").good());
}
