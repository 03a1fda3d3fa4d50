#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spdet/cli.hpp"
#include "spdet/constructions.hpp"
#include "spdet/format.hpp"
#include "test_helpers.hpp"

using namespace spdet;
using namespace spdet::testing;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
    return std::string(SPDET_FIXTURE_DIR) + "/" + name;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
    json report;
};

CliResult cli(const std::vector<std::string>& args, bool parse_json = true) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    CliResult r{code, out.str(), err.str(), {}};
    if (parse_json && !r.out.empty() && r.out[0] == '{') r.report = json::parse(r.out);
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void check_report_schema(const json& report) {
    REQUIRE(report.is_object());
    CHECK(report.at("file").is_string());
    CHECK(report.at("property").is_string());
    const json& a1 = report.at("assumption1");
    CHECK(a1.at("deadlock_free").is_boolean());
    CHECK(a1.at("divergence_free").is_boolean());
    CHECK(report.at("warnings").is_array());
    CHECK(report.at("exit_code").is_number_integer());
    REQUIRE(report.at("verdicts").is_array());
    REQUIRE(!report.at("verdicts").empty());
    for (const json& v : report.at("verdicts")) {
        CHECK(v.at("property").is_string());
        CHECK(v.at("method").is_string());
        CHECK(v.at("outcome").is_string());
        CHECK(v.at("vacuous").is_boolean());
        CHECK(v.at("stats").at("nodes_built").is_number());
        CHECK(v.at("stats").at("milliseconds").is_number());
        REQUIRE(v.at("conditions").is_array());
        for (const json& c : v.at("conditions")) {
            CHECK(c.at("id").is_string());
            CHECK(c.at("description").is_string());
            CHECK(c.at("fired").is_boolean());
            if (c.at("fired").get<bool>()) {
                REQUIRE(c.at("witness").is_object());
                CHECK(c.at("witness").at("kind").is_string());
            }
        }
    }
}

}  // namespace

TEST_CASE("parsing the shipped fixtures") {
    FsaDocument s2 = parse_fsa_file(fixture("s2.fsa"));
    CHECK(s2.fsa.state_count() == 3);
    CHECK(s2.fsa.event_count() == 3);
    CHECK(s2.fsa.symbol_count() == 1);
    CHECK(s2.fsa.event_label(*s2.fsa.event_by_name("t4")).is_silent());
    REQUIRE(s2.spec.size() == 1);
    CHECK(s2.fsa.state_name(s2.spec[0].first) == "x1");
    CHECK(s2.fsa.state_name(s2.spec[0].second) == "x2");
    CHECK(s2.fsa == make_s2());

    CHECK(parse_fsa_file(fixture("s1.fsa")).fsa == make_s1());
    CHECK(parse_fsa_file(fixture("s3.fsa")).fsa == make_s3());
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_fsa(""), ParseError);

    try {
        parse_fsa("states x0 x1\nevent t1 a\ntrans x0 t9 x1\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("t9") != std::string::npos);
    }

    try {
        parse_fsa("states x0\nstates x0\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    try {
        parse_fsa("states x0\nevent t1 a\ntrans x0 t1 x0\ntrans x0 t1 x0\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }

    CHECK_THROWS_AS(parse_fsa("states x0\nbogus x0\n"), ParseError);
    CHECK_THROWS_AS(parse_fsa("states x-0\n"), ParseError);
    CHECK_THROWS_AS(parse_fsa("states x0\ninitial x0 x0\n"), ParseError);
    CHECK_THROWS_AS(parse_fsa("states x0\nevent t1\n"), ParseError);
    CHECK_THROWS_AS(parse_fsa("states x0\nspec x0 x9\n"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
    FsaDocument doc = parse_fsa(
        "# header comment\n"
        "states x0 x1  # trailing comment\n"
        "\n"
        "initial x0\n"
        "event t1 a\n"
        "trans x0 t1 x1\n");
    CHECK(doc.fsa.state_count() == 2);
    CHECK(doc.fsa.transitions().size() == 1);
}

TEST_CASE("print-parse round trip on fixtures and generated automata") {
    for (const char* name : {"s1.fsa", "s2.fsa", "s3.fsa"}) {
        FsaDocument doc = parse_fsa_file(fixture(name));
        FsaDocument again = parse_fsa(print_fsa(doc));
        CHECK(again == doc);
        CHECK(print_fsa(again) == print_fsa(doc));
    }
}

TEST_CASE("dot export of the derived automata") {
    Fsa s1 = make_s1();
    std::string det_dot = export_dot(build_detector(s1), s1);
    CHECK(det_dot.find("digraph detector") == 0);
    CHECK(det_dot.find("\"{x0}\" -> \"{x1,x2}\" [label=\"a\"]") != std::string::npos);
    CHECK(det_dot.find("\"{x1,x2}\" -> \"{x1,x2}\" [label=\"a\"]") != std::string::npos);

    Fsa no_init = FsaBuilder().states({"x0"}).event("t", "a").trans("x0", "t", "x0").build();
    CHECK(export_dot(build_observer(no_init), no_init) == "digraph observer {\n}\n");

    Fsa s3 = make_s3();
    std::string cc_dot = export_dot(extend_epsilon(build_self_composition(s3), s3), s3);
    CHECK(cc_dot.find("digraph cc_eps") == 0);
    std::size_t dotted = 0;
    std::istringstream lines(cc_dot);
    std::string line;
    while (std::getline(lines, line))
        if (line.find("style=dotted") != std::string::npos) {
            ++dotted;
            CHECK(line.find("label=\"ε\"") != std::string::npos);
            CHECK(line.find("-> \"(x1,x1)\"") != std::string::npos);
        }
    CHECK(dotted == 2);

    std::string plain_dot = export_dot(build_self_composition(s3), s3);
    CHECK(plain_dot.find("digraph cc ") == 0);
    CHECK(plain_dot.find("style=dotted") == std::string::npos);
}

TEST_CASE("check command exit codes and reports on the fixtures") {
    CliResult all = cli({"check", "spd", fixture("s3.fsa"), "--method", "all"});
    CHECK(all.code == 1);
    check_report_schema(all.report);
    CHECK(all.report["verdicts"].size() == 3);
    for (const json& v : all.report["verdicts"]) {
        CHECK(v["outcome"] == "fails");
        if (v["method"] == "detector" || v["method"] == "cc") {
            CHECK(v["conditions"][0]["fired"] == false);
            CHECK(v["conditions"][1]["fired"] == true);
        }
    }

    CliResult good = cli({"check", "spdd", fixture("s3.fsa"), "--spec", "(x0,x2)"});
    CHECK(good.code == 0);
    check_report_schema(good.report);
    CHECK(good.report["spec_pairs"].size() == 1);

    CliResult bad = cli({"check", "spdd", fixture("s3.fsa"), "--spec", "(x1,x2)"});
    CHECK(bad.code == 1);

    // The file's own spec section drives the check when no flag is given.
    CliResult file_spec = cli({"check", "spdd", fixture("s2.fsa")});
    CHECK(file_spec.code == 1);

    CliResult legacy = cli({"check", "spd", fixture("s2.fsa"), "--method", "legacy-detector"});
    CHECK(legacy.code == 0);
    check_report_schema(legacy.report);
    REQUIRE(legacy.report["warnings"].size() == 1);
    CHECK(legacy.report["warnings"][0] == "assumption1_violated");
    CHECK(legacy.report["verdicts"][0]["assumption1"]["deadlock_free"] == false);

    CliResult sd = cli({"check", "sd", fixture("s1.fsa")});
    CHECK(sd.code == 1);
    check_report_schema(sd.report);

    CliResult spd_s1 = cli({"check", "spd", fixture("s1.fsa")});
    CHECK(spd_s1.code == 1);
    CliResult spd_s2 = cli({"check", "spd", fixture("s2.fsa")});
    CHECK(spd_s2.code == 1);
    CliResult spdd_s1 = cli({"check", "spdd", fixture("s1.fsa")});
    CHECK(spdd_s1.code == 0);
}

TEST_CASE("usage and parse failures exit with code two") {
    CHECK(cli({"check", "spd", "/nonexistent.fsa"}, false).code == 2);
    CHECK(cli({"check", "nonsense", fixture("s1.fsa")}, false).code == 2);
    CHECK(cli({"check", "spdd", fixture("s1.fsa"), "--method", "cc"}, false).code == 2);
    CHECK(cli({"check", "spd", fixture("s1.fsa"), "--spec", "broken"}, false).code == 2);
    CHECK(cli({"bogus"}, false).code == 2);
    CHECK(cli({}, false).code == 2);

    std::string bad_path = fixture("bad.fsa.tmp");
    {
        std::ofstream f(bad_path);
        f << "states x0\ntrans x0 t9 x0\n";
    }
    CliResult r = cli({"check", "spd", bad_path}, false);
    CHECK(r.code == 2);
    CHECK(r.err.find("t9") != std::string::npos);
    std::remove(bad_path.c_str());
}

TEST_CASE("budget exhaustion exits with code three") {
    CliResult r = cli({"check", "spd", fixture("s1.fsa"), "--method", "observer",
                       "--max-observer-nodes", "1"});
    CHECK(r.code == 3);
    CHECK(r.report["verdicts"][0]["outcome"] == "unknown");
    CHECK(r.report["verdicts"][0]["holds"].is_null());
}

TEST_CASE("export command writes deterministic dot") {
    CliResult a = cli({"export", fixture("s3.fsa"), "cc-eps"}, false);
    CHECK(a.code == 0);
    CliResult b = cli({"export", fixture("s3.fsa"), "cc-eps"}, false);
    CHECK(a.out == b.out);
    CHECK(a.out.find("style=dotted") != std::string::npos);

    std::string out_path = fixture("export.dot.tmp");
    CliResult c = cli({"export", fixture("s1.fsa"), "observer", "-o", out_path}, false);
    CHECK(c.code == 0);
    CHECK(slurp(out_path).find("digraph observer") == 0);
    std::remove(out_path.c_str());

    CHECK(cli({"export", fixture("s1.fsa"), "nonsense"}, false).code == 2);
}

TEST_CASE("json reports are deterministic except for timings") {
    auto strip_timings = [](json j) {
        for (json& v : j["verdicts"]) v["stats"].erase("milliseconds");
        return j;
    };
    CliResult a = cli({"check", "spd", fixture("s3.fsa"), "--method", "all"});
    CliResult b = cli({"check", "spd", fixture("s3.fsa"), "--method", "all"});
    CHECK(strip_timings(a.report) == strip_timings(b.report));
}

TEST_CASE("fuzz command is reproducible and clean") {
    CliResult zero = cli({"fuzz", "--count", "0", "--seed", "5"}, false);
    CHECK(zero.code == 0);
    CHECK(zero.out.find("cases=0") != std::string::npos);

    CliResult a = cli({"fuzz", "--count", "40", "--seed", "11", "--max-states", "5"}, false);
    CliResult b = cli({"fuzz", "--count", "40", "--seed", "11", "--max-states", "5"}, false);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("discrepancies=0") != std::string::npos);

    CHECK(cli({"fuzz", "--max-states", "40"}, false).code == 2);
}
