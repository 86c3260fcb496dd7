#include "support/fixtures.hpp"

#include "gtscegar/report.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace fixtures;
using nlohmann::json;

namespace {

VerdictReport running(const CondPtr& init)
{
    return run(ReactiveSystem{{append_rule()}}, {"Init", init}, {"Bad", bad()});
}

}  // namespace

TEST_CASE("graphs as DOT")
{
    CHECK(write_dot(*graph(2, {{0, 0}, {0, 1}}), "G") ==
          "digraph \"G\" {\n"
          "  n0 [label=\"0\"];\n"
          "  n1 [label=\"1\"];\n"
          "  n0 -> n0 [label=\"e0\"];\n"
          "  n0 -> n1 [label=\"e1\"];\n"
          "}\n");
    CHECK(write_dot(*graph(0), "say \"hi\"").find("\\\"hi\\\"") != std::string::npos);
}

TEST_CASE("abstract transition systems as DOT")
{
    VerdictReport r = running(init2());
    std::string dot = write_dot(r.ts, r.predicates);
    CHECK(dot == "digraph \"TS\" {\n"
                 "  s0 [label=\"{Init, !Bad, W1}\", peripheries=2];\n"
                 "  s1 [label=\"{!Init, !Bad, W1}\"];\n"
                 "  s0 -> s1 [label=\"append\"];\n"
                 "  s1 -> s1 [label=\"append\"];\n"
                 "}\n");
}

TEST_CASE("safe report")
{
    VerdictReport r = running(init2());
    json j = json::parse(report_json(r));
    CHECK(j["outcome"] == "safe");
    CHECK(j["exitCode"] == 0);
    CHECK(j["refinements"] == 1);
    CHECK(j["iterations"] == 2);
    CHECK(j["trace"].empty());
    CHECK(j["witness"].is_null());
    REQUIRE(j["predicates"].size() == 3);
    CHECK(j["predicates"][2]["name"] == "W1");
    CHECK(j["predicates"][2]["source"] == "wp");
    REQUIRE(j["states"].size() == 2);
    CHECK(j["states"][0]["literals"] == "+-+");
    CHECK(j["states"][1]["bottom"] == false);
    REQUIRE(j["transitions"].size() == 2);
    CHECK(j["transitions"][1]["from"] == 1);
    CHECK(j["transitions"][1]["to"] == 1);
    CHECK(j["transitions"][1]["rule"] == "append");
    CHECK(j["stats"]["wallMillis"].is_null());
    CHECK(j["stats"]["unknownLiterals"] == 0);
    REQUIRE(j["history"].size() == 2);
    CHECK(j["history"][0]["counterexample"] == json::array({"append", "append"}));
    CHECK(j["history"][1]["counterexample"].is_null());
}

TEST_CASE("unsafe report carries the witness")
{
    json j = json::parse(report_json(running(init1())));
    CHECK(j["outcome"] == "unsafe");
    CHECK(j["exitCode"] == 1);
    CHECK(j["trace"] == json::array({"append"}));
    CHECK(j["witness"]["nodes"] == 1);
    CHECK(j["witness"]["edges"] == json::array({json::array({0, 0}), json::array({0, 0})}));
}

TEST_CASE("reports are deterministic unless timing is requested")
{
    std::string a = report_json(running(init2()));
    std::string b = report_json(running(init2()));
    CHECK(a == b);
    CHECK(a.back() == '\n');
    json timed = json::parse(report_json(running(init2()), ReportOptions{true}));
    CHECK(timed["stats"]["wallMillis"].is_number_integer());
}
