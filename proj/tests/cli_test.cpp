#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args)
{
    std::string cmd = std::string("'") + GTSCEGAR_CLI + "' " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string spec(const std::string& name) { return std::string("'") + GTSCEGAR_SPEC_DIR + "/" + name + "'"; }

fs::path scratch_dir(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / ("gtscegar_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("verify reports outcomes through exit codes")
{
    Run safe = cli("verify " + spec("running_example.gts"));
    CHECK(safe.code == 0);
    CHECK(safe.out.find("outcome: safe") != std::string::npos);
    Run unsafe = cli("verify " + spec("running_example.gts") + " --init Init1");
    CHECK(unsafe.code == 1);
    CHECK(unsafe.out.find("outcome: unsafe") != std::string::npos);
    Run limited = cli("verify " + spec("running_example.gts") + " --max-refinements 0");
    CHECK(limited.code == 2);
    CHECK(cli("verify " + spec("delete_two.gts")).code == 0);
    CHECK(cli("verify " + spec("out_edge.gts")).code == 0);
}

TEST_CASE("verify writes JSON and DOT files")
{
    fs::path dir = scratch_dir("outputs");
    fs::path first = dir / "a.json", second = dir / "b.json";
    CHECK(cli("verify " + spec("running_example.gts") + " --verbosity 0 --json '" + first.string() + "' --dot-dir '" +
              (dir / "dot").string() + "'")
              .code == 0);
    CHECK(cli("verify " + spec("running_example.gts") + " --verbosity 0 --json '" + second.string() + "'").code == 0);
    std::string a = slurp(first);
    CHECK(a.find("\"outcome\": \"safe\"") != std::string::npos);
    CHECK(a == slurp(second));
    CHECK(fs::exists(dir / "dot" / "ts.dot"));
    CHECK(fs::exists(dir / "dot" / "ts_iteration1.dot"));
    CHECK(fs::exists(dir / "dot" / "ts_iteration2.dot"));

    CHECK(cli("verify " + spec("running_example.gts") + " --init Init1 --verbosity 0 --dot-dir '" +
              (dir / "unsafe").string() + "'")
              .code == 1);
    CHECK(fs::exists(dir / "unsafe" / "witness.dot"));

    fs::path timed = dir / "t.json";
    cli("verify " + spec("running_example.gts") + " --verbosity 0 --timing --json '" + timed.string() + "'");
    CHECK(slurp(timed).find("\"wallMillis\": null") == std::string::npos);
}

TEST_CASE("flags and the environment override the specification")
{
    Run sp = cli("verify " + spec("running_example.gts") + " --spurious-mode sp --max-refinements 1");
    CHECK(sp.code == 2);
    Run env = cli("verify " + spec("running_example.gts") + " --verbosity 2");
    CHECK(env.code == 0);
    std::string withEnv = "GTSCEGAR_BUDGET_MS=5000 '" + std::string(GTSCEGAR_CLI) + "' verify " +
                          spec("running_example.gts") + " --verbosity 0 > /dev/null 2>&1";
    CHECK(std::system(withEnv.c_str()) == 0);
}

TEST_CASE("input errors exit with code 3")
{
    fs::path dir = scratch_dir("errors");
    std::ofstream(dir / "broken.gts") << "graph A { nodes a; }\nrule r { left = empty -> A <- empty;\n";
    Run broken = cli("verify '" + (dir / "broken.gts").string() + "'");
    CHECK(broken.code == 3);
    CHECK(broken.out.find("unterminated block: expected '}'") != std::string::npos);
    CHECK(cli("verify '" + (dir / "missing.gts").string() + "'").code == 3);
    CHECK(cli("verify " + spec("running_example.gts") + " --init Nope").code == 3);
    CHECK(cli("verify " + spec("running_example.gts") + " --spurious-mode both").code == 3);
    CHECK(cli("frobnicate").code == 3);
    CHECK(cli("").code == 3);
}

TEST_CASE("explore uses the given predicates")
{
    Run seeded = cli("explore " + spec("running_example.gts") + " --predicates W1");
    CHECK(seeded.code == 0);
    CHECK(seeded.out.find("s1 --append--> s1") != std::string::npos);
    CHECK(cli("explore " + spec("running_example.gts")).code == 2);
}

TEST_CASE("entailment queries")
{
    Run proved = cli("entail " + spec("running_example.gts") + " Init2 W1");
    CHECK(proved.code == 0);
    CHECK(proved.out.find("proved") != std::string::npos);
    Run refuted = cli("entail " + spec("running_example.gts") + " Init1 W1");
    CHECK(refuted.code == 1);
    CHECK(refuted.out.find("counter-model: [1 nodes; 0->0; 0->0]") != std::string::npos);
}

TEST_CASE("transformers and steps")
{
    Run sp = cli("sp " + spec("running_example.gts") + " append Init2");
    CHECK(sp.code == 0);
    CHECK(sp.out.rfind("exists", 0) == 0);
    Run wp = cli("wp " + spec("running_example.gts") + " append Bad");
    CHECK(wp.code == 0);
    CHECK_FALSE(wp.out.empty());
    Run shift = cli("shift " + spec("running_example.gts") + " Bad 'empty -> One <- One'");
    CHECK(shift.code == 0);
    CHECK(shift.out.find("{ nodes 0; }") != std::string::npos);
    Run step = cli("step " + spec("running_example.gts") + " append Loop");
    CHECK(step.code == 0);
    CHECK(step.out.find("{ nodes 0, 1; edge e0: 0 -> 1; edge e1: 1 -> 1; }") != std::string::npos);
    Run literal = cli("step " + spec("running_example.gts") + " append '{ nodes a; }'");
    CHECK(literal.code == 0);
    CHECK(literal.out.find("0 result(s)") != std::string::npos);
    CHECK(cli("sp " + spec("running_example.gts") + " nope Init2").code == 3);
}
