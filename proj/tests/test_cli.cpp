// Smoke coverage for the command-line tool: every subcommand runs against
// real files, output lands where asked, and bad input exits nonzero with a
// message instead of a stack trace.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("concord_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const TempDir& dir) {
    const std::string out_path = dir.file("cmd.out");
    const std::string cmd =
        std::string(CONCORD_CLI_PATH) + " " + args + " >" + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream body;
    body << in.rdbuf();
    return {WEXITSTATUS(status), body.str()};
}

void write(const std::string& path, const std::string& content) {
    std::ofstream(path) << content;
}

} // namespace

TEST_CASE("estimate prints the hand-example concordance in both formats") {
    TempDir dir;
    write(dir.file("m.edges"), "n1 n2\nn3 n4\n");
    write(dir.file("m.csv"), "node,y\nn1,1\nn2,1\nn3,-1\nn4,-1\n");

    const auto json = run("estimate --graph " + dir.file("m.edges") + " --outcomes " +
                              dir.file("m.csv"),
                          dir);
    CHECK(json.exit_code == 0);
    CHECK(json.out.find("\"c_hat\": 2.0") != std::string::npos);
    CHECK(json.out.find("\"schema\": \"gc-estimate/1\"") != std::string::npos);

    const auto csv = run("estimate --graph " + dir.file("m.edges") + " --outcomes " +
                             dir.file("m.csv") + " --format csv",
                         dir);
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("c_hat,gamma_hat,gamma_hat_c,v_hat,n,edges") != std::string::npos);
    CHECK(csv.out.find("2,1,-1,1,4,2") != std::string::npos);
}

TEST_CASE("estimate respects --output and --zero-gamma-c") {
    TempDir dir;
    write(dir.file("m.edges"), "n1 n2\nn3 n4\n");
    write(dir.file("m.csv"), "node,y\nn1,1\nn2,1\nn3,-1\nn4,-1\n");

    const auto res = run("estimate --graph " + dir.file("m.edges") + " --outcomes " +
                             dir.file("m.csv") + " --zero-gamma-c --output " +
                             dir.file("est.json"),
                         dir);
    CHECK(res.exit_code == 0);
    std::ifstream in(dir.file("est.json"));
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str().find("\"c_hat\": 1.0") != std::string::npos);
}

TEST_CASE("gen-graph, gen-outcomes, ci, and test chain together") {
    TempDir dir;
    const auto gen = run("gen-graph --family er --n 40 --lambda 2 --seed 7 --output " +
                             dir.file("g.edges"),
                         dir);
    CHECK(gen.exit_code == 0);
    CHECK(fs::exists(dir.file("g.edges")));
    CHECK(fs::exists(dir.file("g.edges.vertices")));
    CHECK(fs::exists(dir.file("g.edges.json")));

    const auto outcomes = run("gen-outcomes --graph " + dir.file("g.edges") + " --vertices " +
                                  dir.file("g.edges.vertices") + " --c 0.3 --seed 11 --output " +
                                  dir.file("g.csv"),
                              dir);
    CHECK(outcomes.exit_code == 0);
    CHECK(fs::exists(dir.file("g.csv")));

    const std::string data_args = " --graph " + dir.file("g.edges") + " --vertices " +
                                  dir.file("g.edges.vertices") + " --outcomes " + dir.file("g.csv");

    const auto ci = run("ci" + data_args + " --permutations 200 --seed 5", dir);
    CHECK(ci.exit_code == 0);
    CHECK(ci.out.find("\"schema\": \"gc-inference/1\"") != std::string::npos);
    CHECK(ci.out.find("\"method\": \"permutation\"") != std::string::npos);
    CHECK(ci.out.find("\"ci_lower\":") != std::string::npos);

    // same seed, same draws: the two runs agree byte for byte
    const auto again = run("ci" + data_args + " --permutations 200 --seed 5", dir);
    CHECK(again.out == ci.out);

    const auto tst = run("test" + data_args + " --permutations 200 --seed 5", dir);
    CHECK(tst.exit_code == 0);
    CHECK(tst.out.find("\"p_value\":") != std::string::npos);
    CHECK(tst.out.find("\"reject_positive\":") != std::string::npos);
}

TEST_CASE("homophily and diagnose report on typed and untyped data") {
    TempDir dir;
    write(dir.file("m.edges"), "n1 n2\nn3 n4\n");
    write(dir.file("t.csv"), "node,type\nn1,a\nn2,a\nn3,b\nn4,b\n");

    const auto hom = run("homophily --graph " + dir.file("m.edges") + " --types " +
                             dir.file("t.csv") + " --type-label a",
                         dir);
    CHECK(hom.exit_code == 0);
    CHECK(hom.out.find("\"schema\": \"gc-homophily/1\"") != std::string::npos);
    CHECK(hom.out.find("\"ih\": 1.0") != std::string::npos);
    CHECK(hom.out.find("\"w\": 0.5") != std::string::npos);

    const auto diag = run("diagnose --graph " + dir.file("m.edges"), dir);
    CHECK(diag.exit_code == 0);
    CHECK(diag.out.find("\"schema\": \"gc-diagnostics/1\"") != std::string::npos);
    CHECK(diag.out.find("\"max_degree\": 1") != std::string::npos);
    CHECK(diag.out.find("\"avg_degree\": 1.0") != std::string::npos);
}

TEST_CASE("true-gc and simulate run a small experiment end to end") {
    TempDir dir;
    const auto gen = run("gen-graph --family er --n 25 --lambda 1.5 --seed 3 --output " +
                             dir.file("g.edges"),
                         dir);
    REQUIRE(gen.exit_code == 0);

    const auto truth = run("true-gc --graph " + dir.file("g.edges") + " --vertices " +
                               dir.file("g.edges.vertices") + " --c 0.5 --reps 2000 --seed 3",
                           dir);
    CHECK(truth.exit_code == 0);
    CHECK(truth.out.find("\"schema\": \"gc-true/1\"") != std::string::npos);
    CHECK(truth.out.find("\"value\":") != std::string::npos);

    write(dir.file("sim.json"),
          "{\"graph\":{\"family\":\"er\",\"n\":25,\"lambda\":1.5},\"c\":0.0,"
          "\"mc_reps\":8,\"permutations\":40,\"true_gc_reps\":400,"
          "\"master_seed\":4,\"threads\":1}");
    const auto sim = run("simulate --config " + dir.file("sim.json") + " --output " +
                             dir.file("report.json"),
                         dir);
    CHECK(sim.exit_code == 0);
    std::ifstream in(dir.file("report.json"));
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str().find("\"schema\": \"gc-simulation/1\"") != std::string::npos);
    CHECK(body.str().find("\"coverage_perm\":") != std::string::npos);
}

TEST_CASE("bad input exits nonzero with an error line, not a crash") {
    TempDir dir;
    write(dir.file("m.csv"), "node,y\nn1,1\nn2,1\nn3,-1\nn4,-1\n");

    const auto missing = run("estimate --graph " + dir.file("nope.edges") + " --outcomes " +
                                 dir.file("m.csv"),
                             dir);
    CHECK(missing.exit_code != 0);
    CHECK(missing.out.find("error:") != std::string::npos);
    CHECK(missing.out.find("cannot open") != std::string::npos);

    const auto bad_cfg = run("gen-graph --family er --n 1 --lambda 0 --seed 1 --output " +
                                 dir.file("bad.edges"),
                             dir);
    CHECK(bad_cfg.exit_code != 0);
    CHECK(bad_cfg.out.find("error:") != std::string::npos);

    write(dir.file("m.edges"), "n1 n2\nn3 n4\n");
    write(dir.file("ghost.csv"), "node,y\nn1,1\nn2,1\nn3,-1\nghost,0\n");
    const auto misaligned = run("estimate --graph " + dir.file("m.edges") + " --outcomes " +
                                    dir.file("ghost.csv"),
                                dir);
    CHECK(misaligned.exit_code != 0);
    CHECK(misaligned.out.find("ghost") != std::string::npos);

    const auto unknown = run("frobnicate", dir);
    CHECK(unknown.exit_code != 0);
}

TEST_CASE("exit codes distinguish config errors from inference degeneracy") {
    TempDir dir;
    write(dir.file("m.edges"), "n1 n2\nn3 n4\n");
    write(dir.file("m.csv"), "node,y\nn1,1\nn2,1\nn3,-1\nn4,-1\n");

    // paired outcomes on a perfect matching: every relabeling is degenerate
    const auto degenerate = run("ci --graph " + dir.file("m.edges") + " --outcomes " +
                                    dir.file("m.csv") + " --permutations 50 --seed 2",
                                dir);
    CHECK(degenerate.exit_code == 3);
    CHECK(degenerate.out.find("error:") != std::string::npos);

    const auto config = run("ci --graph " + dir.file("m.edges") + " --outcomes " +
                                dir.file("m.csv") + " --alpha 1.5",
                            dir);
    CHECK(config.exit_code == 2);
}
