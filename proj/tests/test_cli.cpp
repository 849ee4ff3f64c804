#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Exercises the installed binary end to end through a shell, including exit
// codes and file artifacts.

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "qtabgan_cli_test";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter));
    const fs::path err = dir / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd =
        std::string(QTABGAN_BIN) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "qtabgan_cli_test" / "work";
    fs::create_directories(dir);
    return dir;
}

// Census-style CSV matching the [n5,c3,c2] register example.
fs::path census_csv() {
    const fs::path p = work_dir() / "census.csv";
    std::ofstream f(p);
    f << "age,workclass,income\n";
    for (int i = 0; i < 40; ++i) {
        f << (18 + (i * 7) % 50) << ","
          << (i % 3 == 0 ? "private" : i % 3 == 1 ? "government" : "self-employed") << ","
          << (i % 4 == 0 ? ">50K" : "<=50K") << "\n";
    }
    return p;
}

}  // namespace

TEST_CASE("inspect-circuit reports the census gate counts") {
    const fs::path dir = work_dir() / "inspect";
    const auto ing = run("ingest --csv " + census_csv().string() +
                         " --feature age:numeric:5 --feature workclass:categorical"
                         " --feature income:categorical --mode non-boolean --out " + dir.string());
    REQUIRE(ing.exit_code == 0);
    CHECK(ing.out.find("[n5,c3,c2]") != std::string::npos);

    const auto ins = run("inspect-circuit --schema " + (dir / "schema.json").string() + " --depth 1");
    CHECK(ins.exit_code == 0);
    CHECK(ins.out.find("total gates per layer: 20") != std::string::npos);

    // Boolean mode override folds the binary feature into the numerical register.
    const auto boolean = run("inspect-circuit --schema " + (dir / "schema.json").string() +
                             " --mode boolean --depth 1");
    CHECK(boolean.out.find("[n6,c3]") != std::string::npos);
    CHECK(boolean.out.find("total gates per layer: 20") != std::string::npos);

    const auto gates = run("inspect-circuit --schema " + (dir / "schema.json").string() +
                           " --depth 2 --json");
    CHECK(gates.exit_code == 0);
    CHECK(gates.out.find("\"num_params\"") != std::string::npos);
}

TEST_CASE("re-ingesting produces byte-identical artifacts") {
    const fs::path a = work_dir() / "ing_a";
    const fs::path b = work_dir() / "ing_b";
    const std::string features =
        " --feature age:numeric:5 --feature workclass:categorical --feature income:categorical";
    REQUIRE(run("ingest --csv " + census_csv().string() + features + " --out " + a.string()).exit_code == 0);
    REQUIRE(run("ingest --csv " + census_csv().string() + features + " --out " + b.string()).exit_code == 0);
    CHECK(slurp(a / "schema.json") == slurp(b / "schema.json"));
    CHECK(slurp(a / "encoded.json") == slurp(b / "encoded.json"));
}

TEST_CASE("ingest errors name the offending column") {
    const auto r = run("ingest --csv " + census_csv().string() +
                       " --feature nonexistent:categorical --out " + (work_dir() / "bad").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("nonexistent") != std::string::npos);
}

TEST_CASE("missing files are usage errors") {
    CHECK(run("train --schema /nonexistent/schema.json --data /nonexistent/data.json --out " +
              (work_dir() / "x").string())
              .exit_code == 2);
    CHECK(run("evaluate --real /nonexistent.csv --synth /nonexistent.csv --schema /nonexistent.json")
              .exit_code == 2);
}

TEST_CASE("ingest, train, generate, evaluate round trip") {
    const fs::path dir = work_dir() / "roundtrip";
    const std::string data_csv = std::string(QTABGAN_DATA_DIR) + "/adult_sample.csv";
    const auto ing = run("ingest --csv " + data_csv +
                         " --feature age:numeric:5 --feature education:categorical"
                         " --feature income:categorical --mode boolean --out " + dir.string());
    REQUIRE(ing.exit_code == 0);

    const fs::path rundir = dir / "run";
    const auto tr = run("train --schema " + (dir / "schema.json").string() + " --data " +
                        (dir / "encoded.json").string() + " --out " + rundir.string() +
                        " --depth 2 --epochs 8 --seed 3");
    REQUIRE(tr.exit_code == 0);
    CHECK(fs::exists(rundir / "checkpoint.json"));
    CHECK(fs::exists(rundir / "run_log.jsonl"));
    CHECK(fs::exists(rundir / "config.json"));

    // Run logs carry one JSON record per epoch.
    std::ifstream log(rundir / "run_log.jsonl");
    int lines = 0;
    std::string line;
    while (std::getline(log, line)) {
        CHECK(line.find("\"kl\"") != std::string::npos);
        ++lines;
    }
    CHECK(lines == 8);

    const fs::path synth = dir / "synth.csv";
    const auto gen = run("generate --checkpoint " + (rundir / "checkpoint.json").string() +
                         " --n 500 --seed 7 --out " + synth.string());
    REQUIRE(gen.exit_code == 0);

    const auto ev = run("evaluate --real " + data_csv + " --synth " + synth.string() + " --schema " +
                        (dir / "schema.json").string() + " --out " + (dir / "metrics.json").string());
    REQUIRE(ev.exit_code == 0);
    CHECK(ev.out.find("overall:") != std::string::npos);
    CHECK(slurp(dir / "metrics.json").find("\"downstream\"") != std::string::npos);
}

TEST_CASE("generate with zero rows writes only the header") {
    const fs::path dir = work_dir() / "zero";
    const auto ing = run("ingest --csv " + census_csv().string() +
                         " --feature age:numeric:3 --feature income:categorical --out " + dir.string());
    REQUIRE(ing.exit_code == 0);
    const auto tr = run("train --schema " + (dir / "schema.json").string() + " --data " +
                        (dir / "encoded.json").string() + " --out " + (dir / "run").string() +
                        " --epochs 2 --seed 1");
    REQUIRE(tr.exit_code == 0);
    const fs::path synth = dir / "empty.csv";
    REQUIRE(run("generate --checkpoint " + (dir / "run" / "checkpoint.json").string() +
                " --n 0 --seed 1 --out " + synth.string())
                .exit_code == 0);
    CHECK(slurp(synth) == "age,income\n");
}

TEST_CASE("default grid enumerates the full hyperparameter cross product") {
    const auto r = run("grid --dry-run");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("360 cells") != std::string::npos);
}

TEST_CASE("restricted grid runs cells end to end") {
    const fs::path dir = work_dir() / "grid";
    const auto ing = run("ingest --csv " + census_csv().string() +
                         " --feature age:numeric:3 --feature income:categorical --out " + dir.string());
    REQUIRE(ing.exit_code == 0);
    const auto r = run("grid --schema " + (dir / "schema.json").string() + " --data " +
                       (dir / "encoded.json").string() + " --out " + (dir / "cells").string() +
                       " --depths 1 --batch-fractions 0.2 --etas-g 0.1 --etas-d 0.1 --seeds 0 1" +
                       " --epochs 3");
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(dir / "cells" / "summary.jsonl"));
    int cells = 0;
    std::ifstream sum(dir / "cells" / "summary.jsonl");
    std::string line;
    while (std::getline(sum, line)) {
        CHECK(line.find("\"overall\"") != std::string::npos);
        ++cells;
    }
    CHECK(cells == 2);
    CHECK(fs::exists(dir / "cells" / "d1_b0.2_g0.1_e0.1_s0" / "metrics.json"));
    CHECK(fs::exists(dir / "cells" / "d1_b0.2_g0.1_e0.1_s1" / "checkpoint.json"));
}
