// End-to-end checks of the persuade binary: flag parsing, JSON echo, CSV
// stability, exit codes. The binary path comes in via PERSUADE_BIN.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(PERSUADE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    output.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

json run_json(const std::string& args) {
  const RunResult r = run(args);
  REQUIRE(r.exit_code == 0);
  return json::parse(r.output);
}

}  // namespace

TEST_CASE("analyze outputs a reproducible report with echoed inputs") {
  const json j = run_json("analyze --lambda 0 --q-low 0.7 --q-high 0.7");
  CHECK(j["classification"] == "Manipulable");
  CHECK(j["inputs"]["profile"]["lambda"] == 0.0);
  CHECK(j["inputs"]["profile"]["q_high"] == 0.7);
  CHECK(j["inputs"]["tie"] == "favor-a");
  CHECK(j["tool"]["name"] == "persuade");
  CHECK(j["tool"]["version"].is_string());
  REQUIRE(j["witnesses"].size() == 1);
  CHECK(j["witnesses"][0]["alpha"] == doctest::Approx(0.7));
  CHECK(j["witnesses"][0]["beta"] == doctest::Approx(0.3));
  CHECK(j["witnesses"][0]["bias"] == doctest::Approx(0.0));
  CHECK(j["thresholds"]["q_bar"] == doctest::Approx(0.70710678).epsilon(1e-6));
}

TEST_CASE("analyze classifies the heterogeneous worked profile") {
  const json j = run_json("analyze --lambda 0.3 --q-low 0.6 --q-high 0.7");
  CHECK(j["classification"] == "NotManipulable");
  CHECK(j["witnesses"].empty());
  CHECK(j["candidates"].size() == 6);
}

TEST_CASE("domain violations exit with code 2 and a diagnostic") {
  CHECK(run("analyze --lambda 0 --q-low 0.45 --q-high 0.7").exit_code == 2);
  CHECK(run("analyze --lambda 1.5 --q 0.7").exit_code == 2);
  CHECK(run("oracle --q 0.7 --step 0").exit_code == 2);
  CHECK(run("oracle --q 0.7 --step 0.02").exit_code == 2);
  CHECK(run("simulate --q 0.55 --state B").exit_code == 2);  // no signal
}

TEST_CASE("simulate reproduces the introduction example deterministically") {
  const json j = run_json(
      "simulate --q 0.55 --signal-cond 1.0 0.7 --state B --n 10001 "
      "--trials 100 --seed 7");
  CHECK(j["result"]["a_win_frequency"].get<double>() >= 0.99);
  CHECK(j["result"]["exact_a_share"] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(j["inputs"]["seed"] == 7);
  CHECK(j["inputs"]["n_voters"] == 10001);

  // Identical invocations give byte-identical output.
  const RunResult r1 = run(
      "simulate --q 0.55 --signal-cond 1.0 0.7 --state B --n 1001 --trials 20 "
      "--seed 9");
  const RunResult r2 = run(
      "simulate --q 0.55 --signal-cond 1.0 0.7 --state B --n 1001 --trials 20 "
      "--seed 9");
  CHECK(r1.output == r2.output);
}

TEST_CASE("posterior and conditional signal forms are interchangeable") {
  const json a = run_json(
      "simulate --q 0.7 --signal alpha=0.7,beta=0.3 --state B --n 501 "
      "--trials 10 --seed 3");
  const json b = run_json(
      "simulate --q 0.7 --signal-cond 0.7 0.3 --state B --n 501 --trials 10 "
      "--seed 3");
  CHECK(a["result"] == b["result"]);
  CHECK(a["inputs"]["signal"]["alpha"].get<double>() ==
        doctest::Approx(b["inputs"]["signal"]["alpha"].get<double>()));
}

TEST_CASE("tie rule flag reaches the simulator") {
  // All-uninformed population: every posterior ties, so the tie rule decides
  // the whole electorate.
  const json a = run_json(
      "simulate --lambda 1 --q-low 0.5 --q-high 0.5 --signal alpha=0.5,beta=0.5 "
      "--state B --n 101 --trials 5 --seed 1 --tie favor-a");
  CHECK(a["result"]["mean_a_share"] == doctest::Approx(1.0));
  const json b = run_json(
      "simulate --lambda 1 --q-low 0.5 --q-high 0.5 --signal alpha=0.5,beta=0.5 "
      "--state B --n 101 --trials 5 --seed 1 --tie favor-b");
  CHECK(b["result"]["mean_a_share"] == doctest::Approx(0.0));
}

TEST_CASE("oracle agrees with analyze and verifies the candidate closure") {
  const json o = run_json("oracle --lambda 0 --q 0.72 --step 0.005");
  CHECK(o["grid"]["classification"] == "NotManipulable");
  CHECK(o["grid"]["optimal_count"] == 0);
  CHECK(o["lemma1"]["verified"] == true);

  const json m = run_json("oracle --lambda 0.4 --q-low 0.69 --q-high 0.7 --step 0.002");
  CHECK(m["grid"]["classification"] == "Manipulable");
  CHECK(m["grid"]["bias_range"][1].get<double>() < 0.0);
  CHECK(m["lemma1"]["verified"] == true);
}

TEST_CASE("sweep emits stable CSV with the expected shape") {
  const std::string flags =
      "sweep --q-high 0.7 --q-low-min 0.55 --q-low-max 0.6 --q-low-step 0.01 "
      "--lambda-min 0 --lambda-max 0.2 --lambda-step 0.1";
  const RunResult r1 = run(flags);
  const RunResult r2 = run(flags);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
  CHECK(r1.output.find("q_low,q_high,lambda,classification") == 0);
  int lines = 0;
  for (const char c : r1.output) lines += c == '\n';
  CHECK(lines == 1 + 6 * 3);

  // --output writes the same bytes to a file.
  const std::string path = "/tmp/persuade_sweep_test.csv";
  CHECK(run(flags + " --output " + path).exit_code == 0);
  std::ifstream in(path, std::ios::binary);
  std::string file_contents((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  CHECK(file_contents == r1.output);
  std::remove(path.c_str());
}

TEST_CASE("extensions subcommands emit their reports") {
  const json t = run_json(
      "extensions targeted --lambda 0.5 --q-low 0.55 --q-high 0.75");
  CHECK(t["report"]["manipulable"] == true);
  CHECK(t["report"]["lhs"].get<double>() == doctest::Approx(0.62784).epsilon(1e-4));

  const json s = run_json("extensions strongly-targeted --q 0.75");
  CHECK(s["report"]["manipulable"] == true);
  CHECK(s["report"]["lhs"] == doctest::Approx(0.5));

  const json p = run_json("extensions public --lambda 0 --q 0.7");
  CHECK(p["report"]["preferred_medium"] == "private");
  const json p2 = run_json("extensions public --lambda 0 --q 0.72");
  CHECK(p2["report"]["preferred_medium"] == "public");
}

TEST_CASE("continuous profiles load from breakpoint tables") {
  const std::string path = "/tmp/persuade_profile_test.txt";
  {
    std::ofstream out(path);
    out << "breakpoint value\n0.71 " << 1.0 / 0.29 << "\n";
  }
  const json j = run_json("extensions continuous --profile-file " + path);
  CHECK(j["report"]["analytic"] == "NotManipulable");
  CHECK(j["report"]["manipulable"] == false);

  {
    std::ofstream out(path);
    out << "breakpoint value\n0.5 1.0\n";  // integrates to 0.5
  }
  CHECK(run("extensions continuous --profile-file " + path).exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("analyze and oracle agree on a sample of sweep cells") {
  for (const std::string flags :
       {std::string("--lambda 0 --q-low 0.5 --q-high 0.7"),
        std::string("--lambda 0.3 --q-low 0.5 --q-high 0.7"),
        std::string("--lambda 0.05 --q-low 0.6 --q-high 0.7"),
        std::string("--lambda 0.95 --q-low 0.6 --q-high 0.7")}) {
    const json a = run_json("analyze " + flags);
    const json o = run_json("oracle " + flags + " --step 0.005");
    CHECK(a["classification"] == o["grid"]["classification"]);
  }
}
