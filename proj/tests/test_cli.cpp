#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(std::string const& args) {
  std::string cmd = std::string(TSG_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(std::string const& name) { return std::string(TSG_SAMPLES_DIR) + "/" + name; }

bool has(std::string const& text, std::string const& needle) { return text.find(needle) != std::string::npos; }

nlohmann::json run_json(std::string const& args) {
  auto r = run(args + " --format json");
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("structure: flip-flop and F3") {
  auto r = run("structure " + sample("flip_flop.json"));
  CHECK(r.code == 0);
  CHECK(has(r.out, "J-classes: 2"));

  auto j = run_json("structure " + sample("flip_flop.json"));
  CHECK(j["schema"] == "tsg.structure/1");
  REQUIRE(j["j_classes"].size() == 2);
  for (auto const& c : j["j_classes"]) CHECK(c["h_size"] == 1);

  auto f3 = run_json("structure " + sample("f3.json"));
  std::vector<int> ranks;
  for (auto const& c : f3["j_classes"]) ranks.push_back(c["rank"].get<int>());
  std::sort(ranks.rbegin(), ranks.rend());
  CHECK(ranks == std::vector<int>{3, 2, 1});
  CHECK(f3["size"] == 27);
}

TEST_CASE("structure: eggbox DOT") {
  auto r = run("structure " + sample("s3.json") + " --format dot");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("digraph eggbox {", 0) == 0);
  CHECK(has(r.out, "<table"));
}

TEST_CASE("malformed automaton exits 2 with the field path") {
  auto r = run("structure " + sample("malformed.json"));
  CHECK(r.code == 2);
  CHECK(has(r.out, "$.delta[1]"));
}

TEST_CASE("missing input exits 3") { CHECK(run("structure " + sample("no_such_file.json")).code == 3); }

TEST_CASE("argument errors exit 2, help exits 0") {
  CHECK(run("structure " + sample("c2.json") + " --no-such-flag").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("structure " + sample("c2.json") + " --format svg").code == 2);
  auto h = run("--help");
  CHECK(h.code == 0);
  CHECK(has(h.out, "holonomy"));
  auto hh = run("holonomy --help");
  CHECK(has(hh.out, "--verify"));
  CHECK(has(hh.out, "--covering"));
}

TEST_CASE("holonomy: C6 factors and verification") {
  auto r = run("holonomy " + sample("c6.json") + " --verify");
  CHECK(r.code == 0);
  CHECK(has(r.out, "groups [C2, C3]"));
  CHECK(has(r.out, "verify: PASS"));
  CHECK(!has(r.out, "FAIL"));
}

TEST_CASE("holonomy: flip-flop has one level with trivial group") {
  auto j = run_json("holonomy " + sample("flip_flop.json") + " --verify");
  CHECK(j["schema"] == "tsg.holonomy/1");
  REQUIRE(j["levels"].size() == 1);
  CHECK(j["levels"][0]["group_order"] == 1);
  CHECK(j["verify_pass"] == true);
  CHECK(j["holonomy_monoid_order"] == "3");
  CHECK(j["reduced"]["size"] == 3);
}

TEST_CASE("holonomy: F3 orders") {
  auto j = run_json("holonomy " + sample("f3.json") + " --cascade");
  CHECK(j["holonomy_monoid_order"] == "576");
  CHECK(j["reduced"]["size"] == 240);
  CHECK(j["reduced"]["m"] == 2);
  CHECK(j["reduced"]["n"] == 2);
  CHECK(j["cascade"].size() == 3);
}

TEST_CASE("holonomy: corrupted covering fails with a counterexample") {
  auto r = run("holonomy " + sample("c6.json") + " --covering " + sample("c6_corrupted_covering.json"));
  CHECK(r.code == 1);
  CHECK(has(r.out, "FAIL"));
  CHECK(has(r.out, "point 0"));
  auto j = nlohmann::json::parse(
      run("holonomy " + sample("c6.json") + " --format json --covering " + sample("c6_corrupted_covering.json")).out);
  CHECK(j["verify"]["pass"] == false);
  CHECK(j["verify"]["point"] == 0);
}

TEST_CASE("holonomy: XS DOT") {
  auto r = run("holonomy " + sample("f3.json") + " --format dot");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("digraph xs {", 0) == 0);
  CHECK(has(r.out, "rank=same"));
}

TEST_CASE("stochastic: J verdict, Doob blocks, classification") {
  auto g = run("stochastic " + sample("abc_matrices.txt") + " --green 0 1 J");
  CHECK(g.code == 0);
  CHECK(has(g.out, "M0 J M1: true"));
  auto l = run_json("stochastic " + sample("abc_matrices.txt") + " --green 0 1 L");
  CHECK(l["green"]["related"] == false);
  auto self = run_json("stochastic " + sample("abc_matrices.txt") + " --green 0 0 H");
  CHECK(self["green"].contains("left_q"));
  CHECK(self["green"].contains("right_p"));

  auto d = run_json("stochastic " + sample("mixing.txt") + " --doob 0");
  CHECK(d["doob"]["blocks"].size() == 1);
  CHECK(d["doob"]["rank"] == 1);
  auto nd = run_json("stochastic " + sample("mixing.txt") + " --doob 1");
  CHECK(nd["doob"]["idempotent"] == false);

  auto c = run("stochastic " + sample("abc_matrices.txt") + " --classify");
  CHECK(c.code == 0);
  CHECK(has(c.out, "support semigroup: 3 elements"));
  CHECK(has(c.out, "J-classes: 3 (sizes 1, 1, 1)"));
  CHECK(has(c.out, "J(M0) != J(M1)"));
}

TEST_CASE("stochastic: input and support errors") {
  auto bad = run("stochastic " + sample("bad_row.txt"));
  CHECK(bad.code == 2);
  CHECK(has(bad.out, "sums to"));
  auto mono = run("stochastic " + sample("mixing.txt") + " --classify");
  CHECK(mono.code == 3);
  CHECK(has(mono.out, "matrix 0"));
  CHECK(run("stochastic " + sample("abc_matrices.txt") + " --green 0 1 K").code == 2);
  CHECK(run("stochastic " + sample("abc_matrices.txt") + " --green 0 7 J").code == 3);
}

TEST_CASE("reps: simple module counts") {
  auto ff = run_json("reps " + sample("flip_flop.json") + " --field 3");
  CHECK(ff["schema"] == "tsg.reps/1");
  CHECK(ff["count"] == 2);
  for (auto const& a : ff["apexes"])
    for (auto const& m : a["simples"]) CHECK(m["dim"] == 1);
  CHECK(run_json("reps " + sample("f2.json") + " --field 5")["count"] == 3);
  auto m = run_json("reps " + sample("s3.json") + " --field 7 --matrices");
  CHECK(m["apexes"][0]["simples"][2]["generators"].size() == 2);
}

TEST_CASE("reps: characteristic clash exits 4") {
  auto r = run("reps " + sample("f2.json") + " --field 2");
  CHECK(r.code == 4);
  CHECK(has(r.out, "|H_e| = 2"));
  CHECK(run("reps " + sample("f2.json") + " --field 4").code == 3);
}

TEST_CASE("reps: holonomy table") {
  auto j = run_json("reps " + sample("c2.json") + " --field 3 --holonomy");
  auto const& mods = j["holonomy"]["modules"];
  REQUIRE(mods.size() == 3);
  CHECK(mods[0]["module_dim"] == 2);
  CHECK(mods[0]["radical_dim"] == 1);
  CHECK(j["holonomy"]["quotients_match"] == true);
}

TEST_CASE("output is byte-identical across runs") {
  for (auto const& args : {"reps " + sample("s3.json") + " --holonomy --seed 7", "holonomy " + sample("random_a.json"),
                           "structure " + sample("flip_flop_wr_c2.json") + " --format json"}) {
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
