#include "doctest.h"

#include <fstream>
#include <sstream>

#include "sect/cli.hpp"
#include "sect/schemefile.hpp"

#include "json.hpp"

using namespace sect;

namespace {

struct RunResult {
  int rc;
  std::string out, err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

void write_file(const std::string& name, const std::string& text) {
  std::ofstream f(name);
  f << text;
}

std::string read_file(const std::string& name) {
  std::ifstream f(name);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string node_scheme =
    "ring: Zmod(3^5)\n"
    "ambient: P2\n"
    "eq f1 = x0*x1 - 9*x2^2\n"
    "component Y1 = x0\n"
    "component Y2 = x1\n"
    "oq at (0:0:1) expect case=i order=2\n"
    "proper: false\n"
    "budget points=1000000\n";

const std::string quadric_scheme =
    "ring: GF(5)\n"
    "ambient: P3\n"
    "eq f1 = x0*x1 - x2*x3\n"
    "proper: false\n"
    "budget points=10000000\n"
    "budget ext=2\n";

}  // namespace

TEST_CASE("scheme files round-trip through parse and print") {
  SchemeFile f = parse_scheme_file(node_scheme);
  CHECK(f.ring->descriptor() == "Zmod(3^5)");
  CHECK(f.ambient == 2);
  CHECK(f.model.gens.size() == 1);
  CHECK(f.components.size() == 2);
  REQUIRE(f.oq.size() == 1);
  CHECK(f.oq[0].order == 2);
  CHECK(!f.proper);
  CHECK(f.budget_points == 1000000);

  std::string canonical = print_scheme_file(f);
  CHECK(print_scheme_file(parse_scheme_file(canonical)) == canonical);
  CHECK(canonical == read_file(std::string(SECT_SOURCE_DIR) + "/tests/golden/node.scheme"));
}

TEST_CASE("loading re-verifies declarations loudly") {
  CHECK_NOTHROW(load_scheme_file(node_scheme));

  std::string wrong_order = node_scheme;
  auto pos = wrong_order.find("order=2");
  wrong_order.replace(pos, 7, "order=1");
  CHECK_THROWS_AS(load_scheme_file(wrong_order), ChartInconsistency);

  std::string smooth_claim =
      "ring: GF(5)\nambient: P2\neq f1 = x0^2 + x1^2 + x2^2\n"
      "oq at (1:2:0) expect case=i\n";
  CHECK_THROWS_AS(load_scheme_file(smooth_claim), ChartInconsistency);
}

TEST_CASE("classify command matches the golden report") {
  write_file("node.scheme", node_scheme);
  auto res = run({"classify", "--model", "node.scheme", "--point", "(0:0:1)"});
  CHECK(res.rc == 0);
  CHECK(res.out == read_file(std::string(SECT_SOURCE_DIR) + "/tests/golden/classify_node.txt"));
  // byte-identical across runs
  auto again = run({"classify", "--model", "node.scheme", "--point", "(0:0:1)"});
  CHECK(again.out == res.out);
  CHECK(res.out.find("OrdinaryQuadratic case=i order=2") != std::string::npos);
}

TEST_CASE("classify exit codes cover the verdict range") {
  write_file("cone.scheme", "ring: Zmod(5^2)\nambient: P2\neq f1 = x0*x1\n");
  auto undecidable = run({"classify", "--model", "cone.scheme", "--point", "(0:0:1)"});
  CHECK(undecidable.rc == 2);

  write_file("cusp.scheme", "ring: GF(5)\nambient: P2\neq f1 = x1^2*x2 - x0^3\n");
  auto cusp = run({"classify", "--model", "cusp.scheme", "--point", "(0:0:1)"});
  CHECK(cusp.rc == 1);
  CHECK(cusp.out.find("NotOrdinary") != std::string::npos);
}

TEST_CASE("resolve command reports the blow-up count") {
  auto res = run({"resolve", "oq(case=i,n=1,Q=x1*x2,c=pi^2)", "--ring", "Zmod(5^4)",
                  "--mode", "both"});
  CHECK(res.rc == 0);
  CHECK(res.out.find("verdict: 1 blow-up; terminal SemiStable") != std::string::npos);

  auto two = run({"resolve", "oq(case=i,n=1,Q=x1*x2,c=pi^4)", "--ring", "Zmod(5^5)"});
  CHECK(two.rc == 0);
  CHECK(two.out.find("verdict: 2 blow-ups; terminal SemiStable") != std::string::npos);
}

TEST_CASE("malformed polynomial yields exit 3 with a position") {
  write_file("bad.scheme", "ring: GF(5)\nambient: P2\neq f1 = x0**\n");
  auto res = run({"check-smooth", "--model", "bad.scheme"});
  CHECK(res.rc == 3);
  CHECK(res.err.find("position") != std::string::npos);
  CHECK(res.err.find("line 3") != std::string::npos);
}

TEST_CASE("missing subcommand or file is an input error") {
  CHECK(run({}).rc == 3);
  CHECK(run({"classify", "--model", "no_such_file.scheme", "--point", "(0:0:1)"}).rc == 3);
}

TEST_CASE("check-smooth over a field and over a ring") {
  write_file("quad.scheme", quadric_scheme);
  auto res = run({"check-smooth", "--model", "quad.scheme", "--mode", "both"});
  CHECK(res.rc == 0);
  CHECK(res.out.find("smooth: yes") != std::string::npos);

  write_file("cusp.scheme", "ring: GF(5)\nambient: P2\neq f1 = x1^2*x2 - x0^3\n");
  CHECK(run({"check-smooth", "--model", "cusp.scheme"}).rc == 1);

  write_file("node.scheme", node_scheme);
  auto dvr = run({"check-smooth", "--model", "node.scheme"});
  CHECK(dvr.rc == 1);  // the special fibre is a line pair
  CHECK(dvr.out.find("special-fibre: no") != std::string::npos);
}

TEST_CASE("find-hyperplane reproduces the deterministic scan") {
  write_file("bert.scheme",
             "ring: Zmod(3^3)\nambient: P2\neq f1 = x0*x1 - 3*x2^2\n"
             "component Y1 = x0\ncomponent Y2 = x1\nproper: false\n"
             "budget points=1000000\n");
  auto res = run({"find-hyperplane", "--model", "bert.scheme"});
  CHECK(res.rc == 0);
  CHECK(res.out.find("hyperplane: x0 + x2") != std::string::npos);
  CHECK(res.out.find("scanned: 1:13") != std::string::npos);
  CHECK(res.out.find("good-count: 9") != std::string::npos);
}

TEST_CASE("degree-two search demands a seed once sampling kicks in") {
  // candidate space 5^6 - 1 forms, budget 10: sampled
  write_file("tiny.scheme",
             "ring: GF(5)\nambient: P2\neq f1 = x0^2 + x1^2 + x2^2\nbudget points=10\n");
  auto no_seed = run({"find-hyperplane", "--model", "tiny.scheme", "--d", "2"});
  CHECK(no_seed.rc == 3);
  CHECK(no_seed.err.find("--seed") != std::string::npos);
  auto seeded =
      run({"find-hyperplane", "--model", "tiny.scheme", "--d", "2", "--seed", "7", "--sample", "50"});
  CHECK(seeded.rc == 0);
  CHECK(seeded.out.find("exhaustive: no") != std::string::npos);
  auto rerun =
      run({"find-hyperplane", "--model", "tiny.scheme", "--d", "2", "--seed", "7", "--sample", "50"});
  CHECK(rerun.out == seeded.out);
}

TEST_CASE("verify-pencil and find-pencil on the quadric surface") {
  write_file("quad.scheme", quadric_scheme);
  auto good = run({"verify-pencil", "--model", "quad.scheme", "--f0", "x0", "--finf", "x1"});
  CHECK(good.rc == 0);
  CHECK(good.out.find("lefschetz: yes") != std::string::npos);
  CHECK(good.out.find("sigma: 2") != std::string::npos);

  // the axis x0 = x2 = 0 is a ruling line of the quadric: rejected
  auto bad = run({"verify-pencil", "--model", "quad.scheme", "--f0", "x0", "--finf", "x2"});
  CHECK(bad.rc == 1);
  CHECK(bad.out.find("failure: axis is not transversal") != std::string::npos);

  auto found = run({"find-pencil", "--model", "quad.scheme"});
  CHECK(found.rc == 0);
  CHECK(found.out.find("f0: x0") != std::string::npos);
  CHECK(found.out.find("finf: x1") != std::string::npos);
}

TEST_CASE("find-pencil over a DVR model") {
  write_file("node4.scheme",
             "ring: Zmod(3^4)\nambient: P2\neq f1 = x0*x1 - 9*x2^2\n"
             "component Y1 = x0\ncomponent Y2 = x1\n"
             "oq at (0:0:1) expect case=i order=2\nproper: false\n"
             "budget points=1000000\n");
  auto res = run({"find-pencil", "--model", "node4.scheme"});
  CHECK(res.rc == 0);
  CHECK(res.out.find("f0: x0 + x2") != std::string::npos);
  CHECK(res.out.find("finf: x1 + x2") != std::string::npos);
}

TEST_CASE("json reports carry the same keys as text") {
  write_file("node.scheme", node_scheme);
  auto res = run({"classify", "--model", "node.scheme", "--point", "(0:0:1)", "--format", "json"});
  CHECK(res.rc == 0);
  auto j = nlohmann::ordered_json::parse(res.out);
  CHECK(j["command"] == "classify");
  CHECK(j["ring"] == "Zmod(3^5)");
  CHECK(j["verdict"] == "OrdinaryQuadratic case=i order=2");
  auto text = run({"classify", "--model", "node.scheme", "--point", "(0:0:1)"});
  size_t keys = 0;
  for (auto it = j.begin(); it != j.end(); ++it) {
    ++keys;
    CHECK(text.out.find(it.key() + ": ") != std::string::npos);
  }
  CHECK(keys == 6);
}
