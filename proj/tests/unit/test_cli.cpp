#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "normgen/cli.hpp"
#include "normgen/json_io.hpp"
#include "support/helpers.hpp"

using namespace normgen;
using testing::kPi;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("normgen-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string doc(const std::string& name, const json& j) const { return file(name, j.dump()); }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("lengths command") {
  TempDir t;
  const Run id = run({"lengths", t.doc("id.json", encode(Matrix(Matrix::Identity(3, 3))))});
  CHECK(id.code == kExitOk);
  CHECK(json::parse(id.out)["values"] == json::array({0.0, 0.0, 0.0}));

  const Run d = run({"lengths", t.file("d.json", R"({"angles": [0, 3.141592653589793]})"), "--rank", "--one-norm"});
  REQUIRE(d.code == kExitOk);
  const json j = json::parse(d.out);
  CHECK_NEAR(j["values"][0].get<double>(), std::sqrt(2.0), 1e-12);
  CHECK_NEAR(j["values"][1].get<double>(), 0.0, 1e-12);
  CHECK(j["rank"] == 1);
  CHECK(j["kind"] == "ell");

  CHECK(run({"lengths", t.at("missing.json")}).code == kExitParse);
  CHECK(run({"lengths", t.file("bad.json", "{not json")}).code == kExitParse);
  Matrix nu = Matrix::Identity(2, 2);
  nu(0, 1) = 0.5;
  CHECK(run({"lengths", t.doc("nu.json", encode(nu))}).code == kExitValidation);
  CHECK(run({"lengths", t.at("id.json"), "--kind", "mu"}).code == kExitOk);
  CHECK(run({"bogus"}).code == kExitParse);
}

TEST_CASE("generate and verify") {
  TempDir t;
  auto rng = testing::rng(70);
  const UnitaryRep v = random_conjugate(random_spectrum(5, rng), rng);
  const std::string vf = t.doc("v.json", encode(v));
  const Run g = run({"generate", "--u", vf, "--v", vf, "--mode", "rank-dep", "--m", "1", "--out", t.at("c.json")});
  CHECK(g.code == kExitOk);
  CHECK(g.out.rfind("k=", 0) == 0);
  CHECK(g.out.find(" budget=40 ") != std::string::npos);

  const Run ok = run({"verify", t.at("c.json")});
  CHECK(ok.code == kExitOk);
  CHECK(json::parse(ok.out)["pass"] == true);

  // Round trip is bit-exact.
  const json cert = read_json_file(t.at("c.json"));
  CHECK(encode(decode_certificate(cert)) == cert);
  CHECK(cert["schema"] == "normgen-cert/1");
  for (const char* key : {"theorem", "target", "base", "steps", "claimed_budget", "params", "metadata"}) CHECK(cert.contains(key));

  json tampered = cert;
  REQUIRE(!tampered["steps"].empty());
  tampered["steps"][0]["g"]["re"][0][0] = tampered["steps"][0]["g"]["re"][0][0].get<double>() + 1e-2;
  const Run bad = run({"verify", t.doc("t.json", tampered)});
  CHECK(bad.code == kExitVerifyFail);
  CHECK(json::parse(bad.out)["pass"] == false);

  Certificate empty;
  empty.target = Matrix::Identity(2, 2);
  empty.base = diagonal_matrix({0.0, 1.0});
  CHECK(run({"verify", t.doc("e.json", encode(empty))}).code == kExitOk);
  CHECK(run({"verify", t.file("junk.json", R"({"schema": "other"})")}).code == kExitParse);
}

TEST_CASE("hypothesis failure exits 4") {
  TempDir t;
  const CounterexampleReport cx = counterexample_pair(6, unit(1.0), unit(std::sqrt(2.0)));
  const Run r = run({"generate", "--u", t.doc("u.json", encode(cx.u)), "--v", t.doc("v.json", encode(cx.v)), "--mode",
                     "rank-indep", "--s", "2", "--m", "1"});
  CHECK(r.code == kExitHypothesis);
  const json rep = json::parse(r.err);
  CHECK(rep["satisfied"] == false);
  CHECK(rep["max_feasible_s"] == 1);
}

TEST_CASE("broise and pipeline modes") {
  TempDir t;
  auto rng = testing::rng(71);
  const Matrix w = random_unitary(3, rng);
  Matrix target = Matrix::Zero(6, 6);
  target.topLeftCorner(3, 3) = w;
  target.bottomRightCorner(3, 3) = w.adjoint();
  const Run b = run({"generate", "--u", t.doc("b.json", encode(target)), "--mode", "broise", "--out", t.at("bc.json")});
  CHECK(b.code == kExitOk);
  CHECK(read_json_file(t.at("bc.json"))["steps"].size() <= 4);
  CHECK(run({"generate", "--u", t.doc("nb.json", encode(Matrix(random_unitary(6, rng)))), "--mode", "broise"}).code ==
        kExitValidation);

  const json u = json::parse(R"({"atoms": [{"angle": 0.2, "weight": {"num": 1, "den": 2}}, {"angle": -0.2, "weight": {"num": 1, "den": 2}}]})");
  const json v = json::parse(R"({"atoms": [{"angle": 0.0, "weight": {"num": 1, "den": 3}}, {"angle": 2.0, "weight": {"num": 1, "den": 3}}, {"angle": -2.0, "weight": {"num": 1, "den": 3}}]})");
  const Run p = run({"generate", "--u", t.doc("pu.json", u), "--v", t.doc("pv.json", v), "--mode", "pipeline", "--m",
                     "1", "--s", "1/2", "--out", t.at("pc.json")});
  CHECK(p.code == kExitOk);
  const json pc = read_json_file(t.at("pc.json"));
  CHECK(pc["s0"] == 6);
  CHECK(pc["claimed_budget"] == 96);
  CHECK(run({"verify", t.at("pc.json")}).code == kExitOk);
  CHECK(run({"generate", "--u", t.at("pu.json"), "--v", t.at("pv.json"), "--mode", "pipeline", "--s", "x/2"}).code ==
        kExitParse);
}

TEST_CASE("corpus command") {
  const Run zero = run({"corpus", "--cases", "0"});
  CHECK(zero.code == kExitOk);
  CHECK(json::parse(zero.out)["cases"].empty());
  const Run a = run({"corpus", "--cases", "3", "--seed", "99", "--sizes", "2:6"});
  const Run b = run({"corpus", "--cases", "3", "--seed", "99", "--sizes", "2:6", "--threads", "1"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const json r = json::parse(a.out);
  CHECK(r["schema"] == "normgen-report/1");
  CHECK(r["all_passed"] == true);
  CHECK(run({"corpus", "--sizes", "a:b"}).code == kExitParse);
}

TEST_CASE("counterexample command") {
  const Run r = run({"counterexample", "--n", "6"});
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out)["lower_bound"] == 5);
  CHECK(json::parse(run({"counterexample", "--n", "2"}).out)["lower_bound"] == 1);
  CHECK(run({"counterexample", "--n", "1"}).code == kExitParse);
}

TEST_CASE("budgets command") {
  const Run r = run({"budgets", "--m", "2", "--s", "0.5", "--n", "4"});
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out)["pipeline"] == 192);
}
