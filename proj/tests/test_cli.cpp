#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "matineq/cli.hpp"

using namespace matineq;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("matineq-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("list") {
  const Run r = run({"list"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("  matrix-fejer-lower\n") != std::string::npos);
  CHECK(r.out.find("  square ") != std::string::npos);
  CHECK(r.out.find("  tent ") != std::string::npos);
  // Theorem ids come out alphabetically.
  std::istringstream in(r.out);
  std::string line, prev;
  std::getline(in, line);
  while (std::getline(in, line) && line.rfind("  ", 0) == 0) {
    CHECK(prev < line);
    prev = line;
  }
}

TEST_CASE("verify exit codes") {
  const Run pass = run({"verify", "--theorem", "scalar-fejer", "--f", "square", "--p", "one", "--a",
                        "0", "--b", "1", "--no-timestamp"});
  CHECK(pass.code == kExitPass);
  const Json j = pass.json();
  CHECK(j["summary"]["pass"] == 1);
  CHECK(j["timestamp"].is_null());
  const Json& res = j["results"][0];
  CHECK(res["verdict"] == "pass");
  CHECK(std::abs(res["quantities"]["lower"].get<double>() - 0.25) <= 1e-12);
  CHECK(std::abs(res["slacks"][0]["slack"].get<double>() - 1.0 / 12) <= 1e-12);
  CHECK(std::abs(res["slacks"][1]["slack"].get<double>() - 1.0 / 6) <= 1e-12);

  const Run unmet = run({"verify", "--theorem", "scalar-levin-steckin", "--f", "shiftsq", "--p", "vee"});
  CHECK(unmet.code == kExitHypothesisUnmet);
  CHECK(unmet.json()["results"][0]["margin"].is_null());

  const Run forced =
      run({"--force", "verify", "--theorem", "scalar-levin-steckin", "--f", "shiftsq", "--p", "vee"});
  CHECK(forced.code == kExitViolated);
  CHECK(std::abs(forced.json()["results"][0]["margin"].get<double>() + 1.0 / 96) <= 1e-12);

  CHECK(run({"verify", "--theorem", "scalar-fejer", "--f", "nope", "--p", "one"}).code == kExitError);
  CHECK(run({"verify", "--theorem", "nope"}).code == kExitError);
  CHECK(run({"verify"}).code == kExitError);
  CHECK(run({"bogus"}).code == kExitError);
  CHECK(run({"--scheme", "trapezoid", "list"}).code == kExitError);
}

TEST_CASE("verify with matrix files") {
  const fs::path dir = scratch("matrices");
  write(dir / "a.json", R"({"n": 2, "re": [0, 0, 0, 1]})");
  write(dir / "b.json", R"({"n": 2, "re": [1, 0, 0, 0], "im": [0, 0, 0, 0]})");
  const Run r = run({"verify", "--theorem", "matrix-fejer-lower", "--f", "square", "--p", "one",
                     "--A", (dir / "a.json").string(), "--B", (dir / "b.json").string()});
  CHECK(r.code == kExitPass);
  const Json order = r.json()["results"][0]["orders"][0];
  CHECK(std::abs(order["detail"][0].get<double>() - 1.0 / 12) <= 1e-12);
  CHECK(std::abs(order["detail"][1].get<double>() - 1.0 / 6) <= 1e-12);

  write(dir / "bad.json", R"({"n": 2, "re": [1, 0, 0]})");
  write(dir / "junk.json", "not json");
  write(dir / "skew.json", R"({"n": 2, "re": [0, 1, 0, 0]})");
  for (const char* bad : {"bad.json", "junk.json", "skew.json", "missing.json"}) {
    CAPTURE(bad);
    const Run e = run({"verify", "--theorem", "matrix-fejer-lower", "--f", "square", "--p", "one",
                       "--A", (dir / bad).string(), "--B", (dir / "b.json").string()});
    CHECK(e.code == kExitError);
  }
}

TEST_CASE("verify writes --out") {
  const fs::path dir = scratch("out");
  const fs::path file = dir / "report.json";
  const Run r = run({"--out", file.string(), "verify", "--theorem", "moment-corollary", "--f",
                     "square", "--p", "one"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.empty());
  std::ifstream in(file);
  const Json j = Json::parse(in);
  CHECK(std::abs(j["results"][0]["margin"].get<double>() - 1.0 / 6) <= 1e-12);
  CHECK(j["tool_version"].is_string());
}

TEST_CASE("sweep") {
  const std::vector<std::string> args{"--no-timestamp", "--seed", "3", "sweep", "--trials", "2"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.out == b.out);
  const Json j = a.json();
  CHECK(j["results"].size() == 26);
  const Json& s = j["summary"];
  CHECK(s["total"] == 26);
  CHECK(s["pass"].get<int>() + s["violated"].get<int>() + s["hypothesis-unmet"].get<int>() +
            s["error"].get<int>() ==
        26);

  const Run gated = run({"sweep", "--theorem", "log-fejer", "--f", "square", "--trials", "5"});
  CHECK(gated.code == kExitPass);
  CHECK(gated.json()["summary"]["hypothesis-unmet"] == 5);

  CHECK(run({"sweep", "--trials", "0"}).code == kExitError);
}

TEST_CASE("hunt, records and replay") {
  const fs::path dir = scratch("hunt");
  const Run h = run({"--seed", "4", "hunt", "--theorem", "scalar-levin-steckin", "--perturb",
                     "drop-monotone-weight", "--trials", "100", "--expect", "violations",
                     "--findings-dir", dir.string()});
  CHECK(h.code == kExitPass);
  const Json j = h.json();
  REQUIRE(j["hunt"]["findings"].get<int>() > 0);
  int replayed = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path());
    const Json rec = Json::parse(in);
    CHECK(rec["record"] == "counterexample");
    const Run v = run({"verify", "--record", entry.path().string()});
    CHECK(v.code == kExitViolated);
    const double margin = v.json()["results"][0]["margin"].get<double>();
    CHECK(std::abs(margin - rec["margin"].get<double>()) <= 1e-12);
    if (++replayed == 10) break;
  }
  CHECK(replayed > 0);

  // A tampered margin is reported as a replay mismatch.
  const fs::path first = fs::directory_iterator(dir)->path();
  std::ifstream in(first);
  Json rec = Json::parse(in);
  rec["margin"] = rec["margin"].get<double>() + 1e-6;
  write(dir / "tampered.json", rec.dump());
  CHECK(run({"verify", "--record", (dir / "tampered.json").string()}).code == kExitError);

  const Run none = run({"hunt", "--theorem", "matrix-fejer-lower", "--trials", "50", "--expect",
                        "none", "--findings-dir", (dir / "none").string()});
  CHECK(none.code == kExitPass);
  CHECK_FALSE(fs::exists(dir / "none"));

  const Run wrong = run({"hunt", "--theorem", "matrix-fejer-lower", "--trials", "20", "--expect",
                         "violations", "--findings-dir", (dir / "none").string()});
  CHECK(wrong.code == kExitExpectationMismatch);

  CHECK(run({"hunt", "--theorem", "scalar-fejer", "--perturb", "drop-monotone-weight"}).code ==
        kExitError);
  CHECK(run({"hunt", "--theorem", "all"}).code == kExitError);
}
