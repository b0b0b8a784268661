// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "matineq/checks.hpp"
#include "matineq/cli.hpp"
#include "matineq/orders.hpp"
#include "matineq/random.hpp"
#include "oracles.hpp"

using namespace matineq;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct CliRun {
  int code;
  Json report;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  Json j = Json::parse(out.str(), nullptr, false);
  return {code, j};
}

bool near(double x, double want, double tol) { return std::abs(x - want) <= tol; }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("matineq-acceptance-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r = cli({"verify", "--theorem", "scalar-fejer", "--f", "square", "--p", "one", "--a",
                        "0", "--b", "1"});
  const double secs = seconds_since(t0);
  const Json& q = r.report["results"][0]["quantities"];
  const double lo = q["lower"], mid = q["middle"], hi = q["upper"];
  Outcome o;
  o.pass = r.code == kExitPass && near(lo, 0.25, 1e-10) && near(mid, 1.0 / 3, 1e-10) &&
           near(hi, 0.5, 1e-10) && secs < 1.0;
  o.detail = "chain " + fmt("%.12f", lo) + " <= " + fmt("%.12f", mid) + " <= " + fmt("%.12f", hi) +
             ", " + fmt("%.3f s", secs);
  return o;
}

Outcome ac2() {
  const fs::path dir = scratch("ac2");
  std::ofstream(dir / "a.json") << R"({"n": 2, "re": [0, 0, 0, 1]})";
  std::ofstream(dir / "b.json") << R"({"n": 2, "re": [1, 0, 0, 0]})";
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r = cli({"verify", "--theorem", "matrix-fejer-lower", "--f", "square", "--p", "one",
                        "--A", (dir / "a.json").string(), "--B", (dir / "b.json").string()});
  const double secs = seconds_since(t0);
  const Json d = r.report["results"][0]["orders"][0]["detail"];
  const double s1 = d[0], s2 = d[1];
  Outcome o;
  o.pass = r.code == kExitPass && near(s1, 1.0 / 12, 1e-9) && near(s2, 1.0 / 6, 1e-9) && secs < 1.0;
  o.detail = "partial-sum slacks (" + fmt("%.12f", s1) + ", " + fmt("%.12f", s2) + "), " +
             fmt("%.3f s", secs);
  return o;
}

Outcome ac3() {
  const std::vector<double> d01{0, 1}, d10{1, 0};
  const HermitianMatrix a = HermitianMatrix::diagonal(d01), b = HermitianMatrix::diagonal(d10);
  const ScalarFunction f = find_function("exp");
  const WeightFunction p = resolve_weight("one");
  const CheckResult lf = check_log_fejer(f, p, a, b, CheckOptions{});
  const CheckResult ep = check_eig_product_fejer(f, p, a, b, CheckOptions{});
  const double e = std::numbers::e;
  bool ok = lf.verdict == Verdict::Pass && ep.verdict == Verdict::Pass;
  for (double x : lf.spectrum("lhs")) ok = ok && near(x, 0.5, 1e-8);
  for (double x : lf.spectrum("rhs")) ok = ok && near(x, std::log(e - 1), 1e-8);
  const auto& lp = ep.spectrum("lhs_products");
  const auto& rp = ep.spectrum("rhs_products");
  ok = ok && near(lp[0], std::exp(0.5), 1e-8) && near(rp[0], e - 1, 1e-8) && near(lp[1], e, 1e-8) &&
       near(rp[1], (e - 1) * (e - 1), 1e-8) && lp[0] <= rp[0] && lp[1] <= rp[1];
  Outcome o;
  o.pass = ok;
  o.detail = "log eigenvalues " + fmt("%.9f", lf.spectrum("lhs")[0]) + " vs " +
             fmt("%.9f", lf.spectrum("rhs")[0]) + "; products " + fmt("%.6f", lp[0]) + " <= " +
             fmt("%.6f", rp[0]) + ", " + fmt("%.6f", lp[1]) + " <= " + fmt("%.6f", rp[1]);
  return o;
}

Outcome ac4() {
  const double beta = beta_max(find_function("square"), 0, 1, 1);
  const std::vector<double> d01{0, 1}, d10{1, 0};
  const CheckResult r = check_mond_pecaric_reverse(
      find_function("square"), resolve_weight("one"), HermitianMatrix::diagonal(d01),
      HermitianMatrix::diagonal(d10), 1.0, CheckOptions{});
  Outcome o;
  o.pass = near(beta, 0.25, 1e-9) && r.verdict == Verdict::Pass && near(r.margin, 0.25, 1e-8);
  o.detail = "beta " + fmt("%.12f", beta) + ", reverse margin " + fmt("%.12f", r.margin);
  return o;
}

Outcome ac5() {
  const CliRun r = cli({"--force", "verify", "--theorem", "scalar-levin-steckin", "--f", "shiftsq",
                        "--p", "vee"});
  const Json& res = r.report["results"][0];
  const double ipf = res["quantities"]["int_pf"];
  const double rhs = res["quantities"]["int_p_times_int_f"];
  const double slack = res["margin"];
  Outcome o;
  o.pass = r.code == kExitViolated && near(ipf, 0.03125, 1e-9) && near(rhs, 1.0 / 48, 1e-9) &&
           near(slack, -1.0 / 96, 1e-9);
  o.detail = "int pf " + fmt("%.10f", ipf) + ", int p * int f " + fmt("%.10f", rhs) + ", slack " +
             fmt("%.10f", slack);
  return o;
}

Outcome ac6() {
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun base = cli({"--no-timestamp", "--seed", "7", "sweep", "--theorem", "all", "--trials",
                           "50", "--nmax", "5"});
  const double secs = seconds_since(t0);
  const CliRun fine = cli({"--no-timestamp", "--seed", "7", "--panels", "64", "sweep", "--theorem",
                           "all", "--trials", "50", "--nmax", "5"});
  const Json& s = base.report["summary"];
  const int violated = s["violated"], errors = s["error"];

  double drift = 0.0;
  const Json& a = base.report["results"];
  const Json& b = fine.report["results"];
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]["verdict"] != "pass") continue;
    drift = std::max(drift, std::abs(a[i]["margin"].get<double>() - b[i]["margin"].get<double>()));
  }

  std::map<std::string, int> by_theorem;
  for (const Json& r : a)
    if (r["verdict"] == "violated") ++by_theorem[r["theorem"].get<std::string>()];

  Outcome o;
  o.pass = violated == 0 && errors == 0 && drift <= 1e-8 && secs < 60.0 && base.code == kExitPass;
  o.detail = std::to_string(a.size()) + " checks, " + std::to_string(s["pass"].get<int>()) +
             " pass, " + std::to_string(violated) + " violated, " + std::to_string(errors) +
             " error; max pass-margin drift " + fmt("%.2e", drift) + ", " + fmt("%.2f s", secs);
  for (const auto& [id, count] : by_theorem) {
    o.detail += "; violated " + id + " x" + std::to_string(count);
  }
  return o;
}

Outcome ac7() {
  int bad = 0;
  double worst = 1e300;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const int n = 1 + static_cast<int>(k % 8);
    const HermitianMatrix a = random_hermitian(derive_seed(70, k), n, Interval(-3, 3));
    SplitMix64 rng(derive_seed(71, k));
    ComplexMatrix g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    const HermitianMatrix b = a + hermitize((1.0 / n) * (g * g.adjoint()));
    for (const OrderVerdict& v : {loewner_leq(a, b), eigen_leq(a, b), weak_majorize(a, b)}) {
      worst = std::min(worst, v.margin);
      if (!v.holds || v.margin < -1e-10) ++bad;
    }
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = "1500 verdicts, " + std::to_string(bad) + " failures, smallest margin " +
             fmt("%.3e", worst);
  return o;
}

Outcome ac8() {
  struct Pool {
    std::string_view theorem;
    std::vector<std::string> f;
    std::vector<std::string> p;
  };
  const std::vector<Pool> pools = {
      {theorem::kMatrixFejerLower,
       {"exp", "square", "reciprocal", "xlogx", "neg_log"},
       {"one", "tent", "parabola_bump", "plateau", "vee", "admissible"}},
      {theorem::kMatrixFejerUpper,
       {"exp", "square", "reciprocal", "neg_log"},
       {"one", "tent", "parabola_bump", "plateau", "vee", "admissible"}},
      {theorem::kLogFejer, {"exp", "reciprocal"}, {"one", "tent", "parabola_bump", "plateau"}},
      {theorem::kEigProductFejer, {"exp", "reciprocal"}, {"one", "tent", "parabola_bump", "plateau"}},
      {theorem::kOperatorLevinSteckin,
       {"square", "reciprocal", "xlogx", "neg_log", "identity"},
       {"one", "tent", "parabola_bump", "plateau", "admissible"}},
      {theorem::kMondPecaricReverse,
       {"exp", "square", "reciprocal", "xlogx"},
       {"one", "tent", "parabola_bump", "plateau", "vee", "admissible"}},
  };
  int bad = 0, total = 0;
  double worst = 0.0;
  const CheckOptions opt;
  for (std::size_t t = 0; t < pools.size(); ++t) {
    const Pool& pool = pools[t];
    for (std::uint64_t k = 0; k < 100; ++k) {
      SplitMix64 rng(derive_seed(derive_seed(80, t), k));
      const int n = 1 + static_cast<int>(rng.below(6));
      std::vector<double> a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = rng.uniform(0.25, 2.0);
        b[i] = rng.uniform(0.25, 2.0);
      }
      std::string pid = pool.p[rng.below(pool.p.size())];
      if (pid == "admissible") pid += ":" + std::to_string(rng.next() >> 32) + ":3";
      Instance in;
      in.theorem = std::string(pool.theorem);
      in.f = pool.f[rng.below(pool.f.size())];
      in.p = pid;
      in.A = HermitianMatrix::diagonal(a);
      in.B = HermitianMatrix::diagonal(b);
      in.alpha = rng.uniform(0.0, 2.0);
      const CheckResult r = run_check(in, opt);
      const double expect = oracle::diagonal_margin(pool.theorem, find_function(in.f),
                                                    resolve_weight(in.p), a, b, opt.rule, *in.alpha);
      const double diff = std::abs(r.margin - expect);
      ++total;
      if (r.verdict != Verdict::Pass || !(diff <= 1e-9)) ++bad;
      if (std::isfinite(diff)) worst = std::max(worst, diff);
    }
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = std::to_string(total) + " diagonal instances over 6 matrix theorems, " +
             std::to_string(bad) + " mismatches, max margin difference " + fmt("%.2e", worst);
  return o;
}

Outcome ac9() {
  const ScalarFunction ex = find_function("exp");
  double recon = 0.0, roundtrip = 0.0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const int n = 1 + static_cast<int>(k % 12);
    const HermitianMatrix a = random_hermitian(derive_seed(90, k), n, Interval(-3, 3));
    const SpectralDecomposition d = eig_hermitian(a);
    recon = std::max(recon, max_abs_diff(d.reconstruct(), a.matrix()));
    roundtrip = std::max(roundtrip, max_abs_diff(matrix_log(apply_function(ex, a)), a));
  }
  Outcome o;
  o.pass = recon <= 1e-8 && roundtrip <= 1e-8;
  o.detail = "200 matrices, max reconstruction error " + fmt("%.2e", recon) +
             ", max log(exp(A)) - A " + fmt("%.2e", roundtrip);
  return o;
}

Outcome ac10() {
  const fs::path dir = scratch("ac10");
  struct HuntArgs {
    const char* theorem;
    const char* perturb;
  };
  int records = 0, bad = 0;
  double worst = 0.0;
  for (const HuntArgs& h : {HuntArgs{"scalar-levin-steckin", "drop-monotone-weight"},
                            HuntArgs{"matrix-fejer-upper", "drop-convexity"},
                            HuntArgs{"operator-levin-steckin", "drop-symmetry"},
                            HuntArgs{"chebyshev-variance", "none"}}) {
    const fs::path sub = dir / h.theorem;
    cli({"--seed", "10", "hunt", "--theorem", h.theorem, "--perturb", h.perturb, "--trials", "200",
         "--findings-dir", sub.string()});
    if (!fs::exists(sub)) continue;
    for (const auto& entry : fs::directory_iterator(sub)) {
      std::ifstream in(entry.path());
      const Json rec = Json::parse(in);
      const CliRun v = cli({"verify", "--record", entry.path().string()});
      const Json& res = v.report["results"][0];
      const double diff = std::abs(res["margin"].get<double>() - rec["margin"].get<double>());
      ++records;
      worst = std::max(worst, diff);
      if (v.code == kExitError || res["verdict"] != rec["verdict"] || !(diff <= 1e-12)) ++bad;
    }
  }
  Outcome o;
  o.pass = records > 0 && bad == 0;
  o.detail = std::to_string(records) + " records replayed, " + std::to_string(bad) +
             " mismatches, max margin difference " + fmt("%.2e", worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 Hermite-Hadamard chain", ac1},      {"AC2 matrix Fejer lower", ac2},
      {"AC3 log-convex Fejer", ac3},            {"AC4 reverse inequality beta", ac4},
      {"AC5 negative control", ac5},            {"AC6 property sweep", ac6},
      {"AC7 order chain", ac7},                 {"AC8 diagonal-reduction oracle", ac8},
      {"AC9 eigensolver and calculus", ac9},    {"AC10 record replay", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
