#include "matineq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "matineq/error.hpp"
#include "matineq/hunt.hpp"
#include "matineq/report.hpp"

namespace matineq {

namespace {

struct GlobalArgs {
  int panels = 32;
  std::string scheme = "gauss";
  int nodes_per_panel = 5;
  double tol_abs = 1e-9;
  double tol_rel = 1e-8;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool force = false;
  bool no_timestamp = false;
};

struct InstanceArgs {
  std::string theorem;
  std::vector<std::string> f, g, p;
  std::optional<double> a, b, alpha, m, M;
  std::string A, B;
  std::optional<int> n;
  std::vector<double> interval;
  std::string mode;
};

struct BatchArgs {
  int trials = 10;
  int nmin = 1;
  int nmax = 5;
  std::string perturb = "none";
  std::string expect;
  std::string findings_dir = "findings";
  std::string record;
};

CheckOptions options_from(const GlobalArgs& g) {
  CheckOptions opt;
  opt.rule.scheme = parse_scheme(g.scheme);
  opt.rule.panels = g.panels;
  opt.rule.nodes_per_panel = g.nodes_per_panel;
  opt.rule.validate();
  opt.tol = {g.tol_abs, g.tol_rel};
  opt.force = g.force;
  return opt;
}

std::optional<Interval> interval_from(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  if (v.size() != 2) throw Error(ErrorKind::InvalidArgument, "--interval takes lo,hi");
  return Interval(v[0], v[1]);
}

std::string single(const std::vector<std::string>& v, const char* flag) {
  if (v.empty()) return {};
  if (v.size() > 1) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " takes one id here");
  return v.front();
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kExitPass;
    case Verdict::Violated: return kExitViolated;
    case Verdict::HypothesisUnmet: return kExitHypothesisUnmet;
    case Verdict::Error: return kExitError;
  }
  return kExitError;
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "matineq";
  for (const std::string& a : args) s += " " + a;
  return s;
}

void emit(const Json& j, const GlobalArgs& g, std::ostream& out) {
  if (g.out.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + g.out);
  f << j.dump(2) << "\n";
}

RunReport new_report(const std::vector<std::string>& args, const GlobalArgs& g,
                     const CheckOptions& opt) {
  RunReport r;
  r.command = join(args);
  if (!g.no_timestamp) r.timestamp = iso8601_now();
  r.rule = opt.rule;
  r.tol = opt.tol;
  return r;
}

std::string flag_list(const FunctionFlags& f) {
  std::vector<std::string> names;
  if (f.convex) names.emplace_back("convex");
  if (f.log_convex) names.emplace_back("log_convex");
  if (f.operator_convex) names.emplace_back("operator_convex");
  if (f.monotone_increasing) names.emplace_back("monotone_increasing");
  if (f.monotone_decreasing) names.emplace_back("monotone_decreasing");
  if (f.positive) names.emplace_back("positive");
  std::string s;
  for (const std::string& n : names) s += (s.empty() ? "" : ",") + n;
  return s.empty() ? "-" : s;
}

std::string flag_list(const WeightFlags& w) {
  std::vector<std::string> names;
  if (w.nonnegative) names.emplace_back("nonnegative");
  if (w.symmetric) names.emplace_back("symmetric");
  if (w.nondecreasing_first_half) names.emplace_back("nondecreasing_first_half");
  if (w.strictly_positive) names.emplace_back("strictly_positive");
  if (w.normalized) names.emplace_back("normalized");
  std::string s;
  for (const std::string& n : names) s += (s.empty() ? "" : ",") + n;
  return s.empty() ? "-" : s;
}

int cmd_list(std::ostream& out) {
  std::vector<std::string> ids;
  for (const TheoremInfo& t : theorems()) ids.emplace_back(t.id);
  std::sort(ids.begin(), ids.end());
  out << "theorems\n";
  for (const std::string& id : ids) out << "  " << id << "\n";
  out << "functions\n";
  for (const ScalarFunction& f : builtin_functions()) {
    out << "  " << std::left << std::setw(12) << f.id() << " domain " << f.domain().to_string()
        << "  " << flag_list(f.flags()) << (f.has_derivative() ? "" : "  (no derivative)") << "\n";
  }
  out << "weights\n";
  for (const WeightFunction& w : builtin_weights()) {
    out << "  " << std::left << std::setw(14) << w.id() << flag_list(w.flags()) << "\n";
  }
  out << "weight families\n"
      << "  admissible:<seed>:<knots>\n"
      << "  reversed:<seed>:<knots>\n"
      << "  skewed:<seed>:<knots>\n";
  return kExitPass;
}

void summarize(const CheckResult& r, std::ostream& err) {
  err << r.theorem << ": " << to_string(r.verdict);
  if (std::isfinite(r.margin)) err << ", margin " << std::setprecision(17) << r.margin;
  if (!r.error.empty()) err << " (" << r.error << ")";
  err << "\n";
}

int cmd_verify(const std::vector<std::string>& args, const GlobalArgs& g, const InstanceArgs& ia,
               const BatchArgs& ba, std::ostream& out, std::ostream& err) {
  if (!ba.record.empty()) {
    std::ifstream f(ba.record);
    if (!f) throw Error(ErrorKind::MalformedInput, "cannot open record " + ba.record);
    const Json j = Json::parse(f, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorKind::MalformedInput, ba.record + " is not valid JSON");
    const CounterexampleRecord rec = record_from_json(j);
    CheckOptions opt;
    opt.rule = rec.rule;
    opt.tol = rec.tol;
    opt.force = rec.force;
    opt.waived = rec.waived;
    const CheckResult r = run_check(rec.instance, opt);
    RunReport report = new_report(args, g, opt);
    report.results.push_back(r);
    emit(report_to_json(report), g, out);
    summarize(r, err);
    const bool same_margin = (std::isnan(r.margin) && std::isnan(rec.margin)) ||
                             std::abs(r.margin - rec.margin) <= 1e-12;
    if (r.verdict != rec.verdict || !same_margin) {
      err << "replay mismatch: recorded " << to_string(rec.verdict) << " margin "
          << std::setprecision(17) << rec.margin << "\n";
      return kExitError;
    }
    return exit_code(r.verdict);
  }

  if (ia.theorem.empty()) throw Error(ErrorKind::InvalidArgument, "verify needs --theorem or --record");
  const CheckOptions opt = options_from(g);
  Instance in;
  in.theorem = ia.theorem;
  in.f = single(ia.f, "--f");
  in.g = single(ia.g, "--g");
  in.p = single(ia.p, "--p");
  in.a = ia.a;
  in.b = ia.b;
  in.alpha = ia.alpha;
  in.m = ia.m;
  in.M = ia.M;
  in.seed = g.seed;
  // Matrix theorems without matrix files draw them from the seed, as sweeps do.
  const bool matrix_theorem =
      std::any_of(theorems().begin(), theorems().end(), [&](const TheoremInfo& t) {
        return t.id == ia.theorem && t.shape == InstanceShape::MatrixWeighted;
      });
  if (matrix_theorem && ia.A.empty() && ia.B.empty() && !in.seed) in.seed = 1;
  in.n = ia.n;
  in.interval = interval_from(ia.interval);
  if (!ia.A.empty()) in.A = load_matrix_file(ia.A);
  if (!ia.B.empty()) in.B = load_matrix_file(ia.B);
  if (!ia.mode.empty()) {
    if (ia.mode == "synchronous") {
      in.mode = Synchrony::Synchronous;
    } else if (ia.mode == "asynchronous") {
      in.mode = Synchrony::Asynchronous;
    } else {
      throw Error(ErrorKind::InvalidArgument, "--mode is synchronous or asynchronous");
    }
  }
  const CheckResult r = run_check(in, opt);
  RunReport report = new_report(args, g, opt);
  report.results.push_back(r);
  emit(report_to_json(report), g, out);
  summarize(r, err);
  return exit_code(r.verdict);
}

SamplerConfig sampler_from(const InstanceArgs& ia, const BatchArgs& ba) {
  SamplerConfig cfg;
  cfg.nmin = ba.nmin;
  cfg.nmax = ba.nmax;
  if (auto iv = interval_from(ia.interval)) cfg.interval = *iv;
  cfg.functions = ia.f;
  cfg.g_functions = ia.g;
  cfg.weights = ia.p;
  for (const std::string& id : cfg.functions) find_function(id);
  for (const std::string& id : cfg.g_functions) find_function(id);
  return cfg;
}

std::vector<std::string> theorem_list(const std::string& arg) {
  std::vector<std::string> ids;
  if (arg.empty() || arg == "all") {
    for (const TheoremInfo& t : theorems()) ids.emplace_back(t.id);
  } else {
    theorem_info(arg);
    ids.push_back(arg);
  }
  return ids;
}

int cmd_sweep(const std::vector<std::string>& args, const GlobalArgs& g, const InstanceArgs& ia,
              const BatchArgs& ba, std::ostream& out, std::ostream& err) {
  const CheckOptions opt = options_from(g);
  const SamplerConfig cfg = sampler_from(ia, ba);
  RunReport report = new_report(args, g, opt);
  report.results = sweep(theorem_list(ia.theorem), ba.trials, g.seed.value_or(1), cfg, opt);
  emit(report_to_json(report), g, out);
  const VerdictCounts c = count_verdicts(report.results);
  err << "sweep: " << c.total() << " checks, " << c.pass << " pass, " << c.violated
      << " violated, " << c.hypothesis_unmet << " hypothesis-unmet, " << c.error << " error\n";
  if (c.error > 0) return kExitError;
  return c.violated > 0 ? kExitViolated : kExitPass;
}

int cmd_hunt(const std::vector<std::string>& args, const GlobalArgs& g, const InstanceArgs& ia,
             const BatchArgs& ba, std::ostream& out, std::ostream& err) {
  if (ia.theorem.empty() || ia.theorem == "all") {
    throw Error(ErrorKind::InvalidArgument, "hunt needs a single --theorem");
  }
  if (!ba.expect.empty() && ba.expect != "violations" && ba.expect != "none") {
    throw Error(ErrorKind::InvalidArgument, "--expect is violations or none");
  }
  theorem_info(ia.theorem);
  const Perturbation pert = parse_perturbation(ba.perturb);
  const HuntOutcome h = hunt(ia.theorem, ba.trials, g.seed.value_or(1), pert, sampler_from(ia, ba),
                             options_from(g));

  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (!h.findings.empty()) fs::create_directories(ba.findings_dir);
  for (std::size_t idx : h.findings) {
    const CheckResult& r = h.results[idx];
    const CounterexampleRecord rec = make_record(r, h.options, std::string(to_string(pert)));
    const fs::path path = fs::path(ba.findings_dir) / (ia.theorem + "-" + std::to_string(idx) + ".json");
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    f << record_to_json(rec, r).dump(2) << "\n";
    files.push_back(path.string());
  }

  RunReport report = new_report(args, g, h.options);
  report.results = h.results;
  Json j = report_to_json(report);
  j["hunt"] = {{"theorem", ia.theorem},
               {"perturbation", to_string(pert)},
               {"waived", h.options.waived},
               {"trials", ba.trials},
               {"findings", h.findings.size()},
               {"files", files}};
  emit(j, g, out);
  err << "hunt: " << h.findings.size() << " finding(s) in " << ba.trials << " trials\n";

  const bool found = !h.findings.empty();
  if (ba.expect == "violations") return found ? kExitPass : kExitExpectationMismatch;
  if (ba.expect == "none") return found ? kExitExpectationMismatch : kExitPass;
  return found ? kExitViolated : kExitPass;
}

void add_instance_options(CLI::App* cmd, InstanceArgs& ia) {
  cmd->add_option("--theorem", ia.theorem, "theorem id (sweep also accepts 'all')");
  cmd->add_option("--f", ia.f, "function id");
  cmd->add_option("--g", ia.g, "second function id (Chebyshev checks)");
  cmd->add_option("--p", ia.p, "weight id");
  cmd->add_option("--interval", ia.interval, "spectral or sampling interval lo,hi")
      ->expected(2)
      ->delimiter(',');
}

void add_batch_options(CLI::App* cmd, BatchArgs& ba) {
  cmd->add_option("--trials", ba.trials, "instances per theorem")->check(CLI::PositiveNumber);
  cmd->add_option("--nmin", ba.nmin, "smallest matrix dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--nmax", ba.nmax, "largest matrix dimension")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of matrix Fejer and Levin-Steckin inequalities", "matineq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  GlobalArgs g;
  app.add_option("--panels", g.panels, "quadrature panels")->check(CLI::PositiveNumber);
  app.add_option("--scheme", g.scheme, "simpson or gauss")->check(CLI::IsMember({"simpson", "gauss"}));
  app.add_option("--nodes-per-panel", g.nodes_per_panel, "Gauss nodes per panel")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-abs", g.tol_abs, "absolute tolerance");
  app.add_option("--tol-rel", g.tol_rel, "relative tolerance");
  app.add_option("--out", g.out, "write the JSON report here instead of stdout");
  app.add_option("--seed", g.seed, "random seed");
  app.add_flag("--force", g.force, "evaluate even when hypotheses fail");
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the report timestamp");

  InstanceArgs ia;
  BatchArgs ba;

  CLI::App* list = app.add_subcommand("list", "print theorem, function and weight ids");

  CLI::App* verify = app.add_subcommand("verify", "run one check");
  add_instance_options(verify, ia);
  verify->add_option("--a", ia.a, "left end of [a, b]");
  verify->add_option("--b", ia.b, "right end of [a, b]");
  verify->add_option("--A", ia.A, "matrix file for A");
  verify->add_option("--B", ia.B, "matrix file for B");
  verify->add_option("--n", ia.n, "dimension of generated matrices")->check(CLI::PositiveNumber);
  verify->add_option("--alpha", ia.alpha, "alpha of the reverse inequality");
  verify->add_option("--m", ia.m, "lower end of [m, M]");
  verify->add_option("--M", ia.M, "upper end of [m, M]");
  verify->add_option("--mode", ia.mode, "synchronous or asynchronous");
  verify->add_option("--record", ba.record, "replay a counterexample record");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "check random admissible instances");
  add_instance_options(sweep_cmd, ia);
  add_batch_options(sweep_cmd, ba);

  CLI::App* hunt_cmd = app.add_subcommand("hunt", "search for violations");
  add_instance_options(hunt_cmd, ia);
  add_batch_options(hunt_cmd, ba);
  hunt_cmd->add_option("--perturb", ba.perturb,
                       "none, drop-symmetry, drop-monotone-weight or drop-convexity");
  hunt_cmd->add_option("--expect", ba.expect, "violations or none");
  hunt_cmd->add_option("--findings-dir", ba.findings_dir, "where counterexample records go");

  std::vector<const char*> argv{"matineq"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (list->parsed()) return cmd_list(out);
    if (verify->parsed()) return cmd_verify(args, g, ia, ba, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(args, g, ia, ba, out, err);
    if (hunt_cmd->parsed()) return cmd_hunt(args, g, ia, ba, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace matineq
