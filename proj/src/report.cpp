#include "matineq/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>

#include "matineq/error.hpp"

namespace matineq {

namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::MalformedInput, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

double as_double(const Json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::optional<double> opt_double(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return as_double(j.at(key), key);
}

std::string opt_string(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  return as_string(j.at(key), key);
}

std::vector<double> real_array(const Json& j, std::size_t expected, const char* what) {
  if (!j.is_array() || j.size() != expected) {
    malformed(std::string(what) + " must be an array of " + std::to_string(expected) + " numbers");
  }
  std::vector<double> v;
  v.reserve(expected);
  for (const Json& x : j) {
    if (!x.is_number()) malformed(std::string(what) + " must hold numbers only");
    v.push_back(x.get<double>());
  }
  return v;
}

Json hypothesis_to_json(const Hypothesis& h) {
  return {{"name", h.name},         {"declared", h.declared}, {"validated", h.validated},
          {"waived", h.waived},     {"met", h.met()},         {"detail", h.detail}};
}

Json order_to_json(const LabeledOrder& o) {
  const OrderVerdict& v = o.verdict;
  return {{"label", o.label},        {"kind", to_string(v.kind)}, {"holds", v.holds},
          {"margin", number(v.margin)}, {"detail", numbers(v.detail)}, {"tol_abs", v.tol_abs},
          {"tol_rel", v.tol_rel},    {"scale", v.scale}};
}

Json slack_to_json(const ScalarSlack& s) {
  return {{"label", s.label}, {"lhs", number(s.lhs)},     {"rhs", number(s.rhs)},
          {"slack", number(s.slack)}, {"scale", number(s.scale)}, {"holds", s.holds}};
}

}  // namespace

Json matrix_to_json(const HermitianMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (const Complex& z : m.matrix().data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"n", m.n()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianMatrix matrix_from_json(const Json& j) {
  const Json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 1) malformed("'n' must be a positive integer");
  const auto n = static_cast<std::size_t>(nj.get<long long>());
  const std::vector<double> re = real_array(field(j, "re"), n * n, "'re'");
  std::vector<double> im(n * n, 0.0);
  if (j.contains("im") && !j.at("im").is_null()) im = real_array(j.at("im"), n * n, "'im'");
  std::vector<Complex> data(n * n);
  for (std::size_t k = 0; k < n * n; ++k) data[k] = Complex(re[k], im[k]);
  return hermitize(ComplexMatrix(n, std::move(data)));
}

HermitianMatrix load_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open matrix file " + path.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) malformed("matrix file " + path.string() + " is not valid JSON");
  return matrix_from_json(j);
}

Json rule_to_json(const QuadratureRule& r) {
  return {{"scheme", to_string(r.scheme)}, {"panels", r.panels}, {"nodes_per_panel", r.nodes_per_panel}};
}

QuadratureRule rule_from_json(const Json& j) {
  QuadratureRule r;
  r.scheme = parse_scheme(as_string(field(j, "scheme"), "scheme"));
  r.panels = field(j, "panels").get<int>();
  r.nodes_per_panel = field(j, "nodes_per_panel").get<int>();
  r.validate();
  return r;
}

Json tolerances_to_json(const Tolerances& t) { return {{"abs", t.abs}, {"rel", t.rel}}; }

Tolerances tolerances_from_json(const Json& j) {
  return {as_double(field(j, "abs"), "abs"), as_double(field(j, "rel"), "rel")};
}

Json instance_to_json(const Instance& in) {
  Json j = {{"theorem", in.theorem}};
  if (!in.f.empty()) j["f"] = in.f;
  if (!in.g.empty()) j["g"] = in.g;
  if (!in.p.empty()) j["p"] = in.p;
  if (in.a) j["a"] = *in.a;
  if (in.b) j["b"] = *in.b;
  if (in.seed) j["seed"] = *in.seed;
  if (in.n) j["n"] = *in.n;
  if (in.interval) j["interval"] = {in.interval->lo(), in.interval->hi()};
  if (in.alpha) j["alpha"] = *in.alpha;
  if (in.m) j["m"] = *in.m;
  if (in.M) j["M"] = *in.M;
  if (in.mode) j["mode"] = to_string(*in.mode);
  if (in.A) j["A"] = matrix_to_json(*in.A);
  if (in.B) j["B"] = matrix_to_json(*in.B);
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance in;
  in.theorem = as_string(field(j, "theorem"), "theorem");
  in.f = opt_string(j, "f");
  in.g = opt_string(j, "g");
  in.p = opt_string(j, "p");
  in.a = opt_double(j, "a");
  in.b = opt_double(j, "b");
  in.alpha = opt_double(j, "alpha");
  in.m = opt_double(j, "m");
  in.M = opt_double(j, "M");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) malformed("'seed' must be an unsigned integer");
    in.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("n")) in.n = j.at("n").get<int>();
  if (j.contains("interval")) {
    const std::vector<double> iv = real_array(j.at("interval"), 2, "'interval'");
    in.interval = Interval(iv[0], iv[1]);
  }
  if (j.contains("mode")) {
    const std::string mode = as_string(j.at("mode"), "mode");
    if (mode == "synchronous") {
      in.mode = Synchrony::Synchronous;
    } else if (mode == "asynchronous") {
      in.mode = Synchrony::Asynchronous;
    } else {
      malformed("'mode' must be synchronous or asynchronous");
    }
  }
  if (j.contains("A")) in.A = matrix_from_json(j.at("A"));
  if (j.contains("B")) in.B = matrix_from_json(j.at("B"));
  return in;
}

Json result_to_json(const CheckResult& r) {
  Json hyps = Json::array();
  for (const Hypothesis& h : r.hypotheses) hyps.push_back(hypothesis_to_json(h));
  Json orders = Json::array();
  for (const LabeledOrder& o : r.orders) orders.push_back(order_to_json(o));
  Json slacks = Json::array();
  for (const ScalarSlack& s : r.slacks) slacks.push_back(slack_to_json(s));
  Json quantities = Json::object();
  for (const auto& [k, v] : r.quantities) quantities[k] = number(v);
  Json spectra = Json::object();
  for (const auto& [k, v] : r.spectra) spectra[k] = numbers(v);
  Json j = {{"theorem", r.theorem},
            {"verdict", to_string(r.verdict)},
            {"margin", number(r.margin)},
            {"instance", instance_to_json(r.instance)},
            {"rule", rule_to_json(r.rule)},
            {"tolerances", tolerances_to_json(r.tol)},
            {"hypotheses", std::move(hyps)},
            {"orders", std::move(orders)},
            {"slacks", std::move(slacks)},
            {"quantities", std::move(quantities)},
            {"spectra", std::move(spectra)}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

VerdictCounts count_verdicts(const std::vector<CheckResult>& results) {
  VerdictCounts c;
  for (const CheckResult& r : results) {
    switch (r.verdict) {
      case Verdict::Pass: ++c.pass; break;
      case Verdict::Violated: ++c.violated; break;
      case Verdict::HypothesisUnmet: ++c.hypothesis_unmet; break;
      case Verdict::Error: ++c.error; break;
    }
  }
  return c;
}

Json report_to_json(const RunReport& report) {
  Json results = Json::array();
  for (const CheckResult& r : report.results) results.push_back(result_to_json(r));
  const VerdictCounts c = count_verdicts(report.results);
  return {{"tool_version", kToolVersion},
          {"timestamp", report.timestamp ? Json(*report.timestamp) : Json(nullptr)},
          {"command", report.command},
          {"rule", rule_to_json(report.rule)},
          {"tolerances", tolerances_to_json(report.tol)},
          {"summary",
           {{"total", c.total()},
            {"pass", c.pass},
            {"violated", c.violated},
            {"hypothesis-unmet", c.hypothesis_unmet},
            {"error", c.error}}},
          {"results", std::move(results)}};
}

CounterexampleRecord make_record(const CheckResult& r, const CheckOptions& opt,
                                 std::string perturbation) {
  CounterexampleRecord rec;
  rec.instance = r.instance;
  rec.rule = r.rule;
  rec.tol = r.tol;
  rec.force = opt.force;
  rec.waived = opt.waived;
  rec.perturbation = std::move(perturbation);
  rec.verdict = r.verdict;
  rec.margin = r.margin;
  return rec;
}

Json record_to_json(const CounterexampleRecord& rec, const CheckResult& r) {
  return {{"record", "counterexample"},
          {"tool_version", kToolVersion},
          {"perturbation", rec.perturbation},
          {"force", rec.force},
          {"waived", rec.waived},
          {"instance", instance_to_json(rec.instance)},
          {"rule", rule_to_json(rec.rule)},
          {"tolerances", tolerances_to_json(rec.tol)},
          {"verdict", to_string(rec.verdict)},
          {"margin", number(rec.margin)},
          {"result", result_to_json(r)}};
}

CounterexampleRecord record_from_json(const Json& j) {
  if (!j.is_object() || j.value("record", std::string()) != "counterexample") {
    malformed("not a counterexample record");
  }
  CounterexampleRecord rec;
  rec.instance = instance_from_json(field(j, "instance"));
  rec.rule = rule_from_json(field(j, "rule"));
  rec.tol = tolerances_from_json(field(j, "tolerances"));
  rec.force = field(j, "force").get<bool>();
  rec.waived = field(j, "waived").get<std::vector<std::string>>();
  rec.perturbation = opt_string(j, "perturbation");
  rec.verdict = parse_verdict(as_string(field(j, "verdict"), "verdict"));
  rec.margin = as_double(field(j, "margin"), "margin");
  return rec;
}

std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace matineq
