// convolab: command-line front end for the convolution semigroup of
// probability measures on finite groups.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
// 2 usage or input error, 3 internal cross-check failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "convolab/config.hpp"
#include "convolab/error.hpp"
#include "convolab/fourier.hpp"
#include "convolab/involutive.hpp"
#include "convolab/json_io.hpp"
#include "convolab/regularity.hpp"
#include "convolab/suite.hpp"

namespace {

using namespace convolab;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct InternalInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupArgs {
  std::string kind;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string spec;  // file path or inline JSON

  void add_to(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "cyclic | elementary_abelian_2 | dihedral | quaternion8 | symmetric");
    cmd->add_option("--n", n, "order parameter for cyclic, dihedral, symmetric");
    cmd->add_option("--k", k, "rank for elementary_abelian_2");
    cmd->add_option("--spec", spec, "group JSON file or inline JSON object");
  }

  json to_json_spec() const {
    if (!spec.empty()) {
      if (spec.front() == '{') {
        try {
          return json::parse(spec);
        } catch (const json::parse_error& e) {
          throw Error(ErrorCode::ParseError, e.what());
        }
      }
      return io::read_json_file(spec);
    }
    if (kind.empty()) throw Error(ErrorCode::ParseError, "give --kind or --spec");
    json j{{"kind", kind}};
    if (n) j["n"] = n;
    if (k) j["k"] = k;
    return j;
  }
};

ProbMeasure load_measure(const std::string& arg, json& raw) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      raw = json::parse(arg);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    return io::measure_from_json(raw);
  }
  raw = io::read_json_file(arg);
  return io::measure_from_json(raw, std::filesystem::path(arg).parent_path());
}

std::string digest(const json& inputs) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : inputs.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string weights_text(const std::vector<Rational>& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? ", " : "") + format_rational(w[i]);
  return out + ")";
}

std::string set_text(const FiniteGroup& g, const ElementSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += (i ? ", " : "") + g.element_label(s.elements()[i]);
  }
  return out + "}";
}

/// Shared state for one invocation: echo, inputs, results and the report path.
struct Run {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::string json_path;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write_report() const {
    if (json_path.empty()) return;
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const json report{{"command", command},       {"inputs_digest", digest(inputs)},
                      {"inputs", inputs},         {"results", results},
                      {"timing_ms", ms},          {"version", CONVOLAB_VERSION}};
    std::ofstream out(json_path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + json_path);
    out << report.dump(2) << "\n";
  }
};

// ---------------------------------------------------------------------------

int cmd_group(Run& run, const GroupArgs& ga, bool subgroups, bool orders) {
  run.inputs["group"] = ga.to_json_spec();
  const GroupPtr g = make_group(io::group_spec_from_json(run.inputs["group"]));
  std::cout << "group " << g->label() << "  order " << g->order()
            << (g->is_abelian() ? "  abelian" : "  non-abelian")
            << (g->is_involutive() ? "  involutive" : "") << "\n";
  run.results["order"] = g->order();
  run.results["abelian"] = g->is_abelian();
  run.results["labels"] = json::array();
  for (Element a = 0; a < g->order(); ++a) run.results["labels"].push_back(g->element_label(a));
  if (orders) {
    json o = json::array();
    std::cout << "element orders: [";
    for (Element a = 0; a < g->order(); ++a) {
      const auto k = element_order(*g, a);
      o.push_back(k);
      std::cout << (a ? "," : "") << k;
    }
    std::cout << "]\n";
    run.results["orders"] = o;
  }
  if (subgroups) {
    const auto subs = enumerate_subgroups(g);
    json list = json::array();
    std::cout << subs.size() << " subgroups\n";
    for (const auto& h : subs) {
      std::cout << "  order " << std::setw(3) << h.size() << "  " << set_text(*g, h.set()) << "\n";
      list.push_back(h.set().elements());
    }
    run.results["subgroups"] = list;
  }
  return kExitOk;
}

int cmd_regular(Run& run, const std::string& measure_arg, const std::string& method) {
  json raw;
  const ProbMeasure mu = load_measure(measure_arg, raw);
  run.inputs["measure"] = raw;
  run.inputs["method"] = method;
  std::cout << "measure on " << mu.g().label() << ": " << weights_text(mu.weights()) << "\n";

  std::optional<RegularityVerdict> lp, fourier;
  json fourier_json;
  if (method == "lp" || method == "both") lp = decide_regular(mu);
  if (method == "fourier" || method == "both") {
    try {
      const FourierCandidate c = fourier_ginverse_candidate(mu);
      fourier_json = {{"verdict", std::string(to_string(c.verdict))}, {"detail", c.detail},
                      {"min_singular_value", c.min_singular_value}};
      fourier = verdict_from_fourier(mu, c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RationalizationFailed) throw;
      fourier_json = {{"verdict", "INCONCLUSIVE"}, {"detail", e.what()}};
    }
    run.results["fourier"] = fourier_json;
    std::cout << "fourier: " << fourier_json["verdict"].get<std::string>() << "\n";
  }
  if (lp && fourier && lp->is_regular() != fourier->is_regular()) {
    run.results["error"] = "Fourier and LP verdicts disagree";
    throw InternalInconsistency("Fourier and LP verdicts disagree");
  }
  if (!lp && !fourier) {
    // Fourier side was inconclusive; settle exactly.
    lp = decide_regular(mu);
    run.results["fallback"] = "LP";
  }
  const RegularityVerdict& v = lp ? *lp : *fourier;
  run.results["verdict"] = io::to_json(v);
  std::cout << (v.is_regular() ? "regular" : "not regular") << "  [" << to_string(v.method())
            << "] " << v.detail() << "\n";
  if (v.witness()) {
    std::cout << "witness:           " << weights_text(v.witness()->weights()) << "\n";
    std::cout << "reflexive witness: " << weights_text(v.reflexive_witness()->weights()) << "\n";
  }
  return v.is_regular() ? kExitOk : kExitNegative;
}

int cmd_scan(Run& run, const GroupArgs& ga, Element element, std::size_t denominator) {
  run.inputs["group"] = ga.to_json_spec();
  run.inputs["element"] = element;
  run.inputs["denominator"] = denominator;
  const GroupPtr g = make_group(io::group_spec_from_json(run.inputs["group"]));
  const auto rows = classify_two_point_family(g, element, denominator);
  json table = json::array();
  std::string regular_set;
  std::cout << "mu = alpha*delta_e + (1-alpha)*delta_" << g->element_label(element) << " on "
            << g->label() << "\n";
  for (const auto& r : rows) {
    const std::string alpha = format_rational(r.alpha);
    std::cout << "  alpha " << std::setw(8) << alpha << "  "
              << (r.verdict.is_regular() ? "regular" : "-") << "\n";
    table.push_back({{"alpha", alpha}, {"verdict", io::to_json(r.verdict)}});
    if (r.verdict.is_regular()) regular_set += (regular_set.empty() ? "" : ", ") + alpha;
  }
  std::cout << "regular set {" << regular_set << "}\n";
  run.results["table"] = table;
  run.results["regular_set"] = "{" + regular_set + "}";
  return kExitOk;
}

int cmd_idempotents(Run& run, const GroupArgs& ga) {
  run.inputs["group"] = ga.to_json_spec();
  const GroupPtr g = make_group(io::group_spec_from_json(run.inputs["group"]));
  const auto haar = haar_idempotents(g);
  std::cout << haar.size() << " Haar idempotents on " << g->label() << "\n";
  json list = json::array();
  for (const auto& h : haar) {
    std::cout << "  uniform on " << set_text(*g, support(h)) << "\n";
    list.push_back(io::weights_to_json(h.weights()));
  }
  run.results["idempotents"] = list;
  return kExitOk;
}

int cmd_omega(Run& run, const GroupArgs& ga, std::size_t budget, bool truncate) {
  run.inputs["group"] = ga.to_json_spec();
  run.inputs["budget"] = budget;
  const GroupPtr g = make_group(io::group_spec_from_json(run.inputs["group"]));
  OmegaOptions opts;
  opts.max_elements = budget;
  opts.allow_truncation = truncate;
  const OmegaReport r = omega_closure(g, opts);
  std::cout << "closure of Haar idempotents on " << g->label() << " (empirical evidence only)\n"
            << "  size " << r.elements.size() << (r.complete ? " (closed)" : " (truncated)")
            << ", Haar idempotents " << r.haar_count << ", longest product " << r.word_length
            << "\n  all regular: " << (r.all_regular ? "yes" : "no") << "\n";
  json table = json::array();
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    const auto s = support(r.elements[i]);
    std::cout << "  " << std::setw(5) << i << "  " << (r.verdicts[i].is_regular() ? "regular    " : "not regular")
              << "  support " << set_text(*g, s) << "\n";
    table.push_back({{"weights", io::weights_to_json(r.elements[i].weights())},
                     {"regular", r.verdicts[i].is_regular()},
                     {"method", std::string(to_string(r.verdicts[i].method()))}});
  }
  run.results = {{"size", r.elements.size()},   {"complete", r.complete},
                 {"haar_count", r.haar_count},  {"all_regular", r.all_regular},
                 {"evidence_only", true},       {"elements", table}};
  return kExitOk;
}

int cmd_fourier(Run& run, const std::string& measure_arg, bool pinv) {
  json raw;
  const ProbMeasure mu = load_measure(measure_arg, raw);
  run.inputs["measure"] = raw;
  const DualPtr dual = unitary_dual(mu.group());
  const CompatibleFunction gamma = fourier_transform(dual, mu);
  auto print = [&](const char* title, const CompatibleFunction& f) {
    std::cout << title << "\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::cout << "  " << dual->irreps[i].label << " (dim " << dual->irreps[i].dim << ")\n";
      std::ostringstream m;
      m << std::setprecision(6) << f[i];
      std::istringstream lines(m.str());
      for (std::string line; std::getline(lines, line);) std::cout << "    " << line << "\n";
    }
  };
  print("transform", gamma);
  run.results["dual"] = io::to_json(*dual);
  run.results["transform"] = io::to_json(gamma);
  if (pinv) {
    const CompatibleFunction dagger = pseudo_inverse_blockwise(gamma);
    print("pseudoinverse", dagger);
    run.results["pseudoinverse"] = io::to_json(dagger);
    run.results["delta_regular"] = check_delta_regularity(gamma, dagger);
    try {
      const FourierCandidate c = fourier_ginverse_candidate(mu);
      run.results["verdict"] = std::string(to_string(c.verdict));
      json f = json::array();
      for (const auto& v : c.inverse_transform) f.push_back(json::array({v.real(), v.imag()}));
      run.results["inverse_transform"] = f;
      if (c.candidate) run.results["candidate"] = io::weights_to_json(c.candidate->weights());
      std::cout << "verdict: " << to_string(c.verdict) << " (" << c.detail << ")\n";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RationalizationFailed) throw;
      run.results["verdict"] = "INCONCLUSIVE";
      run.results["error"] = e.what();
      std::cout << "verdict: INCONCLUSIVE (" << e.what() << ")\n";
    }
  }
  return kExitOk;
}

int cmd_action_matrix(Run& run, const std::string& measure_arg) {
  json raw;
  const ProbMeasure mu = load_measure(measure_arg, raw);
  run.inputs["measure"] = raw;
  const ActionMatrix a = build_action_matrix(mu);
  std::cout << "action matrix on support " << set_text(mu.g(), support(mu)) << "\n";
  for (std::size_t r = 0; r < a.matrix.rows(); ++r) {
    std::cout << "  ";
    for (std::size_t c = 0; c < a.matrix.cols(); ++c) {
      std::cout << std::setw(8) << format_rational(a.matrix(r, c));
    }
    std::cout << "\n";
  }
  const Rational det = determinant(a.matrix);
  run.results["matrix"] = io::to_json(a.matrix);
  run.results["det"] = format_rational(det);
  std::cout << "det " << format_rational(det) << "\n";
  bool full = support(mu).size() == mu.size();
  if (full) {
    const ObstructionResult ob = obstruction_check(mu);
    run.results["obstructed"] = ob.obstructed;
    run.results["threshold"] = format_rational(ob.threshold);
    std::cout << "obstructed " << (ob.obstructed ? "true" : "false") << " (alpha_0 > "
              << format_rational(ob.threshold) << ")\n";
  } else {
    run.results["obstructed"] = nullptr;
    std::cout << "obstruction test skipped (support is a proper subgroup)\n";
  }
  const ComposedSystemSolution s = solve_composed_system(mu);
  run.results["composed_system_feasible"] = s.feasible();
  if (s.feasible_beta) {
    run.results["beta"] = io::weights_to_json(*s.feasible_beta);
    run.results["sigma"] = io::weights_to_json(*s.sigma);
    std::cout << "A^2 beta = alpha feasible: beta = " << weights_text(*s.feasible_beta) << "\n";
  } else {
    std::cout << "A^2 beta = alpha has no solution in the simplex\n";
  }
  return kExitOk;
}

int cmd_suite(Run& run, std::uint64_t seed, std::size_t omega_budget) {
  suite::SuiteOptions opts;
  opts.seed = seed;
  opts.omega_budget = omega_budget;
  run.inputs = {{"seed", seed}, {"omega_budget", omega_budget}};
  const auto results = suite::run_scenario_suite(opts);
  bool all = true;
  double total = 0;
  json rows = json::array();
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << std::setw(3) << r.id << "  " << r.name << "  ["
              << std::fixed << std::setprecision(2) << r.seconds << " s]  " << r.detail << "\n";
    all = all && r.passed;
    total += r.seconds;
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  std::cout << (all ? "all scenarios passed" : "FAILURES present") << " in " << total << " s\n";
  run.results = {{"scenarios", rows}, {"all_passed", all}};
  return all ? kExitOk : kExitNegative;
}

void apply_config_file(const std::string& path) {
  const json j = io::read_json_file(path);
  Config cfg = config();
  if (j.contains("limits")) {
    const auto& l = j["limits"];
    cfg.limits.max_group_order = l.value("max_group_order", cfg.limits.max_group_order);
    cfg.limits.max_subgroup_order = l.value("max_subgroup_order", cfg.limits.max_subgroup_order);
    cfg.limits.max_closure_elements = l.value("max_closure_elements", cfg.limits.max_closure_elements);
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    Tolerances& tol = cfg.tolerances;
    tol.representation = t.value("representation", tol.representation);
    tol.transform = t.value("transform", tol.transform);
    tol.pseudo_inverse = t.value("pseudo_inverse", tol.pseudo_inverse);
    tol.positivity = t.value("positivity", tol.positivity);
    tol.character_norm = t.value("character_norm", tol.character_norm);
    tol.invertibility = t.value("invertibility", tol.invertibility);
    tol.rationalize_max_den = t.value("rationalize_max_den", tol.rationalize_max_den);
  }
  // The environment wins over the file for the order cap.
  if (const char* env = std::getenv("CONVOLAB_MAX_ORDER")) {
    try {
      cfg.limits.max_group_order = std::stoul(env);
    } catch (const std::exception&) {
    }
  }
  set_config(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convolab: regularity in the convolution semigroup of a finite group"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file overriding tolerances and order caps");

  Run run;
  for (int i = 0; i < argc; ++i) run.command += (i ? " " : "") + std::string(argv[i]);

  GroupArgs ga;
  bool subgroups = false, orders = false, pinv = false, truncate = false;
  std::string measure, method = "lp";
  Element element = 1;
  std::size_t denominator = 20, budget = 0, omega_budget = 1000;
  std::uint64_t seed = suite::SuiteOptions{}.seed;

  auto* group = app.add_subcommand("group", "show a group, its element orders and subgroups");
  ga.add_to(group);
  group->add_flag("--subgroups", subgroups, "list all subgroups");
  group->add_flag("--orders", orders, "list element orders");

  auto* regular = app.add_subcommand("regular", "decide whether a measure has a generalized inverse");
  regular->add_option("measure", measure, "measure JSON file or inline JSON")->required();
  regular->add_option("--method", method, "lp | fourier | both")
      ->check(CLI::IsMember({"lp", "fourier", "both"}));

  auto* scan = app.add_subcommand("scan", "classify alpha*delta_e + (1-alpha)*delta_g over alpha = k/D");
  ga.add_to(scan);
  scan->add_option("--element,-g", element, "non-identity element index")->required();
  scan->add_option("--denominator,-D", denominator, "grid denominator");

  auto* omega = app.add_subcommand("omega", "closure of the Haar idempotents with verdicts");
  ga.add_to(omega);
  omega->add_option("--budget", budget, "element budget (default: configured cap)");
  omega->add_flag("--truncate", truncate, "report a partial closure instead of failing at the budget");

  auto* idem = app.add_subcommand("idempotents", "Haar measures of all subgroups");
  ga.add_to(idem);

  auto* fourier = app.add_subcommand("fourier", "non-commutative Fourier transform of a measure");
  fourier->add_option("measure", measure, "measure JSON file or inline JSON")->required();
  fourier->add_flag("--pinv", pinv, "also the blockwise pseudoinverse and its inverse transform");

  auto* action = app.add_subcommand("action-matrix", "action matrix, determinant and obstruction");
  action->add_option("measure", measure, "measure JSON file or inline JSON")->required();

  auto* suite_cmd = app.add_subcommand("paper-suite", "run every named scenario and print pass/fail");
  suite_cmd->add_option("--seed", seed, "seed for randomized scenarios");
  suite_cmd->add_option("--omega-budget", omega_budget, "closure budget for infinite closures");

  for (auto* sub : {group, regular, scan, omega, idem, fourier, action, suite_cmd}) {
    sub->add_option("--json", run.json_path, "write a JSON report to this path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path);
    int code = kExitOk;
    if (*group) code = cmd_group(run, ga, subgroups, orders);
    else if (*regular) code = cmd_regular(run, measure, method);
    else if (*scan) code = cmd_scan(run, ga, element, denominator);
    else if (*omega) code = cmd_omega(run, ga, budget, truncate);
    else if (*idem) code = cmd_idempotents(run, ga);
    else if (*fourier) code = cmd_fourier(run, measure, pinv);
    else if (*action) code = cmd_action_matrix(run, measure);
    else if (*suite_cmd) code = cmd_suite(run, seed, omega_budget);
    run.write_report();
    return code;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    try {
      run.write_report();
    } catch (...) {
    }
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
