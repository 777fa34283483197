// Copyright 2026 The lelm-bell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lelm: enumerate, classify, search and verify LELM Bell-state measurement
// limits. One JSON report on stdout, a short summary on stderr.
//
// Exit status: 0 all verifications passed, 1 verification failure, 2 usage error.

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "CLI11.hpp"
#include "lelm/lelm.hpp"

namespace {

using lelm::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct Options {
  int d = 3;
  int k = 4;
  std::string statistics;  // empty = module default
  int restarts = 200;
  int max_iterations = 500;
  std::uint64_t seed = 42;
  double tol = 1e-16;
  int samples = 1000;
  std::string format = "json";
  std::string chain = "projective-qutrit";
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wall-clock milliseconds spent in `fn`, recorded under `phase`.
template <class Fn>
auto timed(lelm::RunReport& report, const std::string& phase, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    report.timings[phase] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  if constexpr (std::is_void_v<decltype(fn())>) {
    fn();
    finish();
  } else {
    auto result = fn();
    finish();
    return result;
  }
}

lelm::Statistics statistics_or(const Options& o, lelm::Statistics fallback) {
  if (o.statistics.empty()) return fallback;
  return lelm::parse_statistics(o.statistics);
}

int cmd_classify(const Options& o, lelm::RunReport& report) {
  if (o.d != 3) throw UsageError("classify supports d = 3 only");
  if (o.k != 4 && o.k != 6) throw UsageError("classify supports k = 4 or k = 6");
  report.config = {{"d", o.d}, {"k", o.k}};
  std::map<std::string, int> counts;
  timed(report, "classify", [&] {
    for (const auto& s : lelm::enumerate_sets(o.k, o.d)) {
      const lelm::ClassificationRow row{s, lelm::classify_tictactoe(s)};
      ++counts[std::string(lelm::to_string(row.cls))];
      report.results.push_back(lelm::to_json(row));
    }
  });
  report.summary = {{"total", report.results.size()}, {"counts", counts}};
  std::cerr << "classify k=" << o.k << ": " << report.results.size() << " sets";
  for (const auto& [name, n] : counts) std::cerr << ", " << name << " " << n;
  std::cerr << '\n';
  return kExitOk;
}

int cmd_search(const Options& o, lelm::RunReport& report) {
  lelm::SearchConfig cfg;
  cfg.restarts = o.restarts;
  cfg.max_iterations = o.max_iterations;
  cfg.accept_tolerance = o.tol;
  cfg.seed = o.seed;
  cfg.statistics = statistics_or(o, lelm::Statistics::boson);
  try {
    cfg.validate();
    lelm::require_dimension(o.d);
    if (o.k < 1 || o.k > o.d * o.d) throw std::domain_error("k must lie in [1, d^2]");
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  report.config = {{"d", o.d},
                   {"k", o.k},
                   {"statistics", std::string(lelm::to_string(cfg.statistics))},
                   {"restarts", cfg.restarts},
                   {"max_iterations", cfg.max_iterations},
                   {"tol", cfg.accept_tolerance},
                   {"seed", cfg.seed}};
  const auto reports = timed(report, "search", [&] { return lelm::batch_classify(o.k, o.d, cfg); });

  std::map<std::string, int> histogram;
  Json by_class = Json::object();
  const bool tictactoe = o.d == 3 && (o.k == 4 || o.k == 6);
  double min_unresolved = std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    const std::string status(lelm::to_string(r.status));
    ++histogram[status];
    Json row = lelm::to_json(r);
    if (tictactoe) {
      const std::string cls(lelm::to_string(lelm::classify_tictactoe(r.set)));
      row["class"] = cls;
      Json& bucket = by_class[cls];
      if (bucket.is_null()) bucket = Json::object();
      bucket[status] = bucket.value(status, 0) + 1;
    }
    if (r.status != lelm::SearchStatus::instance_found) min_unresolved = std::min(min_unresolved, r.best_residual);
    report.results.push_back(std::move(row));
  }
  report.summary = {{"total", reports.size()}, {"status_counts", histogram}};
  if (tictactoe) report.summary["by_class"] = by_class;
  if (std::isfinite(min_unresolved)) report.summary["min_best_residual_without_instance"] = min_unresolved;

  std::cerr << "search k=" << o.k << " d=" << o.d << ": " << reports.size() << " sets";
  for (const auto& [name, n] : histogram) std::cerr << ", " << name << " " << n;
  std::cerr << '\n';
  return kExitOk;
}

struct ChainOutcome {
  bool verified = true;
  std::string failing_step;

  void require(bool ok, const std::string& step) {
    if (!ok && verified) failing_step = step;
    verified = verified && ok;
  }
};

void run_projective(const Options& o, lelm::RunReport& report, ChainOutcome& outcome) {
  const auto stats = statistics_or(o, lelm::Statistics::boson);
  if (stats != lelm::Statistics::boson) throw UsageError("projective-qutrit is established for bosons only");
  const auto bound = timed(report, "projective-qutrit", [&] { return lelm::projective_qutrit_nogo(o.samples, o.seed); });
  for (const auto& s : bound.steps) {
    report.results.push_back(lelm::to_json(s));
    outcome.require(s.verdict == lelm::Verdict::eliminated, s.name);
  }
  report.results.push_back(lelm::to_json(bound.demo));
  outcome.require(bound.demo.disjoint, "identity-demo");
  report.summary["bound"] = {{"max_distinguishable", bound.max_distinguishable},
                             {"total", bound.total},
                             {"text", std::to_string(bound.max_distinguishable) + " of 9"},
                             {"statement", bound.statement}};
}

std::vector<lelm::Statistics> povm_statistics(const Options& o) {
  if (o.statistics.empty()) return {lelm::Statistics::boson, lelm::Statistics::fermion};
  return {lelm::parse_statistics(o.statistics)};
}

void run_certificates(const Options& o, lelm::RunReport& report, ChainOutcome& outcome,
                      const std::function<lelm::PovmCertificate(lelm::Statistics)>& make) {
  for (const auto st : povm_statistics(o)) {
    const auto cert = make(st);
    report.results.push_back(lelm::to_json(cert));
    const std::string tag = cert.name + "/" + std::string(lelm::to_string(st));
    outcome.require(cert.status == lelm::SearchStatus::exact_infeasible, tag);
    outcome.require(cert.numeric_min_offdiagonal_norm > 1e-3, tag + " numeric minimum");
  }
}

void run_coverage(lelm::RunReport& report, ChainOutcome& outcome) {
  const auto cov = timed(report, "six-set-coverage", [] { return lelm::six_set_coverage(); });
  report.results.push_back(lelm::to_json(cov));
  outcome.require(cov.all_covered(), "six-set-coverage");
  int covered = 0;
  for (const auto& row : cov.rows) covered += row.witness ? 1 : 0;
  report.summary["six_sets_covered"] = covered;
}

int cmd_nogo(const Options& o, lelm::RunReport& report) {
  if (o.samples < 1) throw UsageError("--samples must be positive");
  if (o.restarts < 1) throw UsageError("--restarts must be positive");
  report.config = {{"chain", o.chain},
                   {"samples", o.samples},
                   {"seed", o.seed},
                   {"restarts", o.restarts},
                   {"statistics", o.statistics.empty() ? "default" : o.statistics}};
  ChainOutcome outcome;
  if (o.chain == "projective-qutrit") {
    run_projective(o, report, outcome);
  } else if (o.chain == "povm-qubit") {
    timed(report, "povm-qubit", [&] {
      run_certificates(o, report, outcome, [&](lelm::Statistics st) { return lelm::qubit_povm_nogo(st, o.restarts, o.seed); });
    });
    report.summary["bound"] = {{"max_distinguishable", outcome.verified ? 3 : 4},
                               {"total", 4},
                               {"text", outcome.verified ? "3 of 4" : "unresolved"}};
  } else if (o.chain == "povm-qutrit") {
    timed(report, "povm-qutrit", [&] {
      run_certificates(o, report, outcome,
                       [&](lelm::Statistics st) { return lelm::qutrit_subset_nogo(st, o.restarts, o.seed); });
    });
    run_coverage(report, outcome);
    const int upper = lelm::distinguishability_upper_bound(3);
    report.summary["bound"] = {{"dimension_bound", upper},
                               {"max_distinguishable", outcome.verified ? upper - 1 : upper},
                               {"total", 9},
                               {"text", outcome.verified ? "<= 5 of 9" : "<= 6 of 9"}};
  } else if (o.chain == "six-set-coverage") {
    run_coverage(report, outcome);
  } else {
    throw UsageError("unknown chain: " + o.chain);
  }
  report.summary["verified"] = outcome.verified;
  if (!outcome.verified) report.summary["failing_step"] = outcome.failing_step;

  std::cerr << "nogo " << o.chain << ": " << (outcome.verified ? "all steps verified" : "FAILED at " + outcome.failing_step);
  if (report.summary.contains("bound")) std::cerr << ", bound " << report.summary["bound"]["text"].get<std::string>();
  std::cerr << '\n';
  return outcome.verified ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-state distinguishability limits for linear-evolution, local-measurement apparatuses"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "Base seed");
  };
  auto* classify = app.add_subcommand("classify", "Tic-tac-toe classes of all k-sets of qutrit Bell states");
  classify->add_option("--d", o.d, "Qudit dimension");
  classify->add_option("--k", o.k, "Set size (4 or 6)");
  common(classify);

  auto* search = app.add_subcommand("search", "Numerical search for a single detector mode meeting every condition");
  search->add_option("--d", o.d, "Qudit dimension");
  search->add_option("--k", o.k, "Set size");
  search->add_option("--statistics", o.statistics, "boson or fermion")->check(CLI::IsMember({"boson", "fermion"}));
  search->add_option("--restarts", o.restarts, "Restarts per set");
  search->add_option("--max-iterations", o.max_iterations, "Iterations per restart");
  search->add_option("--tol", o.tol, "Residual accepted as an instance");
  common(search);

  auto* nogo = app.add_subcommand("nogo", "Verify an impossibility chain");
  nogo->add_option("--chain", o.chain, "Chain to verify")
      ->check(CLI::IsMember({"projective-qutrit", "povm-qubit", "povm-qutrit", "six-set-coverage"}));
  nogo->add_option("--samples", o.samples, "Random draws per elimination step");
  nogo->add_option("--restarts", o.restarts, "Optimizer restarts for numeric corroboration");
  nogo->add_option("--statistics", o.statistics, "boson or fermion")->check(CLI::IsMember({"boson", "fermion"}));
  common(nogo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  lelm::RunReport report;
  int status = kExitOk;
  try {
    if (classify->parsed()) {
      report.command = "classify";
      status = cmd_classify(o, report);
    } else if (search->parsed()) {
      report.command = "search";
      status = cmd_search(o, report);
    } else {
      report.command = "nogo";
      status = cmd_nogo(o, report);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  }
  if (o.format == "csv") {
    std::cout << lelm::to_csv(report);
  } else {
    std::cout << lelm::serialize(report) << '\n';
  }
  return status;
}
