// Command line front end: explain instances, estimate and compute exact
// completion probabilities, inspect greedy prefixes, and run the built-in
// verification suites.
//
// Exit codes: 0 success, 1 validation error, 2 compute budget exceeded,
// 3 verification mismatch.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "psr/experiments.hpp"
#include "psr/explainer.hpp"
#include "psr/io.hpp"
#include "psr/model.hpp"
#include "psr/montecarlo.hpp"
#include "psr/oracle.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCapExceeded = 2;
constexpr int kExitMismatch = 3;

std::string approx(const psr::Rational& value) {
  std::ostringstream out;
  out << std::setprecision(6) << psr::to_double(value);
  return out.str();
}

psr::ProductDistribution dist_or_uniform(const std::string& path, std::size_t dimension) {
  if (path.empty()) return psr::ProductDistribution::uniform(dimension);
  psr::ProductDistribution dist = psr::load_distribution(path);
  if (dist.dimension() != dimension)
    throw std::invalid_argument("distribution dimension does not match the model");
  return dist;
}

std::optional<psr::Probability> try_exact_prob(const psr::LinearModel& model,
                                               const psr::PartialInstance& y,
                                               const psr::Instance& x,
                                               const psr::ProductDistribution& dist) {
  try {
    return psr::exact_prob(model, y, x, dist);
  } catch (const psr::CapExceededError&) {
    return std::nullopt;
  }
}

struct ExplainArgs {
  std::string model_path, instance_bits, delta, epsilon, gamma, estimator = "mc";
  std::uint64_t seed = 0, samples = 0;
  bool no_gamma_adjust = false, as_json = false;
};

int run_explain(const ExplainArgs& args) {
  const psr::LinearModel model = psr::load_model(args.model_path);
  const psr::Instance x = psr::Instance::from_string(args.instance_bits);
  psr::ExplainerParams params;
  params.delta = psr::parse_rational(args.delta);
  params.epsilon = psr::parse_rational(args.epsilon);
  params.gamma = psr::parse_rational(args.gamma);
  params.seed = args.seed;
  params.samples_override = args.samples;
  params.gamma_adjust = !args.no_gamma_adjust;
  const psr::MonteCarloEstimator mc;
  const psr::ExactEstimator exact;
  if (args.estimator == "mc") params.estimator = &mc;
  else if (args.estimator == "exact") params.estimator = &exact;
  else throw std::invalid_argument("estimator must be 'mc' or 'exact'");

  const psr::ExplanationResult result = psr::explain(model, x, params);
  const auto witness = try_exact_prob(model, result.reason, x,
                                      psr::ProductDistribution::uniform(x.dimension()));

  if (args.as_json) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "explain";
    doc["class"] = static_cast<int>(psr::classify(model, x));
    doc["delta_star"] = psr::to_string(result.delta_star);
    doc["size"] = result.size;
    doc["reason"] = result.reason.to_string();
    doc["samples"] = result.samples;
    doc["steps"] = result.steps;
    doc["estimator"] = args.estimator;
    doc["seed"] = args.seed;
    json probes = json::array();
    for (const auto& probe : result.probes)
      probes.push_back({{"prefix", probe.prefix}, {"estimate", probe.estimate.to_string()}});
    doc["probes"] = probes;
    if (witness) doc["exact_probability"] = witness->to_string();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "class:       " << psr::classify(model, x) << "\n";
    std::cout << "delta_star:  " << psr::to_string(result.delta_star) << " (~"
              << approx(result.delta_star) << ")\n";
    std::cout << "size:        " << result.size << "\n";
    std::cout << "reason:      " << result.reason.to_string() << "\n";
    std::cout << "samples:     " << result.samples << " per probe\n";
    std::cout << "steps:       " << result.steps << "\n";
    if (witness)
      std::cout << "exact prob:  " << witness->to_string() << " (~" << approx(witness->value())
                << ")\n";
  }
  return kExitOk;
}

struct EstimateArgs {
  std::string model_path, instance_bits, partial_cells, dist_path, method = "mc";
  std::uint64_t samples = 0, seed = 0, chunk_size = 8192;
  unsigned threads = 0;
  bool as_json = false;
};

int run_estimate(const EstimateArgs& args) {
  const psr::LinearModel model = psr::load_model(args.model_path);
  const psr::Instance x = psr::Instance::from_string(args.instance_bits);
  const psr::PartialInstance y = psr::PartialInstance::from_string(args.partial_cells);
  const psr::ProductDistribution dist = dist_or_uniform(args.dist_path, x.dimension());

  psr::Probability value;
  std::uint64_t samples_used = 0;
  if (args.method == "mc") {
    if (args.samples == 0)
      throw std::invalid_argument("estimate: --samples is required with the mc method");
    psr::EstimatorConfig config;
    config.samples = args.samples;
    config.seed = args.seed;
    config.chunk_size = args.chunk_size;
    config.threads = args.threads;
    value = psr::mc_estimate(model, y, x, config, dist);
    samples_used = args.samples;
  } else if (args.method == "exact") {
    value = psr::exact_prob(model, y, x, dist);
  } else {
    throw std::invalid_argument("method must be 'mc' or 'exact'");
  }

  if (args.as_json) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "estimate";
    doc["method"] = args.method;
    doc["estimate"] = value.to_string();
    if (samples_used) {
      doc["samples"] = samples_used;
      doc["seed"] = args.seed;
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "estimate: " << value.to_string() << " (~" << approx(value.value()) << ")\n";
  }
  return kExitOk;
}

struct ExactArgs {
  std::string model_path, instance_bits, delta;
  bool as_json = false;
};

int run_exact(const ExactArgs& args) {
  const psr::LinearModel model = psr::load_model(args.model_path);
  const psr::Instance x = psr::Instance::from_string(args.instance_bits);
  const psr::Rational delta = psr::parse_rational(args.delta);
  const psr::MinExplanation result = psr::min_delta_sr_exact(model, x, delta);
  const auto witness =
      try_exact_prob(model, result.reason, x, psr::ProductDistribution::uniform(x.dimension()));

  if (args.as_json) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "exact";
    doc["delta"] = psr::to_string(delta);
    doc["size"] = result.size;
    doc["reason"] = result.reason.to_string();
    if (witness) doc["probability"] = witness->to_string();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "size:        " << result.size << "\n";
    std::cout << "reason:      " << result.reason.to_string() << "\n";
    if (witness)
      std::cout << "probability: " << witness->to_string() << " (~" << approx(witness->value())
                << ")\n";
  }
  return kExitOk;
}

struct PrefixesArgs {
  std::string model_path, instance_bits;
  bool as_json = false;
};

int run_prefixes(const PrefixesArgs& args) {
  const psr::LinearModel model = psr::load_model(args.model_path);
  const psr::Instance x = psr::Instance::from_string(args.instance_bits);
  const psr::ProductDistribution uniform = psr::ProductDistribution::uniform(x.dimension());
  const auto order = psr::score_ranking(model, x);
  const auto score = psr::scores(model, x);
  const auto chain = psr::greedy_prefixes(model, x);

  json rows = json::array();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    json row;
    row["k"] = k;
    if (k > 0) {
      row["feature"] = order[k - 1];
      row["score"] = psr::to_string(score[order[k - 1]]);
    }
    row["reason"] = chain[k].to_string();
    if (const auto p = try_exact_prob(model, chain[k], x, uniform)) {
      row["probability"] = p->to_string();
      row["probability_approx"] = psr::to_double(p->value());
    }
    rows.push_back(std::move(row));
  }

  if (args.as_json) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "prefixes";
    doc["class"] = static_cast<int>(psr::classify(model, x));
    doc["rows"] = rows;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(5) << "k" << std::setw(9) << "feature" << std::setw(10)
              << "score" << std::setw(std::max<std::size_t>(x.dimension() + 2, 8)) << "reason"
              << "probability\n";
    for (const auto& row : rows) {
      std::cout << std::left << std::setw(5) << row["k"].get<std::size_t>();
      if (row.contains("feature")) {
        std::cout << std::setw(9) << row["feature"].get<std::size_t>() << std::setw(10)
                  << row["score"].get<std::string>();
      } else {
        std::cout << std::setw(9) << "-" << std::setw(10) << "-";
      }
      std::cout << std::setw(std::max<std::size_t>(x.dimension() + 2, 8))
                << row["reason"].get<std::string>();
      if (row.contains("probability"))
        std::cout << row["probability"].get<std::string>() << " (~"
                  << approx(psr::parse_rational(row["probability"].get<std::string>())) << ")";
      else
        std::cout << "-";
      std::cout << "\n";
    }
  }
  return kExitOk;
}

struct GapArgs {
  std::string delta = "0.5", epsilon = "0.25", gamma_exp = "0.25";
  std::vector<std::uint64_t> sizes;
  bool as_json = false;
};

int run_gap_demo(const GapArgs& args) {
  const psr::Rational delta = psr::parse_rational(args.delta);
  const psr::Rational epsilon = psr::parse_rational(args.epsilon);
  const psr::Rational gamma_exp = psr::parse_rational(args.gamma_exp);
  std::vector<std::uint64_t> sizes = args.sizes;
  if (sizes.empty()) sizes.push_back(0);  // auto-pick n

  json rows = json::array();
  for (const std::uint64_t n : sizes) {
    const psr::GapConstruction gap = psr::build_gap_instance(delta, epsilon, gamma_exp, n);
    const std::size_t lower = psr::gap_min_size(gap, delta);
    const std::size_t upper = psr::gap_min_size(gap, delta + epsilon);
    json row;
    row["n"] = gap.n;
    row["m"] = gap.m;
    row["anchor_tail"] = gap.anchor_tail.to_string();
    row["anchor_tail_approx"] = gap.anchor_tail.to_double();
    row["min_at_delta"] = lower;
    row["min_at_delta_plus_epsilon"] = upper;
    if (lower > 0)
      row["ratio"] = static_cast<double>(upper) / static_cast<double>(lower);
    rows.push_back(std::move(row));
  }

  if (args.as_json) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "gap-demo";
    doc["delta"] = psr::to_string(delta);
    doc["epsilon"] = psr::to_string(epsilon);
    doc["gamma_exp"] = psr::to_string(gamma_exp);
    doc["rows"] = rows;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(9) << "n" << std::setw(8) << "m" << std::setw(14)
              << "anchor tail" << std::setw(13) << "min(delta)" << std::setw(19)
              << "min(delta+eps)" << "ratio\n";
    for (const auto& row : rows) {
      std::ostringstream tail;
      tail << std::setprecision(6) << row["anchor_tail_approx"].get<double>();
      std::cout << std::left << std::setw(9) << row["n"].get<std::uint64_t>() << std::setw(8)
                << row["m"].get<std::uint64_t>() << std::setw(14) << tail.str() << std::setw(13)
                << row["min_at_delta"].get<std::size_t>() << std::setw(19)
                << row["min_at_delta_plus_epsilon"].get<std::size_t>();
      if (row.contains("ratio")) std::cout << std::setprecision(4) << row["ratio"].get<double>();
      else std::cout << "-";
      std::cout << "\n";
    }
  }
  return kExitOk;
}

struct LocalMinArgs {
  std::string model_path, instance_bits, delta, dist_path;
  std::uint64_t cases = 25, seed = 7;
  std::size_t max_dimension = 8;
  bool as_json = false;
};

int run_local_min_check(const LocalMinArgs& args) {
  if (!args.model_path.empty()) {
    if (args.instance_bits.empty() || args.delta.empty())
      throw std::invalid_argument("local-min-check: --instance and --delta are required "
                                  "alongside --model");
    const psr::LinearModel model = psr::load_model(args.model_path);
    const psr::Instance x = psr::Instance::from_string(args.instance_bits);
    const psr::ProductDistribution dist = dist_or_uniform(args.dist_path, x.dimension());
    const psr::LocalMinimalityReport lm =
        psr::check_local_minimality(model, x, psr::parse_rational(args.delta), dist);
    if (args.as_json) {
      json doc;
      doc["schema"] = 1;
      doc["command"] = "local-min-check";
      doc["sufficient"] = lm.sufficient;
      doc["locally_minimal"] = lm.locally_minimal;
      doc["globally_minimal"] = lm.globally_minimal;
      json counterexamples = json::array();
      for (const auto& y : lm.counterexamples) counterexamples.push_back(y.to_string());
      doc["counterexamples"] = counterexamples;
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "sufficient subsets:  " << lm.sufficient << "\n";
      std::cout << "locally minimal:     " << lm.locally_minimal << "\n";
      std::cout << "globally minimal:    " << lm.globally_minimal << "\n";
      std::cout << "counterexamples:     " << lm.counterexamples.size() << "\n";
      for (const auto& y : lm.counterexamples) std::cout << "  " << y.to_string() << "\n";
    }
    return lm.counterexamples.empty() ? kExitOk : kExitMismatch;
  }

  const psr::Report report =
      psr::check_local_minimality_random(args.seed, args.cases, args.max_dimension);
  std::cout << (args.as_json ? psr::report_to_json(report) : psr::report_to_text(report));
  return report.all_passed() ? kExitOk : kExitMismatch;
}

int run_verify(bool as_json) {
  const std::vector<psr::Report> reports = psr::run_verification_suite();
  bool all_passed = true;
  if (as_json) {
    json doc = json::array();
    for (const auto& report : reports) {
      doc.push_back(json::parse(psr::report_to_json(report)));
      all_passed = all_passed && report.all_passed();
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& report : reports) {
      std::cout << psr::report_to_text(report);
      all_passed = all_passed && report.all_passed();
    }
    std::cout << (all_passed ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  }
  return all_passed ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic sufficient reasons for binary linear classifiers"};
  app.require_subcommand(1);

  ExplainArgs explain_args;
  auto* explain_cmd = app.add_subcommand(
      "explain", "Find a small reason whose completion probability reaches a drawn threshold");
  explain_cmd->add_option("--model", explain_args.model_path, "Model JSON file")->required();
  explain_cmd->add_option("--instance", explain_args.instance_bits, "Instance bits, e.g. 10011")
      ->required();
  explain_cmd->add_option("--delta", explain_args.delta, "Target probability")->required();
  explain_cmd->add_option("--epsilon", explain_args.epsilon, "Half-width of the threshold draw")
      ->required();
  explain_cmd->add_option("--gamma", explain_args.gamma, "Failure probability")->required();
  explain_cmd->add_option("--seed", explain_args.seed, "Random seed");
  explain_cmd->add_option("--samples", explain_args.samples,
                          "Per-probe sample override (default: the budget formula)");
  explain_cmd->add_option("--estimator", explain_args.estimator, "mc or exact");
  explain_cmd->add_flag("--no-gamma-adjust", explain_args.no_gamma_adjust,
                        "Use gamma directly instead of splitting it three ways");
  explain_cmd->add_flag("--json", explain_args.as_json, "JSON output");

  EstimateArgs estimate_args;
  auto* estimate_cmd = app.add_subcommand(
      "estimate", "Probability that a completion of a partial instance keeps the class");
  estimate_cmd->add_option("--model", estimate_args.model_path, "Model JSON file")->required();
  estimate_cmd->add_option("--instance", estimate_args.instance_bits, "Instance bits")
      ->required();
  estimate_cmd->add_option("--partial", estimate_args.partial_cells,
                           "Partial instance, e.g. 1*0**")
      ->required();
  estimate_cmd->add_option("--samples", estimate_args.samples, "Sample count (mc method)");
  estimate_cmd->add_option("--seed", estimate_args.seed, "Random seed");
  estimate_cmd->add_option("--dist", estimate_args.dist_path, "Distribution JSON file");
  estimate_cmd->add_option("--method", estimate_args.method, "mc or exact");
  estimate_cmd->add_option("--chunk-size", estimate_args.chunk_size, "Samples per chunk");
  estimate_cmd->add_option("--threads", estimate_args.threads, "Worker threads (0 = auto)");
  estimate_cmd->add_flag("--json", estimate_args.as_json, "JSON output");

  ExactArgs exact_args;
  auto* exact_cmd = app.add_subcommand(
      "exact", "Exact minimum reason reaching delta under the uniform distribution");
  exact_cmd->add_option("--model", exact_args.model_path, "Model JSON file")->required();
  exact_cmd->add_option("--instance", exact_args.instance_bits, "Instance bits")->required();
  exact_cmd->add_option("--delta", exact_args.delta, "Target probability in (0, 1]")->required();
  exact_cmd->add_flag("--json", exact_args.as_json, "JSON output");

  PrefixesArgs prefixes_args;
  auto* prefixes_cmd =
      app.add_subcommand("prefixes", "Greedy prefix chain with exact probabilities");
  prefixes_cmd->add_option("--model", prefixes_args.model_path, "Model JSON file")->required();
  prefixes_cmd->add_option("--instance", prefixes_args.instance_bits, "Instance bits")
      ->required();
  prefixes_cmd->add_flag("--json", prefixes_args.as_json, "JSON output");

  GapArgs gap_args;
  auto* gap_cmd = app.add_subcommand(
      "gap-demo", "Tail construction separating the minimum sizes at delta and delta+epsilon");
  gap_cmd->add_option("--delta", gap_args.delta, "Lower threshold (default 0.5)");
  gap_cmd->add_option("--epsilon", gap_args.epsilon, "Gap width (default 0.25)");
  gap_cmd->add_option("--gamma-exp", gap_args.gamma_exp,
                      "Separation exponent in (0, 1/2) (default 0.25)");
  gap_cmd->add_option("--n", gap_args.sizes, "Coin counts to evaluate (default: auto)");
  gap_cmd->add_flag("--json", gap_args.as_json, "JSON output");

  LocalMinArgs local_args;
  auto* local_cmd = app.add_subcommand(
      "local-min-check",
      "Check that one-drop minimal reasons are subset minimal (single case or random sweep)");
  local_cmd->add_option("--model", local_args.model_path, "Model JSON file (single-case mode)");
  local_cmd->add_option("--instance", local_args.instance_bits, "Instance bits");
  local_cmd->add_option("--delta", local_args.delta, "Target probability");
  local_cmd->add_option("--dist", local_args.dist_path, "Distribution JSON file");
  local_cmd->add_option("--cases", local_args.cases, "Random cases (sweep mode, default 25)");
  local_cmd->add_option("--max-dimension", local_args.max_dimension,
                        "Largest random dimension (default 8)");
  local_cmd->add_option("--seed", local_args.seed, "Random seed (default 7)");
  local_cmd->add_flag("--json", local_args.as_json, "JSON output");

  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand(
      "verify-paper", "Run the built-in verification suites against their published values");
  verify_cmd->add_flag("--json", verify_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*explain_cmd) return run_explain(explain_args);
    if (*estimate_cmd) return run_estimate(estimate_args);
    if (*exact_cmd) return run_exact(exact_args);
    if (*prefixes_cmd) return run_prefixes(prefixes_args);
    if (*gap_cmd) return run_gap_demo(gap_args);
    if (*local_cmd) return run_local_min_check(local_args);
    if (*verify_cmd) return run_verify(verify_json);
  } catch (const psr::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
