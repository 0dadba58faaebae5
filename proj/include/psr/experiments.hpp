#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psr/explainer.hpp"
#include "psr/model.hpp"
#include "psr/montecarlo.hpp"
#include "psr/oracle.hpp"
#include "psr/rational.hpp"

namespace psr {

struct CheckResult {
  std::string check;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string name;
  std::vector<CheckResult> checks;

  void add(std::string check, bool passed, std::string detail = "");
  bool all_passed() const;
};

// ---------------------------------------------------------------------------
// Random cases
// ---------------------------------------------------------------------------

struct RandomModelOptions {
  std::size_t dimension = 8;
  long weight_bound = 8;  // integer weights drawn from [-bound, bound]
  // Redraw (bounded attempts) while every completion of the empty partial
  // instance already gets the class of x; such cases make every question
  // trivial.
  bool nondegenerate = false;
};

struct RandomCase {
  LinearModel model;
  Instance x;
};

RandomCase random_case(Rng& rng, const RandomModelOptions& options);

// Cell parameters drawn from {1/10, ..., 9/10}; never 0 or 1, so every
// conditional stays well defined.
ProductDistribution random_distribution(Rng& rng, std::size_t dimension);

// ---------------------------------------------------------------------------
// Exhaustive references (dimension capped at 20)
// ---------------------------------------------------------------------------

// Exact completion probability of every subset of x's features; the index
// is the bitmask of defined features.
std::vector<Probability> all_subset_probs(const LinearModel& model, const Instance& x,
                                          const ProductDistribution& dist);

// Smallest defined-cell count over all subsets of x reaching delta.
std::size_t exhaustive_min_size(const LinearModel& model, const Instance& x,
                                const Rational& delta, const ProductDistribution& dist);

struct LocalMinimalityReport {
  std::size_t sufficient = 0;        // subsets that reach delta
  std::size_t locally_minimal = 0;   // sufficient, and no single drop stays sufficient
  std::size_t globally_minimal = 0;  // sufficient, and no proper subset is sufficient
  // Locally but not globally minimal subsets; expected to stay empty.
  std::vector<PartialInstance> counterexamples;
};

// For linear models, one-drop minimality should coincide with subset
// minimality under any product distribution. Checks every subset of x.
LocalMinimalityReport check_local_minimality(const LinearModel& model, const Instance& x,
                                             const Rational& delta,
                                             const ProductDistribution& dist);

// ---------------------------------------------------------------------------
// Tail constructions
// ---------------------------------------------------------------------------

// A (n+1)-feature model built from coin-flip tails: one anchor feature of
// weight 1, n features of weight 1/m, threshold 2, instance all ones. The
// anchor tail P(n, m) is within epsilon/4 of delta + epsilon/4, which
// separates the minimum sizes at delta and at delta + epsilon.
struct GapConstruction {
  std::uint64_t n;
  std::uint64_t m;
  LinearModel model;
  Instance x;
  Rational delta;
  Rational epsilon;
  Probability anchor_tail;  // P(n, m)
};

// Picks n as the smallest dimension satisfying both the tail-density bound
// (1/sqrt(n) < epsilon/4) and n > (2/epsilon)^(1/gamma_exp), unless
// requested_n pins it. Throws CapExceededError beyond max_n and
// std::invalid_argument when no anchor weight hits the target window.
GapConstruction build_gap_instance(const Rational& delta, const Rational& epsilon,
                                   const Rational& gamma_exp, std::uint64_t requested_n = 0,
                                   std::uint64_t max_n = 200000);

// Exact minimum delta-sufficient-reason size for a gap instance, computed
// from binomial tails instead of enumeration, so it scales to n in the
// tens of thousands.
std::size_t gap_min_size(const GapConstruction& gap, const Rational& delta);

// Smallest n with 1/sqrt(n) < epsilon, and a k whose tail P(n, k) lands
// within epsilon of delta.
struct TailApproximation {
  std::uint64_t n;
  std::int64_t k;
  Probability tail;
};

TailApproximation binomial_approximation(const Rational& delta, const Rational& epsilon);

// ---------------------------------------------------------------------------
// Verification suites (exact arithmetic throughout)
// ---------------------------------------------------------------------------

// 1000-feature model (anchor weight 1000, unit tail weights, threshold
// 1250): tail value, counting-recurrence agreement, minimum fully
// sufficient reason of size 251, anchor necessity.
Report verify_skewed_model();

// 5-feature reference model: scores, ranking, the six greedy prefix
// probabilities, all ten two-feature subset probabilities, and greedy
// optimality at size two.
Report verify_greedy_tables();

// Greedy chain monotonicity, terminal probability 1, and agreement of the
// greedy minimum with the exhaustive minimum at each delta.
Report check_greedy_chain(std::uint64_t seed, std::size_t cases, std::size_t max_dimension,
                          const std::vector<Rational>& deltas);

// Uniform distribution: swapping a defined feature for an undefined one of
// no smaller score never lowers the probability. Exhaustive over subsets.
Report check_exchange_property(std::uint64_t seed, std::size_t cases,
                               std::size_t max_dimension);

// Any product distribution: fixing a nonnegative-score feature never lowers
// the probability; releasing a nonpositive-score feature never lowers it.
Report check_extension_monotonicity(std::uint64_t seed, std::size_t cases,
                                    std::size_t max_dimension);

// Random (model, instance, delta, distribution) sweeps of
// check_local_minimality.
Report check_local_minimality_random(std::uint64_t seed, std::size_t cases,
                                     std::size_t max_dimension);

// dp_prob and brute_force_prob agree bit-exactly on random integer models.
Report check_oracle_agreement(std::uint64_t seed, std::size_t cases,
                              std::size_t max_dimension);

// For 2 <= n <= max_n: P(n-1, k-1) >= P(n, k) for every k, and the largest
// difference is at most 1/sqrt(n).
Report check_tail_difference_bound(std::uint64_t max_n);

// C(2n, n) <= 4^n / sqrt(2n + 1) for 1 <= n <= max_n.
Report check_central_binomial_bound(std::uint64_t max_n);

// binomial_approximation lands within epsilon across a grid of targets.
Report check_tail_approximation();

// The full bundle behind the CLI verification command.
std::vector<Report> run_verification_suite();

}  // namespace psr
