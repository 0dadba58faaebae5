#pragma once

#include <cstdint>
#include <vector>

#include "psr/model.hpp"
#include "psr/montecarlo.hpp"
#include "psr/oracle.hpp"
#include "psr/rational.hpp"

namespace psr {

struct ExplainerParams {
  Rational delta;
  Rational epsilon;
  Rational gamma;
  std::uint64_t seed = 0;
  // Borrowed; when null a stock MonteCarloEstimator is used.
  const Estimator* estimator = nullptr;
  // Splits gamma three ways (estimates below the target prefix, estimates
  // above it, and the threshold draw landing too close to a prefix
  // probability), preserving the overall failure bound.
  bool gamma_adjust = true;
  // Overrides the per-probe sample budget when nonzero.
  std::uint64_t samples_override = 0;
};

struct ProbeRecord {
  std::size_t prefix;    // the k whose estimate was taken
  Probability estimate;  // the value the search compared against delta*
};

struct ExplanationResult {
  Rational delta_star;     // the threshold actually searched for
  std::size_t size;        // defined cells of the reason
  PartialInstance reason;  // a greedy prefix of the instance
  std::uint64_t samples;   // per probe
  std::size_t steps;       // probes taken
  std::vector<ProbeRecord> probes;
};

// Uniform draw from [delta - epsilon, delta + epsilon] on a 2^64-point grid,
// exact rational result. The interval must fit inside (0, 1].
Rational draw_delta_star(const Rational& delta, const Rational& epsilon, Rng& rng);

// Per-probe sample count: (ceil(lg d))^2 / (2 epsilon^2 gamma^2) *
// ln(2 ceil(lg d) / gamma), with lg clamped below at 1. Pass the adjusted
// gamma if a split is wanted; the formula itself does not adjust.
std::uint64_t sample_budget(std::size_t dimension, const Rational& epsilon,
                            const Rational& gamma);

// floor(lg d) + 1, the number of probes a halving search can need.
std::size_t max_search_steps(std::size_t dimension);

// Draws one threshold delta* from [delta - epsilon, delta + epsilon], then
// binary-searches the greedy prefix chain for the smallest prefix whose
// estimated probability reaches delta*. With high probability the result is
// exactly the minimum delta*-sufficient reason of the instance.
ExplanationResult explain(const LinearModel& model, const Instance& x,
                          const ExplainerParams& params);

}  // namespace psr
