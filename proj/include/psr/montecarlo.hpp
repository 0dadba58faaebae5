#pragma once

#include <cstdint>
#include <random>

#include "psr/model.hpp"
#include "psr/oracle.hpp"
#include "psr/rational.hpp"

namespace psr {

using Rng = std::mt19937_64;

struct EstimatorConfig {
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  // Samples are counted in independently seeded chunks, so the result is a
  // pure function of (samples, seed, chunk_size) no matter how many threads
  // run. PSR_THREADS caps the pool; threads = 0 means use that cap or the
  // hardware count.
  std::uint64_t chunk_size = 8192;
  unsigned threads = 0;
};

// Stable mixing of a base seed and a stream index into an independent seed.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform draw from [0, bound) by rejection; bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// One exact draw: true with probability exactly p. Consumes 64-bit words
// from the generator by rejection, never through floating point.
bool bernoulli_draw(Rng& rng, const Rational& p);

// A full instance agreeing with y on defined cells, free cells drawn
// independently from dist.
Instance sample_completion(const PartialInstance& y, const ProductDistribution& dist, Rng& rng);

// Monte Carlo estimate of the probability that a uniform completion of y
// keeps the class of x. Returns matches / samples as an exact rational.
Probability mc_estimate(const LinearModel& model, const PartialInstance& y, const Instance& x,
                        const EstimatorConfig& config);
// Same, with an arbitrary product distribution over the free cells.
Probability mc_estimate(const LinearModel& model, const PartialInstance& y, const Instance& x,
                        const EstimatorConfig& config, const ProductDistribution& dist);

// Samples sufficient for Pr[|estimate - truth| > deviation] <= gamma,
// ceil(ln(2 / gamma) / (2 deviation^2)). Both arguments in (0, 1).
std::uint64_t hoeffding_samples(const Rational& deviation, const Rational& gamma);

// Estimation seam: the search calls this once per probe. Implementations
// must be deterministic functions of their arguments.
class Estimator {
 public:
  virtual ~Estimator() = default;
  virtual Probability estimate(const LinearModel& model, const PartialInstance& y,
                               const Instance& x, std::uint64_t samples,
                               std::uint64_t seed) const = 0;
};

class MonteCarloEstimator final : public Estimator {
 public:
  explicit MonteCarloEstimator(std::uint64_t chunk_size = 8192, unsigned threads = 0)
      : chunk_size_(chunk_size), threads_(threads) {}
  Probability estimate(const LinearModel& model, const PartialInstance& y, const Instance& x,
                       std::uint64_t samples, std::uint64_t seed) const override;

 private:
  std::uint64_t chunk_size_;
  unsigned threads_;
};

// Answers probes with the exact uniform probability; samples and seed are
// ignored. Lets the search run with its randomness confined to the
// threshold draw.
class ExactEstimator final : public Estimator {
 public:
  explicit ExactEstimator(OracleLimits limits = {}) : limits_(limits) {}
  Probability estimate(const LinearModel& model, const PartialInstance& y, const Instance& x,
                       std::uint64_t samples, std::uint64_t seed) const override;

 private:
  OracleLimits limits_;
};

}  // namespace psr
