#include "psr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "scaled_model.hpp"

namespace psr {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if ((bound & (bound - 1)) == 0) return rng() & (bound - 1);
  const std::uint64_t reject_below = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= reject_below) return r % bound;
  }
}

namespace {

bool bernoulli_draw_big(Rng& rng, const BigInt& num, const BigInt& den) {
  const std::size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const BigInt span = pow2(64 * words);
  const BigInt accept_below = span - span % den;
  for (;;) {
    BigInt r = 0;
    for (std::size_t i = 0; i < words; ++i) {
      r <<= 64;
      r += BigInt(rng());
    }
    if (r < accept_below) return r % den < num;
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("PSR_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min<unsigned long>(v, 256));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Read-only sampling state shared by all chunks.
struct Plan {
  bool uniform = false;
  bool narrow = false;  // weights fit the int64 mirror
  bool target1 = false;
  std::vector<std::int64_t> fw64;
  std::int64_t base64 = 0, thr64 = 0;
  std::vector<BigInt> fwz;
  BigInt basez, thrz;
  std::vector<Rational> probs;  // per free cell, general path
};

std::uint64_t count_chunk(const Plan& p, Rng& rng, std::uint64_t n) {
  std::uint64_t matches = 0;
  if (p.uniform && p.narrow) {
    const std::size_t f = p.fw64.size();
    if (f == 0) return ((p.base64 >= p.thr64) == p.target1) ? n : 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      std::int64_t dot = p.base64;
      std::size_t i = 0;
      while (i < f) {
        std::uint64_t bits = rng();
        const std::size_t take = std::min<std::size_t>(64, f - i);
        for (std::size_t j = 0; j < take; ++j, ++i) {
          dot += p.fw64[i] & -static_cast<std::int64_t>(bits & 1);
          bits >>= 1;
        }
      }
      matches += ((dot >= p.thr64) == p.target1) ? 1 : 0;
    }
    return matches;
  }
  if (p.uniform) {
    const std::size_t f = p.fwz.size();
    if (f == 0) return ((p.basez >= p.thrz) == p.target1) ? n : 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      BigInt dot = p.basez;
      std::size_t i = 0;
      while (i < f) {
        std::uint64_t bits = rng();
        const std::size_t take = std::min<std::size_t>(64, f - i);
        for (std::size_t j = 0; j < take; ++j, ++i) {
          if (bits & 1) dot += p.fwz[i];
          bits >>= 1;
        }
      }
      matches += ((dot >= p.thrz) == p.target1) ? 1 : 0;
    }
    return matches;
  }
  const std::size_t f = p.probs.size();
  for (std::uint64_t s = 0; s < n; ++s) {
    if (p.narrow) {
      std::int64_t dot = p.base64;
      for (std::size_t i = 0; i < f; ++i)
        if (bernoulli_draw(rng, p.probs[i])) dot += p.fw64[i];
      matches += ((dot >= p.thr64) == p.target1) ? 1 : 0;
    } else {
      BigInt dot = p.basez;
      for (std::size_t i = 0; i < f; ++i)
        if (bernoulli_draw(rng, p.probs[i])) dot += p.fwz[i];
      matches += ((dot >= p.thrz) == p.target1) ? 1 : 0;
    }
  }
  return matches;
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool bernoulli_draw(Rng& rng, const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("bernoulli_draw: probability outside [0, 1]");
  const BigInt& num = p.get_num();
  const BigInt& den = p.get_den();
  if (den == 1) return num == 1;  // p is exactly 0 or 1
  if (den.fits_ulong_p())
    return uniform_below(rng, den.get_ui()) < num.get_ui();
  return bernoulli_draw_big(rng, num, den);
}

Instance sample_completion(const PartialInstance& y, const ProductDistribution& dist, Rng& rng) {
  if (y.dimension() != dist.dimension())
    throw std::invalid_argument("sample_completion: dimension mismatch");
  std::vector<std::uint8_t> bits(y.dimension());
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    if (y[i] == Cell::unknown)
      bits[i] = bernoulli_draw(rng, dist.param(i)) ? 1 : 0;
    else
      bits[i] = y[i] == Cell::one ? 1 : 0;
  }
  return Instance(std::move(bits));
}

Probability mc_estimate(const LinearModel& model, const PartialInstance& y, const Instance& x,
                        const EstimatorConfig& config) {
  return mc_estimate(model, y, x, config, ProductDistribution::uniform(model.dimension()));
}

Probability mc_estimate(const LinearModel& model, const PartialInstance& y, const Instance& x,
                        const EstimatorConfig& config, const ProductDistribution& dist) {
  if (model.dimension() != x.dimension() || y.dimension() != x.dimension() ||
      dist.dimension() != x.dimension())
    throw std::invalid_argument("mc_estimate: dimension mismatch");
  if (!subset_of(y, x))
    throw std::invalid_argument("mc_estimate: partial instance is not a subset of the instance");
  if (config.samples == 0) throw std::invalid_argument("mc_estimate: samples must be positive");
  if (config.chunk_size == 0) throw std::invalid_argument("mc_estimate: chunk size must be positive");

  const detail::ScaledModel sm(model);
  Plan plan;
  plan.uniform = dist.is_uniform();
  plan.narrow = sm.fits_i64;
  plan.target1 = classify(model, x) == 1;
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    if (y[i] == Cell::one) {
      if (plan.narrow) plan.base64 += sm.weights64[i];
      else plan.basez += sm.weights[i];
    } else if (y[i] == Cell::unknown) {
      if (plan.narrow) plan.fw64.push_back(sm.weights64[i]);
      else plan.fwz.push_back(sm.weights[i]);
      if (!plan.uniform) plan.probs.push_back(dist.param(i));
    }
  }
  if (plan.narrow) plan.thr64 = sm.threshold64;
  else plan.thrz = sm.threshold;

  const std::uint64_t chunks = (config.samples + config.chunk_size - 1) / config.chunk_size;
  const auto chunk_samples = [&](std::uint64_t c) {
    const std::uint64_t begin = c * config.chunk_size;
    return std::min(config.chunk_size, config.samples - begin);
  };
  const auto count_range = [&](std::uint64_t first, std::uint64_t last) {
    std::uint64_t total = 0;
    for (std::uint64_t c = first; c < last; ++c) {
      Rng rng(derive_stream_seed(config.seed, c));
      total += count_chunk(plan, rng, chunk_samples(c));
    }
    return total;
  };

  const std::uint64_t workers =
      std::min<std::uint64_t>(resolve_threads(config.threads), chunks);
  std::uint64_t matches = 0;
  if (workers <= 1) {
    matches = count_range(0, chunks);
  } else {
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t t = 0; t < workers; ++t) {
      const std::uint64_t first = chunks * t / workers;
      const std::uint64_t last = chunks * (t + 1) / workers;
      pool.emplace_back([&, t, first, last] { partial[t] = count_range(first, last); });
    }
    for (auto& th : pool) th.join();
    for (std::uint64_t v : partial) matches += v;
  }

  Rational p{BigInt(matches), BigInt(config.samples)};
  p.canonicalize();
  return Probability(std::move(p));
}

std::uint64_t hoeffding_samples(const Rational& deviation, const Rational& gamma) {
  if (deviation <= 0 || deviation >= 1)
    throw std::invalid_argument("hoeffding_samples: deviation outside (0, 1)");
  if (gamma <= 0 || gamma >= 1)
    throw std::invalid_argument("hoeffding_samples: gamma outside (0, 1)");
  const double t = to_double(deviation);
  const double g = to_double(gamma);
  const double m = std::log(2.0 / g) / (2.0 * t * t);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(m)));
}

Probability MonteCarloEstimator::estimate(const LinearModel& model, const PartialInstance& y,
                                          const Instance& x, std::uint64_t samples,
                                          std::uint64_t seed) const {
  EstimatorConfig config;
  config.samples = samples;
  config.seed = seed;
  config.chunk_size = chunk_size_;
  config.threads = threads_;
  return mc_estimate(model, y, x, config);
}

Probability ExactEstimator::estimate(const LinearModel& model, const PartialInstance& y,
                                     const Instance& x, std::uint64_t /*samples*/,
                                     std::uint64_t /*seed*/) const {
  return exact_prob(model, y, x, ProductDistribution::uniform(model.dimension()), limits_);
}

}  // namespace psr
