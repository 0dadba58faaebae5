#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

#include "psr/model.hpp"
#include "psr/montecarlo.hpp"
#include "psr/oracle.hpp"
#include "psr/rational.hpp"

using namespace psr;

namespace {

LinearModel demo_model() {
  return LinearModel({Rational(5), Rational(1), Rational(-3), Rational(2), Rational(-1)},
                     Rational(5));
}

const Instance demo_x = Instance::from_string("10011");

Rational abs_diff(const Rational& a, const Rational& b) { return abs(a - b); }

}  // namespace

TEST_CASE("stream seeds are stable and spread out") {
  CHECK(derive_stream_seed(0, 0) == derive_stream_seed(0, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 64; ++s) seen.insert(derive_stream_seed(42, s));
  CHECK(seen.size() == 64);
  CHECK(derive_stream_seed(1, 0) != derive_stream_seed(2, 0));
}

TEST_CASE("uniform_below stays in range and covers residues") {
  Rng rng(123);
  CHECK_THROWS_AS(uniform_below(rng, 0), std::invalid_argument);
  for (int i = 0; i < 100; ++i) CHECK(uniform_below(rng, 1) == 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t v = uniform_below(rng, 6);
    CHECK(v < 6);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
  const std::uint64_t huge = (std::uint64_t{1} << 63) + 5;
  for (int i = 0; i < 100; ++i) CHECK(uniform_below(rng, huge) < huge);
}

TEST_CASE("bernoulli draws hit exact edge probabilities") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    CHECK(bernoulli_draw(rng, Rational(1)));
    CHECK_FALSE(bernoulli_draw(rng, Rational(0)));
  }
  CHECK_THROWS_AS(bernoulli_draw(rng, Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("bernoulli draws track a small rational probability") {
  Rng rng(11);
  const int n = 30000;
  int hits = 0;
  for (int i = 0; i < n; ++i)
    if (bernoulli_draw(rng, Rational(1, 3))) ++hits;
  // sd ~ 0.0027; allow 4 sd.
  CHECK(abs_diff(ratio(hits, n), Rational(1, 3)) < Rational(11, 1000));
}

TEST_CASE("bernoulli draws handle denominators beyond one word") {
  Rng rng(13);
  const BigInt den = pow2(64) + 1;
  Rational tiny{BigInt(5), den};
  tiny.canonicalize();
  Rational near_one{den - 5, den};
  near_one.canonicalize();
  int tiny_hits = 0, near_misses = 0;
  for (int i = 0; i < 10000; ++i) {
    if (bernoulli_draw(rng, tiny)) ++tiny_hits;
    if (!bernoulli_draw(rng, near_one)) ++near_misses;
  }
  CHECK(tiny_hits == 0);
  CHECK(near_misses == 0);
}

TEST_CASE("sampled completions respect the defined cells") {
  const PartialInstance y = PartialInstance::from_string("1*0*");
  const ProductDistribution dist(
      {Rational(1, 2), Rational(1, 4), Rational(1, 2), Rational(3, 4)});
  Rng rng(17);
  int ones1 = 0, ones3 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Instance z = sample_completion(y, dist, rng);
    CHECK(z[0] == 1);
    CHECK(z[2] == 0);
    ones1 += z[1];
    ones3 += z[3];
  }
  CHECK(abs_diff(ratio(ones1, n), Rational(1, 4)) < Rational(13, 1000));
  CHECK(abs_diff(ratio(ones3, n), Rational(3, 4)) < Rational(13, 1000));

  Rng rng2(1);
  CHECK_THROWS_AS(sample_completion(y, ProductDistribution::uniform(3), rng2),
                  std::invalid_argument);
}

TEST_CASE("estimates are a pure function of samples, seed and chunk size") {
  const PartialInstance y = PartialInstance::from_string("1*0**");
  EstimatorConfig config;
  config.samples = 10001;
  config.seed = 5;
  config.chunk_size = 1000;

  config.threads = 1;
  const Probability serial = mc_estimate(demo_model(), y, demo_x, config);
  config.threads = 3;
  CHECK(mc_estimate(demo_model(), y, demo_x, config) == serial);

  setenv("PSR_THREADS", "2", 1);
  config.threads = 0;
  CHECK(mc_estimate(demo_model(), y, demo_x, config) == serial);
  unsetenv("PSR_THREADS");

  // Denominator always divides the sample count.
  BigInt rem;
  mpz_mod(rem.get_mpz_t(), BigInt(config.samples).get_mpz_t(),
          serial.value().get_den().get_mpz_t());
  CHECK(rem == 0);
}

TEST_CASE("estimates land near the exact value") {
  const PartialInstance y = PartialInstance::from_string("1*0**");
  EstimatorConfig config;
  config.samples = 20000;
  config.seed = 1;
  // truth 7/8, sd ~ 0.0023; allow ~4 sd.
  CHECK(abs_diff(mc_estimate(demo_model(), y, demo_x, config).value(), Rational(7, 8)) <
        Rational(1, 100));
}

TEST_CASE("estimates follow a non-uniform product distribution") {
  const LinearModel model({Rational(1), Rational(1)}, Rational(2));
  const Instance x = Instance::from_string("11");
  const ProductDistribution dist({Rational(1, 3), Rational(1, 4)});
  EstimatorConfig config;
  config.samples = 30000;
  config.seed = 2;
  // truth 1/12, sd ~ 0.0016; allow ~4 sd.
  CHECK(abs_diff(mc_estimate(model, PartialInstance::all_unknown(2), x, config, dist).value(),
                 Rational(1, 12)) < Rational(13, 2000));
}

TEST_CASE("estimates survive weights beyond 64 bits") {
  const Rational big(pow2(70));
  const LinearModel model({big, big}, Rational(pow2(70)));
  const Instance x = Instance::from_string("11");
  EstimatorConfig config;
  config.samples = 4000;
  config.seed = 3;
  // truth 3/4 (any bit set reaches the threshold), sd ~ 0.0068.
  CHECK(abs_diff(mc_estimate(model, PartialInstance::all_unknown(2), x, config).value(),
                 Rational(3, 4)) < Rational(1, 40));
}

TEST_CASE("estimate input validation") {
  EstimatorConfig config;
  config.samples = 0;
  CHECK_THROWS_AS(
      mc_estimate(demo_model(), PartialInstance::all_unknown(5), demo_x, config),
      std::invalid_argument);
  config.samples = 10;
  CHECK_THROWS_AS(
      mc_estimate(demo_model(), PartialInstance::from_string("0****"), demo_x, config),
      std::invalid_argument);
  config.chunk_size = 0;
  CHECK_THROWS_AS(
      mc_estimate(demo_model(), PartialInstance::all_unknown(5), demo_x, config),
      std::invalid_argument);
}

TEST_CASE("sample size formula") {
  CHECK(hoeffding_samples(Rational(1, 10), Rational(1, 10)) == 150);
  CHECK(hoeffding_samples(Rational(1, 10), Rational(1, 20)) == 185);
  CHECK(hoeffding_samples(Rational(1, 2), Rational(1, 2)) == 3);
  CHECK_THROWS_AS(hoeffding_samples(Rational(0), Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_samples(Rational(1, 2), Rational(1)), std::invalid_argument);
}

TEST_CASE("the deviation bound holds exactly for a binomial count") {
  // 150 samples of a 7/8 coin: the exact probability of the mean straying
  // more than 1/10 must stay within the formula's 1/10 budget.
  const int m = 150;
  const Rational p(7, 8);
  const Rational q = 1 - p;
  Rational stray(0);
  for (int k = 0; k <= m; ++k) {
    const Rational off = abs_diff(ratio(k, m), p);
    if (off <= Rational(1, 10)) continue;
    BigInt binom;
    mpz_bin_uiui(binom.get_mpz_t(), m, k);
    Rational term(binom);
    for (int i = 0; i < k; ++i) term *= p;
    for (int i = 0; i < m - k; ++i) term *= q;
    stray += term;
  }
  CHECK(stray <= Rational(1, 10));
  CHECK(stray > 0);
}

TEST_CASE("estimator seam") {
  const PartialInstance y = PartialInstance::from_string("1*0**");
  const MonteCarloEstimator mc(1000, 1);
  EstimatorConfig config;
  config.samples = 5000;
  config.seed = 9;
  config.chunk_size = 1000;
  config.threads = 1;
  CHECK(mc.estimate(demo_model(), y, demo_x, 5000, 9) ==
        mc_estimate(demo_model(), y, demo_x, config));

  const ExactEstimator exact;
  CHECK(exact.estimate(demo_model(), y, demo_x, 3, 99) == Probability(Rational(7, 8)));
  CHECK(exact.estimate(demo_model(), y, demo_x, 17, 1) == Probability(Rational(7, 8)));
}
