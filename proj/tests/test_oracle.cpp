#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "psr/model.hpp"
#include "psr/oracle.hpp"
#include "psr/rational.hpp"

using namespace psr;

namespace {

LinearModel demo_model() {
  return LinearModel({Rational(5), Rational(1), Rational(-3), Rational(2), Rational(-1)},
                     Rational(5));
}

const Instance demo_x = Instance::from_string("10011");
const ProductDistribution demo_u = ProductDistribution::uniform(5);

Probability prob(const char* cells) {
  return brute_force_prob(demo_model(), PartialInstance::from_string(cells), demo_x, demo_u);
}

}  // namespace

TEST_CASE("probability type checks its range") {
  CHECK(Probability(Rational(1)).value() == Rational(1));
  CHECK(Probability().value() == Rational(0));
  CHECK_THROWS_AS(Probability(Rational(-1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Probability(Rational(9, 8)), std::invalid_argument);
  CHECK(Probability(Rational(1, 2)) < Probability(Rational(3, 4)));
  CHECK(Probability(Rational(1, 2)) == Probability(Rational(2, 4)));
}

TEST_CASE("enumeration on the greedy prefixes of the reference instance") {
  CHECK(prob("*****") == Probability(Rational(1, 4)));
  CHECK(prob("1****") == Probability(Rational(1, 2)));
  CHECK(prob("1*0**") == Probability(Rational(7, 8)));
  CHECK(prob("1*01*") == Probability(Rational(1)));
  CHECK(prob("1001*") == Probability(Rational(1)));
  CHECK(prob("10011") == Probability(Rational(1)));
}

TEST_CASE("enumeration on selected feature pairs") {
  CHECK(prob("**0*1") == Probability(Rational(3, 8)));
  CHECK(prob("*00**") == Probability(Rational(3, 8)));
  CHECK(prob("*0*1*") == Probability(Rational(1, 4)));
  CHECK(prob("*0**1") == Probability(Rational(1, 8)));
  CHECK(prob("**01*") == Probability(Rational(1, 2)));
}

TEST_CASE("enumeration for a class 0 instance counts the complement") {
  // 00000 has dot 0 < 5. A completion keeps class 0 iff its dot stays
  // below the threshold.
  const PartialInstance y = PartialInstance::from_string("0****");
  // Free features 1..4 with weights 1, -3, 2, -1: dot >= 5 is impossible,
  // so every completion stays class 0.
  CHECK(brute_force_prob(demo_model(), y, Instance::from_string("00000"), demo_u) ==
        Probability(Rational(1)));
  // Threshold 1 instead: a completion stays class 0 iff its dot stays
  // at most 0. Subsets of {1, -3, 2, -1} with a nonpositive sum: 11 of 16.
  const LinearModel low({Rational(5), Rational(1), Rational(-3), Rational(2), Rational(-1)},
                        Rational(1));
  CHECK(brute_force_prob(low, y, Instance::from_string("00000"), demo_u) ==
        Probability(Rational(11, 16)));
}

TEST_CASE("weighted enumeration matches hand-computed conditionals") {
  const LinearModel model({Rational(1), Rational(1)}, Rational(2));
  const Instance x = Instance::from_string("11");
  const ProductDistribution dist({Rational(1, 3), Rational(1, 4)});
  CHECK(brute_force_prob(model, PartialInstance::from_string("**"), x, dist) ==
        Probability(Rational(1, 12)));
  CHECK(brute_force_prob(model, PartialInstance::from_string("1*"), x, dist) ==
        Probability(Rational(1, 4)));
  CHECK(brute_force_prob(model, PartialInstance::from_string("*1"), x, dist) ==
        Probability(Rational(1, 3)));
  CHECK(brute_force_prob(model, PartialInstance::from_string("11"), x, dist) ==
        Probability(Rational(1)));
}

TEST_CASE("a defined cell with zero probability has no conditional") {
  const LinearModel model({Rational(1), Rational(1)}, Rational(1));
  const Instance x = Instance::from_string("11");
  const ProductDistribution dist({Rational(0), Rational(1, 2)});
  CHECK_THROWS_AS(
      brute_force_prob(model, PartialInstance::from_string("1*"), x, dist),
      std::invalid_argument);
  // The same cell left free is fine: it just always completes to 0.
  CHECK(brute_force_prob(model, PartialInstance::from_string("*1"), x, dist) ==
        Probability(Rational(1)));
}

TEST_CASE("counting recurrence agrees with enumeration") {
  const LinearModel model = demo_model();
  for (const char* cells : {"*****", "1****", "1*0**", "*0**1", "**01*"}) {
    const PartialInstance y = PartialInstance::from_string(cells);
    CHECK(dp_prob(model, y, demo_x) == brute_force_prob(model, y, demo_x, demo_u));
  }
}

TEST_CASE("counting recurrence folds zero weights in") {
  const LinearModel model({Rational(1), Rational(0), Rational(1)}, Rational(2));
  const Instance x = Instance::from_string("111");
  const PartialInstance y = PartialInstance::all_unknown(3);
  CHECK(dp_prob(model, y, x) == Probability(Rational(1, 4)));
  CHECK(dp_prob(model, y, x) == brute_force_prob(model, y, x, ProductDistribution::uniform(3)));
}

TEST_CASE("counting recurrence rejects fractional weights") {
  const LinearModel model({Rational(1, 2)}, Rational(0));
  CHECK_THROWS_AS(dp_prob(model, PartialInstance::all_unknown(1), Instance::from_string("1")),
                  std::invalid_argument);
}

TEST_CASE("counting recurrence accepts a fractional threshold") {
  // dot >= 3/2 over two unit weights means both bits set.
  const LinearModel model({Rational(1), Rational(1)}, Rational(3, 2));
  CHECK(dp_prob(model, PartialInstance::all_unknown(2), Instance::from_string("11")) ==
        Probability(Rational(1, 4)));
}

TEST_CASE("dispatch reaches the recurrence beyond enumeration range") {
  // 100 unit weights, threshold 30: the probability is the binomial tail.
  std::vector<Rational> w(100, Rational(1));
  const LinearModel model(w, Rational(30));
  const Instance x = Instance(std::vector<std::uint8_t>(100, 1));
  const PartialInstance y = PartialInstance::all_unknown(100);
  const Probability p = exact_prob(model, y, x, ProductDistribution::uniform(100));
  CHECK(p == binomial_tail(100, 30));
}

TEST_CASE("dispatch reports an exceeded budget") {
  std::vector<Rational> w(64, Rational(1, 3));
  const LinearModel model(w, Rational(3));
  const Instance x = Instance(std::vector<std::uint8_t>(64, 1));
  CHECK_THROWS_AS(exact_prob(model, PartialInstance::all_unknown(64), x,
                             ProductDistribution::uniform(64)),
                  CapExceededError);
  OracleLimits tight;
  tight.max_enumeration_cells = 4;
  CHECK_THROWS_AS(brute_force_prob(demo_model(), PartialInstance::all_unknown(5), demo_x,
                                   demo_u, tight),
                  CapExceededError);
}

TEST_CASE("binomial tails") {
  CHECK(binomial_tail(0, 0) == Probability(Rational(1)));
  CHECK(binomial_tail(10, 0) == Probability(Rational(1)));
  CHECK(binomial_tail(10, -3) == Probability(Rational(1)));
  CHECK(binomial_tail(10, 11) == Probability(Rational(0)));
  CHECK(binomial_tail(1, 1) == Probability(Rational(1, 2)));
  CHECK(binomial_tail(2, 1) == Probability(Rational(3, 4)));
  CHECK(binomial_tail(3, 2) == Probability(Rational(1, 2)));
  CHECK(binomial_tail(4, 2) == Probability(Rational(11, 16)));
  CHECK(binomial_tail(20, 15) == Probability(Rational(5425, 262144)));
}

TEST_CASE("binomial tail symmetry P(n,k) + P(n,n-k+1) = 1") {
  for (std::uint64_t n : {1u, 2u, 7u, 30u, 101u}) {
    for (std::int64_t k = 0; k <= static_cast<std::int64_t>(n) + 1; ++k) {
      const Rational total =
          binomial_tail(n, k).value() + binomial_tail(n, static_cast<std::int64_t>(n) - k + 1).value();
      CHECK(total == Rational(1));
    }
  }
}

TEST_CASE("worst case margins decide full sufficiency") {
  const LinearModel model = demo_model();
  CHECK(worst_case_margin(model, PartialInstance::from_string("1*0**"), demo_x) ==
        Rational(-1));
  CHECK(worst_case_margin(model, PartialInstance::from_string("1*01*"), demo_x) == Rational(1));
  CHECK_FALSE(is_sufficient_reason(model, PartialInstance::from_string("1*0**"), demo_x));
  CHECK(is_sufficient_reason(model, PartialInstance::from_string("1*01*"), demo_x));
}

TEST_CASE("class 0 sufficiency needs a strictly positive margin") {
  // Ties classify as 1, so a completion landing exactly on the threshold
  // breaks a class 0 reason.
  const LinearModel model({Rational(1)}, Rational(1));
  const Instance x = Instance::from_string("0");
  CHECK(worst_case_margin(model, PartialInstance::from_string("*"), x) == Rational(0));
  CHECK_FALSE(is_sufficient_reason(model, PartialInstance::from_string("*"), x));
  CHECK(is_sufficient_reason(model, PartialInstance::from_string("0"), x));
}

TEST_CASE("delta sufficiency") {
  const LinearModel model = demo_model();
  const PartialInstance y = PartialInstance::from_string("1*0**");
  CHECK(is_delta_sr(model, y, demo_x, Rational(7, 8), demo_u));
  CHECK_FALSE(is_delta_sr(model, y, demo_x, Rational(71, 80), demo_u));
  // Not a subset of x: never a reason, whatever its probability.
  CHECK_FALSE(is_delta_sr(model, PartialInstance::from_string("0****"), demo_x, Rational(1, 100),
                          demo_u));
}

TEST_CASE("exact minimum sizes across the reachable thresholds") {
  const LinearModel model = demo_model();
  const auto at = [&](const Rational& delta) {
    return min_delta_sr_exact(model, demo_x, delta);
  };
  CHECK(at(Rational(1, 4)).size == 0);
  CHECK(at(Rational(3, 10)).size == 1);
  CHECK(at(Rational(1, 2)).size == 1);
  CHECK(at(Rational(51, 100)).size == 2);
  CHECK(at(Rational(7, 8)).size == 2);
  CHECK(at(Rational(22, 25)).size == 3);
  CHECK(at(Rational(1)).size == 3);
  CHECK(at(Rational(7, 8)).reason == PartialInstance::from_string("1*0**"));
  CHECK(at(Rational(1)).reason == PartialInstance::from_string("1*01*"));

  CHECK_THROWS_AS(at(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(at(Rational(11, 10)), std::invalid_argument);
}

TEST_CASE("delta = 1 minimum runs on margins and scales to large models") {
  // 300 features, weights 1, threshold 100: any 100 fixed ones suffice.
  std::vector<Rational> w(300, Rational(1));
  const LinearModel model(w, Rational(100));
  const Instance x = Instance(std::vector<std::uint8_t>(300, 1));
  const MinExplanation min = min_delta_sr_exact(model, x, Rational(1));
  CHECK(min.size == 100);
  CHECK(is_sufficient_reason(model, min.reason, x));
}
