#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "psr/model.hpp"
#include "psr/rational.hpp"

using namespace psr;

namespace {

// Five-feature reference model used throughout the suites.
LinearModel demo_model() {
  return LinearModel({Rational(5), Rational(1), Rational(-3), Rational(2), Rational(-1)},
                     Rational(5));
}

}  // namespace

TEST_CASE("instance parsing and round trip") {
  const Instance x = Instance::from_string("10011");
  CHECK(x.dimension() == 5);
  CHECK(x[0] == 1);
  CHECK(x[1] == 0);
  CHECK(x[4] == 1);
  CHECK(x.to_string() == "10011");

  CHECK_THROWS_AS(Instance::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(Instance::from_string("10201"), std::invalid_argument);
  CHECK_THROWS_AS(Instance::from_string("1a"), std::invalid_argument);
}

TEST_CASE("partial instance parsing and cell queries") {
  const PartialInstance y = PartialInstance::from_string("1*0**");
  CHECK(y.dimension() == 5);
  CHECK(y[0] == Cell::one);
  CHECK(y[1] == Cell::unknown);
  CHECK(y[2] == Cell::zero);
  CHECK(y.defined_count() == 2);
  CHECK(y.unknown_count() == 3);
  CHECK(y.defined_features() == std::vector<std::size_t>{0, 2});
  CHECK(y.unknown_features() == std::vector<std::size_t>{1, 3, 4});
  CHECK(y.to_string() == "1*0**");

  CHECK(PartialInstance::all_unknown(3).defined_count() == 0);
  const Instance x = Instance::from_string("101");
  CHECK(PartialInstance::from_instance(x).to_string() == "101");
  CHECK_THROWS_AS(PartialInstance::from_string("1x0"), std::invalid_argument);
  CHECK_THROWS_AS(PartialInstance::from_string(""), std::invalid_argument);
}

TEST_CASE("subset, restrict, extend, drop") {
  const Instance x = Instance::from_string("10011");
  const PartialInstance y = PartialInstance::from_string("1*0**");
  CHECK(subset_of(y, x));
  CHECK_FALSE(subset_of(PartialInstance::from_string("0****"), x));
  CHECK(subset_of(y, PartialInstance::from_string("10011")));

  CHECK(restrict_to(x, {0, 2}) == y);
  CHECK(restrict_to(x, {2, 0, 2}) == y);
  CHECK(restrict_to(x, {}) == PartialInstance::all_unknown(5));

  const PartialInstance z = extend(y, 3, x);
  CHECK(z.to_string() == "1*01*");
  CHECK(drop(z, 3) == y);
  CHECK_THROWS_AS(extend(y, 0, x), std::invalid_argument);
  CHECK_THROWS_AS(drop(y, 1), std::invalid_argument);
}

TEST_CASE("subset relation between partial instances") {
  const PartialInstance small = PartialInstance::from_string("1***");
  const PartialInstance big = PartialInstance::from_string("1*0*");
  CHECK(subset_of(small, big));
  CHECK_FALSE(subset_of(big, small));
  CHECK_FALSE(subset_of(PartialInstance::from_string("0***"), big));
}

TEST_CASE("classification with ties going to class 1") {
  const LinearModel model = demo_model();
  CHECK(classify(model, Instance::from_string("10011")) == 1);
  CHECK(classify(model, Instance::from_string("00000")) == 0);

  // Dot product exactly at the threshold.
  const LinearModel tie({Rational(1)}, Rational(1));
  CHECK(classify(tie, Instance::from_string("1")) == 1);
  CHECK(classify(tie, Instance::from_string("0")) == 0);
  const LinearModel zero({Rational(0)}, Rational(0));
  CHECK(classify(zero, Instance::from_string("0")) == 1);
  CHECK(classify(zero, Instance::from_string("1")) == 1);
}

TEST_CASE("scores for the reference instance") {
  const LinearModel model = demo_model();
  const ScoreVector s = scores(model, Instance::from_string("10011"));
  const ScoreVector expected = {Rational(5), Rational(-1), Rational(3), Rational(2),
                                Rational(-1)};
  CHECK(s == expected);
}

TEST_CASE("scores flip with the instance bit, not the class") {
  // Class 0 instance: both sign factors flip, so scores equal the weights.
  const LinearModel model = demo_model();
  const ScoreVector s = scores(model, Instance::from_string("00000"));
  CHECK(s == model.weights());
}

TEST_CASE("ranking is scale invariant and breaks ties by index") {
  const LinearModel model = demo_model();
  const Instance x = Instance::from_string("10011");
  const std::vector<std::size_t> expected = {0, 2, 3, 1, 4};
  CHECK(score_ranking(model, x) == expected);

  std::vector<Rational> tripled;
  for (const auto& w : model.weights()) tripled.push_back(w * 3);
  const LinearModel scaled(tripled, model.threshold() * 3);
  CHECK(score_ranking(scaled, x) == expected);

  // Equal scores keep ascending feature order.
  const LinearModel flat({Rational(1), Rational(1)}, Rational(0));
  const std::vector<std::size_t> ascending = {0, 1};
  CHECK(score_ranking(flat, Instance::from_string("11")) == ascending);
}

TEST_CASE("greedy prefixes form an increasing chain") {
  const LinearModel model = demo_model();
  const Instance x = Instance::from_string("10011");
  const auto chain = greedy_prefixes(model, x);
  REQUIRE(chain.size() == 6);
  CHECK(chain[0] == PartialInstance::all_unknown(5));
  CHECK(chain[2].to_string() == "1*0**");
  CHECK(chain[5] == PartialInstance::from_instance(x));
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    CHECK(subset_of(chain[k], chain[k + 1]));
    CHECK(chain[k].defined_count() == k);
  }
  for (std::size_t k = 0; k < chain.size(); ++k) CHECK(greedy_prefix(model, x, k) == chain[k]);
  CHECK_THROWS_AS(greedy_prefix(model, x, 6), std::invalid_argument);
}

TEST_CASE("model and distribution validation") {
  CHECK_THROWS_AS(LinearModel({}, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(ProductDistribution({Rational(2)}), std::invalid_argument);
  CHECK_THROWS_AS(ProductDistribution({Rational(-1, 2)}), std::invalid_argument);

  const ProductDistribution u = ProductDistribution::uniform(3);
  CHECK(u.is_uniform());
  CHECK(u.param(1) == Rational(1, 2));
  const ProductDistribution skew({Rational(1, 2), Rational(1, 3)});
  CHECK_FALSE(skew.is_uniform());
}
