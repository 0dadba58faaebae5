#pragma once

#include <cstdint>
#include <vector>

#include "psr/model.hpp"
#include "psr/rational.hpp"

namespace psr::detail {

// The model with weights and threshold multiplied by the least common
// denominator, so classification is an integer comparison. When every
// magnitude fits comfortably below 2^62 a plain int64 mirror is kept for
// the hot sampling and enumeration loops.
struct ScaledModel {
  std::vector<BigInt> weights;
  BigInt threshold;
  bool fits_i64 = false;
  std::vector<std::int64_t> weights64;
  std::int64_t threshold64 = 0;

  explicit ScaledModel(const LinearModel& model) {
    BigInt scale = 1;
    for (const auto& w : model.weights()) {
      BigInt l;
      mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), w.get_den().get_mpz_t());
      scale = l;
    }
    {
      BigInt l;
      mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), model.threshold().get_den().get_mpz_t());
      scale = l;
    }
    weights.reserve(model.dimension());
    BigInt magnitude = 0;
    for (const auto& w : model.weights()) {
      BigInt scaled = w.get_num() * (scale / w.get_den());
      magnitude += abs(scaled);
      weights.push_back(std::move(scaled));
    }
    threshold = model.threshold().get_num() * (scale / model.threshold().get_den());
    magnitude += abs(threshold);

    // Margin of 2^62 keeps any partial dot product free of overflow.
    if (magnitude < pow2(62)) {
      fits_i64 = true;
      weights64.reserve(weights.size());
      for (const auto& w : weights) weights64.push_back(static_cast<std::int64_t>(w.get_si()));
      threshold64 = static_cast<std::int64_t>(threshold.get_si());
    }
  }
};

}  // namespace psr::detail
