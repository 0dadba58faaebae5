#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "psr/rational.hpp"

namespace psr {

// One position of a partial instance: a fixed bit or a free slot.
enum class Cell : std::uint8_t { zero = 0, one = 1, unknown = 2 };

// A complete binary input vector.
class Instance {
 public:
  explicit Instance(std::vector<std::uint8_t> bits);

  // Parses "10011". One character per feature, leftmost is feature 0.
  static Instance from_string(std::string_view text);

  std::size_t dimension() const { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string to_string() const;

  bool operator==(const Instance&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// A vector over {0, 1, unknown}. Defined cells fix features, unknown cells
// range over completions.
class PartialInstance {
 public:
  explicit PartialInstance(std::vector<Cell> cells);

  static PartialInstance all_unknown(std::size_t dimension);
  static PartialInstance from_instance(const Instance& x);
  // Parses "1*0**", '*' marking an unknown cell.
  static PartialInstance from_string(std::string_view text);

  std::size_t dimension() const { return cells_.size(); }
  Cell operator[](std::size_t i) const { return cells_[i]; }
  const std::vector<Cell>& cells() const { return cells_; }

  std::size_t defined_count() const;
  std::size_t unknown_count() const { return dimension() - defined_count(); }
  std::vector<std::size_t> defined_features() const;
  std::vector<std::size_t> unknown_features() const;

  std::string to_string() const;

  bool operator==(const PartialInstance&) const = default;

 private:
  std::vector<Cell> cells_;
};

// Binary linear classifier: class 1 iff w . x >= t, ties go to class 1.
class LinearModel {
 public:
  LinearModel(std::vector<Rational> weights, Rational threshold);

  std::size_t dimension() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& threshold() const { return threshold_; }

 private:
  std::vector<Rational> weights_;
  Rational threshold_;
};

// Fully factorized distribution over instances; param(i) = Pr[z_i = 1].
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<Rational> params);

  static ProductDistribution uniform(std::size_t dimension);

  std::size_t dimension() const { return params_.size(); }
  const Rational& param(std::size_t i) const { return params_[i]; }
  const std::vector<Rational>& params() const { return params_; }
  bool is_uniform() const { return uniform_; }

 private:
  std::vector<Rational> params_;
  bool uniform_;
};

using ScoreVector = std::vector<Rational>;

int classify(const LinearModel& model, const Instance& x);

// Per-feature score w_i * (2 x_i - 1) * (2 L(x) - 1). Positive scores push
// the dot product toward the class of x, so fixing them preserves it.
ScoreVector scores(const LinearModel& model, const Instance& x);

// Feature indices ordered by score, descending; equal scores keep ascending
// index order. The ordering is a deterministic function of (model, x).
std::vector<std::size_t> score_ranking(const LinearModel& model, const Instance& x);

// Is every defined cell of y equal to the corresponding bit of x?
bool subset_of(const PartialInstance& y, const Instance& x);
// Is every defined cell of y defined and equal in z?
bool subset_of(const PartialInstance& y, const PartialInstance& z);

// Partial instance that fixes exactly the listed features to their values
// in x. Duplicate indices are allowed and redundant.
PartialInstance restrict_to(const Instance& x, const std::vector<std::size_t>& features);

// y with one more cell fixed to its value in x. The cell must be unknown.
PartialInstance extend(const PartialInstance& y, std::size_t feature, const Instance& x);
// y with one defined cell released. The cell must be defined.
PartialInstance drop(const PartialInstance& y, std::size_t feature);

// y^(k): the k best-ranked features of x fixed, the rest free.
PartialInstance greedy_prefix(const LinearModel& model, const Instance& x, std::size_t k);

// The whole chain y^(0) .. y^(d), each prefix extending the previous one.
std::vector<PartialInstance> greedy_prefixes(const LinearModel& model, const Instance& x);

}  // namespace psr
