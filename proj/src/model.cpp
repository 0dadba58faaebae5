#include "psr/model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace psr {

namespace {

void check_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Instance::Instance(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("instance: empty");
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("instance: bits must be 0 or 1");
}

Instance Instance::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("instance: expected only '0'/'1', got '" + std::string(1, c) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Instance(std::move(bits));
}

std::string Instance::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

PartialInstance::PartialInstance(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw std::invalid_argument("partial instance: empty");
}

PartialInstance PartialInstance::all_unknown(std::size_t dimension) {
  return PartialInstance(std::vector<Cell>(dimension, Cell::unknown));
}

PartialInstance PartialInstance::from_instance(const Instance& x) {
  std::vector<Cell> cells(x.dimension());
  for (std::size_t i = 0; i < x.dimension(); ++i)
    cells[i] = x[i] ? Cell::one : Cell::zero;
  return PartialInstance(std::move(cells));
}

PartialInstance PartialInstance::from_string(std::string_view text) {
  std::vector<Cell> cells;
  cells.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '0': cells.push_back(Cell::zero); break;
      case '1': cells.push_back(Cell::one); break;
      case '*': cells.push_back(Cell::unknown); break;
      default:
        throw std::invalid_argument("partial instance: expected '0'/'1'/'*', got '" +
                                    std::string(1, c) + "'");
    }
  }
  return PartialInstance(std::move(cells));
}

std::size_t PartialInstance::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](Cell c) { return c != Cell::unknown; }));
}

std::vector<std::size_t> PartialInstance::defined_features() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] != Cell::unknown) out.push_back(i);
  return out;
}

std::vector<std::size_t> PartialInstance::unknown_features() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] == Cell::unknown) out.push_back(i);
  return out;
}

std::string PartialInstance::to_string() const {
  std::string s;
  s.reserve(cells_.size());
  for (Cell c : cells_) {
    switch (c) {
      case Cell::zero: s.push_back('0'); break;
      case Cell::one: s.push_back('1'); break;
      case Cell::unknown: s.push_back('*'); break;
    }
  }
  return s;
}

LinearModel::LinearModel(std::vector<Rational> weights, Rational threshold)
    : weights_(std::move(weights)), threshold_(std::move(threshold)) {
  if (weights_.empty()) throw std::invalid_argument("model: needs at least one weight");
}

ProductDistribution::ProductDistribution(std::vector<Rational> params)
    : params_(std::move(params)) {
  if (params_.empty()) throw std::invalid_argument("distribution: empty");
  const Rational half = ratio(1, 2);
  uniform_ = true;
  for (const auto& p : params_) {
    if (p < 0 || p > 1) throw std::invalid_argument("distribution: params must lie in [0, 1]");
    if (p != half) uniform_ = false;
  }
}

ProductDistribution ProductDistribution::uniform(std::size_t dimension) {
  return ProductDistribution(std::vector<Rational>(dimension, ratio(1, 2)));
}

int classify(const LinearModel& model, const Instance& x) {
  check_same_dimension(model.dimension(), x.dimension(), "classify");
  Rational dot = 0;
  for (std::size_t i = 0; i < x.dimension(); ++i)
    if (x[i]) dot += model.weights()[i];
  return dot >= model.threshold() ? 1 : 0;
}

ScoreVector scores(const LinearModel& model, const Instance& x) {
  check_same_dimension(model.dimension(), x.dimension(), "scores");
  const int cls_sign = 2 * classify(model, x) - 1;
  ScoreVector s(model.dimension());
  for (std::size_t i = 0; i < model.dimension(); ++i) {
    const int sign = cls_sign * (2 * x[i] - 1);
    s[i] = sign > 0 ? model.weights()[i] : Rational(-model.weights()[i]);
  }
  return s;
}

std::vector<std::size_t> score_ranking(const LinearModel& model, const Instance& x) {
  const ScoreVector s = scores(model, x);
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int cmp = mpq_cmp(s[a].get_mpq_t(), s[b].get_mpq_t());
    if (cmp != 0) return cmp > 0;
    return a < b;
  });
  return order;
}

bool subset_of(const PartialInstance& y, const Instance& x) {
  check_same_dimension(y.dimension(), x.dimension(), "subset_of");
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    if (y[i] == Cell::unknown) continue;
    if (static_cast<int>(y[i]) != x[i]) return false;
  }
  return true;
}

bool subset_of(const PartialInstance& y, const PartialInstance& z) {
  check_same_dimension(y.dimension(), z.dimension(), "subset_of");
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    if (y[i] == Cell::unknown) continue;
    if (y[i] != z[i]) return false;
  }
  return true;
}

PartialInstance restrict_to(const Instance& x, const std::vector<std::size_t>& features) {
  std::vector<Cell> cells(x.dimension(), Cell::unknown);
  for (std::size_t f : features) {
    if (f >= x.dimension()) throw std::invalid_argument("restrict_to: feature index out of range");
    cells[f] = x[f] ? Cell::one : Cell::zero;
  }
  return PartialInstance(std::move(cells));
}

PartialInstance extend(const PartialInstance& y, std::size_t feature, const Instance& x) {
  check_same_dimension(y.dimension(), x.dimension(), "extend");
  if (feature >= y.dimension()) throw std::invalid_argument("extend: feature index out of range");
  if (y[feature] != Cell::unknown) throw std::invalid_argument("extend: cell already defined");
  std::vector<Cell> cells = y.cells();
  cells[feature] = x[feature] ? Cell::one : Cell::zero;
  return PartialInstance(std::move(cells));
}

PartialInstance drop(const PartialInstance& y, std::size_t feature) {
  if (feature >= y.dimension()) throw std::invalid_argument("drop: feature index out of range");
  if (y[feature] == Cell::unknown) throw std::invalid_argument("drop: cell already unknown");
  std::vector<Cell> cells = y.cells();
  cells[feature] = Cell::unknown;
  return PartialInstance(std::move(cells));
}

PartialInstance greedy_prefix(const LinearModel& model, const Instance& x, std::size_t k) {
  if (k > model.dimension()) throw std::invalid_argument("greedy_prefix: k exceeds dimension");
  std::vector<std::size_t> order = score_ranking(model, x);
  order.resize(k);
  return restrict_to(x, order);
}

std::vector<PartialInstance> greedy_prefixes(const LinearModel& model, const Instance& x) {
  const std::vector<std::size_t> order = score_ranking(model, x);
  std::vector<PartialInstance> chain;
  chain.reserve(order.size() + 1);
  chain.push_back(PartialInstance::all_unknown(x.dimension()));
  for (std::size_t k = 0; k < order.size(); ++k)
    chain.push_back(extend(chain.back(), order[k], x));
  return chain;
}

}  // namespace psr
