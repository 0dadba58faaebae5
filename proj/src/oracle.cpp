#include "psr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scaled_model.hpp"

namespace psr {

namespace {

void check_inputs(const LinearModel& model, const PartialInstance& y, const Instance& x) {
  if (model.dimension() != x.dimension() || y.dimension() != x.dimension())
    throw std::invalid_argument("oracle: dimension mismatch");
  if (!subset_of(y, x)) throw std::invalid_argument("oracle: partial instance is not a subset of the instance");
}

// Enumerates free-cell assignments in Gray-code order, so each step flips a
// single cell and the dot product updates in O(1). Counts class-1 states.
template <typename Int>
std::uint64_t count_class1_uniform(const std::vector<Int>& free_weights, Int base, Int threshold) {
  const std::size_t f = free_weights.size();
  std::uint64_t count = 0;
  Int dot = base;
  std::uint64_t state = 0;
  const std::uint64_t total = std::uint64_t{1} << f;
  for (std::uint64_t s = 0;;) {
    if (dot >= threshold) ++count;
    if (++s == total) break;
    const unsigned bit = static_cast<unsigned>(std::countr_zero(s));
    const std::uint64_t mask = std::uint64_t{1} << bit;
    state ^= mask;
    if (state & mask)
      dot += free_weights[bit];
    else
      dot -= free_weights[bit];
  }
  return count;
}

// Weighted enumeration for an arbitrary product distribution. Whole subtrees
// whose class is already decided by the remaining weight range are folded in
// without descending further.
class WeightedEnumerator {
 public:
  WeightedEnumerator(const LinearModel& model, const ProductDistribution& dist,
                     const std::vector<std::size_t>& free, int target)
      : model_(model), dist_(dist), free_(free), target_(target) {
    const std::size_t f = free.size();
    min_rest_.assign(f + 1, Rational(0));
    max_rest_.assign(f + 1, Rational(0));
    for (std::size_t j = f; j-- > 0;) {
      const Rational& w = model.weights()[free[j]];
      min_rest_[j] = min_rest_[j + 1] + (w < 0 ? w : Rational(0));
      max_rest_[j] = max_rest_[j + 1] + (w > 0 ? w : Rational(0));
    }
  }

  Rational run(const Rational& base) {
    acc_ = 0;
    descend(0, base, Rational(1));
    return acc_;
  }

 private:
  void descend(std::size_t j, const Rational& dot, const Rational& weight) {
    if (weight == 0) return;
    const bool all_one = dot + min_rest_[j] >= model_.threshold();
    const bool all_zero = dot + max_rest_[j] < model_.threshold();
    if (all_one || all_zero) {
      const int cls = all_one ? 1 : 0;
      if (cls == target_) acc_ += weight;
      return;
    }
    const std::size_t cell = free_[j];
    const Rational& p = dist_.param(cell);
    descend(j + 1, dot + model_.weights()[cell], weight * p);
    descend(j + 1, dot, weight * (1 - p));
  }

  const LinearModel& model_;
  const ProductDistribution& dist_;
  const std::vector<std::size_t>& free_;
  int target_;
  std::vector<Rational> min_rest_;
  std::vector<Rational> max_rest_;
  Rational acc_;
};

bool weights_integral(const LinearModel& model) {
  return std::all_of(model.weights().begin(), model.weights().end(),
                     [](const Rational& w) { return w.get_den() == 1; });
}

BigInt free_weight_magnitude(const LinearModel& model, const PartialInstance& y) {
  BigInt total = 0;
  for (std::size_t i = 0; i < y.dimension(); ++i)
    if (y[i] == Cell::unknown) total += abs(model.weights()[i].get_num());
  return total;
}

}  // namespace

Probability::Probability(Rational value) : value_(std::move(value)) {
  if (value_ < 0 || value_ > 1)
    throw std::invalid_argument("probability outside [0, 1]: " + psr::to_string(value_));
}

Probability brute_force_prob(const LinearModel& model, const PartialInstance& y,
                             const Instance& x, const ProductDistribution& dist,
                             const OracleLimits& limits) {
  check_inputs(model, y, x);
  if (dist.dimension() != x.dimension())
    throw std::invalid_argument("brute_force_prob: distribution dimension mismatch");
  const std::vector<std::size_t> free = y.unknown_features();
  const std::size_t cap = std::min<std::size_t>(limits.max_enumeration_cells, 62);
  if (free.size() > cap)
    throw CapExceededError("brute_force_prob: " + std::to_string(free.size()) +
                           " free cells exceed the enumeration cap of " + std::to_string(cap));
  // The completion distribution conditions dist on the defined cells; a
  // defined value of probability zero leaves it undefined.
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    if (y[i] == Cell::one && dist.param(i) == 0)
      throw std::invalid_argument("brute_force_prob: defined cell " + std::to_string(i) +
                                  " is 1 but has probability 0");
    if (y[i] == Cell::zero && dist.param(i) == 1)
      throw std::invalid_argument("brute_force_prob: defined cell " + std::to_string(i) +
                                  " is 0 but has probability 1");
  }

  const int target = classify(model, x);

  if (dist.is_uniform()) {
    const detail::ScaledModel sm(model);
    std::uint64_t class1 = 0;
    if (sm.fits_i64) {
      std::int64_t base = 0;
      std::vector<std::int64_t> fw;
      fw.reserve(free.size());
      for (std::size_t i = 0; i < y.dimension(); ++i) {
        if (y[i] == Cell::one) base += sm.weights64[i];
        else if (y[i] == Cell::unknown) fw.push_back(sm.weights64[i]);
      }
      class1 = count_class1_uniform<std::int64_t>(fw, base, sm.threshold64);
    } else {
      BigInt base = 0;
      std::vector<BigInt> fw;
      fw.reserve(free.size());
      for (std::size_t i = 0; i < y.dimension(); ++i) {
        if (y[i] == Cell::one) base += sm.weights[i];
        else if (y[i] == Cell::unknown) fw.push_back(sm.weights[i]);
      }
      class1 = count_class1_uniform<BigInt>(fw, base, sm.threshold);
    }
    const std::uint64_t total = std::uint64_t{1} << free.size();
    const std::uint64_t matches = target == 1 ? class1 : total - class1;
    Rational p{BigInt(matches), BigInt(total)};
    p.canonicalize();
    return Probability(std::move(p));
  }

  Rational base = 0;
  for (std::size_t i = 0; i < y.dimension(); ++i)
    if (y[i] == Cell::one) base += model.weights()[i];
  WeightedEnumerator walker(model, dist, free, target);
  return Probability(walker.run(base));
}

Probability dp_prob(const LinearModel& model, const PartialInstance& y, const Instance& x,
                    const OracleLimits& limits) {
  check_inputs(model, y, x);
  if (!weights_integral(model))
    throw std::invalid_argument("dp_prob: weights must be integers");
  const BigInt magnitude = free_weight_magnitude(model, y);
  if (magnitude > limits.max_weight_magnitude)
    throw CapExceededError("dp_prob: free-cell weight magnitude " + magnitude.get_str() +
                           " exceeds the budget of " + std::to_string(limits.max_weight_magnitude));

  BigInt base = 0;
  std::vector<long> free_w;
  std::size_t zero_cells = 0;
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    const Rational& w = model.weights()[i];
    if (y[i] == Cell::one) base += w.get_num();
    else if (y[i] == Cell::unknown) {
      if (w == 0) ++zero_cells;
      else free_w.push_back(w.get_num().get_si());
    }
  }

  long neg = 0, pos = 0;
  for (long w : free_w) (w < 0 ? neg : pos) += w;

  // counts[idx(s)] = number of free assignments whose nonzero-weight sum is s.
  std::vector<BigInt> counts(static_cast<std::size_t>(pos - neg) + 1);
  const auto idx = [&](long s) { return static_cast<std::size_t>(s - neg); };
  counts[idx(0)] = 1;
  long lo = 0, hi = 0;  // sums achieved so far
  for (long w : free_w) {
    if (w > 0) {
      for (long s = hi + w; s >= lo + w; --s) counts[idx(s)] += counts[idx(s - w)];
      hi += w;
    } else {
      for (long s = lo + w; s <= hi + w; ++s) counts[idx(s)] += counts[idx(s - w)];
      lo += w;
    }
  }

  // Class 1 needs base + sum >= t, i.e. sum >= ceil(t - base).
  Rational bound = model.threshold() - Rational(base);
  BigInt need;
  mpz_cdiv_q(need.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
  BigInt class1 = 0;
  for (long s = neg; s <= pos; ++s) {
    if (counts[idx(s)] == 0) continue;
    if (s >= need) class1 += counts[idx(s)];
  }
  class1 <<= zero_cells;

  const std::size_t free_count = free_w.size() + zero_cells;
  const BigInt total = pow2(free_count);
  const BigInt matches = classify(model, x) == 1 ? class1 : BigInt(total - class1);
  Rational p(matches, total);
  p.canonicalize();
  return Probability(std::move(p));
}

Probability exact_prob(const LinearModel& model, const PartialInstance& y, const Instance& x,
                       const ProductDistribution& dist, const OracleLimits& limits) {
  if (y.unknown_count() <= std::min<std::size_t>(limits.max_enumeration_cells, 62))
    return brute_force_prob(model, y, x, dist, limits);
  if (dist.is_uniform() && weights_integral(model) &&
      free_weight_magnitude(model, y) <= limits.max_weight_magnitude)
    return dp_prob(model, y, x, limits);
  throw CapExceededError("exact_prob: instance too large for enumeration and not eligible for "
                         "the counting recurrence");
}

Probability binomial_tail(std::uint64_t n, std::int64_t k) {
  if (k <= 0) return Probability(Rational(1));
  const std::uint64_t ku = static_cast<std::uint64_t>(k);
  if (ku > n) return Probability(Rational(0));

  // Sum whichever side has fewer terms; C(n, j) advances by a ratio step.
  BigInt acc = 0;
  if (ku <= n / 2) {
    BigInt term = 1;  // C(n, 0)
    for (std::uint64_t j = 0; j < ku; ++j) {
      acc += term;
      term *= n - j;
      mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), j + 1);
    }
    acc = pow2(n) - acc;
  } else {
    BigInt term;
    mpz_bin_uiui(term.get_mpz_t(), n, ku);
    for (std::uint64_t j = ku; j <= n; ++j) {
      acc += term;
      if (j < n) {
        term *= n - j;
        mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), j + 1);
      }
    }
  }
  Rational p(acc, pow2(n));
  p.canonicalize();
  return Probability(std::move(p));
}

Rational worst_case_margin(const LinearModel& model, const PartialInstance& y, const Instance& x) {
  check_inputs(model, y, x);
  const int target = classify(model, x);
  Rational base = 0;
  for (std::size_t i = 0; i < y.dimension(); ++i)
    if (y[i] == Cell::one) base += model.weights()[i];
  Rational extreme = base;
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    if (y[i] != Cell::unknown) continue;
    const Rational& w = model.weights()[i];
    // Class 1 fears the smallest dot product, class 0 the largest.
    if (target == 1 ? w < 0 : w > 0) extreme += w;
  }
  const Rational diff = extreme - model.threshold();
  return target == 1 ? diff : Rational(-diff);
}

bool is_sufficient_reason(const LinearModel& model, const PartialInstance& y, const Instance& x) {
  const Rational margin = worst_case_margin(model, y, x);
  // Ties classify as 1, so class 1 tolerates a zero margin and class 0 does not.
  return classify(model, x) == 1 ? margin >= 0 : margin > 0;
}

bool is_delta_sr(const LinearModel& model, const PartialInstance& y, const Instance& x,
                 const Rational& delta, const ProductDistribution& dist,
                 const OracleLimits& limits) {
  if (delta < 0 || delta > 1) throw std::invalid_argument("is_delta_sr: delta outside [0, 1]");
  if (model.dimension() != x.dimension() || y.dimension() != x.dimension())
    throw std::invalid_argument("is_delta_sr: dimension mismatch");
  if (!subset_of(y, x)) return false;
  if (delta == 1 && dist.is_uniform()) return is_sufficient_reason(model, y, x);
  return exact_prob(model, y, x, dist, limits).value() >= delta;
}

MinExplanation min_delta_sr_exact(const LinearModel& model, const Instance& x,
                                  const Rational& delta, const OracleLimits& limits) {
  if (model.dimension() != x.dimension())
    throw std::invalid_argument("min_delta_sr_exact: dimension mismatch");
  if (delta <= 0 || delta > 1)
    throw std::invalid_argument("min_delta_sr_exact: delta outside (0, 1]");

  const std::vector<std::size_t> order = score_ranking(model, x);
  const ProductDistribution uniform = ProductDistribution::uniform(x.dimension());
  const auto prefix = [&](std::size_t k) {
    return restrict_to(x, std::vector<std::size_t>(order.begin(), order.begin() + k));
  };
  // Along the greedy chain the probability is nondecreasing, so the smallest
  // sufficient prefix is found by binary search.
  const auto sufficient = [&](std::size_t k) {
    const PartialInstance y = prefix(k);
    if (delta == 1) return is_sufficient_reason(model, y, x);
    return exact_prob(model, y, x, uniform, limits).value() >= delta;
  };

  std::size_t lb = 0, ub = x.dimension();
  while (lb < ub) {
    const std::size_t mid = lb + (ub - lb) / 2;
    if (sufficient(mid)) ub = mid;
    else lb = mid + 1;
  }
  return MinExplanation{lb, prefix(lb)};
}

}  // namespace psr
