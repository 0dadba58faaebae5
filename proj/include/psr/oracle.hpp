#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "psr/model.hpp"
#include "psr/rational.hpp"

namespace psr {

// An exact probability value in [0, 1].
class Probability {
 public:
  Probability() : value_(0) {}
  explicit Probability(Rational value);

  const Rational& value() const { return value_; }
  double to_double() const { return psr::to_double(value_); }
  std::string to_string() const { return psr::to_string(value_); }

  bool operator==(const Probability& other) const {
    return mpq_cmp(value_.get_mpq_t(), other.value_.get_mpq_t()) == 0;
  }
  std::strong_ordering operator<=>(const Probability& other) const {
    const int c = mpq_cmp(value_.get_mpq_t(), other.value_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_;
};

// Raised when an exact computation would exceed its configured budget.
// Callers can widen the limits or fall back to sampling.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  // Enumeration visits 2^(free cells) completions.
  std::size_t max_enumeration_cells = 24;
  // The counting recurrence walks an integer range of width sum |w_i| + |t|.
  std::uint64_t max_weight_magnitude = 10'000'000;
};

// Pr over completions z of y (z_i ~ dist independently on the free cells)
// that the model gives z the class of x. Exact, by full enumeration.
// Defined cells whose value has probability zero under dist make the
// conditional meaningless and raise std::invalid_argument.
Probability brute_force_prob(const LinearModel& model, const PartialInstance& y,
                             const Instance& x, const ProductDistribution& dist,
                             const OracleLimits& limits = {});

// Same value for integer weights under the uniform distribution, via a
// counting recurrence over achievable dot products. Handles hundreds of
// free cells as long as sum |w_i| stays within the magnitude budget.
Probability dp_prob(const LinearModel& model, const PartialInstance& y, const Instance& x,
                    const OracleLimits& limits = {});

// Exact uniform probability via whichever of the two oracles fits the
// limits: enumeration first, then the counting recurrence.
Probability exact_prob(const LinearModel& model, const PartialInstance& y, const Instance& x,
                       const ProductDistribution& dist, const OracleLimits& limits = {});

// P(n, k) = Pr[Binomial(n, 1/2) >= k], exact. 1 when k <= 0, 0 when k > n.
Probability binomial_tail(std::uint64_t n, std::int64_t k);

// min over completions z of y of (2 L(x) - 1) * (w . z - t). Nonnegative
// margin means every completion keeps class 1; strictly positive margin
// means every completion keeps class 0.
Rational worst_case_margin(const LinearModel& model, const PartialInstance& y, const Instance& x);

// Does every completion of y receive the class of x? Decided by the
// worst-case margin, so it is exact for any dimension.
bool is_sufficient_reason(const LinearModel& model, const PartialInstance& y, const Instance& x);

// Is y a delta-sufficient reason for x: subset of x with completion
// probability at least delta?
bool is_delta_sr(const LinearModel& model, const PartialInstance& y, const Instance& x,
                 const Rational& delta, const ProductDistribution& dist,
                 const OracleLimits& limits = {});

struct MinExplanation {
  std::size_t size;
  PartialInstance reason;
};

// Smallest k with Pr[y^(k)] >= delta, together with y^(k). Exact and
// uniform-only: the greedy chain is guaranteed optimal for the uniform
// distribution, so this doubles as the minimum over all subsets of x.
// delta must lie in (0, 1]; delta = 1 runs on worst-case margins and
// copes with dimensions in the thousands.
MinExplanation min_delta_sr_exact(const LinearModel& model, const Instance& x,
                                  const Rational& delta, const OracleLimits& limits = {});

}  // namespace psr
