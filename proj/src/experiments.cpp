#include "psr/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace psr {

namespace {

std::string count_detail(std::size_t ok, std::size_t total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}

PartialInstance mask_subset(const Instance& x, std::uint64_t mask) {
  std::vector<Cell> cells(x.dimension(), Cell::unknown);
  for (std::size_t i = 0; i < x.dimension(); ++i)
    if (mask >> i & 1) cells[i] = x[i] ? Cell::one : Cell::zero;
  return PartialInstance(std::move(cells));
}

std::size_t random_dimension(Rng& rng, std::size_t max_dimension) {
  return 1 + static_cast<std::size_t>(uniform_below(rng, max_dimension));
}

// Largest k in [0, n] with P(n, k) >= target; P(n, 0) = 1, so it exists
// whenever target <= 1.
std::uint64_t last_tail_at_least(std::uint64_t n, const Rational& target) {
  std::uint64_t lo = 0, hi = n;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (binomial_tail(n, static_cast<std::int64_t>(mid)).value() >= target) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

// Binomial coefficient row C(n, 0..n).
std::vector<BigInt> binomial_row(std::uint64_t n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (std::uint64_t j = 0; j < n; ++j) {
    row[j + 1] = row[j] * (n - j);
    mpz_divexact_ui(row[j + 1].get_mpz_t(), row[j + 1].get_mpz_t(), j + 1);
  }
  return row;
}

// suffix[k] = sum of row[k..n]; suffix has n + 2 entries, last one zero.
std::vector<BigInt> suffix_sums(const std::vector<BigInt>& row) {
  std::vector<BigInt> suffix(row.size() + 1);
  for (std::size_t k = row.size(); k-- > 0;) suffix[k] = suffix[k + 1] + row[k];
  return suffix;
}

}  // namespace

void Report::add(std::string check, bool passed, std::string detail) {
  checks.push_back(CheckResult{std::move(check), passed, std::move(detail)});
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

RandomCase random_case(Rng& rng, const RandomModelOptions& options) {
  if (options.dimension == 0 || options.dimension > 62)
    throw std::invalid_argument("random_case: dimension outside [1, 62]");
  if (options.weight_bound < 1) throw std::invalid_argument("random_case: weight bound must be positive");
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(options.weight_bound) + 1;
  for (int attempt = 0;; ++attempt) {
    std::vector<Rational> weights;
    weights.reserve(options.dimension);
    long magnitude = 0;
    for (std::size_t i = 0; i < options.dimension; ++i) {
      const long w = static_cast<long>(uniform_below(rng, span)) - options.weight_bound;
      magnitude += std::abs(w);
      weights.emplace_back(w);
    }
    const long threshold =
        static_cast<long>(uniform_below(rng, 2 * static_cast<std::uint64_t>(magnitude) + 1)) -
        magnitude;
    std::vector<std::uint8_t> bits(options.dimension);
    for (auto& b : bits) b = static_cast<std::uint8_t>(uniform_below(rng, 2));
    RandomCase result{LinearModel(std::move(weights), Rational(threshold)),
                      Instance(std::move(bits))};
    if (!options.nondegenerate || attempt >= 64 ||
        !is_sufficient_reason(result.model, PartialInstance::all_unknown(options.dimension),
                              result.x))
      return result;
  }
}

ProductDistribution random_distribution(Rng& rng, std::size_t dimension) {
  std::vector<Rational> params;
  params.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i)
    params.push_back(ratio(1 + static_cast<long>(uniform_below(rng, 9)), 10));
  return ProductDistribution(std::move(params));
}

std::vector<Probability> all_subset_probs(const LinearModel& model, const Instance& x,
                                          const ProductDistribution& dist) {
  const std::size_t d = x.dimension();
  if (d > 20) throw std::invalid_argument("all_subset_probs: dimension capped at 20");
  std::vector<Probability> table;
  table.reserve(std::size_t{1} << d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask)
    table.push_back(brute_force_prob(model, mask_subset(x, mask), x, dist));
  return table;
}

std::size_t exhaustive_min_size(const LinearModel& model, const Instance& x,
                                const Rational& delta, const ProductDistribution& dist) {
  const auto table = all_subset_probs(model, x, dist);
  std::size_t best = x.dimension();
  for (std::uint64_t mask = 0; mask < table.size(); ++mask)
    if (table[mask].value() >= delta)
      best = std::min(best, static_cast<std::size_t>(std::popcount(mask)));
  return best;
}

LocalMinimalityReport check_local_minimality(const LinearModel& model, const Instance& x,
                                             const Rational& delta,
                                             const ProductDistribution& dist) {
  if (delta <= 0 || delta > 1)
    throw std::invalid_argument("check_local_minimality: delta outside (0, 1]");
  const std::size_t d = x.dimension();
  const auto table = all_subset_probs(model, x, dist);
  const auto sufficient = [&](std::uint64_t mask) { return table[mask].value() >= delta; };

  LocalMinimalityReport report;
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    if (!sufficient(mask)) continue;
    ++report.sufficient;
    bool locally_minimal = true;
    for (std::size_t i = 0; i < d && locally_minimal; ++i)
      if (mask >> i & 1)
        if (sufficient(mask ^ (std::uint64_t{1} << i))) locally_minimal = false;
    bool globally_minimal = true;
    for (std::uint64_t sub = (mask - 1) & mask; sub != mask && globally_minimal;
         sub = (sub - 1) & mask) {
      if (sufficient(sub)) globally_minimal = false;
      if (sub == 0) break;
    }
    if (mask == 0) globally_minimal = true;
    if (locally_minimal) ++report.locally_minimal;
    if (globally_minimal) ++report.globally_minimal;
    if (locally_minimal && !globally_minimal)
      report.counterexamples.push_back(mask_subset(x, mask));
  }
  return report;
}

GapConstruction build_gap_instance(const Rational& delta, const Rational& epsilon,
                                   const Rational& gamma_exp, std::uint64_t requested_n,
                                   std::uint64_t max_n) {
  if (delta <= 0) throw std::invalid_argument("build_gap_instance: delta must be positive");
  if (epsilon <= 0) throw std::invalid_argument("build_gap_instance: epsilon must be positive");
  if (delta + epsilon > 1)
    throw std::invalid_argument("build_gap_instance: delta + epsilon must not exceed 1");
  if (gamma_exp <= 0 || 2 * gamma_exp >= 1)
    throw std::invalid_argument("build_gap_instance: gamma_exp outside (0, 1/2)");

  const Rational window_center = delta + epsilon / 4;
  const Rational window_radius = epsilon / 4;

  std::uint64_t n = requested_n;
  if (n == 0) {
    // Smallest n with 1/sqrt(n) < epsilon/4, so consecutive tails cannot
    // jump over the window.
    Rational inv = 1 / (window_radius * window_radius);
    BigInt floor_inv;
    mpz_fdiv_q(floor_inv.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
    if (!floor_inv.fits_ulong_p() || floor_inv.get_ui() >= max_n)
      throw CapExceededError("build_gap_instance: tail-density bound needs n beyond max_n");
    const std::uint64_t n_density = floor_inv.get_ui() + 1;
    // Separation grows like n^gamma_exp only past (2/epsilon)^(1/gamma_exp).
    const double n_sep = std::pow(to_double(2 / epsilon), 1.0 / to_double(gamma_exp));
    if (!(n_sep < static_cast<double>(max_n)))
      throw CapExceededError("build_gap_instance: separation bound needs n beyond max_n");
    n = std::max(n_density, static_cast<std::uint64_t>(n_sep) + 1);
  }
  if (n == 0 || n > max_n)
    throw CapExceededError("build_gap_instance: n outside [1, max_n]");

  const std::uint64_t k = last_tail_at_least(n, window_center);
  std::uint64_t m = 0;
  bool found = false;
  for (const std::uint64_t candidate : {k + 1, k}) {
    if (candidate < 1 || candidate > n) continue;
    const Probability tail = binomial_tail(n, static_cast<std::int64_t>(candidate));
    if (abs(tail.value() - window_center) < window_radius) {
      m = candidate;
      found = true;
      break;
    }
  }
  if (!found)
    throw std::invalid_argument("build_gap_instance: no anchor weight lands in the target window "
                                "at n = " + std::to_string(n));

  std::vector<Rational> weights;
  weights.reserve(n + 1);
  weights.emplace_back(1);
  const Rational unit = ratio(1, static_cast<long>(m));
  for (std::uint64_t i = 0; i < n; ++i) weights.push_back(unit);
  LinearModel model(std::move(weights), Rational(2));
  Instance x(std::vector<std::uint8_t>(n + 1, 1));
  return GapConstruction{n, m, std::move(model), std::move(x), delta, epsilon,
                         binomial_tail(n, static_cast<std::int64_t>(m))};
}

std::size_t gap_min_size(const GapConstruction& gap, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw std::invalid_argument("gap_min_size: delta outside (0, 1]");
  const std::uint64_t n = gap.n, m = gap.m;
  // The empty subset mixes over the anchor bit.
  const Rational v0 = (binomial_tail(n, static_cast<std::int64_t>(m)).value() +
                       binomial_tail(n, static_cast<std::int64_t>(2 * m)).value()) /
                      2;
  if (v0 >= delta) return 0;
  // Greedy fixes the anchor first, then unit cells: the k-th prefix needs
  // m - (k - 1) successes among n - (k - 1) coins. Monotone in k because
  // P(n-1, k-1) >= P(n, k).
  std::uint64_t lo = 0, hi = m;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const Probability tail = binomial_tail(n - mid, static_cast<std::int64_t>(m - mid));
    if (tail.value() >= delta) hi = mid;
    else lo = mid + 1;
  }
  return static_cast<std::size_t>(1 + lo);
}

TailApproximation binomial_approximation(const Rational& delta, const Rational& epsilon) {
  if (delta <= 0 || delta >= 1)
    throw std::invalid_argument("binomial_approximation: delta outside (0, 1)");
  if (epsilon <= 0 || epsilon >= 1)
    throw std::invalid_argument("binomial_approximation: epsilon outside (0, 1)");
  Rational inv = 1 / (epsilon * epsilon);
  BigInt floor_inv;
  mpz_fdiv_q(floor_inv.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
  if (!floor_inv.fits_ulong_p() || floor_inv.get_ui() >= 10'000'000)
    throw CapExceededError("binomial_approximation: epsilon too small");
  const std::uint64_t n = floor_inv.get_ui() + 1;  // smallest n with 1/sqrt(n) < epsilon

  const std::uint64_t k = last_tail_at_least(n, delta);
  // One past the last tail above delta lands within the tail step, which is
  // below 1/sqrt(n); at the boundary k = n the tail itself is within 2^-n.
  const std::uint64_t chosen = k + 1 <= n ? k + 1 : k;
  return TailApproximation{n, static_cast<std::int64_t>(chosen),
                           binomial_tail(n, static_cast<std::int64_t>(chosen))};
}

Report verify_skewed_model() {
  Report report{"skewed-model", {}};
  const std::size_t units = 999;
  std::vector<Rational> weights;
  weights.reserve(units + 1);
  weights.emplace_back(1000);
  for (std::size_t i = 0; i < units; ++i) weights.emplace_back(1);
  const LinearModel model(std::move(weights), Rational(1250));
  const Instance x(std::vector<std::uint8_t>(units + 1, 1));

  const Probability tail = binomial_tail(999, 250);
  report.add("anchor-tail-at-least-six-nines", tail.value() >= ratio(999999, 1000000),
             "P = " + tail.to_string());
  report.add("anchor-tail-failure-below-2e-14",
             1 - tail.value() < Rational(BigInt(2), BigInt("100000000000000")),
             "1 - P = " + to_string(1 - tail.value()));

  const Probability recurrence = dp_prob(model, restrict_to(x, {0}), x);
  report.add("tail-matches-counting-recurrence", recurrence == tail, recurrence.to_string());

  const auto ranking = score_ranking(model, x);
  report.add("anchor-ranked-first", ranking.front() == 0);

  const MinExplanation minimal = min_delta_sr_exact(model, x, Rational(1));
  report.add("minimum-sufficient-size-251", minimal.size == 251,
             "size = " + std::to_string(minimal.size));
  report.add("prefix-250-insufficient",
             !is_sufficient_reason(model, greedy_prefix(model, x, 250), x));
  report.add("prefix-251-sufficient", is_sufficient_reason(model, minimal.reason, x));

  std::vector<std::size_t> all_units(units);
  for (std::size_t i = 0; i < units; ++i) all_units[i] = i + 1;
  report.add("anchor-necessary",
             !is_sufficient_reason(model, restrict_to(x, all_units), x),
             "all 999 unit features without the anchor stay insufficient");
  return report;
}

Report verify_greedy_tables() {
  Report report{"greedy-tables", {}};
  const LinearModel model({Rational(5), Rational(1), Rational(-3), Rational(2), Rational(-1)},
                          Rational(5));
  const Instance x = Instance::from_string("10011");
  const ProductDistribution uniform = ProductDistribution::uniform(5);

  report.add("class-is-1", classify(model, x) == 1);

  const ScoreVector s = scores(model, x);
  const ScoreVector expected_scores{Rational(5), Rational(-1), Rational(3), Rational(2),
                                    Rational(-1)};
  report.add("scores", s == expected_scores);

  const std::vector<std::size_t> expected_ranking{0, 2, 3, 1, 4};
  report.add("ranking", score_ranking(model, x) == expected_ranking);

  const std::vector<Rational> expected_prefix{ratio(1, 4), ratio(1, 2), ratio(7, 8),
                                              Rational(1), Rational(1), Rational(1)};
  const auto chain = greedy_prefixes(model, x);
  for (std::size_t k = 0; k <= 5; ++k) {
    const Probability p = brute_force_prob(model, chain[k], x, uniform);
    report.add("prefix-probability-k" + std::to_string(k), p.value() == expected_prefix[k],
               "expected " + to_string(expected_prefix[k]) + ", got " + p.to_string());
  }

  const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>> pairs{
      {{0, 1}, ratio(3, 8)}, {{0, 2}, ratio(7, 8)}, {{0, 3}, ratio(5, 8)},
      {{0, 4}, ratio(3, 8)}, {{1, 2}, ratio(3, 8)}, {{1, 3}, ratio(1, 4)},
      {{1, 4}, ratio(1, 8)}, {{2, 3}, ratio(1, 2)}, {{2, 4}, ratio(3, 8)},
      {{3, 4}, ratio(1, 4)}};
  Rational best(0);
  std::pair<std::size_t, std::size_t> best_pair{0, 0};
  for (const auto& [features, expected] : pairs) {
    const Probability p =
        brute_force_prob(model, restrict_to(x, {features.first, features.second}), x, uniform);
    report.add("pair-probability-" + std::to_string(features.first) + "-" +
                   std::to_string(features.second),
               p.value() == expected, "expected " + to_string(expected) + ", got " + p.to_string());
    if (p.value() > best) {
      best = p.value();
      best_pair = features;
    }
  }
  report.add("best-pair-is-greedy-prefix",
             best_pair == std::make_pair(std::size_t{0}, std::size_t{2}) &&
                 best == expected_prefix[2],
             "best pair {0,2} with 7/8 matches the two-feature greedy prefix");
  return report;
}

Report check_greedy_chain(std::uint64_t seed, std::size_t cases, std::size_t max_dimension,
                          const std::vector<Rational>& deltas) {
  if (max_dimension > 16)
    throw std::invalid_argument("check_greedy_chain: max dimension capped at 16");
  Report report{"greedy-chain", {}};
  Rng rng(seed);
  std::size_t monotone_ok = 0, terminal_ok = 0, agree_ok = 0, witness_ok = 0;
  const std::size_t agreements = cases * deltas.size();
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = random_dimension(rng, max_dimension);
    const RandomCase rc = random_case(rng, {d, 8, false});
    const ProductDistribution uniform = ProductDistribution::uniform(d);
    const auto table = all_subset_probs(rc.model, rc.x, uniform);

    const auto order = score_ranking(rc.model, rc.x);
    std::uint64_t prefix_mask = 0;
    bool monotone = true;
    Rational previous(-1);
    for (std::size_t k = 0; k <= d; ++k) {
      if (k > 0) prefix_mask |= std::uint64_t{1} << order[k - 1];
      const Rational& v = table[prefix_mask].value();
      if (v < previous) monotone = false;
      previous = v;
    }
    if (monotone) ++monotone_ok;
    if (previous == 1) ++terminal_ok;

    for (const Rational& delta : deltas) {
      const MinExplanation greedy = min_delta_sr_exact(rc.model, rc.x, delta);
      std::size_t best = d;
      for (std::uint64_t mask = 0; mask < table.size(); ++mask)
        if (table[mask].value() >= delta)
          best = std::min(best, static_cast<std::size_t>(std::popcount(mask)));
      if (greedy.size == best) ++agree_ok;
      if (brute_force_prob(rc.model, greedy.reason, rc.x, uniform).value() >= delta)
        ++witness_ok;
    }
  }
  report.add("chain-monotone", monotone_ok == cases, count_detail(monotone_ok, cases));
  report.add("chain-ends-at-one", terminal_ok == cases, count_detail(terminal_ok, cases));
  report.add("greedy-minimum-matches-exhaustive", agree_ok == agreements,
             count_detail(agree_ok, agreements));
  report.add("returned-reason-is-sufficient", witness_ok == agreements,
             count_detail(witness_ok, agreements));
  return report;
}

Report check_exchange_property(std::uint64_t seed, std::size_t cases,
                               std::size_t max_dimension) {
  if (max_dimension > 12)
    throw std::invalid_argument("check_exchange_property: max dimension capped at 12");
  Report report{"exchange-property", {}};
  Rng rng(seed);
  std::size_t ok = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = random_dimension(rng, max_dimension);
    const RandomCase rc = random_case(rng, {d, 8, false});
    const auto table = all_subset_probs(rc.model, rc.x, ProductDistribution::uniform(d));
    const ScoreVector s = scores(rc.model, rc.x);
    bool holds = true;
    for (std::uint64_t mask = 0; mask < table.size() && holds; ++mask) {
      for (std::size_t i = 0; i < d && holds; ++i) {
        if (!(mask >> i & 1)) continue;
        for (std::size_t j = 0; j < d && holds; ++j) {
          if (mask >> j & 1) continue;
          if (!(s[i] <= s[j])) continue;
          const std::uint64_t swapped =
              (mask ^ (std::uint64_t{1} << i)) | (std::uint64_t{1} << j);
          if (table[swapped].value() < table[mask].value()) holds = false;
        }
      }
    }
    if (holds) ++ok;
  }
  report.add("swap-toward-higher-score-never-hurts", ok == cases, count_detail(ok, cases));
  return report;
}

Report check_extension_monotonicity(std::uint64_t seed, std::size_t cases,
                                    std::size_t max_dimension) {
  if (max_dimension > 12)
    throw std::invalid_argument("check_extension_monotonicity: max dimension capped at 12");
  Report report{"extension-monotonicity", {}};
  Rng rng(seed);
  std::size_t fix_ok = 0, release_ok = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = random_dimension(rng, max_dimension);
    const RandomCase rc = random_case(rng, {d, 8, false});
    const ProductDistribution dist = random_distribution(rng, d);
    const auto table = all_subset_probs(rc.model, rc.x, dist);
    const ScoreVector s = scores(rc.model, rc.x);
    bool fix_holds = true, release_holds = true;
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
      for (std::size_t i = 0; i < d; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (!(mask & bit) && s[i] >= 0 && table[mask | bit].value() < table[mask].value())
          fix_holds = false;
        if ((mask & bit) && s[i] <= 0 && table[mask ^ bit].value() < table[mask].value())
          release_holds = false;
      }
    }
    if (fix_holds) ++fix_ok;
    if (release_holds) ++release_ok;
  }
  report.add("fixing-nonnegative-score-never-hurts", fix_ok == cases,
             count_detail(fix_ok, cases));
  report.add("releasing-nonpositive-score-never-hurts", release_ok == cases,
             count_detail(release_ok, cases));
  return report;
}

Report check_local_minimality_random(std::uint64_t seed, std::size_t cases,
                                     std::size_t max_dimension) {
  if (max_dimension > 12)
    throw std::invalid_argument("check_local_minimality_random: max dimension capped at 12");
  Report report{"local-minimality", {}};
  Rng rng(seed);
  std::size_t clean = 0, sufficient_total = 0, locally_minimal_total = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = random_dimension(rng, max_dimension);
    const RandomCase rc = random_case(rng, {d, 8, false});
    const ProductDistribution dist = random_distribution(rng, d);
    const Rational delta = ratio(1 + static_cast<long>(uniform_below(rng, 99)), 100);
    const LocalMinimalityReport lm = check_local_minimality(rc.model, rc.x, delta, dist);
    if (lm.counterexamples.empty()) ++clean;
    sufficient_total += lm.sufficient;
    locally_minimal_total += lm.locally_minimal;
  }
  report.add("one-drop-minimal-implies-subset-minimal", clean == cases,
             count_detail(clean, cases) + " cases clean, " +
                 std::to_string(locally_minimal_total) + " locally minimal subsets among " +
                 std::to_string(sufficient_total) + " sufficient");
  return report;
}

Report check_oracle_agreement(std::uint64_t seed, std::size_t cases,
                              std::size_t max_dimension) {
  if (max_dimension > 20)
    throw std::invalid_argument("check_oracle_agreement: max dimension capped at 20");
  Report report{"oracle-agreement", {}};
  Rng rng(seed);
  std::size_t ok = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = random_dimension(rng, max_dimension);
    const RandomCase rc = random_case(rng, {d, 8, false});
    const std::uint64_t mask = uniform_below(rng, std::uint64_t{1} << d);
    const PartialInstance y = mask_subset(rc.x, mask);
    const Probability enumerated =
        brute_force_prob(rc.model, y, rc.x, ProductDistribution::uniform(d));
    const Probability counted = dp_prob(rc.model, y, rc.x);
    if (enumerated == counted) ++ok;
  }
  report.add("recurrence-matches-enumeration", ok == cases, count_detail(ok, cases));
  return report;
}

Report check_tail_difference_bound(std::uint64_t max_n) {
  Report report{"tail-difference", {}};
  bool pointwise = true, bounded = true;
  std::vector<BigInt> prev_suffix = suffix_sums(binomial_row(1));
  for (std::uint64_t n = 2; n <= max_n; ++n) {
    const std::vector<BigInt> suffix = suffix_sums(binomial_row(n));
    Rational largest(0);
    for (std::uint64_t k = 1; k <= n; ++k) {
      // P(n-1, k-1) - P(n, k) = (2 S_{n-1}[k-1] - S_n[k]) / 2^n, exactly.
      const BigInt numerator = 2 * prev_suffix[k - 1] - suffix[k];
      if (numerator < 0) pointwise = false;
      Rational diff(numerator, pow2(n));
      diff.canonicalize();
      largest = std::max(largest, diff);
    }
    if (largest < 0 || largest * largest * n > 1) bounded = false;
    prev_suffix = suffix;
  }
  report.add("shrinking-a-coin-tail-never-drops", pointwise,
             "P(n-1, k-1) >= P(n, k) for n <= " + std::to_string(max_n));
  report.add("largest-difference-within-inv-sqrt-n", bounded);
  return report;
}

Report check_central_binomial_bound(std::uint64_t max_n) {
  Report report{"central-binomial", {}};
  bool holds = true;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
    // C(2n, n) <= 4^n / sqrt(2n + 1), squared to stay in integers.
    if (c * c * (2 * n + 1) > pow2(4 * n)) holds = false;
  }
  report.add("central-coefficient-bound", holds, "n up to " + std::to_string(max_n));
  return report;
}

Report check_tail_approximation() {
  Report report{"tail-approximation", {}};
  const std::vector<Rational> targets{ratio(1, 10), ratio(1, 2), ratio(567, 1000),
                                      ratio(9, 10), ratio(99, 100)};
  const std::vector<Rational> widths{ratio(1, 10), ratio(1, 20)};
  std::size_t ok = 0, n_ok = 0;
  for (const auto& delta : targets) {
    for (const auto& eps : widths) {
      const TailApproximation ta = binomial_approximation(delta, eps);
      if (abs(ta.tail.value() - delta) < eps) ++ok;
      // n is minimal: 1/sqrt(n) < eps <= 1/sqrt(n - 1).
      const Rational inv_eps_sq = 1 / (eps * eps);
      if (Rational(static_cast<long>(ta.n)) > inv_eps_sq &&
          Rational(static_cast<long>(ta.n - 1)) <= inv_eps_sq)
        ++n_ok;
    }
  }
  const std::size_t total = targets.size() * widths.size();
  report.add("tail-lands-within-epsilon", ok == total, count_detail(ok, total));
  report.add("n-is-minimal", n_ok == total, count_detail(n_ok, total));
  return report;
}

std::vector<Report> run_verification_suite() {
  std::vector<Report> reports;
  reports.push_back(verify_greedy_tables());
  reports.push_back(verify_skewed_model());
  reports.push_back(check_greedy_chain(101, 50, 10, {ratio(3, 10), ratio(3, 5), ratio(9, 10)}));
  reports.push_back(check_exchange_property(102, 25, 9));
  reports.push_back(check_extension_monotonicity(103, 25, 9));
  reports.push_back(check_local_minimality_random(104, 25, 8));
  reports.push_back(check_oracle_agreement(105, 60, 16));
  reports.push_back(check_tail_difference_bound(120));
  reports.push_back(check_central_binomial_bound(60));
  reports.push_back(check_tail_approximation());
  return reports;
}

}  // namespace psr
