#include "psr/explainer.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace psr {

namespace {

std::size_t ceil_lg(std::size_t d) {
  // Smallest e with 2^e >= d; clamped below at 1 so the budget never
  // degenerates for one-feature models.
  if (d <= 2) return 1;
  return static_cast<std::size_t>(std::bit_width(d - 1));
}

void validate_params(const ExplainerParams& p) {
  if (p.epsilon <= 0 || p.epsilon >= 1)
    throw std::invalid_argument("explain: epsilon outside (0, 1)");
  if (p.gamma <= 0 || p.gamma >= 1)
    throw std::invalid_argument("explain: gamma outside (0, 1)");
  if (p.delta - p.epsilon <= 0)
    throw std::invalid_argument("explain: delta - epsilon must be positive");
  if (p.delta + p.epsilon > 1)
    throw std::invalid_argument("explain: delta + epsilon must not exceed 1");
}

}  // namespace

Rational draw_delta_star(const Rational& delta, const Rational& epsilon, Rng& rng) {
  if (epsilon <= 0) throw std::invalid_argument("draw_delta_star: epsilon must be positive");
  if (delta - epsilon <= 0 || delta + epsilon > 1)
    throw std::invalid_argument("draw_delta_star: interval must fit inside (0, 1]");
  Rational grid{BigInt(rng()), pow2(64)};
  grid.canonicalize();
  return delta - epsilon + 2 * epsilon * grid;
}

std::uint64_t sample_budget(std::size_t dimension, const Rational& epsilon,
                            const Rational& gamma) {
  if (dimension == 0) throw std::invalid_argument("sample_budget: dimension must be positive");
  if (epsilon <= 0 || epsilon >= 1)
    throw std::invalid_argument("sample_budget: epsilon outside (0, 1)");
  if (gamma <= 0 || gamma >= 1)
    throw std::invalid_argument("sample_budget: gamma outside (0, 1)");
  const double lg = static_cast<double>(ceil_lg(dimension));
  const double e = to_double(epsilon);
  const double g = to_double(gamma);
  const double m = lg * lg / (2.0 * e * e * g * g) * std::log(2.0 * lg / g);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(m)));
}

std::size_t max_search_steps(std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("max_search_steps: dimension must be positive");
  return static_cast<std::size_t>(std::bit_width(dimension));  // floor(lg d) + 1
}

ExplanationResult explain(const LinearModel& model, const Instance& x,
                          const ExplainerParams& params) {
  if (model.dimension() != x.dimension())
    throw std::invalid_argument("explain: dimension mismatch");
  validate_params(params);

  const std::size_t d = x.dimension();
  Rng threshold_rng(derive_stream_seed(params.seed, 0));
  const Rational delta_star = draw_delta_star(params.delta, params.epsilon, threshold_rng);

  const Rational gamma_eff = params.gamma_adjust ? Rational(params.gamma / 3) : params.gamma;
  const std::uint64_t samples =
      params.samples_override ? params.samples_override
                              : sample_budget(d, params.epsilon, gamma_eff);

  const MonteCarloEstimator fallback;
  const Estimator& estimator = params.estimator ? *params.estimator : fallback;

  const std::vector<std::size_t> order = score_ranking(model, x);
  const auto prefix = [&](std::size_t k) {
    return restrict_to(x, std::vector<std::size_t>(order.begin(), order.begin() + k));
  };

  // Estimated probabilities inherit the monotonicity of the true chain up
  // to estimation error, so a halving search over prefixes suffices. Each
  // probe seeds its own stream: which k gets probed cannot perturb the
  // randomness of later probes.
  const std::size_t step_cap = max_search_steps(d);
  std::size_t lb = 0, ub = d, steps = 0;
  std::vector<ProbeRecord> probes;
  while (lb < ub && steps < step_cap) {
    ++steps;
    const std::size_t mid = lb + (ub - lb) / 2;
    const Probability v = estimator.estimate(model, prefix(mid), x, samples,
                                             derive_stream_seed(params.seed, 1 + mid));
    probes.push_back({mid, v});
    if (v.value() >= delta_star) ub = mid;
    else lb = mid + 1;
  }

  return ExplanationResult{delta_star, lb, prefix(lb), samples, steps, std::move(probes)};
}

}  // namespace psr
