#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "psr/experiments.hpp"
#include "psr/explainer.hpp"
#include "psr/io.hpp"
#include "psr/model.hpp"
#include "psr/montecarlo.hpp"
#include "psr/oracle.hpp"

namespace py = pybind11;
using namespace psr;

namespace {

// Exact values cross the boundary as fractions.Fraction; floats are refused
// so nothing silently rounds.
Rational rational_from_py(py::handle value) {
  if (py::isinstance<py::str>(value)) return parse_rational(value.cast<std::string>());
  if (py::isinstance<py::bool_>(value))
    throw py::type_error("expected an exact number, got a bool");
  if (py::isinstance<py::int_>(value))
    return parse_rational(py::str(value).cast<std::string>());
  if (py::isinstance<py::float_>(value))
    throw py::type_error("pass exact values as strings ('0.875'), ints or Fractions, not floats");
  if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator"))
    return parse_rational(py::str(value.attr("numerator")).cast<std::string>() + "/" +
                          py::str(value.attr("denominator")).cast<std::string>());
  throw py::type_error("expected a string, int or Fraction");
}

py::object to_fraction(const Rational& value) {
  static py::object ctor = py::module_::import("fractions").attr("Fraction");
  return ctor(to_string(value));
}

py::object to_fraction(const Probability& value) { return to_fraction(value.value()); }

ProductDistribution dist_or_uniform(const py::object& dist, std::size_t dimension) {
  if (dist.is_none()) return ProductDistribution::uniform(dimension);
  return dist.cast<ProductDistribution>();
}

py::dict report_to_dict(const Report& report) {
  py::dict out;
  out["name"] = report.name;
  out["passed"] = report.all_passed();
  py::list checks;
  for (const auto& check : report.checks) {
    py::dict row;
    row["check"] = check.check;
    row["passed"] = check.passed;
    row["detail"] = check.detail;
    checks.append(std::move(row));
  }
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Probabilistic sufficient reasons for binary linear classifiers";

  py::register_exception<CapExceededError>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const std::string& bits) { return Instance::from_string(bits); }),
           py::arg("bits"))
      .def(py::init([](const std::vector<int>& bits) {
             std::vector<std::uint8_t> raw;
             raw.reserve(bits.size());
             for (int b : bits) raw.push_back(static_cast<std::uint8_t>(b));
             return Instance(std::move(raw));
           }),
           py::arg("bits"))
      .def_property_readonly("dimension", &Instance::dimension)
      .def("__len__", &Instance::dimension)
      .def("__getitem__",
           [](const Instance& x, std::size_t i) {
             if (i >= x.dimension()) throw py::index_error();
             return x[i];
           })
      .def("__str__", &Instance::to_string)
      .def("__repr__", [](const Instance& x) { return "Instance('" + x.to_string() + "')"; })
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

  py::class_<PartialInstance>(m, "PartialInstance")
      .def(py::init(
               [](const std::string& cells) { return PartialInstance::from_string(cells); }),
           py::arg("cells"))
      .def_static("all_unknown", &PartialInstance::all_unknown, py::arg("dimension"))
      .def_static("from_instance", &PartialInstance::from_instance, py::arg("instance"))
      .def_property_readonly("dimension", &PartialInstance::dimension)
      .def_property_readonly("defined_count", &PartialInstance::defined_count)
      .def_property_readonly("unknown_count", &PartialInstance::unknown_count)
      .def_property_readonly("defined_features", &PartialInstance::defined_features)
      .def("__len__", &PartialInstance::dimension)
      .def("__str__", &PartialInstance::to_string)
      .def("__repr__",
           [](const PartialInstance& y) { return "PartialInstance('" + y.to_string() + "')"; })
      .def("__eq__", [](const PartialInstance& a, const PartialInstance& b) { return a == b; });

  py::class_<LinearModel>(m, "LinearModel")
      .def(py::init([](const py::sequence& weights, py::handle threshold) {
             std::vector<Rational> ws;
             ws.reserve(py::len(weights));
             for (py::handle w : weights) ws.push_back(rational_from_py(w));
             return LinearModel(std::move(ws), rational_from_py(threshold));
           }),
           py::arg("weights"), py::arg("threshold"))
      .def_property_readonly("dimension", &LinearModel::dimension)
      .def_property_readonly("weights",
                             [](const LinearModel& model) {
                               py::list out;
                               for (const auto& w : model.weights()) out.append(to_fraction(w));
                               return out;
                             })
      .def_property_readonly(
          "threshold", [](const LinearModel& model) { return to_fraction(model.threshold()); })
      .def("__repr__", [](const LinearModel& model) {
        return "LinearModel(dimension=" + std::to_string(model.dimension()) + ")";
      });

  py::class_<ProductDistribution>(m, "ProductDistribution")
      .def(py::init([](const py::sequence& params) {
             std::vector<Rational> ps;
             ps.reserve(py::len(params));
             for (py::handle p : params) ps.push_back(rational_from_py(p));
             return ProductDistribution(std::move(ps));
           }),
           py::arg("params"))
      .def_static("uniform", &ProductDistribution::uniform, py::arg("dimension"))
      .def_property_readonly("dimension", &ProductDistribution::dimension)
      .def_property_readonly("params",
                             [](const ProductDistribution& dist) {
                               py::list out;
                               for (const auto& p : dist.params()) out.append(to_fraction(p));
                               return out;
                             })
      .def_property_readonly("is_uniform", &ProductDistribution::is_uniform);

  py::class_<MinExplanation>(m, "MinimalReason")
      .def_readonly("size", &MinExplanation::size)
      .def_readonly("reason", &MinExplanation::reason)
      .def("__repr__", [](const MinExplanation& r) {
        return "MinimalReason(size=" + std::to_string(r.size) + ", reason='" +
               r.reason.to_string() + "')";
      });

  py::class_<ExplanationResult>(m, "Explanation")
      .def_property_readonly(
          "delta_star", [](const ExplanationResult& r) { return to_fraction(r.delta_star); })
      .def_readonly("size", &ExplanationResult::size)
      .def_readonly("reason", &ExplanationResult::reason)
      .def_readonly("samples", &ExplanationResult::samples)
      .def_readonly("steps", &ExplanationResult::steps)
      .def_property_readonly("probes",
                             [](const ExplanationResult& r) {
                               py::list out;
                               for (const auto& probe : r.probes)
                                 out.append(py::make_tuple(probe.prefix,
                                                           to_fraction(probe.estimate)));
                               return out;
                             })
      .def("__repr__", [](const ExplanationResult& r) {
        return "Explanation(size=" + std::to_string(r.size) + ", reason='" +
               r.reason.to_string() + "')";
      });

  m.def("classify", &classify, py::arg("model"), py::arg("x"));
  m.def(
      "scores",
      [](const LinearModel& model, const Instance& x) {
        py::list out;
        for (const auto& s : scores(model, x)) out.append(to_fraction(s));
        return out;
      },
      py::arg("model"), py::arg("x"));
  m.def("score_ranking", &score_ranking, py::arg("model"), py::arg("x"));
  m.def("greedy_prefix", &greedy_prefix, py::arg("model"), py::arg("x"), py::arg("k"));
  m.def("greedy_prefixes", &greedy_prefixes, py::arg("model"), py::arg("x"));

  m.def(
      "brute_force_prob",
      [](const LinearModel& model, const PartialInstance& y, const Instance& x,
         const py::object& dist) {
        return to_fraction(brute_force_prob(model, y, x, dist_or_uniform(dist, x.dimension())));
      },
      py::arg("model"), py::arg("y"), py::arg("x"), py::arg("dist") = py::none());
  m.def(
      "dp_prob",
      [](const LinearModel& model, const PartialInstance& y, const Instance& x) {
        return to_fraction(dp_prob(model, y, x));
      },
      py::arg("model"), py::arg("y"), py::arg("x"));
  m.def(
      "exact_prob",
      [](const LinearModel& model, const PartialInstance& y, const Instance& x,
         const py::object& dist) {
        return to_fraction(exact_prob(model, y, x, dist_or_uniform(dist, x.dimension())));
      },
      py::arg("model"), py::arg("y"), py::arg("x"), py::arg("dist") = py::none());
  m.def(
      "binomial_tail",
      [](std::uint64_t n, std::int64_t k) { return to_fraction(binomial_tail(n, k)); },
      py::arg("n"), py::arg("k"));
  m.def(
      "worst_case_margin",
      [](const LinearModel& model, const PartialInstance& y, const Instance& x) {
        return to_fraction(worst_case_margin(model, y, x));
      },
      py::arg("model"), py::arg("y"), py::arg("x"));
  m.def("is_sufficient_reason", &is_sufficient_reason, py::arg("model"), py::arg("y"),
        py::arg("x"));
  m.def(
      "is_delta_sr",
      [](const LinearModel& model, const PartialInstance& y, const Instance& x,
         py::handle delta, const py::object& dist) {
        return is_delta_sr(model, y, x, rational_from_py(delta),
                           dist_or_uniform(dist, x.dimension()));
      },
      py::arg("model"), py::arg("y"), py::arg("x"), py::arg("delta"),
      py::arg("dist") = py::none());
  m.def(
      "min_delta_sr_exact",
      [](const LinearModel& model, const Instance& x, py::handle delta) {
        return min_delta_sr_exact(model, x, rational_from_py(delta));
      },
      py::arg("model"), py::arg("x"), py::arg("delta"));

  m.def(
      "mc_estimate",
      [](const LinearModel& model, const PartialInstance& y, const Instance& x,
         std::uint64_t samples, std::uint64_t seed, const py::object& dist,
         std::uint64_t chunk_size, unsigned threads) {
        EstimatorConfig config;
        config.samples = samples;
        config.seed = seed;
        config.chunk_size = chunk_size;
        config.threads = threads;
        return to_fraction(
            mc_estimate(model, y, x, config, dist_or_uniform(dist, x.dimension())));
      },
      py::arg("model"), py::arg("y"), py::arg("x"), py::arg("samples"), py::arg("seed") = 0,
      py::arg("dist") = py::none(), py::arg("chunk_size") = 8192, py::arg("threads") = 0);
  m.def(
      "hoeffding_samples",
      [](py::handle deviation, py::handle gamma) {
        return hoeffding_samples(rational_from_py(deviation), rational_from_py(gamma));
      },
      py::arg("deviation"), py::arg("gamma"));
  m.def(
      "sample_budget",
      [](std::size_t dimension, py::handle epsilon, py::handle gamma) {
        return sample_budget(dimension, rational_from_py(epsilon), rational_from_py(gamma));
      },
      py::arg("dimension"), py::arg("epsilon"), py::arg("gamma"));
  m.def("max_search_steps", &max_search_steps, py::arg("dimension"));

  m.def(
      "explain",
      [](const LinearModel& model, const Instance& x, py::handle delta, py::handle epsilon,
         py::handle gamma, std::uint64_t seed, const std::string& estimator,
         std::uint64_t samples, bool gamma_adjust) {
        ExplainerParams params;
        params.delta = rational_from_py(delta);
        params.epsilon = rational_from_py(epsilon);
        params.gamma = rational_from_py(gamma);
        params.seed = seed;
        params.samples_override = samples;
        params.gamma_adjust = gamma_adjust;
        MonteCarloEstimator mc;
        ExactEstimator exact;
        if (estimator == "mc") params.estimator = &mc;
        else if (estimator == "exact") params.estimator = &exact;
        else throw py::value_error("estimator must be 'mc' or 'exact'");
        return explain(model, x, params);
      },
      py::arg("model"), py::arg("x"), py::arg("delta"), py::arg("epsilon"), py::arg("gamma"),
      py::arg("seed") = 0, py::arg("estimator") = "mc", py::arg("samples") = 0,
      py::arg("gamma_adjust") = true);

  m.def(
      "binomial_approximation",
      [](py::handle delta, py::handle epsilon) {
        const TailApproximation ta =
            binomial_approximation(rational_from_py(delta), rational_from_py(epsilon));
        py::dict out;
        out["n"] = ta.n;
        out["k"] = ta.k;
        out["tail"] = to_fraction(ta.tail);
        return out;
      },
      py::arg("delta"), py::arg("epsilon"));

  m.def(
      "build_gap_demo",
      [](py::handle delta, py::handle epsilon, py::handle gamma_exp, std::uint64_t n) {
        const Rational d = rational_from_py(delta);
        const Rational e = rational_from_py(epsilon);
        const GapConstruction gap = build_gap_instance(d, e, rational_from_py(gamma_exp), n);
        const std::size_t at_delta = gap_min_size(gap, d);
        const std::size_t at_upper = gap_min_size(gap, d + e);
        py::dict out;
        out["n"] = gap.n;
        out["m"] = gap.m;
        out["anchor_tail"] = to_fraction(gap.anchor_tail);
        out["min_at_delta"] = at_delta;
        out["min_at_delta_plus_epsilon"] = at_upper;
        return out;
      },
      py::arg("delta"), py::arg("epsilon"), py::arg("gamma_exp"), py::arg("n") = 0);

  m.def("verification_reports", [] {
    py::list out;
    for (const auto& report : run_verification_suite()) out.append(report_to_dict(report));
    return out;
  });
}
