#include "psr/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psr {

namespace {

using nlohmann::json;

json parse_document(const std::string& text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw std::invalid_argument(std::string(what) + ": malformed JSON");
  return doc;
}

Rational rational_from_entry(const json& entry, const char* what) {
  if (entry.is_string()) return parse_rational(entry.get<std::string>());
  if (entry.is_number_integer()) return Rational(entry.get<long>());
  throw std::invalid_argument(std::string(what) +
                              ": values must be integers or strings like \"-3/4\" or \"0.875\"");
}

std::vector<Rational> rationals_from_array(const json& array, const char* what) {
  if (!array.is_array() || array.empty())
    throw std::invalid_argument(std::string(what) + ": expected a non-empty array");
  std::vector<Rational> values;
  values.reserve(array.size());
  for (const auto& entry : array) values.push_back(rational_from_entry(entry, what));
  return values;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

}  // namespace

LinearModel model_from_json(const std::string& text) {
  const json doc = parse_document(text, "model");
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("threshold"))
    throw std::invalid_argument("model: expected an object with \"weights\" and \"threshold\"");
  std::vector<Rational> weights = rationals_from_array(doc["weights"], "model weights");
  Rational threshold = rational_from_entry(doc["threshold"], "model threshold");
  return LinearModel(std::move(weights), std::move(threshold));
}

std::string model_to_json(const LinearModel& model) {
  json doc;
  doc["weights"] = json::array();
  for (const auto& w : model.weights()) doc["weights"].push_back(to_string(w));
  doc["threshold"] = to_string(model.threshold());
  return doc.dump(2) + "\n";
}

LinearModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

void save_model(const LinearModel& model, const std::string& path) {
  write_file(path, model_to_json(model));
}

ProductDistribution distribution_from_json(const std::string& text) {
  const json doc = parse_document(text, "distribution");
  if (!doc.is_object() || !doc.contains("params"))
    throw std::invalid_argument("distribution: expected an object with \"params\"");
  return ProductDistribution(rationals_from_array(doc["params"], "distribution params"));
}

std::string distribution_to_json(const ProductDistribution& dist) {
  json doc;
  doc["params"] = json::array();
  for (const auto& p : dist.params()) doc["params"].push_back(to_string(p));
  return doc.dump(2) + "\n";
}

ProductDistribution load_distribution(const std::string& path) {
  return distribution_from_json(read_file(path));
}

void save_distribution(const ProductDistribution& dist, const std::string& path) {
  write_file(path, distribution_to_json(dist));
}

std::string report_to_json(const Report& report) {
  json doc;
  doc["schema"] = 1;
  doc["name"] = report.name;
  doc["passed"] = report.all_passed();
  doc["checks"] = json::array();
  for (const auto& check : report.checks) {
    json row;
    row["check"] = check.check;
    row["passed"] = check.passed;
    if (!check.detail.empty()) row["detail"] = check.detail;
    doc["checks"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string report_to_text(const Report& report) {
  std::ostringstream out;
  out << report.name << "\n";
  for (const auto& check : report.checks) {
    out << "  [" << (check.passed ? "ok" : "FAIL") << "] " << check.check;
    if (!check.detail.empty()) out << " (" << check.detail << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace psr
