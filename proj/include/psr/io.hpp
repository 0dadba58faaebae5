#pragma once

#include <string>

#include "psr/experiments.hpp"
#include "psr/model.hpp"

namespace psr {

// Model files: {"weights": ["5", "1", "-3", "2", "-1"], "threshold": "5"}.
// Entries may be JSON integers or strings holding integers, fractions
// ("-3/4") or decimals ("0.875"); strings keep every value exact.
LinearModel model_from_json(const std::string& text);
std::string model_to_json(const LinearModel& model);
LinearModel load_model(const std::string& path);
void save_model(const LinearModel& model, const std::string& path);

// Distribution files: {"params": ["1/2", "1/2", ...]}.
ProductDistribution distribution_from_json(const std::string& text);
std::string distribution_to_json(const ProductDistribution& dist);
ProductDistribution load_distribution(const std::string& path);
void save_distribution(const ProductDistribution& dist, const std::string& path);

// Versioned check-list rendering shared by the CLI commands.
std::string report_to_json(const Report& report);
std::string report_to_text(const Report& report);

}  // namespace psr
