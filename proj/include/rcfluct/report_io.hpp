#pragma once

// Serialization of configs, replicate samples, and comparison reports.
// CSV floats use 17 significant digits; JSON numbers round-trip exactly.

#include <string>

#include <json.hpp>

#include "rcfluct/experiment.hpp"

namespace rcfluct {

std::string format_double(double v);  // %.17g

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

/// Reads a config from JSON text or from TOML-style "key = value" lines.
/// Recognized keys: n, ps, Q_coeffs, distribution, replicates, seed,
/// trace_path, centering, budget.
ExperimentConfig config_from_text(const std::string& text);
ExperimentConfig config_from_file(const std::string& path);

/// Header "replicate,<label>,...", one row per replicate.
std::string samples_to_csv(const FluctuationSamples& samples);

/// Report schema: {config, empirical, theoretical, diagnostics, centering,
/// meta}; with_meta=false drops the meta block so output is byte-stable.
nlohmann::ordered_json report_to_json(const CovarianceReport& report,
                                      const ExperimentConfig& config,
                                      bool with_meta);

/// Long-form CSV: section,row,col,field,value.
std::string report_to_csv(const CovarianceReport& report,
                          const ExperimentConfig& config, bool with_meta);

}  // namespace rcfluct
