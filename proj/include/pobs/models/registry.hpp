#pragma once

#include "pobs/models/burgers.hpp"
#include "pobs/models/heat.hpp"
#include "pobs/models/linear_pair.hpp"
#include "pobs/models/swe.hpp"
#include "pobs/models/wave.hpp"

#include <variant>

namespace pobs::models {

using ModelConfig =
    std::variant<HeatConfig, WaveConfig, BurgersConfig, SweConfig, LinearPairConfig>;

/// Size of the estimation space; zero picks the model's default.
struct EstimationConfig {
  int s = 0;   ///< heat / wave: number of modes
  int kf = 0;  ///< burgers / swe: Fourier cutoff
};

/// A model instance together with its estimation space and nominal initial state.
struct Problem {
  ModelSpec model;
  EstimationSpace space;
  Vector u0;
};

/// "heat", "wave", "burgers", "swe", "linpair".
const std::vector<std::string>& model_ids();
std::string model_description(const std::string& id);

ModelConfig default_config(const std::string& id);
std::string model_id(const ModelConfig& cfg);

Problem make_problem(const ModelConfig& cfg, const EstimationConfig& est = {});

/// Resolution knob per model: modes (heat), interior points (wave), intervals
/// (burgers), elements (swe). Throws for linpair.
ModelConfig with_resolution(ModelConfig cfg, int resolution);
int resolution_of(const ModelConfig& cfg);

/// Replaces the sensor set. Heat takes exactly one position.
ModelConfig with_sensors(ModelConfig cfg, const std::vector<double>& sensors);

ModelConfig with_weighting(ModelConfig cfg, Weighting w);

}  // namespace pobs::models
