#include "pobs/models/registry.hpp"

namespace pobs::models {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

const std::vector<std::string>& model_ids() {
  static const std::vector<std::string> ids{"heat", "wave", "burgers", "swe", "linpair"};
  return ids;
}

std::string model_description(const std::string& id) {
  if (id == "heat") return "heat equation in sine modes, point sensor";
  if (id == "wave") return "finite-difference wave equation, boundary sensor";
  if (id == "burgers") return "viscous Burgers, central differences, three sensors";
  if (id == "swe") return "1-D shallow water, LGL spectral elements, three depth sensors";
  if (id == "linpair") return "2-state linear pair observed through x1";
  throw ConfigError("unknown model '" + id + "'");
}

ModelConfig default_config(const std::string& id) {
  if (id == "heat") return HeatConfig{};
  if (id == "wave") return WaveConfig{};
  if (id == "burgers") return BurgersConfig{};
  if (id == "swe") return SweConfig{};
  if (id == "linpair") return LinearPairConfig{};
  throw ConfigError("unknown model '" + id + "'");
}

std::string model_id(const ModelConfig& cfg) {
  return std::visit(overloaded{[](const HeatConfig&) { return std::string("heat"); },
                               [](const WaveConfig&) { return std::string("wave"); },
                               [](const BurgersConfig&) { return std::string("burgers"); },
                               [](const SweConfig&) { return std::string("swe"); },
                               [](const LinearPairConfig&) { return std::string("linpair"); }},
                    cfg);
}

Problem make_problem(const ModelConfig& cfg, const EstimationConfig& est) {
  return std::visit(
      overloaded{
          [&](const HeatConfig& c) {
            return Problem{heat_model(c), heat_estimation_space(c, est.s ? est.s : 1),
                           heat_nominal(c)};
          },
          [&](const WaveConfig& c) {
            WaveModel w = wave_model(c);
            Vector u0 = Vector::Zero(2 * c.N);
            u0.head(c.N) = wave_low_mode(c);
            return Problem{std::move(w.first_order), wave_estimation_space(c, est.s ? est.s : 2),
                           std::move(u0)};
          },
          [&](const BurgersConfig& c) {
            return Problem{burgers_model(c), burgers_estimation_space(c, est.kf ? est.kf : 2),
                           burgers_nominal(c)};
          },
          [&](const SweConfig& c) {
            return Problem{swe_model(c), swe_estimation_space(c, est.kf ? est.kf : 6),
                           swe_nominal(c)};
          },
          [&](const LinearPairConfig& c) {
            return Problem{linear_pair_model(c), linear_pair_estimation_space(),
                           linear_pair_nominal()};
          }},
      cfg);
}

ModelConfig with_resolution(ModelConfig cfg, int n) {
  std::visit(overloaded{[&](HeatConfig& c) { c.N = n; }, [&](WaveConfig& c) { c.N = n; },
                        [&](BurgersConfig& c) { c.N = n; },
                        [&](SweConfig& c) { c.elements = n; },
                        [&](LinearPairConfig&) {
                          throw ConfigError("linpair has no resolution parameter");
                        }},
             cfg);
  return cfg;
}

int resolution_of(const ModelConfig& cfg) {
  return std::visit(overloaded{[](const HeatConfig& c) { return c.N; },
                               [](const WaveConfig& c) { return c.N; },
                               [](const BurgersConfig& c) { return c.N; },
                               [](const SweConfig& c) { return c.elements; },
                               [](const LinearPairConfig&) { return 2; }},
                    cfg);
}

ModelConfig with_sensors(ModelConfig cfg, const std::vector<double>& sensors) {
  std::visit(overloaded{[&](HeatConfig& c) {
                          if (sensors.size() != 1)
                            throw ConfigError("heat takes exactly one sensor position");
                          c.x0 = sensors[0];
                        },
                        [&](BurgersConfig& c) { c.sensors = sensors; },
                        [&](SweConfig& c) { c.sensors = sensors; },
                        [&](auto&) {
                          throw ConfigError("model has no configurable sensors");
                        }},
             cfg);
  return cfg;
}

ModelConfig with_weighting(ModelConfig cfg, Weighting w) {
  std::visit(overloaded{[&](HeatConfig& c) { c.weighting = w; },
                        [&](BurgersConfig& c) { c.weighting = w; },
                        [&](SweConfig& c) { c.weighting = w; },
                        [&](LinearPairConfig& c) { c.weighting = w; },
                        [&](WaveConfig&) {
                          if (w != Weighting::dt_trapezoid)
                            throw ConfigError("wave uses the dt weighting only");
                        }},
             cfg);
  return cfg;
}

}  // namespace pobs::models
