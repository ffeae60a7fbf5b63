#include "pobs/config.hpp"

#include "pobs/csv.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#ifndef POBS_VERSION
#define POBS_VERSION "0.0.0"
#endif

namespace pobs {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key + ": not a number: '" + v + "'");
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key + ": not an integer: '" + v + "'");
  return out;
}

int positive_int(const std::string& key, const std::string& v) {
  const long long n = parse_int(key, v);
  if (n <= 0 || n > 1'000'000'000) throw ConfigError(key + " must be a positive integer");
  return static_cast<int>(n);
}

double positive(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(key + " must be positive");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError(key + ": expected on|off, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(parse_double(key, item));
  return out;
}

using Setter = std::function<void(const std::string&, const std::string&)>;

void apply(const std::map<std::string, Setter>& setters, const KeyValues& kv,
           std::set<std::string>& consumed, const std::string& model) {
  for (const auto& [key, value] : kv) {
    if (!key.starts_with("model.") || key == "model.id") continue;
    const std::string name = key.substr(6);
    const auto it = setters.find(name);
    if (it == setters.end()) throw ConfigError("unknown key for model " + model + ": " + key);
    it->second(key, value);
    consumed.insert(key);
  }
}

models::ModelConfig build_model(const std::string& id, const KeyValues& kv,
                                std::set<std::string>& consumed) {
  models::ModelConfig cfg = models::default_config(id);
  std::visit(
      [&](auto& c) {
        using T = std::decay_t<decltype(c)>;
        std::map<std::string, Setter> s;
        if constexpr (requires { c.L; })
          s["L"] = [&](const auto& k, const auto& v) { c.L = positive(k, v); };
        s["T"] = [&](const auto& k, const auto& v) { c.T = positive(k, v); };
        s["nt"] = [&](const auto& k, const auto& v) { c.nt = positive_int(k, v); };
        if constexpr (requires { c.substeps; })
          s["substeps"] = [&](const auto& k, const auto& v) { c.substeps = positive_int(k, v); };
        if constexpr (requires { c.N; })
          s["N"] = [&](const auto& k, const auto& v) { c.N = positive_int(k, v); };
        if constexpr (requires { c.sensors; })
          s["sensors"] = [&](const auto& k, const auto& v) { c.sensors = parse_list(k, v); };
        if constexpr (std::is_same_v<T, models::HeatConfig>) {
          s["x0"] = [&](const auto& k, const auto& v) { c.x0 = parse_double(k, v); };
        } else if constexpr (std::is_same_v<T, models::BurgersConfig>) {
          s["kappa"] = [&](const auto& k, const auto& v) { c.kappa = positive(k, v); };
          s["advection"] = [&](const auto& k, const auto& v) { c.advection = parse_bool(k, v); };
        } else if constexpr (std::is_same_v<T, models::SweConfig>) {
          s["elements"] = [&](const auto& k, const auto& v) { c.elements = positive_int(k, v); };
          s["poly_order"] = [&](const auto& k, const auto& v) { c.poly_order = positive_int(k, v); };
          s["g"] = [&](const auto& k, const auto& v) { c.g = positive(k, v); };
          s["source"] = [&](const auto& k, const auto& v) { c.source = parse_bool(k, v); };
          s["literal_h0"] = [&](const auto& k, const auto& v) { c.literal_h0 = parse_bool(k, v); };
          s["h0_is_surface"] = [&](const auto& k, const auto& v) {
            c.h0_is_surface = parse_bool(k, v);
          };
          s["filter_strength"] = [&](const auto& k, const auto& v) {
            c.filter_strength = parse_double(k, v);
            if (c.filter_strength < 0.0) throw ConfigError(k + " must be non-negative");
          };
          s["bc"] = [&](const auto& k, const auto& v) {
            if (v == "reflective") c.bc = models::SweBoundary::reflective;
            else if (v == "outflow") c.bc = models::SweBoundary::outflow;
            else throw ConfigError(k + ": expected reflective|outflow, got '" + v + "'");
          };
        } else if constexpr (std::is_same_v<T, models::LinearPairConfig>) {
          s["delta"] = [&](const auto& k, const auto& v) {
            c.delta = parse_double(k, v);
            if (c.delta < 0.0) throw ConfigError(k + " must be non-negative");
          };
        }
        apply(s, kv, consumed, id);
        // Burgers sensors default to quarter points of the domain.
        if constexpr (std::is_same_v<T, models::BurgersConfig>) {
          if (kv.contains("model.L") && !kv.contains("model.sensors"))
            c.sensors = {0.25 * c.L, 0.5 * c.L, 0.75 * c.L};
        }
      },
      cfg);
  return cfg;
}

}  // namespace

KeyValues parse_config_text(std::string_view text) {
  static const std::set<std::string> sections{"model", "estimation", "run"};
  KeyValues kv;
  std::string section;
  int lineno = 0;
  for (const auto& raw : split(text, '\n')) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!sections.contains(section)) throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    if (section.empty()) throw ConfigError(where + "key outside a section");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ConfigError(where + "empty key");
    const std::string full = section + "." + key;
    if (kv.contains(full)) throw ConfigError(where + "duplicate key " + full);
    kv[full] = trim(std::string_view(line).substr(eq + 1));
  }
  return kv;
}

KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig resolve_config(const KeyValues& kv) {
  RunConfig rc;
  rc.snapshot = kv;
  std::set<std::string> consumed;
  const auto get = [&](const std::string& key) -> const std::string* {
    const auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    consumed.insert(key);
    return &it->second;
  };

  const std::string* id = get("model.id");
  if (!id) throw ConfigError("no model selected (model.id or --model)");
  const auto& ids = models::model_ids();
  if (std::find(ids.begin(), ids.end(), *id) == ids.end())
    throw ConfigError("unknown model id: " + *id);
  rc.model = build_model(*id, kv, consumed);

  if (const auto* v = get("estimation.s")) rc.estimation.s = positive_int("estimation.s", *v);
  if (const auto* v = get("estimation.kf")) rc.estimation.kf = positive_int("estimation.kf", *v);

  if (const auto* v = get("run.rho"); v && *v != "auto") rc.rho = positive("run.rho", *v);
  if (const auto* v = get("run.weighting")) {
    rc.model = models::with_weighting(rc.model, parse_weighting(*v));
  }
  if (const auto* v = get("run.sweep"))
    for (const auto& item : split(*v, ',')) rc.sweep.push_back(positive_int("run.sweep", item));
  if (const auto* v = get("run.candidates"))
    for (const auto& tuple : split(*v, '|')) rc.candidates.push_back(parse_list("run.candidates", tuple));
  if (const auto* v = get("run.seed")) {
    const long long seed = parse_int("run.seed", *v);
    if (seed < 0) throw ConfigError("run.seed must be non-negative");
    rc.seed = static_cast<std::uint64_t>(seed);
  }
  if (const auto* v = get("run.out")) {
    if (v->empty()) throw ConfigError("run.out must not be empty");
    rc.out_dir = *v;
  }
  if (const auto* v = get("run.jobs")) {
    const long long j = parse_int("run.jobs", *v);
    if (j < 0) throw ConfigError("run.jobs must be non-negative");
    rc.jobs = static_cast<int>(j);
  }
  if (const auto* v = get("run.direct")) rc.direct = parse_bool("run.direct", *v);

  for (const auto& [key, value] : kv)
    if (!consumed.contains(key)) throw ConfigError("unknown key: " + key);

  (void)models::make_problem(rc.model, rc.estimation);  // runs model validation
  return rc;
}

std::string snapshot_text(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

const char* tool_version() { return POBS_VERSION; }

std::string render_run_record(const RunRecord& r) {
  std::string hashed;
  for (const auto& [name, content] : r.outputs) {
    hashed += name;
    hashed += '\0';
    hashed += content;
  }
  std::ostringstream os;
  os << "version = " << tool_version() << "\n";
  os << "command = " << r.command << "\n";
  os << "wall_seconds = " << fmt_num(r.wall_seconds) << "\n";
  os << "content_hash = " << content_hash(hashed) << "\n";
  os << "outputs =";
  for (const auto& [name, content] : r.outputs) os << ' ' << name;
  os << "\n\n[config]\n" << snapshot_text(r.config);
  if (!r.summary.empty()) {
    os << "\n[results]\n";
    for (const auto& line : r.summary) os << line << "\n";
  }
  return os.str();
}

}  // namespace pobs
