// Batch front-end: index, sweep, wave-demo, sensors, models.

#include "pobs/config.hpp"
#include "pobs/consistency.hpp"
#include "pobs/csv.hpp"
#include "pobs/gramian.hpp"
#include "pobs/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace fs = std::filesystem;
using namespace pobs;

namespace {

struct Flags {
  std::string config, model, rho, seed, out, flat_source, literal_h0, weighting, sweep, candidates;
  int jobs = -1;
  int s = 0, kf = 0;
  bool direct = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "config file path");
  cmd->add_option("--model", f.model, "model id (see `pobs models`)");
  cmd->add_option("--rho", f.rho, "perturbation size, FLOAT or auto");
  cmd->add_option("--jobs", f.jobs, "worker threads (default: available parallelism)");
  cmd->add_option("--seed", f.seed, "optimizer multi-start seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--flat-source", f.flat_source, "swe bottom source term, on|off");
  cmd->add_option("--literal-h0", f.literal_h0, "swe h0 = 0.1 exp(-8(x - 1/2)) + 0.2 instead of the Gaussian, on|off");
  cmd->add_option("--weighting", f.weighting, "output norm weighting: unweighted|dt|dt-right");
  cmd->add_option("--s", f.s, "number of modes in the estimation space (heat, wave)");
  cmd->add_option("--kf", f.kf, "Fourier cutoff of the estimation space (burgers, swe)");
}

KeyValues merge(const Flags& f, const std::string& fallback_model = {}) {
  KeyValues kv = f.config.empty() ? KeyValues{} : load_config_file(f.config);
  const auto set = [&](const std::string& key, const std::string& v) {
    if (!v.empty()) kv[key] = v;
  };
  if (!fallback_model.empty() && !kv.contains("model.id")) kv["model.id"] = fallback_model;
  set("model.id", f.model);
  set("run.rho", f.rho);
  set("run.seed", f.seed);
  set("run.out", f.out);
  set("model.source", f.flat_source);
  set("model.literal_h0", f.literal_h0);
  set("run.weighting", f.weighting);
  set("run.sweep", f.sweep);
  set("run.candidates", f.candidates);
  if (f.jobs >= 0) kv["run.jobs"] = std::to_string(f.jobs);
  if (f.s > 0) kv["estimation.s"] = std::to_string(f.s);
  if (f.kf > 0) kv["estimation.kf"] = std::to_string(f.kf);
  if (f.direct) kv["run.direct"] = "on";
  return kv;
}

int jobs_of(const RunConfig& rc) { return rc.jobs > 0 ? rc.jobs : default_jobs(); }

class Outputs {
 public:
  explicit Outputs(std::string dir) : dir_(std::move(dir)) {}
  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }
  /// Writes every file plus run.txt.
  void flush(RunRecord record) {
    fs::create_directories(dir_);
    for (const auto& [name, content] : files_) write(name, content);
    record.outputs = files_;
    write("run.txt", render_run_record(record));
  }

 private:
  void write(const std::string& name, const std::string& content) {
    std::ofstream os(fs::path(dir_) / name, std::ios::binary);
    if (!os) throw Error("cannot write " + (fs::path(dir_) / name).string());
    os << content;
  }
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string resolution_label(const models::ModelConfig& cfg) {
  return std::holds_alternative<models::LinearPairConfig>(cfg)
             ? "2"
             : std::to_string(models::resolution_of(cfg));
}

std::string report_row(const std::string& model, const std::string& n, const ObservabilityReport& r) {
  return model + "," + n + "," + std::to_string(r.s) + "," + fmt_num(r.rho) + "," +
         fmt_num(r.sigma_min) + "," + fmt_num(r.epsilon) + "," + fmt_num(r.index) + "," +
         to_string(r.source) + "\n";
}

int cmd_index(const RunConfig& rc, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  const models::Problem p = models::make_problem(rc.model, rc.estimation);
  const double rho = rc.rho ? *rc.rho : default_rho(p.model, p.u0);
  const int jobs = jobs_of(rc);
  const std::string id = models::model_id(rc.model);
  const std::string n = resolution_label(rc.model);

  const GramianAnalysis a = analyze(p.model, p.u0, p.space, rho, jobs);
  std::string report = "model,N,s,rho,sigma_min,epsilon,index,source\n" + report_row(id, n, a.report);
  std::vector<std::string> summary;

  const auto show = [&](const ObservabilityReport& r) {
    std::string flag = r.practically_unobservable ? "  (practically unobservable)" : "";
    std::printf("%s index rho/eps = %s%s\n", to_string(r.source).c_str(), fmt_num(r.index).c_str(),
                flag.c_str());
    std::printf("  sigma_min = %s  epsilon = %s  rho = %s\n", fmt_num(r.sigma_min).c_str(),
                fmt_num(r.epsilon).c_str(), fmt_num(r.rho).c_str());
    std::printf("  estimation error bound for a unit sensor error: %s\n",
                fmt_num(r.worst_error_bound(1.0)).c_str());
    summary.push_back(to_string(r.source) + ".index = " + fmt_num(r.index) +
                      (r.practically_unobservable ? " practically_unobservable" : ""));
  };
  std::printf("model %s, N = %s, s = %d\n", id.c_str(), n.c_str(), a.report.s);
  show(a.report);

  if (rc.direct) {
    DirectOptions opts;
    opts.seed = rc.seed;
    opts.jobs = jobs;
    const ObservabilityReport d = direct_epsilon(p.model, p.u0, p.space, rho, opts);
    report += report_row(id, n, d);
    show(d);
    if (!d.converged) std::printf("  warning: direct optimization did not converge\n");
  }

  Outputs out(rc.out_dir);
  out.add("report.csv", report);
  std::ostringstream g, e;
  write_gramian_csv(g, a.gramian);
  write_eigen_csv(e, a.gramian);
  out.add("gramian.csv", g.str());
  out.add("eigen.csv", e.str());
  out.flush({command, rc.snapshot,
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), {},
             summary});
  return 0;
}

std::vector<int> default_sweep(const RunConfig& rc) {
  const std::string id = models::model_id(rc.model);
  std::vector<int> r;
  if (id == "heat") {
    const int s = rc.estimation.s > 0 ? rc.estimation.s : 1;
    for (int n = s; n <= s + 5; ++n) r.push_back(n);
  } else if (id == "burgers") {
    for (int k = 5; k <= 21; ++k) r.push_back(4 * k);
  } else if (id == "swe") {
    r = {10, 20, 30, 40, 54, 70, 100};
  } else if (id == "wave") {
    r = {20, 40, 80};
  } else {
    throw ConfigError("model " + id + " has no resolution to sweep");
  }
  return r;
}

int cmd_sweep(const RunConfig& rc, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<int> res = rc.sweep.empty() ? default_sweep(rc) : rc.sweep;
  const SweepResult r =
      index_sweep(problem_family(rc.model, rc.estimation), res, rc.rho, jobs_of(rc));
  const std::string id = models::model_id(rc.model);

  std::string csv = "model,N,sigma_min,index\n", dat = "# N index\n";
  for (size_t i = 0; i < r.resolutions.size(); ++i) {
    csv += id + "," + std::to_string(r.resolutions[i]) + "," + fmt_num(r.sigmas[i]) + "," +
           fmt_num(r.indices[i]) + "\n";
    dat += std::to_string(r.resolutions[i]) + " " + fmt_num(r.indices[i]) + "\n";
    std::printf("N = %4d  index = %s\n", r.resolutions[i], fmt_num(r.indices[i]).c_str());
  }
  std::vector<std::string> summary{"rho = " + fmt_num(r.rho)};
  if (r.stabilized_at) {
    std::printf("stabilized at N = %d, index = %s\n", *r.stabilized_at,
                fmt_num(*r.stabilized_value).c_str());
    summary.push_back("stabilized_at = " + std::to_string(*r.stabilized_at));
    summary.push_back("stabilized_value = " + fmt_num(*r.stabilized_value));
  } else {
    std::printf("not stabilized\n");
    summary.push_back("stabilized_at = none");
  }
  if (!r.failure.empty()) summary.push_back("failure = " + r.failure);

  Outputs out(rc.out_dir);
  out.add("sweep.csv", csv);
  out.add("sweep.dat", dat);
  out.flush({command, rc.snapshot,
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), {},
             summary});
  if (!r.failure.empty()) throw NumericalError("sweep", r.failure);
  return 0;
}

int cmd_wave_demo(const RunConfig& rc, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto* base = std::get_if<models::WaveConfig>(&rc.model);
  if (!base) throw ConfigError("wave-demo runs the wave model only");
  const std::vector<int> res = rc.sweep.empty() ? std::vector<int>{20, 40, 80} : rc.sweep;
  const RatioStudyResult low = wave_ratio_study(res, WaveData::low_mode, *base);
  const RatioStudyResult high = wave_ratio_study(res, WaveData::high_mode, *base);

  std::string csv = "N,low_mode,high_mode\n", dat = "# N high_mode_ratio low_mode_ratio\n";
  std::vector<std::string> summary;
  for (size_t i = 0; i < res.size(); ++i) {
    const std::string l = fmt_num(low.ratios[i]), h = fmt_num(high.ratios[i]);
    csv += std::to_string(res[i]) + "," + l + "," + h + "\n";
    dat += std::to_string(res[i]) + " " + h + " " + l + "\n";
    std::printf("N = %4d  low_mode = %s  high_mode = %s\n", res[i], l.c_str(), h.c_str());
    summary.push_back("N" + std::to_string(res[i]) + " = " + l + " " + h);
  }
  Outputs out(rc.out_dir);
  out.add("wave.csv", csv);
  out.add("wave.dat", dat);
  out.flush({command, rc.snapshot,
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), {},
             summary});
  return 0;
}

std::string join(const std::vector<double>& v, const char* sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + fmt_num(v[i]);
  return s;
}

int cmd_sensors(const RunConfig& rc, const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  if (rc.candidates.size() < 2)
    throw ConfigError("sensors needs at least two candidates (run.candidates or --candidates)");
  const SensorSweepResult r =
      sensor_sweep(rc.model, rc.estimation, rc.candidates, rc.rho, jobs_of(rc));

  std::vector<int> rank(r.candidates.size(), 0);
  for (size_t k = 0; k < r.ranking.size(); ++k) rank[r.ranking[k]] = static_cast<int>(k) + 1;
  std::string csv = "candidate,sensors,sigma_min,index,rank,error\n", dat = "# candidate index\n";
  std::vector<std::string> summary;
  for (size_t c = 0; c < r.candidates.size(); ++c) {
    const std::string pos = join(r.candidates[c], " ");
    csv += std::to_string(c) + "," + pos + "," + fmt_num(r.sigmas[c]) + "," + fmt_num(r.indices[c]) +
           "," + std::to_string(rank[c]) + "," + r.failures[c] + "\n";
    if (r.failures[c].empty()) dat += std::to_string(c) + " " + fmt_num(r.indices[c]) + "\n";
    std::printf("candidate %zu [%s]  index = %s%s\n", c, pos.c_str(), fmt_num(r.indices[c]).c_str(),
                r.failures[c].empty() ? "" : ("  failed: " + r.failures[c]).c_str());
    summary.push_back("candidate" + std::to_string(c) + " = " + fmt_num(r.indices[c]));
  }
  if (!r.ranking.empty()) std::printf("best candidate: %zu\n", r.ranking.front());

  Outputs out(rc.out_dir);
  out.add("sensors.csv", csv);
  out.add("sensors.dat", dat);
  out.flush({command, rc.snapshot,
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), {},
             summary});
  return 0;
}

int cmd_models() {
  for (const auto& id : models::model_ids())
    std::printf("%-8s %s\n", id.c_str(), models::model_description(id).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unobservability index of discretized PDE models"};
  app.require_subcommand(1);
  Flags f;
  auto* index = app.add_subcommand("index", "Gramian index (optionally with the direct oracle)");
  auto* sweep = app.add_subcommand("sweep", "index over a list of resolutions");
  auto* wave = app.add_subcommand("wave-demo", "wave energy ratio study");
  auto* sensors = app.add_subcommand("sensors", "rank candidate sensor sets");
  auto* models_cmd = app.add_subcommand("models", "list model ids");
  for (auto* cmd : {index, sweep, wave, sensors}) add_common(cmd, f);
  index->add_flag("--direct", f.direct, "also run the direct optimization oracle");
  sweep->add_option("--resolutions", f.sweep, "comma-separated resolutions");
  wave->add_option("--resolutions", f.sweep, "comma-separated resolutions");
  sensors->add_option("--candidates", f.candidates, "sensor tuples, e.g. '0.5|3.14159'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (models_cmd->parsed()) return cmd_models();
    const std::string command = app.get_subcommands().front()->get_name();
    const RunConfig rc = resolve_config(merge(f, wave->parsed() ? "wave" : ""));
    if (index->parsed()) return cmd_index(rc, command);
    if (sweep->parsed()) return cmd_sweep(rc, command);
    if (wave->parsed()) return cmd_wave_demo(rc, command);
    return cmd_sensors(rc, command);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
