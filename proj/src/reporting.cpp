#include "crosstrainer/reporting.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "crosstrainer/errors.hpp"

namespace crosstrainer {

json to_json(const ProbeRecord& p) {
  return json{{"alpha", p.alpha},
              {"cv_accuracy", p.cv_accuracy},
              {"train_seconds", p.train_seconds},
              {"epochs", p.epochs_total}};
}

json to_json(const SearchReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) probes.push_back(to_json(p));
  return json{{"strategy", strategy_name(r.strategy)},
              {"delta", r.delta},
              {"alpha_star", r.alpha_star},
              {"alpha_star_cv_accuracy", r.alpha_star_accuracy},
              {"evaluations", r.probes.size()},
              {"bracket_evals", r.bracket_evals},
              {"golden_evals", r.golden_evals},
              {"probes", probes},
              {"refit_epochs", r.refit_stats.epochs_run},
              {"refit_seconds", r.refit_seconds}};
}

json to_json(const TimingBreakdown& t) {
  return json{{"grid_cold_seconds", t.grid_cold_seconds},
              {"gss_cold_seconds", t.gss_cold_seconds},
              {"gss_warm_seconds", t.gss_warm_seconds},
              {"grid_cold_epochs", t.grid_cold_epochs},
              {"gss_cold_epochs", t.gss_cold_epochs},
              {"gss_warm_epochs", t.gss_warm_epochs},
              {"speedup_gss_only", t.speedup_gss_only},
              {"speedup_total", t.speedup_total}};
}

json to_json(const BenchmarkReport& r) {
  json methods = json::array();
  for (const auto& m : r.methods)
    methods.push_back(json{{"name", m.method_name},
                           {"test_accuracy", m.test_accuracy},
                           {"fit_seconds", m.fit_seconds}});
  json out{{"config",
            {{"delta", r.delta},
             {"k", r.k},
             {"seed", r.seed},
             {"l2_penalty", r.l2_used},
             {"l2_tuned", r.l2_tuned}}},
           {"data",
            {{"n_target_train", r.n_target_train},
             {"n_target_test", r.n_target_test},
             {"n_source", r.n_source},
             {"d", r.dim},
             {"beta", r.beta}}},
           {"alpha_star", r.alpha_star},
           {"methods", methods},
           {"search", to_json(r.gss_report)}};
  if (r.grid_report) out["grid_search"] = to_json(*r.grid_report);
  if (r.gss_cold_report) out["gss_cold_search"] = to_json(*r.gss_cold_report);
  if (r.grid_report) out["timing"] = to_json(r.timing);
  return out;
}

json without_timing(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      if (key.ends_with("_seconds") || key.starts_with("speedup")) continue;
      out[key] = without_timing(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(without_timing(v));
    return out;
  }
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw io_error("cannot write '" + tmp + "'");
    out << j.dump(2) << "\n";
    if (!out) throw io_error("failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw io_error("cannot move '" + tmp + "' to '" + path + "'");
}

void print_probe_lines(std::ostream& os, const SearchReport& r) {
  os << "search strategy=" << strategy_name(r.strategy) << " delta=" << r.delta << "\n";
  std::size_t i = 0;
  for (const auto& p : r.probes) {
    os << "probe " << ++i << " alpha=" << std::setprecision(10) << p.alpha
       << " cv_accuracy=" << p.cv_accuracy << " train_seconds=" << std::setprecision(4)
       << p.train_seconds << " epochs=" << p.epochs_total << "\n";
  }
  os << "alpha_star " << std::setprecision(10) << r.alpha_star << "\n";
}

void print_benchmark_table(std::ostream& os, const BenchmarkReport& r) {
  os << "n_target_train=" << r.n_target_train << " n_target_test=" << r.n_target_test
     << " n_source=" << r.n_source << " d=" << r.dim << " beta=" << std::setprecision(6)
     << r.beta << "\n";
  os << "alpha_star=" << std::setprecision(10) << r.alpha_star
     << " (l2=" << r.l2_used << (r.l2_tuned ? ", tuned on All)" : ")") << "\n\n";
  os << std::left << std::setw(20) << "method" << std::right << std::setw(14)
     << "test_accuracy" << std::setw(14) << "fit_seconds" << "\n";
  for (const auto& m : r.methods) {
    os << std::left << std::setw(20) << m.method_name << std::right << std::setw(14)
       << std::fixed << std::setprecision(4) << m.test_accuracy << std::setw(14)
       << std::setprecision(3) << m.fit_seconds << "\n";
    os.unsetf(std::ios::fixed);
  }
  if (r.grid_report) {
    const auto& t = r.timing;
    os << "\ntraining-time factor analysis (alpha search)\n";
    os << std::left << std::setw(28) << "grid cold (baseline)" << std::right << std::setw(10)
       << std::fixed << std::setprecision(3) << t.grid_cold_seconds << "s  epochs="
       << t.grid_cold_epochs << "\n";
    os << std::left << std::setw(28) << "+ golden section" << std::right << std::setw(10)
       << t.gss_cold_seconds << "s  epochs=" << t.gss_cold_epochs << "\n";
    os << std::left << std::setw(28) << "+ warm start" << std::right << std::setw(10)
       << t.gss_warm_seconds << "s  epochs=" << t.gss_warm_epochs << "\n";
    os.unsetf(std::ios::fixed);
    os << "speed-up " << std::setprecision(3) << t.speedup_total << "x\n";
  }
}

}  // namespace crosstrainer
