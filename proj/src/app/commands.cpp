#include <cmath>
#include <sstream>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "app/app.hpp"

namespace qillum::app {
namespace {

using nlohmann::ordered_json;

ordered_json config_json(const SweepConfig& config) {
  ordered_json j;
  for (const auto& [key, value] : config.entries()) j[key] = value;
  return j;
}

// json cannot hold inf; those become null
ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

template <class Fn>
int write_csv(const SweepConfig& config, std::ostream& out, std::ostream& err, Fn&& fn) {
  if (config.out.empty()) {
    fn(out);
    return kOk;
  }
  std::ostringstream buffer;
  fn(buffer);
  std::ofstream file(config.out, std::ios::binary);
  if (!file) {
    err << "error: cannot open '" << config.out << "' for writing\n";
    return kError;
  }
  file << buffer.str();
  if (!file.flush()) {
    err << "error: failed writing '" << config.out << "'\n";
    return kError;
  }
  return kOk;
}

}  // namespace

int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  return write_csv(config, out, err, [&](std::ostream& o) { write_sweep(o, config); });
}

int cmd_ratio(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  return write_csv(config, out, err, [&](std::ostream& o) { write_ratio(o, config); });
}

int cmd_crossover(const SweepConfig& config, const std::string& a, const std::string& b, bool json,
                  std::ostream& out, std::ostream& err) {
  config.validate();
  const ProbeFamily fa = family_for(a, config), fb = family_for(b, config);
  const Scenario base{fa.at(config.ns_min), config.kappa, config.n_bath, config.modes};
  const auto found = find_crossover(fa, fb, config.ns_min, config.ns_max, base, config.method, config.detector);
  if (json) {
    ordered_json j;
    j["command"] = "crossover";
    j["a"] = a;
    j["b"] = b;
    j["found"] = found.has_value();
    j["n_s"] = found ? ordered_json(*found) : ordered_json(nullptr);
    j["config"] = config_json(config);
    out << j.dump(2) << "\n";
  } else if (found) {
    out << "crossover " << a << " vs " << b << " at n_s = " << format_number(*found) << " ("
        << to_string(config.detector) << ", " << to_string(config.method) << ", kappa = " << format_number(config.kappa)
        << ", nb = " << format_number(config.n_bath) << ")\n";
  }
  if (!found) {
    err << "no crossover between " << a << " and " << b << " on [" << format_number(config.ns_min) << ", "
        << format_number(config.ns_max) << "]\n";
    return kNotFound;
  }
  return kOk;
}

int cmd_optimize(const SweepConfig& config, double n_signal, bool json, std::ostream& out, std::ostream& err) {
  require_kappa(config.kappa);
  require_bath(config.n_bath);
  SplitOptimum opt;
  try {
    opt = optimize_ds_split(n_signal, config.kappa, config.n_bath, config.detector, config.method, config.modes);
  } catch (const ConvergenceError& e) {
    err << "optimize did not converge: " << e.what() << "\n";
    return kNoConvergence;
  }
  if (json) {
    ordered_json j;
    j["command"] = "optimize";
    j["n_s"] = n_signal;
    j["split"] = opt.split;
    j["alpha_sq"] = opt.alpha_sq;
    j["snr"] = number(opt.snr);
    j["degenerate"] = opt.degenerate;
    j["unimodal"] = opt.unimodal;
    j["config"] = config_json(config);
    out << j.dump(2) << "\n";
  } else {
    out << "ds optimum at n_s = " << format_number(n_signal) << ": |alpha|^2 = " << format_number(opt.alpha_sq)
        << " (split " << format_number(opt.split) << "), snr = " << format_number(opt.snr) << "\n";
    if (opt.degenerate) out << "note: objective is flat in the split\n";
    if (!opt.unimodal) out << "note: objective has several local maxima\n";
  }
  return kOk;
}

int cmd_check(unsigned jobs, bool json, std::ostream& out, std::ostream&) {
  const auto results = run_checks(jobs);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (json) {
    ordered_json j;
    j["command"] = "check";
    j["pass"] = all;
    j["checks"] = ordered_json::array();
    for (const auto& r : results) j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    out << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return all ? kOk : kCheckFailed;
}

}  // namespace qillum::app
