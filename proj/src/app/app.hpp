#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qillum/metrics.hpp"

namespace qillum::app {

enum ExitCode : int { kOk = 0, kError = 1, kNotFound = 2, kNoConvergence = 3, kCheckFailed = 4 };

struct SweepConfig {
  std::vector<std::string> states{"tmsv", "coherent", "cct"};
  std::vector<std::string> pairs{"tmsv/coherent", "tmsv/cct", "coherent/cct"};
  Detector detector = Detector::OnOff;
  Method method = Method::Coincidence;
  double kappa = 0.01;
  double n_bath = 600.0;
  std::uint64_t modes = 1'000'000;
  double n_idler = -1.0;  // < 0: 1e6 for coincidences, 1 for Fisher information
  double split = 0.918;   // ds state
  double ns_min = 1e-4;
  double ns_max = 1.0;
  int ns_count = 30;
  std::string out;        // empty: stdout
  unsigned jobs = 0;

  double idler() const;
  std::vector<double> ns_grid() const;
  void validate() const;
  /// Ordered key/value view, written into CSV headers and read back by load.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Applies one key/value pair; throws DomainError on unknown keys or bad values.
void apply_entry(SweepConfig& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines. Lines starting with '#' are parsed the same
/// way but unknown keys there are skipped, so a CSV written by sweep or
/// ratio can be fed back as a config. Lines without '=' are ignored.
void load_config(std::istream& in, SweepConfig& config);
void load_config_file(const std::string& path, SweepConfig& config);

ProbeFamily family_for(const std::string& state, const SweepConfig& config);

void write_sweep(std::ostream& out, const SweepConfig& config);
void write_ratio(std::ostream& out, const SweepConfig& config);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The invariant suite over the parameter lattice.
std::vector<CheckResult> run_checks(unsigned jobs = 0);

std::string format_number(double v);

int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_ratio(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_crossover(const SweepConfig& config, const std::string& a, const std::string& b, bool json,
                  std::ostream& out, std::ostream& err);
int cmd_optimize(const SweepConfig& config, double n_signal, bool json, std::ostream& out, std::ostream& err);
int cmd_check(unsigned jobs, bool json, std::ostream& out, std::ostream& err);

}  // namespace qillum::app
