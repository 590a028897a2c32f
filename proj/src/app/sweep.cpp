#include <ostream>

#include "app/app.hpp"
#include "qillum/parallel.hpp"

namespace qillum::app {
namespace {

struct Point {
  double exact = 0.0;
  double asymptotic = 0.0;
};

void write_header(std::ostream& out, const char* command, const SweepConfig& config) {
  out << "# qillum " << command << "\n";
  for (const auto& [key, value] : config.entries()) out << "# " << key << " = " << value << "\n";
}

// SNR of every (N_S, state) pair, row-major in N_S
std::vector<Point> evaluate(const SweepConfig& config, const std::vector<std::string>& states,
                            const std::vector<double>& grid) {
  std::vector<ProbeFamily> families;
  for (const auto& s : states) families.push_back(family_for(s, config));
  std::vector<Point> points(grid.size() * states.size());
  parallel_for(
      points.size(),
      [&](std::size_t i) {
        const double ns = grid[i / states.size()];
        Scenario sc{families[i % states.size()].at(ns), config.kappa, config.n_bath, config.modes};
        const SnrReport r = snr(sc, config.method, config.detector);
        points[i] = {r.exact, r.asymptotic};
      },
      config.jobs);
  return points;
}

}  // namespace

void write_sweep(std::ostream& out, const SweepConfig& config) {
  config.validate();
  const auto grid = config.ns_grid();
  const auto points = evaluate(config, config.states, grid);
  write_header(out, "sweep", config);
  out << "n_s,state,detector,method,snr_exact,snr_asymptotic\n";
  const std::string det(to_string(config.detector)), meth(to_string(config.method));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < config.states.size(); ++j) {
      const Point& p = points[i * config.states.size() + j];
      out << format_number(grid[i]) << "," << config.states[j] << "," << det << "," << meth << ","
          << format_number(p.exact) << "," << format_number(p.asymptotic) << "\n";
    }
}

void write_ratio(std::ostream& out, const SweepConfig& config) {
  config.validate();
  std::vector<std::string> states;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  const auto slot = [&](const std::string& s) {
    family_for(s, config);
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == s) return i;
    states.push_back(s);
    return states.size() - 1;
  };
  for (const auto& pair : config.pairs) {
    const auto slash = pair.find('/');
    if (slash == std::string::npos) throw DomainError("ratio pair must look like a/b: '" + pair + "'");
    const std::size_t a = slot(pair.substr(0, slash));
    const std::size_t b = slot(pair.substr(slash + 1));
    index.emplace_back(a, b);
  }
  const auto grid = config.ns_grid();
  const auto points = evaluate(config, states, grid);
  write_header(out, "ratio", config);
  out << "n_s,pair,ratio\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t k = 0; k < index.size(); ++k) {
      const double a = points[i * states.size() + index[k].first].exact;
      const double b = points[i * states.size() + index[k].second].exact;
      out << format_number(grid[i]) << "," << config.pairs[k] << "," << format_number(a / b) << "\n";
    }
}

}  // namespace qillum::app
