#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qillum/bargmann.hpp"
#include "qillum/parallel.hpp"

namespace qillum {

double ProbabilityGrid::prob(int n, int m) const { return std::exp(log_prob(n, m)); }

double ProbabilityGrid::total() const {
  double sum = 0.0;
  for (double lp : log_probs) sum += std::exp(lp);
  return sum;
}

int envelope_cutoff(const ModeEnvelope& envelope, double tail) {
  if (!(tail > 0.0 && tail < 1.0)) throw DomainError("tail must lie in (0, 1)");
  if (envelope.ratio <= 0.0) return 0;
  if (envelope.ratio >= 1.0) throw DomainError("envelope ratio must be below 1");
  const double steps = std::log(tail / envelope.factor) / std::log(envelope.ratio);
  const double n = std::max(0.0, std::ceil(steps) - 1.0);
  if (n > std::numeric_limits<int>::max() / 2) return std::numeric_limits<int>::max() / 2;
  int out = static_cast<int>(n);
  while (out > 0 && envelope.factor * std::pow(envelope.ratio, out) <= tail) --out;
  return out;
}

namespace {

double envelope_tail(const ModeEnvelope& env, int cutoff) {
  if (env.ratio <= 0.0) return 0.0;
  return env.factor * std::pow(env.ratio, cutoff + 1.0);
}

void fill(const BargmannForm& form, ProbabilityGrid& grid, unsigned threads) {
  DiagonalExtractor ex(form);
  ex.reserve(*std::max_element(grid.dims.begin(), grid.dims.end()));
  const int cols = grid.cols();
  grid.log_probs.assign(static_cast<std::size_t>(grid.rows()) * cols, 0.0);
  parallel_for(
      grid.rows(),
      [&](std::size_t n) {
        for (int m = 0; m < cols; ++m) {
          const DiagonalValue v = form.n_modes == 1 ? ex(static_cast<int>(n)) : ex(static_cast<int>(n), m);
          if (v.imag_ratio > 1e-8)
            throw ConvergenceError("diagonal element is not real", v.imag_ratio);
          // round-off can leave vanishing entries slightly negative
          grid.log_probs[grid.index(static_cast<int>(n), m)] =
              v.sign > 0 ? v.log_abs : -std::numeric_limits<double>::infinity();
        }
      },
      threads);
}

}  // namespace

ProbabilityGrid prob_grid(const BargmannForm& form, double target_tail, const GridOptions& options) {
  if (!(target_tail > 0.0 && target_tail < 1.0)) throw DomainError("target_tail must lie in (0, 1)");
  if (static_cast<int>(form.envelopes.size()) != form.n_modes)
    throw DomainError("one envelope per mode required");
  const int k = form.n_modes;
  std::vector<int> dims(k);
  for (int i = 0; i < k; ++i) dims[i] = envelope_cutoff(form.envelopes[i], target_tail / k);

  for (int attempt = 0;; ++attempt) {
    double bound = 0.0;
    std::size_t entries = 1;
    for (int i = 0; i < k; ++i) {
      bound += envelope_tail(form.envelopes[i], dims[i]);
      entries *= static_cast<std::size_t>(dims[i]) + 1;
    }
    const int widest = *std::max_element(dims.begin(), dims.end());
    if (widest > options.max_per_mode || entries > options.max_entries) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "probability grid exceeds resource cap (%zu entries, tail bound %.3g)",
                    entries, bound);
      throw ResourceError(msg, bound);
    }

    ProbabilityGrid grid;
    grid.dims = dims;
    fill(form, grid, options.threads);
    const double deficit = 1.0 - grid.total();
    // the envelope must dominate what the grid actually misses
    const double slack = 1e-12 * static_cast<double>(entries);
    if (deficit <= bound + slack) {
      grid.tail_mass = k == 1 ? std::max(deficit, 0.0) : bound;
      return grid;
    }
    if (attempt >= 12) throw ResourceError("probability grid tail could not be certified", deficit);
    for (int& d : dims) d = static_cast<int>(std::ceil(1.5 * d)) + 1;
  }
}

void write_grid_csv(std::ostream& out, const ProbabilityGrid& grid,
                    const std::map<std::string, std::string>& params) {
  char buf[64];
  out << "# modes=" << grid.n_modes() << "\n";
  out << "# dims=";
  for (std::size_t i = 0; i < grid.dims.size(); ++i) out << (i ? ";" : "") << grid.dims[i];
  out << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", grid.tail_mass);
  out << "# tail_mass=" << buf << "\n";
  for (const auto& [key, value] : params) out << "# " << key << "=" << value << "\n";
  out << "n,m,log_prob\n";
  for (int n = 0; n < grid.rows(); ++n)
    for (int m = 0; m < grid.cols(); ++m) {
      std::snprintf(buf, sizeof buf, "%.17g", grid.log_prob(n, m));
      out << n << "," << m << "," << buf << "\n";
    }
}

ProbabilityGrid read_grid_csv(std::istream& in, std::map<std::string, std::string>* params) {
  ProbabilityGrid grid;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto first = line.find_first_not_of("# ");
      const std::string key = line.substr(first, eq - first);
      const std::string value = line.substr(eq + 1);
      if (key == "dims") {
        std::stringstream ss(value);
        std::string part;
        while (std::getline(ss, part, ';')) grid.dims.push_back(std::stoi(part));
      } else if (key == "tail_mass") {
        grid.tail_mass = std::stod(value);
      } else if (key != "modes" && params) {
        (*params)[key] = value;
      }
      continue;
    }
    if (!header) {
      if (line != "n,m,log_prob") throw DomainError("unexpected grid CSV header: " + line);
      header = true;
      if (grid.dims.empty()) throw DomainError("grid CSV lacks dims");
      grid.log_probs.assign(static_cast<std::size_t>(grid.rows()) * grid.cols(),
                            -std::numeric_limits<double>::infinity());
      continue;
    }
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    const int n = std::stoi(a), m = std::stoi(b);
    if (n < 0 || n >= grid.rows() || m < 0 || m >= grid.cols()) throw DomainError("grid CSV index out of range");
    grid.log_probs[grid.index(n, m)] = c == "-inf" ? -std::numeric_limits<double>::infinity() : std::stod(c);
  }
  if (!header) throw DomainError("grid CSV has no data header");
  return grid;
}

}  // namespace qillum
