#pragma once

// Brute-force reference implementations for small parameters.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qillum/bargmann.hpp"
#include "qillum/detection.hpp"

namespace qillum::oracle {

/// Taylor coefficients of a Bargmann kernel with every variable exponent
/// at most cap, stored densely in mixed radix (first variable slowest).
struct DenseSeries {
  int n_vars = 0;
  int cap = 0;
  std::complex<double> scale = 1.0;  // exp(log_prefactor + const_term)
  std::vector<std::complex<double>> coeff;

  std::size_t index(std::span<const int> exponents) const;
  /// Coefficient of prod v_i^{e_i} in the full kernel (scale included).
  std::complex<double> coefficient(std::span<const int> exponents) const;
  /// <n|rho|n> = prod n_i! * coefficient of z^n w*^n.
  double probability(std::span<const int> occ) const;
  double probability(std::initializer_list<int> occ) const {
    return probability(std::span<const int>(occ.begin(), occ.size()));
  }
};

/// Expands exp(lin . v + v^T quad v) through the Euler relation
/// d F_d = Q1 F_{d-1} + 2 Q2 F_{d-2} for its homogeneous parts.
/// Throws ResourceError when the array would exceed budget_bytes.
DenseSeries dense_expand(const BargmannForm& form, int cap, std::size_t budget_bytes = std::size_t(256) << 20);

/// Fisher information of the click outcomes at kappa = 0 from hand-derived
/// derivatives of the closed-form probabilities. PNR is unsupported.
double fi_analytic_check(const Scenario& scenario, Detector detector);

}  // namespace qillum::oracle
