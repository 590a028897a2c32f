#include <cmath>
#include <cstdio>

#include "qillum/oracle.hpp"

namespace qillum::oracle {

std::size_t DenseSeries::index(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != n_vars) throw DomainError("one exponent per variable required");
  std::size_t idx = 0;
  for (int e : exponents) {
    if (e < 0 || e > cap) throw DomainError("exponent outside the expanded range");
    idx = idx * (cap + 1) + e;
  }
  return idx;
}

std::complex<double> DenseSeries::coefficient(std::span<const int> exponents) const {
  return scale * coeff[index(exponents)];
}

double DenseSeries::probability(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) * 2 != n_vars) throw DomainError("one occupation per mode required");
  std::vector<int> e(n_vars);
  double log_fact = 0.0;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    e[i] = e[i + occ.size()] = occ[i];
    log_fact += std::lgamma(occ[i] + 1.0);
  }
  return (std::exp(log_fact) * coefficient(e)).real();
}

DenseSeries dense_expand(const BargmannForm& form, int cap, std::size_t budget_bytes) {
  const int nv = form.n_vars();
  if (cap < 0) throw DomainError("cap must be >= 0");
  double entries = std::pow(cap + 1.0, nv);
  const double bytes = entries * sizeof(std::complex<double>);
  if (bytes > static_cast<double>(budget_bytes)) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "dense expansion needs %.3g bytes", bytes);
    throw ResourceError(msg, bytes);
  }

  DenseSeries s;
  s.n_vars = nv;
  s.cap = cap;
  s.scale = std::exp(form.log_prefactor + form.const_term);
  s.coeff.assign(static_cast<std::size_t>(entries), 0.0);
  s.coeff[0] = 1.0;

  std::vector<std::size_t> stride(nv);
  for (int i = nv - 1, st = 1; i >= 0; --i, st *= cap + 1) stride[i] = st;
  std::vector<int> e(nv, 0);
  for (std::size_t idx = 1; idx < s.coeff.size(); ++idx) {
    // advance the mixed-radix exponent vector
    for (int i = nv - 1; i >= 0; --i) {
      if (++e[i] <= cap) break;
      e[i] = 0;
    }
    int degree = 0;
    for (int x : e) degree += x;
    std::complex<double> acc = 0.0;
    for (int i = 0; i < nv; ++i) {
      if (e[i] == 0) continue;
      acc += form.lin(i) * s.coeff[idx - stride[i]];
      for (int j = i; j < nv; ++j) {
        if (j == i ? e[i] < 2 : e[j] == 0) continue;
        acc += 2.0 * form.quad(i, j) * s.coeff[idx - stride[i] - stride[j]];
      }
    }
    s.coeff[idx] = acc / static_cast<double>(degree);
  }
  return s;
}

}  // namespace qillum::oracle
