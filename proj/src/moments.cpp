#include "qillum/moments.hpp"

#include <cmath>
#include <complex>

namespace qillum {
namespace {

using Complex = std::complex<double>;

struct LadderOp {
  int mode;
  bool dagger;
};

// Normal-ordered first and second moments of the ladder operators.
class LadderMoments {
public:
  explicit LadderMoments(const GaussianStated& state) : modes_(state.n_modes) {
    const auto& s = state.cov;
    const auto& mu = state.mean;
    alpha_.resize(modes_);
    n_.resize(modes_ * modes_);
    m_.resize(modes_ * modes_);
    for (int i = 0; i < modes_; ++i) {
      alpha_[i] = Complex(mu(2 * i), mu(2 * i + 1)) / std::sqrt(2.0);
      for (int j = 0; j < modes_; ++j) {
        const int xi = 2 * i, pi = 2 * i + 1, xj = 2 * j, pj = 2 * j + 1;
        // <da_i^dag da_j>, <da_i da_j> with V = sigma / 2
        n_[i * modes_ + j] =
            0.25 * Complex(s(xi, xj) + s(pi, pj), s(xi, pj) - s(pi, xj)) - (i == j ? 0.5 : 0.0);
        m_[i * modes_ + j] = 0.25 * Complex(s(xi, xj) - s(pi, pj), s(xi, pj) + s(pi, xj));
      }
    }
  }

  Complex mean(const LadderOp& op) const {
    return op.dagger ? std::conj(alpha_[op.mode]) : alpha_[op.mode];
  }

  // <:X Y:> of the fluctuations
  Complex contraction(const LadderOp& x, const LadderOp& y) const {
    const int ij = x.mode * modes_ + y.mode;
    const int ji = y.mode * modes_ + x.mode;
    if (x.dagger && y.dagger) return std::conj(m_[ij]);
    if (!x.dagger && !y.dagger) return m_[ij];
    if (x.dagger) return n_[ij];
    return n_[ji];
  }

private:
  int modes_;
  std::vector<Complex> alpha_;
  std::vector<Complex> n_;
  std::vector<Complex> m_;
};

// Expectation of a normal-ordered product: the first operator either takes
// its mean or is contracted with one of the remaining operators.
Complex wick(const LadderMoments& lm, std::vector<LadderOp>& ops, std::vector<bool>& used, std::size_t start) {
  while (start < ops.size() && used[start]) ++start;
  if (start == ops.size()) return 1.0;
  used[start] = true;
  Complex total = lm.mean(ops[start]) * wick(lm, ops, used, start + 1);
  for (std::size_t j = start + 1; j < ops.size(); ++j) {
    if (used[j]) continue;
    const Complex c = lm.contraction(ops[start], ops[j]);
    if (c == Complex(0.0)) continue;
    used[j] = true;
    total += c * wick(lm, ops, used, start + 1);
    used[j] = false;
  }
  used[start] = false;
  return total;
}

// n^p = sum_j S(p, j) a^dag^j a^j (Stirling numbers of the second kind)
constexpr int kStirling[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}};

}  // namespace

double gaussian_number_moment(const GaussianStated& state, std::span<const int> powers) {
  if (static_cast<int>(powers.size()) != state.n_modes)
    throw DomainError("one exponent per mode required");
  for (int p : powers) {
    if (p < 0) throw DomainError("negative exponent");
    if (p > 2) throw UnsupportedError("number moments above second order per mode are not implemented");
  }
  const LadderMoments lm(state);
  const int k = state.n_modes;

  // iterate over the normal-ordered terms a^dag^{j_k} a^{j_k} of each factor
  Complex acc = 0.0;
  std::vector<int> j(k);
  const auto recurse = [&](auto&& self, int mode, double weight) -> void {
    if (mode == k) {
      std::vector<LadderOp> ops;
      for (int m = 0; m < k; ++m)
        for (int r = 0; r < j[m]; ++r) ops.push_back({m, true});
      for (int m = 0; m < k; ++m)
        for (int r = 0; r < j[m]; ++r) ops.push_back({m, false});
      std::vector<bool> used(ops.size(), false);
      acc += weight * wick(lm, ops, used, 0);
      return;
    }
    const int p = powers[mode];
    for (int jj = 0; jj <= p; ++jj) {
      const int s = kStirling[p][jj];
      if (s == 0) continue;
      j[mode] = jj;
      self(self, mode + 1, weight * s);
    }
  };
  recurse(recurse, 0, 1.0);
  return acc.real();
}

double mandel_q(const ProbeSpec& spec) {
  const GaussianStated input = build_input(spec).reduced(0);
  const double n1 = gaussian_number_moment(input, {1});
  if (!(n1 > 0.0)) throw DomainError("Mandel Q undefined for a vacuum signal mode");
  const double n2 = gaussian_number_moment(input, {2});
  return (n2 - n1 * n1) / n1 - 1.0;
}

InputMoments input_moments(const ProbeSpec& spec) {
  const GaussianStated input = build_input(spec);
  InputMoments m;
  if (!spec.two_mode()) {
    m.n_s = gaussian_number_moment(input, {1});
    return m;
  }
  m.n_s = gaussian_number_moment(input, {1, 0});
  m.n_i = gaussian_number_moment(input, {0, 1});
  m.n_i2 = gaussian_number_moment(input, {0, 2});
  m.n_si = gaussian_number_moment(input, {1, 1});
  m.n_s_n_i2 = gaussian_number_moment(input, {1, 2});
  m.n_si_sq = gaussian_number_moment(input, {2, 2});
  return m;
}

}  // namespace qillum
