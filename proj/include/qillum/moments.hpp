#pragma once

#include <span>
#include <vector>

#include "qillum/gaussian_state.hpp"

namespace qillum {

/// < prod_k n_k^{powers[k]} > for a Gaussian state, exact.
///
/// Each n^p is normal ordered (n^2 = a^dag^2 a^2 + a^dag a) and the
/// normal-ordered monomials are evaluated by Wick's theorem over the
/// displaced fluctuations. Powers above 2 throw UnsupportedError.
double gaussian_number_moment(const GaussianStated& state, std::span<const int> powers);

inline double gaussian_number_moment(const GaussianStated& state, std::initializer_list<int> powers) {
  return gaussian_number_moment(state, std::span<const int>(powers.begin(), powers.size()));
}

/// Mandel Q of the input signal mode, (<n^2> - <n>^2)/<n> - 1.
double mandel_q(const ProbeSpec& spec);

/// Input-state moments entering the two-mode PNR statistics. Signal is mode
/// 0, idler is mode 1.
struct InputMoments {
  double n_s = 0;        // <n_S>
  double n_i = 0;        // <n_I>
  double n_i2 = 0;       // <n_I^2>
  double n_si = 0;       // <n_S n_I>
  double n_s_n_i2 = 0;   // <n_S n_I^2>
  double n_si_sq = 0;    // <(n_S n_I)^2>
};

InputMoments input_moments(const ProbeSpec& spec);

}  // namespace qillum
