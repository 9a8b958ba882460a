#pragma once

// Periodic-grid numerics: radix-2 FFT, spectral differentiation,
// trigonometric interpolation and the periodic trapezoid rule.

#include <Eigen/Dense>
#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace wlab {

using cd = std::complex<double>;

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey. n must be a power of two.
inline void fft_inplace(std::vector<cd>& a, bool inverse) {
  const int n = static_cast<int>(a.size());
  assert(is_power_of_two(n));
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / len * (inverse ? 1.0 : -1.0);
    const cd wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      cd w(1.0);
      for (int k = 0; k < len / 2; ++k) {
        cd u = a[i + k];
        cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

inline std::vector<cd> fft(const Eigen::VectorXd& x) {
  std::vector<cd> a(x.size());
  for (int i = 0; i < x.size(); ++i) a[i] = cd(x[i], 0.0);
  fft_inplace(a, false);
  return a;
}

// Signed frequency index for bin k of an n-point transform.
inline int freq_index(int k, int n) { return k <= n / 2 ? k : k - n; }

// Spectral derivative of order `order` of real periodic samples.
// The Nyquist mode is zeroed for odd orders (standard real-derivative rule).
inline Eigen::VectorXd spectral_derivative(const Eigen::VectorXd& x,
                                           double period, int order = 1) {
  const int n = static_cast<int>(x.size());
  assert(is_power_of_two(n));
  const double omega = 2.0 * std::numbers::pi / period;
  std::vector<cd> a = fft(x);
  for (int k = 0; k < n; ++k) {
    int m = freq_index(k, n);
    if (k == n / 2 && (order % 2 == 1)) {
      a[k] = 0.0;
      continue;
    }
    cd f = std::pow(cd(0.0, m * omega), order);
    a[k] *= f;
  }
  fft_inplace(a, true);
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) out[k] = a[k].real();
  return out;
}

// 8th-order centered finite difference, for sample counts that are not a
// power of two.
inline Eigen::VectorXd fd8_derivative(const Eigen::VectorXd& x, double period) {
  const int n = static_cast<int>(x.size());
  const double h = period / n;
  static const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    for (int j = 1; j <= 4; ++j) {
      d += c[j - 1] * (x[(i + j) % n] - x[(i - j + n + n) % n]);
    }
    out[i] = d / h;
  }
  return out;
}

inline Eigen::VectorXd periodic_derivative(const Eigen::VectorXd& x,
                                           double period, int order = 1) {
  if (is_power_of_two(static_cast<int>(x.size())))
    return spectral_derivative(x, period, order);
  Eigen::VectorXd y = x;
  for (int k = 0; k < order; ++k) y = fd8_derivative(y, period);
  return y;
}

// Spectral derivative with modes below `rel_floor` of the largest
// coefficient zeroed first. Differentiation multiplies mode m by (m*omega)^
// order, so roundoff-level coefficients at high frequency otherwise swamp
// the derivative of slowly varying (e.g. constant) data.
inline Eigen::VectorXd denoised_derivative(const Eigen::VectorXd& x,
                                           double period, int order = 1,
                                           double rel_floor = 1e-9) {
  const int n = static_cast<int>(x.size());
  if (!is_power_of_two(n)) return periodic_derivative(x, period, order);
  std::vector<cd> a = fft(x);
  double peak = 0.0;
  for (const cd& c : a) peak = std::max(peak, std::abs(c));
  const double omega = 2.0 * std::numbers::pi / period;
  const double floor = rel_floor * peak;
  for (int k = 0; k < n; ++k) {
    int m = freq_index(k, n);
    if (std::abs(a[k]) < floor || (k == n / 2 && order % 2 == 1)) {
      a[k] = 0.0;
    } else {
      a[k] *= std::pow(cd(0.0, m * omega), order);
    }
  }
  fft_inplace(a, true);
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) out[k] = a[k].real();
  return out;
}

// Trapezoid rule on a uniform periodic grid (spectrally accurate for
// smooth periodic integrands).
inline double periodic_trapezoid(const Eigen::VectorXd& f, double period) {
  return f.mean() * period;
}

// Trigonometric interpolant built from the FFT of one real sample line.
// eval(t, order) returns the order-th derivative of the interpolant at t.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  TrigInterpolant(const Eigen::VectorXd& samples, double period)
      : n_(static_cast<int>(samples.size())),
        period_(period),
        coeff_(fft(samples)) {
    assert(is_power_of_two(n_));
  }

  double eval(double t, int order = 0) const {
    const double omega = 2.0 * std::numbers::pi / period_;
    const cd rot = std::polar(1.0, omega * t);
    // Walk frequencies 0..n/2-1 and -1..-(n/2-1) with running phases.
    cd acc(0.0, 0.0);
    cd up(1.0, 0.0), dn(1.0, 0.0);
    for (int m = 0; m < n_ / 2; ++m) {
      if (m == 0) {
        acc += coeff_[0] * dfactor(0, omega, order);
      } else {
        acc += coeff_[m] * up * dfactor(m, omega, order);
        acc += coeff_[n_ - m] * dn * dfactor(-m, omega, order);
      }
      up *= rot;
      dn *= std::conj(rot);
    }
    // Nyquist term: represented as a cosine; drop it for odd derivatives.
    const int ny = n_ / 2;
    if (order % 2 == 0) {
      double sgn = (order / 2) % 2 == 0 ? 1.0 : -1.0;
      double w = ny * omega;
      acc += coeff_[ny] * (sgn * std::pow(w, order) * std::cos(w * t));
    }
    return acc.real() / n_;
  }

 private:
  static cd dfactor(int m, double omega, int order) {
    if (order == 0) return cd(1.0, 0.0);
    return std::pow(cd(0.0, m * omega), order);
  }

  int n_ = 0;
  double period_ = 0.0;
  std::vector<cd> coeff_;
};

}  // namespace wlab
