#pragma once

// Closed curves on unit spheres, sampled on a uniform periodic grid.
// Analytic constructions keep their generator so reparametrization and
// off-grid evaluation stay exact; loaded/sampled curves fall back to
// trigonometric interpolation.

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "wlab/errors.hpp"
#include "wlab/fourier.hpp"

namespace wlab {

constexpr double kOnSphereTol = 1e-12;

class ClosedCurve {
 public:
  using Generator = std::function<Eigen::VectorXd(double)>;

  // Sample an analytic curve at `sample_count` uniform parameter values.
  ClosedCurve(int ambient_dim, double period, int sample_count,
              Generator generator)
      : dim_(ambient_dim), period_(period), n_(sample_count),
        generator_(std::move(generator)) {
    if (dim_ < 2) throw BadParams("ambient_dim must be >= 2");
    if (period_ <= 0.0) throw BadParams("period must be positive");
    samples_.resize(n_, dim_);
    for (int j = 0; j < n_; ++j) {
      samples_.row(j) = generator_(node(j)).transpose();
    }
    check_on_sphere();
  }

  // Wrap existing samples (row j = position at t_j = j*period/n).
  ClosedCurve(double period, Eigen::MatrixXd samples)
      : dim_(static_cast<int>(samples.cols())), period_(period),
        n_(static_cast<int>(samples.rows())), samples_(std::move(samples)) {
    if (dim_ < 2) throw BadParams("ambient_dim must be >= 2");
    if (period_ <= 0.0) throw BadParams("period must be positive");
    check_on_sphere();
  }

  int ambient_dim() const { return dim_; }
  double period() const { return period_; }
  int sample_count() const { return n_; }
  const Eigen::MatrixXd& samples() const { return samples_; }
  double node(int j) const { return period_ * j / n_; }
  Eigen::VectorXd nodes() const {
    Eigen::VectorXd t(n_);
    for (int j = 0; j < n_; ++j) t[j] = node(j);
    return t;
  }
  bool has_generator() const { return static_cast<bool>(generator_); }

  Eigen::VectorXd position(double t) const {
    if (generator_) return generator_(t);
    ensure_interp();
    Eigen::VectorXd p(dim_);
    for (int c = 0; c < dim_; ++c) p[c] = (*interp_)[c].eval(t, 0);
    return p;
  }

  // order-th parameter derivative at t (trigonometric interpolant).
  Eigen::VectorXd derivative(double t, int order = 1) const {
    ensure_interp();
    Eigen::VectorXd p(dim_);
    for (int c = 0; c < dim_; ++c) p[c] = (*interp_)[c].eval(t, order);
    return p;
  }

  // order-th derivative at all nodes.
  Eigen::MatrixXd derivative_samples(int order = 1) const {
    Eigen::MatrixXd d(n_, dim_);
    for (int c = 0; c < dim_; ++c) {
      d.col(c) = periodic_derivative(samples_.col(c), period_, order);
    }
    return d;
  }

  Eigen::VectorXd speed_samples() const {
    return derivative_samples(1).rowwise().norm();
  }

  bool is_unit_speed(double tol = 1e-8) const {
    return (speed_samples().array() - 1.0).abs().maxCoeff() < tol;
  }

 private:
  void check_on_sphere() const {
    double worst = (samples_.rowwise().norm().array() - 1.0).abs().maxCoeff();
    if (worst > kOnSphereTol) {
      throw NotOnSphere("max |  |p|-1  | = " + std::to_string(worst));
    }
  }

  void ensure_interp() const {
    if (interp_) return;
    auto v = std::make_shared<std::vector<TrigInterpolant>>();
    v->reserve(dim_);
    for (int c = 0; c < dim_; ++c) {
      v->emplace_back(Eigen::VectorXd(samples_.col(c)), period_);
    }
    interp_ = std::move(v);
  }

  int dim_;
  double period_;
  int n_;
  Eigen::MatrixXd samples_;
  Generator generator_;
  mutable std::shared_ptr<std::vector<TrigInterpolant>> interp_;
};

// Reparametrize to unit speed. The returned curve's period equals the total
// arclength; its generator (exact when the input has one) composes the
// original position with the numerically inverted arclength function.
inline ClosedCurve arclength_reparametrize(const ClosedCurve& curve) {
  const int n = curve.sample_count();
  const double period = curve.period();
  Eigen::VectorXd speed = curve.speed_samples();
  if (speed.minCoeff() < 1e-8) {
    throw NonRegular("speed " + std::to_string(speed.minCoeff()) +
                     " below 1e-8");
  }
  if ((speed.array() - 1.0).abs().maxCoeff() < 1e-10) return curve;

  // The speed is the norm of a band-limited derivative, so it is not
  // band-limited itself; node samples alias it and the antiderivative would
  // inherit the error. Oversample it from the interpolant instead.
  int m = 1024;
  while (m < n) m *= 2;
  Eigen::VectorXd speed_over(m);
  if (curve.has_generator() && m > n) {
    // the generator is the curve; resample it so the speed reflects the
    // analytic curve, not its n-sample interpolant
    ClosedCurve fine(curve.ambient_dim(), period, m,
                     [&curve](double t) { return curve.position(t); });
    speed_over = fine.speed_samples();
  } else {
    for (int k = 0; k < m; ++k) {
      speed_over[k] = curve.derivative(period * k / m).norm();
    }
  }
  const double mean_speed = speed_over.mean();
  const double length = mean_speed * period;

  // Arclength s(t) = mean*t + antiderivative of the oscillatory part.
  Eigen::VectorXd osc = speed_over.array() - mean_speed;
  std::vector<cd> a = fft(osc);
  const double omega = 2.0 * std::numbers::pi / period;
  for (int k = 0; k < m; ++k) {
    int mk = freq_index(k, m);
    if (mk == 0 || k == m / 2) {
      a[k] = 0.0;
    } else {
      a[k] /= cd(0.0, mk * omega);
    }
  }
  fft_inplace(a, true);
  Eigen::VectorXd anti(m);
  for (int k = 0; k < m; ++k) anti[k] = a[k].real();
  TrigInterpolant s_osc(anti, period);
  TrigInterpolant speed_itp(speed_over, period);

  auto arclen = [mean_speed, s_osc](double t) {
    return mean_speed * t + s_osc.eval(t, 0) - s_osc.eval(0.0, 0);
  };
  // Safeguarded Newton on the monotone arclength function: the iterate is
  // kept inside a shrinking bracket, with bisection as fallback.
  auto invert = [arclen, speed_itp, period, length](double s, double t0) {
    double wraps = std::floor(s / length);
    s -= wraps * length;
    double lo = 0.0, hi = period;
    double t = std::clamp(t0 - wraps * period, lo, hi);
    for (int it = 0; it < 100; ++it) {
      double f = arclen(t) - s;
      if (f > 0.0) hi = t; else lo = t;
      double df = speed_itp.eval(t, 0);
      double tn = t - f / df;
      if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
      if (std::abs(tn - t) < 1e-15 * (1.0 + std::abs(t))) {
        t = tn;
        break;
      }
      t = tn;
    }
    return t + wraps * period;
  };

  ClosedCurve::Generator gen;
  {
    const ClosedCurve base = curve;
    gen = [base, invert, mean_speed](double s) {
      return base.position(invert(s, s / mean_speed));
    };
  }
  // The composed curve can carry frequencies beyond the input Nyquist, so
  // refine the output grid until the sampled speed is resolved.
  ClosedCurve out(curve.ambient_dim(), length, n, gen);
  for (int n_out = 2 * n; n_out <= 16 * n; n_out *= 2) {
    if ((out.speed_samples().array() - 1.0).abs().maxCoeff() < 1e-10) break;
    out = ClosedCurve(curve.ambient_dim(), length, n_out, gen);
  }
  return out;
}

}  // namespace wlab
