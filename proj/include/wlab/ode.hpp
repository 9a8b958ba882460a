#pragma once

// Adaptive Dormand-Prince 5(4) integrator with observation at caller-given
// times (the step is clamped to land on each output time exactly) and an
// optional hook run every fixed number of accepted steps.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double min_step = 1e-12;
  int hook_every = 0;  // 0 = never
};

// f(t, y, dydt); observe(t, y) at each requested time; hook(y) may adjust
// the state in place (e.g. frame re-orthonormalization).
template <class F, class Obs, class Hook>
void integrate_dopri5(F&& f, Eigen::VectorXd y, double t0, double t1,
                      const std::vector<double>& out_times, Obs&& observe,
                      const OdeOptions& opt, Hook&& hook) {
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
       -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
  static const double b5[7] = {35.0 / 384,      0.0,          500.0 / 1113,
                               125.0 / 192,     -2187.0 / 6784, 11.0 / 84,
                               0.0};
  static const double b4[7] = {5179.0 / 57600,    0.0,         7571.0 / 16695,
                               393.0 / 640,       -92097.0 / 339200,
                               187.0 / 2100,      1.0 / 40};

  const int dim = static_cast<int>(y.size());
  std::vector<Eigen::VectorXd> k(7, Eigen::VectorXd(dim));
  Eigen::VectorXd ytmp(dim), y5(dim), y4(dim);

  double t = t0;
  double h = (t1 - t0) / 100.0;
  size_t next_out = 0;
  int accepted_since_hook = 0;

  while (next_out < out_times.size() && out_times[next_out] <= t0 + 1e-15) {
    observe(out_times[next_out], y);
    ++next_out;
  }

  while (t < t1 - 1e-14 * (1.0 + std::abs(t1))) {
    double target = (next_out < out_times.size()) ? out_times[next_out] : t1;
    h = std::min(h, target - t);
    h = std::min(h, t1 - t);

    f(t, y, k[0]);
    bool accepted = false;
    while (!accepted) {
      if (h < opt.min_step) {
        throw Error("StepCollapse",
                    "step size fell below " + std::to_string(opt.min_step));
      }
      for (int s = 1; s < 7; ++s) {
        ytmp = y;
        for (int q = 0; q < s; ++q) ytmp += h * a[s][q] * k[q];
        f(t + c[s] * h, ytmp, k[s]);
      }
      y5 = y;
      y4 = y;
      for (int s = 0; s < 7; ++s) {
        y5 += h * b5[s] * k[s];
        y4 += h * b4[s] * k[s];
      }
      double err = 0.0;
      for (int i = 0; i < dim; ++i) {
        double sc = opt.atol +
                    opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        double e = (y5[i] - y4[i]) / sc;
        err += e * e;
      }
      err = std::sqrt(err / dim);
      if (err <= 1.0) {
        accepted = true;
        t += h;
        y = y5;
        double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
        if (opt.hook_every > 0 && ++accepted_since_hook >= opt.hook_every) {
          hook(y);
          accepted_since_hook = 0;
        }
      } else {
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
      }
    }
    while (next_out < out_times.size() &&
           out_times[next_out] <= t + 1e-12 * (1.0 + std::abs(t))) {
      observe(out_times[next_out], y);
      ++next_out;
    }
  }
  while (next_out < out_times.size()) {
    observe(out_times[next_out], y);
    ++next_out;
  }
}

template <class F, class Obs>
void integrate_dopri5(F&& f, const Eigen::VectorXd& y, double t0, double t1,
                      const std::vector<double>& out_times, Obs&& observe,
                      const OdeOptions& opt = {}) {
  integrate_dopri5(std::forward<F>(f), y, t0, t1, out_times,
                   std::forward<Obs>(observe), opt, [](Eigen::VectorXd&) {});
}

}  // namespace wlab
