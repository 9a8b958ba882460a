#pragma once

// Named surfaces and one-parameter families: construction, closed-form
// energy references, sweeps and finite-difference stability probes.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlab/curve.hpp"
#include "wlab/energy.hpp"
#include "wlab/errors.hpp"
#include "wlab/tensor.hpp"

namespace wlab {

inline ClosedCurve great_circle(int n = 256) {
  return ClosedCurve(2, 2.0 * std::numbers::pi, n, [](double s) {
    Eigen::VectorXd p(2);
    p << std::cos(s), std::sin(s);
    return p;
  });
}

inline ClosedCurve great_circle_s2(int n = 256) {
  return ClosedCurve(3, 2.0 * std::numbers::pi, n, [](double s) {
    Eigen::VectorXd p(3);
    p << std::cos(s), std::sin(s), 0.0;
    return p;
  });
}

// (a cos(s/a), a sin(s/a), b) with a^2 + b^2 = 1; curvature b/a.
inline ClosedCurve small_circle(double a, int n = 256) {
  if (a <= 0.0 || a > 1.0) throw OutOfRange("small_circle needs a in (0,1]");
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  return ClosedCurve(3, 2.0 * std::numbers::pi * a, n, [a, b](double s) {
    Eigen::VectorXd p(3);
    p << a * std::cos(s / a), a * std::sin(s / a), b;
    return p;
  });
}

// The closed unit-speed curve with k1 = sqrt(2): factor of the Ejiri torus.
// Period 2*pi/sqrt(3).
inline ClosedCurve ejiri_factor(int n = 256) {
  const double r = std::sqrt(1.0 / 3.0);
  const double h = std::sqrt(2.0 / 3.0);
  return ClosedCurve(3, 2.0 * std::numbers::pi / std::sqrt(3.0), n,
                     [r, h](double s) {
                       Eigen::VectorXd p(3);
                       p << r * std::cos(std::sqrt(3.0) * s),
                           r * std::sin(std::sqrt(3.0) * s), h;
                       return p;
                     });
}

// (a*gamma(theta/a), b): the scaling deformation of a spherical curve.
inline ClosedCurve scaled_curve(const ClosedCurve& base, double a, int n = 0) {
  if (a <= 0.0 || a > 1.0) throw OutOfRange("scaled_curve needs a in (0,1]");
  if (n == 0) n = base.sample_count();
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  const ClosedCurve c = base;
  return ClosedCurve(base.ambient_dim() + 1, a * base.period(), n,
                     [c, a, b](double th) {
                       Eigen::VectorXd q = c.position(th / a);
                       Eigen::VectorXd p(q.size() + 1);
                       p.head(q.size()) = a * q;
                       p[q.size()] = b;
                       return p;
                     });
}

enum class FamilyName {
  ejiri,
  clifford_double,
  inf_family,
  tilde_family,
  scaled_deform,
  theta_family
};

inline const char* to_string(FamilyName f) {
  switch (f) {
    case FamilyName::ejiri: return "ejiri";
    case FamilyName::clifford_double: return "clifford_double";
    case FamilyName::inf_family: return "inf_family";
    case FamilyName::tilde_family: return "tilde_family";
    case FamilyName::scaled_deform: return "scaled_deform";
    case FamilyName::theta_family: return "theta_family";
  }
  return "?";
}

inline FamilyName family_from_string(const std::string& s) {
  if (s == "ejiri") return FamilyName::ejiri;
  if (s == "clifford_double") return FamilyName::clifford_double;
  if (s == "inf_family" || s == "inf") return FamilyName::inf_family;
  if (s == "tilde_family" || s == "tilde") return FamilyName::tilde_family;
  if (s == "scaled_deform" || s == "scaled") return FamilyName::scaled_deform;
  if (s == "theta_family" || s == "theta") return FamilyName::theta_family;
  throw OutOfRange("unknown family: " + s);
}

struct FamilySpec {
  FamilyName name = FamilyName::ejiri;
  double lo = 0.0, hi = 1.0;  // parameter domain
  // for scaled_deform: the pair being deformed (defaults to the Ejiri pair)
  std::optional<std::pair<ClosedCurve, ClosedCurve>> base_pair;
  int curve_samples = 256;
};

inline FamilySpec family_spec(FamilyName name, int curve_samples = 256) {
  FamilySpec s;
  s.name = name;
  s.curve_samples = curve_samples;
  switch (name) {
    case FamilyName::ejiri:
    case FamilyName::clifford_double:
      s.lo = s.hi = 0.0;
      break;
    case FamilyName::inf_family:
    case FamilyName::tilde_family:
    case FamilyName::scaled_deform:
      s.lo = 0.0;
      s.hi = 1.0;
      break;
    case FamilyName::theta_family:
      s.lo = 0.0;
      s.hi = 0.5 * std::numbers::pi;
      break;
  }
  return s;
}

// A family member: tensor tori carry their factor data, the theta family
// is a general parametric immersion with its flat conformal chart.
struct Surface {
  std::optional<TensorTorus> tensor;
  std::optional<ParametricTorus> parametric;
  std::optional<FlatChart> chart;
};

inline ParametricTorus theta_surface(double theta) {
  using std::cos;
  using std::sin;
  const double a1 = std::sqrt(1.0 / 3.0) * cos(theta);
  const double a2 = std::sqrt(1.0 / 3.0) * sin(theta);
  const double a3 = std::sqrt(2.0 / 3.0);
  ParametricTorus t;
  t.ambient_dim = 6;
  t.period_u = t.period_v = 2.0 * std::numbers::pi;
  t.immersion = [a1, a2, a3](double s, double sh) {
    Eigen::VectorXd p(6);
    p << a1 * cos(s + sh), a1 * sin(s + sh), a2 * cos(s - sh),
        a2 * sin(s - sh), a3 * cos(sh), a3 * sin(sh);
    return p;
  };
  return t;
}

// Chart to the flat conformal coordinates (phi, varphi) of the theta
// family, expressed as directions in the (s, s_hat) basis.
inline FlatChart theta_chart(double theta) {
  const double b3 = std::sqrt(3.0 / (2.0 + std::pow(std::sin(2.0 * theta), 2)));
  const double b1 = 2.0 * b3 * std::pow(std::sin(theta), 2);
  const double bh1 = 1.0 - b1 / b3;
  FlatChart c;
  c.dirs << std::sqrt(3.0), -bh1 * b3, 0.0, b3;
  return c;
}

inline Surface make_surface(const FamilySpec& spec, double param) {
  const int n = spec.curve_samples;
  Surface s;
  switch (spec.name) {
    case FamilyName::ejiri:
      s.tensor = build_tensor_torus(ejiri_factor(n), great_circle(n));
      break;
    case FamilyName::clifford_double:
      s.tensor = build_tensor_torus(great_circle(n), great_circle(n));
      break;
    case FamilyName::inf_family:
      if (param <= 0.0 || param > 1.0) {
        throw OutOfRange("inf_family needs a in (0,1]");
      }
      s.tensor = build_tensor_torus(small_circle(param, n),
                                    small_circle(param, n));
      break;
    case FamilyName::tilde_family:
      if (param <= 0.0 || param > 1.0) {
        throw OutOfRange("tilde_family needs a in (0,1]");
      }
      s.tensor = build_tensor_torus(ejiri_factor(n), small_circle(param, n));
      break;
    case FamilyName::scaled_deform: {
      if (param <= 0.0 || param > 1.0) {
        throw OutOfRange("scaled_deform needs a in (0,1]");
      }
      std::pair<ClosedCurve, ClosedCurve> base =
          spec.base_pair ? *spec.base_pair
                         : std::make_pair(ejiri_factor(n), great_circle(n));
      if (param == 1.0) {
        s.tensor = build_tensor_torus(base.first, base.second);
      } else {
        s.tensor = build_tensor_torus(scaled_curve(base.first, param),
                                      scaled_curve(base.second, param));
      }
      break;
    }
    case FamilyName::theta_family:
      if (param < spec.lo - 1e-12 || param > spec.hi + 1e-12) {
        throw OutOfRange("theta_family needs theta in [0, pi/2]");
      }
      s.parametric = theta_surface(param);
      s.chart = theta_chart(param);
      break;
  }
  return s;
}

// Closed-form reference value where the family has one; nan otherwise.
inline double reference_energy(const FamilySpec& spec, double param) {
  const double pi = std::numbers::pi;
  switch (spec.name) {
    case FamilyName::ejiri:
      return 2.0 * pi * pi * std::sqrt(3.0);
    case FamilyName::clifford_double:
      return 4.0 * pi * pi;
    case FamilyName::inf_family:
      return 2.0 * pi * pi * (1.0 + param * param);
    case FamilyName::tilde_family:
      return pi * pi * (5.0 * param * param + 1.0) /
             (param * std::sqrt(3.0));
    case FamilyName::theta_family: {
      double rho = std::sqrt(2.0 + std::pow(std::sin(2.0 * param), 2));
      return 6.0 * pi * pi * (2.0 / rho - 3.0 / std::pow(rho, 3));
    }
    case FamilyName::scaled_deform: {
      // The scaled factor (a*gamma(s/a), b) has k_a^2 = (k1^2 + b^2)/a^2 and
      // length a*L, which collapses W(a) to a closed form in the base pair's
      // curvature integrals.
      std::pair<ClosedCurve, ClosedCurve> base =
          spec.base_pair
              ? *spec.base_pair
              : std::make_pair(ejiri_factor(spec.curve_samples),
                               great_circle(spec.curve_samples));
      FrenetApparatus fl = frenet(base.first), fr = frenet(base.second);
      double ik = periodic_trapezoid(fl.curvature_or_zero(1).cwiseAbs2(),
                                     fl.length);
      double ikh = periodic_trapezoid(fr.curvature_or_zero(1).cwiseAbs2(),
                                      fr.length);
      return 0.25 * ((2.0 + 2.0 * param * param) * fl.length * fr.length +
                     fr.length * ik + fl.length * ikh);
    }
  }
  return std::nan("");
}

inline double surface_energy(const Surface& s, int grid) {
  if (s.tensor) return willmore_tensor(*s.tensor).value;
  return willmore_flat_conformal(*s.parametric, grid,
                                 s.chart.value_or(FlatChart{})).value;
}

struct SweepRow {
  double param = 0.0;
  double value = 0.0;
  double reference = std::nan("");
  double abs_err = std::nan("");
};

inline std::vector<SweepRow> energy_sweep(const FamilySpec& spec,
                                          const std::vector<double>& params,
                                          int grid) {
  std::vector<SweepRow> rows;
  rows.reserve(params.size());
  for (double p : params) {
    SweepRow row;
    row.param = p;
    row.value = surface_energy(make_surface(spec, p), grid);
    row.reference = reference_energy(spec, p);
    if (std::isfinite(row.reference)) {
      row.abs_err = std::abs(row.value - row.reference);
    }
    rows.push_back(row);
  }
  return rows;
}

// Lattice modulus proxy of the flat induced metric: length ratio for
// tensor tori, the imaginary part of the conformal lattice generator for
// the theta family.
inline double conformal_modulus(const FamilySpec& spec, double param) {
  Surface s = make_surface(spec, param);
  if (s.tensor) {
    return s.tensor->frenet_right.length / s.tensor->frenet_left.length;
  }
  double b3 = std::sqrt(3.0 / (2.0 + std::pow(std::sin(2.0 * param), 2)));
  return std::sqrt(3.0) / b3;
}

struct StabilityProbe {
  double at = 0.0;
  double h = 0.0;
  double first_derivative = 0.0;
  double second_derivative = 0.0;
  double conformal_class_drift = 0.0;
};

// Finite differences of the numerically computed energy, Richardson
// refined from steps h and h/2. At a domain endpoint a one-sided stencil
// is used instead of the central one.
inline StabilityProbe stability_probe(const FamilySpec& spec, double at,
                                      double h, int grid) {
  auto W = [&](double p) { return surface_energy(make_surface(spec, p), grid); };
  const bool no_up = at + h > spec.hi + 1e-12;
  const bool no_down = at - h < spec.lo - 1e-12;
  if (no_up && no_down) throw OutOfRange("probe step too large for domain");
  const double dir = no_up ? 1.0 : -1.0;  // stencil reaches to at - dir*step
  auto d1 = [&](double step) {
    if (!no_up && !no_down) return (W(at + step) - W(at - step)) / (2.0 * step);
    return dir *
           (3.0 * W(at) - 4.0 * W(at - dir * step) + W(at - 2.0 * dir * step)) /
           (2.0 * step);
  };
  auto d2 = [&](double step) {
    if (!no_up && !no_down) {
      return (W(at + step) - 2.0 * W(at) + W(at - step)) / (step * step);
    }
    return (2.0 * W(at) - 5.0 * W(at - dir * step) +
            4.0 * W(at - 2.0 * dir * step) - W(at - 3.0 * dir * step)) /
           (step * step);
  };
  StabilityProbe probe;
  probe.at = at;
  probe.h = h;
  probe.first_derivative = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
  probe.second_derivative = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
  const double up = no_up ? at : at + h;
  const double down = no_down ? at : at - h;
  probe.conformal_class_drift =
      conformal_modulus(spec, up) - conformal_modulus(spec, down);
  return probe;
}

}  // namespace wlab
