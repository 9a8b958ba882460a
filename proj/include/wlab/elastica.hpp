#pragma once

// The curve-level reduction of constrained-Willmore tensor tori: the
// elastica ODE system for (k1, k2), its obstruction residuals, curve
// reconstruction in S^3, closure shooting and classification.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "wlab/curve.hpp"
#include "wlab/errors.hpp"
#include "wlab/fourier.hpp"
#include "wlab/frenet.hpp"
#include "wlab/ode.hpp"
#include "wlab/tensor.hpp"

namespace wlab {

struct ElasticaParams {
  double a0 = 1.0;  // constant of the curvature equation
  double q1 = 0.0;  // multiplier constant, a0 = 1 + q1/4
  double J = 0.0;   // first integral k1^2 k2

  static ElasticaParams make(double a0, double J) {
    return {a0, 4.0 * (a0 - 1.0), J};
  }
};

struct ElasticaProfile {
  Eigen::VectorXd nodes;  // arclength samples, 0 .. length inclusive
  Eigen::VectorXd k1, k1_prime, k2;
  ElasticaParams params;

  double length() const { return nodes[nodes.size() - 1]; }
};

// Conserved energy of the reduced second-order equation; its drift along a
// trajectory measures integrator quality.
inline double elastica_hamiltonian(const ElasticaParams& p, double k1,
                                   double k1p) {
  return 0.5 * k1p * k1p + 0.5 * p.J * p.J / (k1 * k1) -
         0.5 * p.a0 * k1 * k1 + std::pow(k1, 4) / 8.0;
}

// Integrate k1'' = k1 k2^2 + a0 k1 - k1^3/2 with k2 = J/k1^2 held through
// the first integral. Nodes are uniform over [0, length].
inline ElasticaProfile solve_elastica(const ElasticaParams& p, double k1_0,
                                      double k1_prime_0, double length,
                                      int n_nodes = 1024) {
  if (p.J != 0.0 && k1_0 <= 0.0) {
    throw BadParams("k1_0 must be positive when J != 0");
  }
  ElasticaProfile prof;
  prof.params = p;
  prof.nodes = Eigen::VectorXd::LinSpaced(n_nodes + 1, 0.0, length);
  prof.k1.resize(n_nodes + 1);
  prof.k1_prime.resize(n_nodes + 1);
  prof.k2.resize(n_nodes + 1);

  auto rhs = [&p](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    if (p.J != 0.0 && y[0] < 1e-9) {
      throw SingularPinch("k1 -> 0 with J != 0");
    }
    double k2sq = p.J != 0.0 ? p.J * p.J / std::pow(y[0], 4) : 0.0;
    dy.resize(2);
    dy[0] = y[1];
    dy[1] = y[0] * k2sq + p.a0 * y[0] - 0.5 * std::pow(y[0], 3);
  };
  std::vector<double> times(prof.nodes.data(),
                            prof.nodes.data() + prof.nodes.size());
  int idx = 0;
  Eigen::VectorXd y0(2);
  y0 << k1_0, k1_prime_0;
  try {
    integrate_dopri5(rhs, y0, 0.0, length, times,
                     [&](double, const Eigen::VectorXd& y) {
                       prof.k1[idx] = y[0];
                       prof.k1_prime[idx] = y[1];
                       prof.k2[idx] =
                           p.J != 0.0 ? p.J / (y[0] * y[0]) : 0.0;
                       ++idx;
                     });
  } catch (const Error& e) {
    if (e.code() == "StepCollapse") {
      throw SingularPinch("step collapse while integrating elastica");
    }
    throw;
  }
  return prof;
}

struct CwResiduals {
  Eigen::VectorXd curvature_eq;   // k1'' - k1 k2^2 - a0 k1 + k1^3/2
  Eigen::VectorXd first_integral; // 2 k1' k2 + k1 k2'
  Eigen::VectorXd torsion;        // k1 k2 k3
};

// Obstruction profiles for closed-curve data sampled on a periodic grid.
inline CwResiduals cw_residual_components(const Eigen::VectorXd& k1,
                                          const Eigen::VectorXd& k2,
                                          const Eigen::VectorXd& k3,
                                          double a0, double period) {
  CwResiduals r;
  Eigen::VectorXd k1pp = denoised_derivative(k1, period, 2);
  Eigen::VectorXd k1p = denoised_derivative(k1, period, 1);
  Eigen::VectorXd k2p = denoised_derivative(k2, period, 1);
  r.curvature_eq = k1pp.array() - k1.array() * k2.array().square() -
                   a0 * k1.array() + 0.5 * k1.array().cube();
  r.first_integral = 2.0 * k1p.array() * k2.array() +
                     k1.array() * k2p.array();
  r.torsion = k1.array() * k2.array() * k3.array();
  return r;
}

enum class CwVerdict { not_constrained_willmore, constrained_willmore, willmore };

inline const char* to_string(CwVerdict v) {
  switch (v) {
    case CwVerdict::not_constrained_willmore: return "not_constrained_willmore";
    case CwVerdict::constrained_willmore: return "constrained_willmore";
    case CwVerdict::willmore: return "willmore";
  }
  return "?";
}

struct CWClassification {
  CwVerdict verdict = CwVerdict::not_constrained_willmore;
  std::optional<double> fitted_a0;
  struct {
    double k1kh1_product = 0.0;
    double elastica_residual = 0.0;
    double torsion_obstruction = 0.0;
  } obstructions;
};

// Decide whether a tensor torus is (constrained) Willmore: one factor must
// be a great circle and the other must satisfy the elastica system for a
// constant a0, fitted here by least squares.
inline CWClassification classify_tensor_cw(const TensorTorus& t,
                                           double tol = 1e-6) {
  CWClassification out;
  const auto& fl = t.frenet_left;
  const auto& fr = t.frenet_right;
  double ml = fl.curvature_or_zero(1).cwiseAbs().maxCoeff();
  double mr = fr.curvature_or_zero(1).cwiseAbs().maxCoeff();
  out.obstructions.k1kh1_product = ml * mr;
  if (std::min(ml, mr) > tol) {
    out.verdict = CwVerdict::not_constrained_willmore;
    return out;
  }
  const FrenetApparatus& f = (ml >= mr) ? fl : fr;  // the non-circle factor

  Eigen::VectorXd k1 = f.curvature_or_zero(1);
  Eigen::VectorXd k2 = f.curvature_or_zero(2);
  Eigen::VectorXd k3 = f.curvature_or_zero(3);
  double k1sq = k1.squaredNorm();
  if (k1sq < 1e-20) {
    // Both factors are great circles: the Clifford double cover, Willmore.
    out.verdict = CwVerdict::willmore;
    out.fitted_a0 = 1.0;
    return out;
  }
  // r = k1'' - k1 k2^2 + k1^3/2 should equal a0 * k1 for a constant a0.
  Eigen::VectorXd k1pp = denoised_derivative(k1, f.length, 2);
  Eigen::VectorXd r = k1pp.array() - k1.array() * k2.array().square() +
                      0.5 * k1.array().cube();
  double a0 = r.dot(k1) / k1sq;
  out.fitted_a0 = a0;

  CwResiduals res = cw_residual_components(k1, k2, k3, a0, f.length);
  out.obstructions.elastica_residual =
      res.curvature_eq.cwiseAbs().maxCoeff();
  out.obstructions.torsion_obstruction = res.torsion.cwiseAbs().maxCoeff();
  double fi = res.first_integral.cwiseAbs().maxCoeff();

  if (out.obstructions.elastica_residual < tol && fi < tol &&
      out.obstructions.torsion_obstruction < tol) {
    out.verdict = std::abs(a0 - 1.0) < tol ? CwVerdict::willmore
                                           : CwVerdict::constrained_willmore;
  } else {
    out.verdict = CwVerdict::not_constrained_willmore;
  }
  return out;
}

// A reconstructed arc in S^3 with its moving frame at both ends.
struct CurveArc {
  Eigen::VectorXd nodes;
  Eigen::MatrixXd positions;  // (n+1) x 4
  Eigen::Matrix4d start_frame = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d end_frame = Eigen::Matrix4d::Identity();
  double length = 0.0;
};

// Integrate the Frenet system gamma' = b0, b0' = k1 b1 - gamma,
// b1' = k2 b2 - k1 b0, b2' = -k2 b1 in R^4, with (k1, k1') carried as
// additional state so the curvature entering the frame is exact. The frame
// is re-orthonormalized every 50 accepted steps.
inline CurveArc reconstruct_curve_s3(const ElasticaProfile& profile) {
  const ElasticaParams p = profile.params;
  const int n = static_cast<int>(profile.nodes.size()) - 1;
  CurveArc arc;
  arc.nodes = profile.nodes;
  arc.length = profile.length();
  arc.positions.resize(n + 1, 4);

  Eigen::VectorXd y0(18);
  Eigen::Map<Eigen::Matrix4d>(y0.data()) = Eigen::Matrix4d::Identity();
  y0[16] = profile.k1[0];
  y0[17] = profile.k1_prime[0];

  auto rhs = [&p](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    Eigen::Map<const Eigen::Matrix4d> F(y.data());
    double k1 = y[16], k1p = y[17];
    double k2 = p.J != 0.0 ? p.J / (k1 * k1) : 0.0;
    dy.resize(18);
    Eigen::Map<Eigen::Matrix4d> dF(dy.data());
    dF.col(0) = F.col(1);
    dF.col(1) = k1 * F.col(2) - F.col(0);
    dF.col(2) = k2 * F.col(3) - k1 * F.col(1);
    dF.col(3) = -k2 * F.col(2);
    double k2sq = k2 * k2;
    dy[16] = k1p;
    dy[17] = k1 * k2sq + p.a0 * k1 - 0.5 * std::pow(k1, 3);
  };
  auto hook = [](Eigen::VectorXd& y) {
    Eigen::Map<Eigen::Matrix4d> F(y.data());
    Eigen::Matrix4d before = F;
    // modified Gram-Schmidt on the frame columns
    for (int c = 0; c < 4; ++c) {
      for (int q = 0; q < c; ++q) {
        F.col(c) -= F.col(q).dot(F.col(c)) * F.col(q);
      }
      F.col(c).normalize();
    }
    double corr = (F - before).norm();
    if (corr > 1e-6) {
      throw FrameDrift("re-orthonormalization correction " +
                       std::to_string(corr));
    }
  };

  std::vector<double> times(profile.nodes.data(),
                            profile.nodes.data() + profile.nodes.size());
  int idx = 0;
  OdeOptions opt;
  opt.hook_every = 50;
  integrate_dopri5(rhs, y0, 0.0, arc.length, times,
                   [&](double, const Eigen::VectorXd& y) {
                     Eigen::Map<const Eigen::Matrix4d> F(y.data());
                     arc.positions.row(idx) = F.col(0).transpose();
                     if (idx == n) arc.end_frame = F;
                     ++idx;
                   },
                   opt, hook);
  return arc;
}

struct ClosureError {
  double position_gap = 0.0;
  double frame_gap = 0.0;
};

inline ClosureError closure_error(const CurveArc& arc) {
  ClosureError e;
  e.position_gap =
      (arc.positions.row(arc.positions.rows() - 1) - arc.positions.row(0))
          .norm();
  e.frame_gap = (arc.end_frame - arc.start_frame).norm();
  return e;
}

// View a closed reconstructed arc as a ClosedCurve (drops the duplicated
// endpoint; the node count must end up a power of two).
inline ClosedCurve arc_to_closed_curve(const CurveArc& arc, double tol = 1e-7) {
  ClosureError e = closure_error(arc);
  if (e.position_gap > tol) {
    throw Error("NotClosed",
                "position gap " + std::to_string(e.position_gap));
  }
  int n = static_cast<int>(arc.positions.rows()) - 1;
  Eigen::MatrixXd samples = arc.positions.topRows(n);
  // reconstruction drift can leave points off the sphere by ~1e-12
  for (int i = 0; i < n; ++i) samples.row(i).normalize();
  return ClosedCurve(arc.length, samples);
}

// Shooting for a closed elastica: unknowns (k1(0), total length) with
// k1'(0) = 0 pinned at a symmetry point. Gauss-Newton on the frame and
// curvature periodicity defects.
inline ElasticaProfile shoot_closed(const ElasticaParams& p, double k1_0_guess,
                                    double length_guess, int max_iter = 40,
                                    double tol = 1e-7) {
  auto residual = [&p](double k1_0, double len) -> Eigen::VectorXd {
    ElasticaProfile prof = solve_elastica(p, k1_0, 0.0, len, 256);
    CurveArc arc = reconstruct_curve_s3(prof);
    Eigen::VectorXd r(18);
    Eigen::Matrix4d d = arc.end_frame - arc.start_frame;
    r.head(16) = Eigen::Map<Eigen::VectorXd>(d.data(), 16);
    r[16] = prof.k1[prof.k1.size() - 1] - prof.k1[0];
    r[17] = prof.k1_prime[prof.k1_prime.size() - 1];
    return r;
  };

  double k1_0 = k1_0_guess, len = length_guess;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd r0 = residual(k1_0, len);
    if (r0.norm() < tol) {
      return solve_elastica(p, k1_0, 0.0, len, 1024);
    }
    double h1 = 1e-7 * (1.0 + std::abs(k1_0));
    double h2 = 1e-7 * (1.0 + std::abs(len));
    Eigen::MatrixXd Jm(18, 2);
    Jm.col(0) = (residual(k1_0 + h1, len) - r0) / h1;
    Jm.col(1) = (residual(k1_0, len + h2) - r0) / h2;
    Eigen::Vector2d step =
        Jm.colPivHouseholderQr().solve(-r0);
    // keep the iteration in a sane region
    double limit = 0.5 * (1.0 + std::abs(len));
    if (step.norm() > limit) step *= limit / step.norm();
    k1_0 += step[0];
    len += step[1];
    if (len <= 0.0 || !std::isfinite(k1_0) || !std::isfinite(len)) {
      throw NoConvergence("shooting iterate left the feasible region");
    }
  }
  throw NoConvergence("closure not reached after " +
                      std::to_string(max_iter) + " iterations");
}

// The homogeneous closed curve with predicted constant curvatures.
struct HomogeneousCurve {
  ClosedCurve curve;
  double k1_sq = 0.0, k2_sq = 0.0;
};

inline HomogeneousCurve homogeneous_curve(double a, double b, double lambda,
                                          int sample_count = 256) {
  if (std::abs(a * a + b * b - 1.0) > 1e-12) {
    throw BadParams("a^2 + b^2 must equal 1");
  }
  if (a <= 0.0 || b <= 0.0) throw BadParams("a, b must be positive");
  // closure requires lambda = p/q rational
  int best_q = -1, best_p = 0;
  for (int q = 1; q <= 64; ++q) {
    double pd = lambda * q;
    double pr = std::round(pd);
    if (std::abs(pd - pr) < 1e-9 * q) {
      best_q = q;
      best_p = static_cast<int>(pr);
      break;
    }
  }
  if (best_q < 0) {
    throw BadParams("lambda is not (close to) rational; curve does not close");
  }
  (void)best_p;
  const double w = std::sqrt(a * a + b * b * lambda * lambda);
  const double period = 2.0 * std::numbers::pi * w * best_q;
  auto gen = [a, b, lambda, w](double s) {
    Eigen::VectorXd p(4);
    p << a * std::cos(s / w), a * std::sin(s / w),
        b * std::cos(lambda * s / w), b * std::sin(lambda * s / w);
    return p;
  };
  HomogeneousCurve out{ClosedCurve(4, period, sample_count, gen), 0.0, 0.0};
  double w2 = w * w;
  out.k1_sq = a * a * b * b * std::pow(lambda * lambda - 1.0, 2) / (w2 * w2);
  out.k2_sq = lambda * lambda / (w2 * w2);
  return out;
}

}  // namespace wlab
