#pragma once

// Frenet apparatus of a unit-speed closed spherical curve, built by
// Gram-Schmidt on spectral derivatives. Intermediate curvatures are kept
// nonnegative; the last one carries the orientation sign via the
// generalized cross product of the lower frame vectors.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "wlab/curve.hpp"
#include "wlab/errors.hpp"
#include "wlab/fourier.hpp"

namespace wlab {

struct FrenetApparatus {
  double length = 0.0;
  Eigen::VectorXd nodes;          // arclength sample points
  Eigen::MatrixXd gamma;          // curve samples, N x dim
  std::vector<Eigen::MatrixXd> frame;  // frame[i] = beta_i samples, N x dim
  Eigen::MatrixXd curvatures;     // column i-1 holds k_i; see levels()
  int degenerate_from = -1;       // first frame level that is undefined

  // number of curvature functions actually available
  int levels() const { return static_cast<int>(curvatures.cols()); }

  const Eigen::VectorXd curvature(int i) const {  // k_i, i >= 1
    if (i < 1 || i > levels()) {
      throw DegenerateFrame("curvature k_" + std::to_string(i) +
                            " not available (degenerate_from=" +
                            std::to_string(degenerate_from) + ")");
    }
    return curvatures.col(i - 1);
  }

  // k_i samples, or all-zero when the frame degenerated before level i.
  Eigen::VectorXd curvature_or_zero(int i) const {
    if (i >= 1 && i <= levels()) return curvatures.col(i - 1);
    return Eigen::VectorXd::Zero(gamma.rows());
  }
};

namespace detail {

// w orthogonal to the columns of basis (d x (d-1)), oriented so that
// det([basis | w]) > 0. Cofactor expansion along the appended column.
inline Eigen::VectorXd oriented_complement(const Eigen::MatrixXd& basis) {
  const int d = static_cast<int>(basis.rows());
  Eigen::VectorXd w(d);
  Eigen::MatrixXd minor(d - 1, d - 1);
  for (int i = 0; i < d; ++i) {
    int r = 0;
    for (int row = 0; row < d; ++row) {
      if (row == i) continue;
      minor.row(r++) = basis.row(row);
    }
    double sign = ((i + d) % 2 == 0) ? -1.0 : 1.0;
    w[i] = sign * minor.determinant();
  }
  return w;
}

}  // namespace detail

inline FrenetApparatus frenet(const ClosedCurve& curve) {
  if (!curve.is_unit_speed()) {
    throw NotUnitSpeed("frenet requires a unit-speed curve");
  }
  const int n = curve.sample_count();
  const int d = curve.ambient_dim();
  const int max_levels = d - 2;  // k_1 .. k_{d-2}

  FrenetApparatus ap;
  ap.length = curve.period();
  ap.nodes = curve.nodes();
  ap.gamma = curve.samples();
  ap.frame.push_back(curve.derivative_samples(1));  // beta_0

  Eigen::MatrixXd curv(n, std::max(max_levels, 0));
  double max_curv = 0.0;
  int got = 0;

  for (int lev = 1; lev <= max_levels; ++lev) {
    // k_lev * beta_lev = beta_{lev-1}' + k_{lev-1} * beta_{lev-2},
    // with k_0 = 1 and beta_{-1} = gamma.
    Eigen::MatrixXd dprev(n, d);
    {
      const Eigen::MatrixXd& b = ap.frame[lev - 1];
      for (int c = 0; c < d; ++c) {
        dprev.col(c) = periodic_derivative(b.col(c), curve.period(), 1);
      }
    }
    Eigen::MatrixXd v = dprev;
    if (lev == 1) {
      v += ap.gamma;
    } else {
      v += curv.col(lev - 2).asDiagonal() * ap.frame[lev - 2];
    }

    const double thr = 1e-7 * (1.0 + max_curv);
    if (lev == max_levels) {
      // Last level: signed curvature against the oriented complement.
      Eigen::MatrixXd beta(n, d);
      Eigen::VectorXd k(n);
      Eigen::MatrixXd basis(d, d - 1);
      for (int j = 0; j < n; ++j) {
        basis.col(0) = ap.gamma.row(j).transpose();
        for (int i = 0; i < lev; ++i) {
          basis.col(i + 1) = ap.frame[i].row(j).transpose();
        }
        Eigen::VectorXd w = detail::oriented_complement(basis);
        w.normalize();
        beta.row(j) = w.transpose();
        k[j] = v.row(j).dot(w);
      }
      curv.col(lev - 1) = k;
      if (k.cwiseAbs().maxCoeff() < thr) {
        ap.degenerate_from = lev;
        got = lev;
        break;
      }
      ap.frame.push_back(beta);
      got = lev;
    } else {
      Eigen::VectorXd k = v.rowwise().norm();
      curv.col(lev - 1) = k;
      got = lev;
      if (k.minCoeff() < thr) {
        ap.degenerate_from = lev;
        break;
      }
      max_curv = std::max(max_curv, k.maxCoeff());
      Eigen::MatrixXd beta = k.cwiseInverse().asDiagonal() * v;
      ap.frame.push_back(beta);
    }
  }
  ap.curvatures = curv.leftCols(got);
  return ap;
}

// Total curvature of the curve as a space curve in R^d:
// integral of sqrt(k_1^2 + 1) over arclength (>= 2*pi by Fenchel).
inline double total_space_curvature(const FrenetApparatus& ap) {
  Eigen::VectorXd k1 = ap.curvature_or_zero(1);
  Eigen::VectorXd f = (k1.array().square() + 1.0).sqrt();
  return periodic_trapezoid(f, ap.length);
}

inline double total_space_curvature(const ClosedCurve& curve) {
  return total_space_curvature(frenet(curve));
}

// Bending-type energy: integral of (k_1^2 + a0) over arclength.
inline double bending_energy(const FrenetApparatus& ap, double a0) {
  Eigen::VectorXd k1 = ap.curvature_or_zero(1);
  return periodic_trapezoid(k1.cwiseAbs2(), ap.length) + a0 * ap.length;
}

inline double bending_energy(const ClosedCurve& curve, double a0) {
  return bending_energy(frenet(curve), a0);
}

}  // namespace wlab
