#pragma once

// Tensor-product tori built from two unit-speed spherical curves, their
// light-cone lift and the conformal invariants (Schwarzian, Hopf density)
// in closed form from the factor curvatures.

#include <Eigen/Dense>
#include <utility>

#include "wlab/curve.hpp"
#include "wlab/errors.hpp"
#include "wlab/frenet.hpp"

namespace wlab {

// Row-major Kronecker product: component (i,j) of x ⊗ x̂ is x_i * x̂_j.
inline Eigen::VectorXd kron(const Eigen::VectorXd& x,
                            const Eigen::VectorXd& xh) {
  Eigen::VectorXd out(x.size() * xh.size());
  for (int i = 0; i < x.size(); ++i) {
    out.segment(i * xh.size(), xh.size()) = x[i] * xh;
  }
  return out;
}

// Lorentzian product with timelike first slot: <u,v> = -u0 v0 + sum rest.
inline double lorentz(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

// Complex vector stored as an explicit real/imaginary pair.
struct ComplexVec {
  Eigen::VectorXd re, im;

  ComplexVec() = default;
  explicit ComplexVec(int n)
      : re(Eigen::VectorXd::Zero(n)), im(Eigen::VectorXd::Zero(n)) {}
};

// Complex-bilinear Lorentzian product of two ComplexVecs.
inline std::pair<double, double> lorentz_c(const ComplexVec& u,
                                           const ComplexVec& v) {
  double re = lorentz(u.re, v.re) - lorentz(u.im, v.im);
  double im = lorentz(u.re, v.im) + lorentz(u.im, v.re);
  return {re, im};
}

inline ComplexVec conj(const ComplexVec& u) {
  ComplexVec out;
  out.re = u.re;
  out.im = -u.im;
  return out;
}

struct TensorTorus {
  ClosedCurve left, right;
  FrenetApparatus frenet_left, frenet_right;
  int ambient_dim = 0;

  Eigen::VectorXd immersion(double s, double sh) const {
    return kron(left.position(s), right.position(sh));
  }
};

inline TensorTorus build_tensor_torus(ClosedCurve left, ClosedCurve right) {
  if (!left.is_unit_speed() || !right.is_unit_speed()) {
    throw NotUnitSpeed("tensor torus factors must be unit speed");
  }
  TensorTorus t{std::move(left), std::move(right), {}, {}, 0};
  t.frenet_left = frenet(t.left);
  t.frenet_right = frenet(t.right);
  t.ambient_dim = t.left.ambient_dim() * t.right.ambient_dim();

  // Conformal-flatness of the induced metric is equivalent to both frames
  // being orthonormal at the nodes; check the separable pieces directly.
  auto check = [](const FrenetApparatus& ap) {
    double e1 = (ap.frame[0].rowwise().norm().array() - 1.0).abs().maxCoeff();
    double e2 = (ap.frame[0].array() * ap.gamma.array())
                    .rowwise().sum().abs().maxCoeff();
    if (e1 > 1e-9 || e2 > 1e-9) {
      throw NotUnitSpeed("induced metric is not conformal flat");
    }
  };
  check(t.frenet_left);
  check(t.frenet_right);
  return t;
}

// Canonical-lift data at a grid node (j,k) of the product grid.
struct LiftDerivatives {
  Eigen::VectorXd Y;       // (1, gamma ⊗ gamma_hat)
  ComplexVec Yz;           // Y_zbar is its conjugate
  ComplexVec Yzz;
  Eigen::VectorXd Yzzb;    // Y_{z zbar}, real
};

namespace detail {

inline Eigen::VectorXd lift(const Eigen::VectorXd& v, double first = 0.0) {
  Eigen::VectorXd out(v.size() + 1);
  out[0] = first;
  out.tail(v.size()) = v;
  return out;
}

}  // namespace detail

inline LiftDerivatives canonical_lift_derivatives(const TensorTorus& t,
                                                  int j, int k) {
  const auto& fl = t.frenet_left;
  const auto& fr = t.frenet_right;
  const Eigen::VectorXd g = fl.gamma.row(j);
  const Eigen::VectorXd gh = fr.gamma.row(k);
  const Eigen::VectorXd b0 = fl.frame[0].row(j);
  const Eigen::VectorXd bh0 = fr.frame[0].row(k);
  const double k1 = fl.curvature_or_zero(1)[j];
  const double kh1 = fr.curvature_or_zero(1)[k];

  const int nd = t.ambient_dim + 1;
  LiftDerivatives out;
  out.Y = detail::lift(kron(g, gh), 1.0);
  out.Yz = ComplexVec(nd);
  out.Yz.re = detail::lift(0.5 * kron(b0, gh));
  out.Yz.im = detail::lift(-0.5 * kron(g, bh0));

  Eigen::VectorXd term_l = Eigen::VectorXd::Zero(t.ambient_dim);
  Eigen::VectorXd term_r = Eigen::VectorXd::Zero(t.ambient_dim);
  if (fl.frame.size() > 1) {
    term_l = k1 * kron(Eigen::VectorXd(fl.frame[1].row(j)), gh);
  }
  if (fr.frame.size() > 1) {
    term_r = kh1 * kron(g, Eigen::VectorXd(fr.frame[1].row(k)));
  }
  out.Yzzb = detail::lift(0.25 * term_l + 0.25 * term_r - 0.5 * kron(g, gh));
  out.Yzz = ComplexVec(nd);
  out.Yzz.re = detail::lift(0.25 * term_l - 0.25 * term_r);
  out.Yzz.im = detail::lift(-0.5 * kron(b0, bh0));
  return out;
}

// Orthogonal conformal-normal basis sections at a node, and the Hopf
// differential expressed in them.
struct HopfFrame {
  Eigen::VectorXd L1, L2, G00;
  double coeff_L1;                    // k1 / 4
  double coeff_L2;                    // -k1_hat / 4
  std::pair<double, double> coeff_G00;  // (0, -1/2)
};

inline HopfFrame hopf_frame(const TensorTorus& t, int j, int k) {
  const auto& fl = t.frenet_left;
  const auto& fr = t.frenet_right;
  const Eigen::VectorXd g = fl.gamma.row(j);
  const Eigen::VectorXd gh = fr.gamma.row(k);
  const double k1 = fl.curvature_or_zero(1)[j];
  const double kh1 = fr.curvature_or_zero(1)[k];

  HopfFrame out;
  Eigen::VectorXd ggh = detail::lift(kron(g, gh), 1.0);
  Eigen::VectorXd b1g = Eigen::VectorXd::Zero(t.ambient_dim);
  Eigen::VectorXd gb1 = Eigen::VectorXd::Zero(t.ambient_dim);
  if (fl.frame.size() > 1) {
    b1g = kron(Eigen::VectorXd(fl.frame[1].row(j)), gh);
  }
  if (fr.frame.size() > 1) {
    gb1 = kron(g, Eigen::VectorXd(fr.frame[1].row(k)));
  }
  out.L1 = detail::lift(b1g) + 0.5 * k1 * ggh;
  out.L2 = detail::lift(gb1) + 0.5 * kh1 * ggh;
  out.G00 = detail::lift(
      kron(Eigen::VectorXd(fl.frame[0].row(j)),
           Eigen::VectorXd(fr.frame[0].row(k))));
  out.coeff_L1 = 0.25 * k1;
  out.coeff_L2 = -0.25 * kh1;
  out.coeff_G00 = {0.0, -0.5};
  return out;
}

// Schwarzian grid c(s_j, sh_k) = (k1^2 - k1_hat^2) / 4.
inline Eigen::MatrixXd schwarzian(const TensorTorus& t) {
  Eigen::VectorXd k1 = t.frenet_left.curvature_or_zero(1);
  Eigen::VectorXd kh1 = t.frenet_right.curvature_or_zero(1);
  Eigen::MatrixXd c(k1.size(), kh1.size());
  for (int j = 0; j < k1.size(); ++j) {
    for (int k = 0; k < kh1.size(); ++k) {
      c(j, k) = 0.25 * (k1[j] * k1[j] - kh1[k] * kh1[k]);
    }
  }
  return c;
}

// Hopf density grid <kappa, kappa_bar> = 1/4 + (k1^2 + k1_hat^2) / 16.
inline Eigen::MatrixXd hopf_density(const TensorTorus& t) {
  Eigen::VectorXd k1 = t.frenet_left.curvature_or_zero(1);
  Eigen::VectorXd kh1 = t.frenet_right.curvature_or_zero(1);
  Eigen::MatrixXd h(k1.size(), kh1.size());
  for (int j = 0; j < k1.size(); ++j) {
    for (int k = 0; k < kh1.size(); ++k) {
      h(j, k) = 0.25 + (k1[j] * k1[j] + kh1[k] * kh1[k]) / 16.0;
    }
  }
  return h;
}

// Hopf density recomputed from the frame coefficients and the Lorentzian
// norms of the basis sections (cross-check route).
inline double hopf_density_from_frame(const TensorTorus& t, int j, int k) {
  HopfFrame f = hopf_frame(t, j, k);
  double n1 = lorentz(f.L1, f.L1);
  double n2 = lorentz(f.L2, f.L2);
  double n3 = lorentz(f.G00, f.G00);
  double cre = f.coeff_G00.first, cim = f.coeff_G00.second;
  return f.coeff_L1 * f.coeff_L1 * n1 + f.coeff_L2 * f.coeff_L2 * n2 +
         (cre * cre + cim * cim) * n3;
}

}  // namespace wlab
