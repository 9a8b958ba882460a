#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wlab/corpus.hpp"
#include "wlab/families.hpp"
#include "wlab/tensor.hpp"

using namespace wlab;
using std::numbers::pi;

TEST_SUITE("tensor") {

TEST_CASE("kron basis case and bilinearity") {
  Eigen::VectorXd x(2), xh(2);
  x << 1.0, 0.0;
  xh << 0.0, 1.0;
  Eigen::VectorXd k = kron(x, xh);
  CHECK(k.size() == 4);
  CHECK(k[0] == 0.0);
  CHECK(k[1] == 1.0);
  CHECK(k[2] == 0.0);
  CHECK(k[3] == 0.0);
  CHECK((kron(3.0 * x, xh) - 3.0 * kron(x, xh)).norm() == 0.0);
}

TEST_CASE("inner-product identity on random quadruples") {
  std::mt19937 rng(42u);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd f(3), g(3), fh(4), gh(4);
    for (int c = 0; c < 3; ++c) { f[c] = gauss(rng); g[c] = gauss(rng); }
    for (int c = 0; c < 4; ++c) { fh[c] = gauss(rng); gh[c] = gauss(rng); }
    double lhs = kron(f, fh).dot(kron(g, gh));
    double rhs = f.dot(g) * fh.dot(gh);
    CHECK(std::abs(lhs - rhs) < 1e-13 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("build checks unit speed and conformal flatness") {
  ClosedCurve fast(3, pi, 64, [](double t) {
    Eigen::VectorXd p(3);
    p << std::cos(2.0 * t), std::sin(2.0 * t), 0.0;
    return p;
  });
  CHECK_THROWS_AS(build_tensor_torus(fast, great_circle(64)), NotUnitSpeed);

  TensorTorus t = build_tensor_torus(great_circle(64), great_circle(64));
  CHECK(t.ambient_dim == 4);
  CHECK(t.immersion(0.0, 0.0).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lift normalizations under the Lorentzian product") {
  for (auto& [name, t] : torus_corpus(256)) {
    (void)name;
    double worst = 0.0;
    for (int j : {0, 41, 97}) {
      for (int k : {0, 59}) {
        LiftDerivatives ld = canonical_lift_derivatives(t, j, k);
        worst = std::max(worst, std::abs(lorentz(ld.Y, ld.Y)));
        auto [zz_re, zz_im] = lorentz_c(ld.Yz, ld.Yz);
        worst = std::max({worst, std::abs(zz_re), std::abs(zz_im)});
        auto [zb_re, zb_im] = lorentz_c(ld.Yz, conj(ld.Yz));
        worst = std::max(worst, std::abs(zb_re - 0.5));
        worst = std::max(worst, std::abs(zb_im));
      }
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("lift derivatives match numerical differentiation of Y") {
  TensorTorus t = build_tensor_torus(ejiri_factor(256), small_circle(0.7, 256));
  const int j = 23, k = 77;
  const double s = t.left.period() * j / 256;
  const double sh = t.right.period() * k / 256;
  const double h = 1e-5;
  auto Y = [&](double u, double v) {
    Eigen::VectorXd out(t.ambient_dim + 1);
    out[0] = 1.0;
    out.tail(t.ambient_dim) = t.immersion(u, v);
    return out;
  };
  Eigen::VectorXd Ys = (Y(s + h, sh) - Y(s - h, sh)) / (2.0 * h);
  Eigen::VectorXd Ysh = (Y(s, sh + h) - Y(s, sh - h)) / (2.0 * h);
  Eigen::VectorXd Yss = (Y(s + h, sh) - 2.0 * Y(s, sh) + Y(s - h, sh)) / (h * h);
  Eigen::VectorXd Yshsh =
      (Y(s, sh + h) - 2.0 * Y(s, sh) + Y(s, sh - h)) / (h * h);

  LiftDerivatives ld = canonical_lift_derivatives(t, j, k);
  // z = s + i*sh: Y_z = (Y_s - i Y_sh)/2, 4 Y_{z zbar} = Y_ss + Y_shsh
  CHECK((ld.Yz.re - 0.5 * Ys).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((ld.Yz.im + 0.5 * Ysh).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((4.0 * ld.Yzzb - (Yss + Yshsh)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("Clifford double cover: Y_zzb = -(1/2)(0, y)") {
  TensorTorus t = build_tensor_torus(great_circle(128), great_circle(128));
  LiftDerivatives ld = canonical_lift_derivatives(t, 0, 0);
  Eigen::VectorXd want(t.ambient_dim + 1);
  want[0] = 0.0;
  want.tail(t.ambient_dim) = -0.5 * t.immersion(0.0, 0.0);
  CHECK((ld.Yzzb - want).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Schwarzian and Hopf density closed forms") {
  TensorTorus cliff = build_tensor_torus(great_circle(128), great_circle(128));
  CHECK(schwarzian(cliff).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((hopf_density(cliff).array() - 0.25).abs().maxCoeff() < 1e-10);

  TensorTorus ejiri = build_tensor_torus(ejiri_factor(128), great_circle(128));
  CHECK((schwarzian(ejiri).array() - 0.5).abs().maxCoeff() < 1e-8);
  CHECK((hopf_density(ejiri).array() - 3.0 / 8.0).abs().maxCoeff() < 1e-8);
  // 4 <Y_zz, Y_zzb> = c
  LiftDerivatives ld = canonical_lift_derivatives(ejiri, 5, 9);
  ComplexVec zzb(ejiri.ambient_dim + 1);
  zzb.re = ld.Yzzb;
  auto [c_re, c_im] = lorentz_c(ld.Yzz, zzb);
  CHECK(4.0 * c_re == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(std::abs(c_im) < 1e-10);

  // y_a with a = 0.6: k1 = k1_hat = b/a
  double a = 0.6, b = 0.8;
  TensorTorus ya = build_tensor_torus(small_circle(a, 128), small_circle(a, 128));
  double want = 0.25 + 2.0 * (b / a) * (b / a) / 16.0;
  CHECK((hopf_density(ya).array() - want).abs().maxCoeff() < 1e-8);
}

TEST_CASE("density from frame coefficients agrees with the closed form") {
  for (auto& [name, t] : torus_corpus(256)) {
    (void)name;
    Eigen::MatrixXd h = hopf_density(t);
    double worst = 0.0;
    for (int j : {3, 101}) {
      for (int k : {17, 202}) {
        worst = std::max(worst,
                         std::abs(hopf_density_from_frame(t, j, k) - h(j, k)));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Hopf density never drops below 1/4") {
  for (auto& [name, t] : torus_corpus(256)) {
    (void)name;
    CHECK(hopf_density(t).minCoeff() >= 0.25);
  }
}

}  // TEST_SUITE
