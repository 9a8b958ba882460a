#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wlab/corpus.hpp"
#include "wlab/elastica.hpp"
#include "wlab/errors.hpp"
#include "wlab/families.hpp"
#include "wlab/frenet.hpp"

using namespace wlab;
using std::numbers::pi;

TEST_SUITE("frenet") {

TEST_CASE("great circle is a geodesic") {
  FrenetApparatus ap = frenet(great_circle_s2(128));
  CHECK(ap.degenerate_from == 1);
  CHECK(ap.curvature_or_zero(1).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(ap.curvature(2), DegenerateFrame);
}

TEST_CASE("circle with k1 = sqrt(2)") {
  FrenetApparatus ap = frenet(ejiri_factor(256));
  Eigen::VectorXd k1 = ap.curvature(1);
  CHECK((k1.array() - std::sqrt(2.0)).abs().maxCoeff() < 1e-9);
  CHECK(ap.length == doctest::Approx(2.0 * pi / std::sqrt(3.0)));
}

TEST_CASE("homogeneous curve matches its closed-form curvatures") {
  HomogeneousCurve hc = homogeneous_curve(0.6, 0.8, 2.0, 256);
  FrenetApparatus ap = frenet(hc.curve);
  Eigen::VectorXd k1 = ap.curvature(1);
  Eigen::VectorXd k2 = ap.curvature(2);
  CHECK((k1.array().square() - hc.k1_sq).abs().maxCoeff() < 1e-8);
  CHECK((k2.array().square() - hc.k2_sq).abs().maxCoeff() < 1e-8);
}

TEST_CASE("frame is orthonormal and orthogonal to the curve") {
  for (const CorpusEntry& e : curve_corpus(256)) {
    FrenetApparatus ap = frenet(e.curve);
    const int n = static_cast<int>(ap.gamma.rows());
    double worst = 0.0;
    for (int j = 0; j < n; j += 17) {
      for (size_t i = 0; i < ap.frame.size(); ++i) {
        Eigen::VectorXd bi = ap.frame[i].row(j);
        worst = std::max(worst, std::abs(bi.dot(ap.gamma.row(j).transpose())));
        for (size_t l = 0; l <= i; ++l) {
          double want = (l == i) ? 1.0 : 0.0;
          worst = std::max(
              worst,
              std::abs(bi.dot(ap.frame[l].row(j).transpose()) - want));
        }
      }
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("Frenet residuals vanish on an analytic curve") {
  // beta_0' = k1 beta_1 - gamma for the homogeneous curve
  HomogeneousCurve hc = homogeneous_curve(0.6, 0.8, 2.0, 256);
  FrenetApparatus ap = frenet(hc.curve);
  Eigen::MatrixXd db0(ap.gamma.rows(), 4);
  for (int c = 0; c < 4; ++c) {
    db0.col(c) = periodic_derivative(ap.frame[0].col(c), ap.length, 1);
  }
  Eigen::MatrixXd resid =
      db0 - ap.curvature(1).asDiagonal() * ap.frame[1] + ap.gamma;
  CHECK(resid.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("curvature error drops >= 4x per sample doubling") {
  // non-power-of-two grids exercise the finite-difference fallback, whose
  // truncation error is visible above the floating floor at these sizes
  auto err = [](int n) {
    HomogeneousCurve hc = homogeneous_curve(0.6, 0.8, 2.0, n);
    Eigen::VectorXd k1 = frenet(hc.curve).curvature(1);
    return (k1.array().square() - hc.k1_sq).abs().maxCoeff();
  };
  CHECK(err(134) / err(268) > 4.0);
}

TEST_CASE("reparametrization refines until the seed resolution is irrelevant") {
  double ref = bending_energy(perturbed_great_circle(7u, 0.05, 1024), 1.0);
  for (int n : {32, 64, 256}) {
    CHECK(bending_energy(perturbed_great_circle(7u, 0.05, n), 1.0) ==
          doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("total space curvature: Fenchel with equality on great circles") {
  CHECK(total_space_curvature(great_circle_s2(256)) ==
        doctest::Approx(2.0 * pi).epsilon(1e-12));
  // circle of curvature sqrt(2): integrand sqrt(3), length 2pi/sqrt(3)
  CHECK(total_space_curvature(ejiri_factor(256)) ==
        doctest::Approx(2.0 * pi).epsilon(1e-9));
  for (unsigned seed : {11u, 12u, 13u}) {
    ClosedCurve c = perturbed_great_circle(seed, 0.05, 256);
    CHECK(total_space_curvature(c) >= 2.0 * pi - 1e-6);
  }
}

TEST_CASE("bending energy closed forms") {
  CHECK(bending_energy(great_circle_s2(256), 4.0) ==
        doctest::Approx(8.0 * pi).epsilon(1e-12));
  // k1 = sqrt(2), length 2pi/sqrt(3): (2+4) * 2pi/sqrt(3) = 4pi*sqrt(3),
  // the equality case of E >= 4pi*sqrt(a0-1) at a0 = 4
  CHECK(bending_energy(ejiri_factor(256), 4.0) ==
        doctest::Approx(4.0 * pi * std::sqrt(3.0)).epsilon(1e-9));
  // circle with k1 = sqrt(a0-2) at a0 = 6: length 2pi/sqrt(5), energy 4pi*sqrt(5)
  CHECK(bending_energy(small_circle(1.0 / std::sqrt(5.0), 256), 6.0) ==
        doctest::Approx(4.0 * pi * std::sqrt(5.0)).epsilon(1e-9));
}

}  // TEST_SUITE
