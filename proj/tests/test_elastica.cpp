#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wlab/elastica.hpp"
#include "wlab/families.hpp"

using namespace wlab;
using std::numbers::pi;

TEST_SUITE("elastica") {

TEST_CASE("residuals vanish for the sqrt(2) circle profile") {
  const int n = 256;
  Eigen::VectorXd k1 = Eigen::VectorXd::Constant(n, std::sqrt(2.0));
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  CwResiduals r = cw_residual_components(k1, z, z, 1.0, 2.0 * pi);
  CHECK(r.curvature_eq.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(r.first_integral.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.torsion.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constant profile with torsion needs a0 = k1^2/2 - k2^2") {
  const int n = 128;
  const double c1 = 1.3, c2 = 0.7;
  Eigen::VectorXd k1 = Eigen::VectorXd::Constant(n, c1);
  Eigen::VectorXd k2 = Eigen::VectorXd::Constant(n, c2);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  double a0 = 0.5 * c1 * c1 - c2 * c2;
  CwResiduals r = cw_residual_components(k1, k2, z, a0, 5.0);
  CHECK(r.curvature_eq.cwiseAbs().maxCoeff() < 1e-12);
  // wrong a0 leaves a residual of size |da0| * k1
  CwResiduals bad = cw_residual_components(k1, k2, z, a0 + 0.1, 5.0);
  CHECK(bad.curvature_eq.cwiseAbs().maxCoeff() ==
        doctest::Approx(0.1 * c1).epsilon(1e-10));
}

TEST_CASE("perturbed circle residual matches symbolic differentiation") {
  const int n = 256;
  const double eps = 0.1;
  Eigen::VectorXd k1(n), z = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    k1[j] = std::sqrt(2.0) + eps * std::sin(2.0 * pi * j / n);
  }
  CwResiduals r = cw_residual_components(k1, z, z, 1.0, 2.0 * pi);
  for (int j = 0; j < n; ++j) {
    double s = 2.0 * pi * j / n;
    double k = std::sqrt(2.0) + eps * std::sin(s);
    double want = -eps * std::sin(s) - k + 0.5 * k * k * k;
    CHECK(r.curvature_eq[j] == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("equilibrium initial data stays constant") {
  ElasticaProfile p =
      solve_elastica(ElasticaParams::make(1.0, 0.0), std::sqrt(2.0), 0.0, 10.0);
  CHECK((p.k1.array() - std::sqrt(2.0)).abs().maxCoeff() < 1e-10);
  CHECK(p.k1_prime.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("small oscillation about sqrt(2) has period pi*sqrt(2)") {
  // linearization of k1'' = a0 k1 - k1^3/2 at k1 = sqrt(2), a0 = 1:
  // delta'' = (a0 - 3 k1^2 / 2) delta = -2 delta, so period 2 pi / sqrt(2)
  ElasticaProfile p = solve_elastica(ElasticaParams::make(1.0, 0.0),
                                     std::sqrt(2.0) + 0.01, 0.0, 20.0, 8192);
  // first return of k1 to a maximum: find the first index where k1' changes
  // sign from - to + after going negative, then the next maximum
  std::vector<double> maxima;
  for (int j = 1; j + 1 < p.k1.size(); ++j) {
    if (p.k1[j] > p.k1[j - 1] && p.k1[j] > p.k1[j + 1]) {
      maxima.push_back(p.nodes[j]);
    }
  }
  REQUIRE(maxima.size() >= 2);
  double period = maxima[1] - maxima[0];
  CHECK(period == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("first integral and Hamiltonian are conserved") {
  ElasticaParams p = ElasticaParams::make(1.0, 0.3);
  ElasticaProfile prof = solve_elastica(p, 1.2, 0.0, 100.0, 2048);
  Eigen::VectorXd fi = prof.k1.array().square() * prof.k2.array();
  CHECK((fi.array() - p.J).abs().maxCoeff() < 1e-8);
  double h0 = elastica_hamiltonian(p, prof.k1[0], prof.k1_prime[0]);
  double drift = 0.0;
  for (int j = 0; j < prof.k1.size(); ++j) {
    drift = std::max(drift, std::abs(elastica_hamiltonian(p, prof.k1[j],
                                                          prof.k1_prime[j]) -
                                     h0));
  }
  CHECK(drift < 1e-8);
}

TEST_CASE("pinch toward k1 = 0 with torsion is an error") {
  CHECK_THROWS_AS(solve_elastica(ElasticaParams::make(1.0, 0.5), -0.1, 0.0, 1.0),
                  BadParams);
  CHECK_THROWS_AS(solve_elastica(ElasticaParams::make(1.0, 0.5), 1e-10, 0.0, 1.0),
                  SingularPinch);
  // away from the threshold the J^2/(2 k1^2) barrier keeps k1 positive
  ElasticaProfile p =
      solve_elastica(ElasticaParams::make(-5.0, 0.5), 0.3, -0.5, 50.0);
  CHECK(p.k1.minCoeff() > 0.0);
}

TEST_CASE("reconstruction: k1 = sqrt(2), k2 = 0 gives a planar circle in S^3") {
  ElasticaProfile prof = solve_elastica(ElasticaParams::make(1.0, 0.0),
                                        std::sqrt(2.0), 0.0,
                                        2.0 * pi / std::sqrt(3.0), 256);
  CurveArc arc = reconstruct_curve_s3(prof);
  ClosureError e = closure_error(arc);
  CHECK(e.position_gap < 1e-9);
  CHECK(e.frame_gap < 1e-8);
  ClosedCurve c = arc_to_closed_curve(arc);
  FrenetApparatus ap = frenet(c);
  CHECK((ap.curvature_or_zero(1).array() - std::sqrt(2.0)).abs().maxCoeff() <
        1e-7);
  CHECK(ap.curvature_or_zero(2).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("reconstruction round-trip on a homogeneous profile") {
  HomogeneousCurve hc = homogeneous_curve(0.6, 0.8, 2.0, 256);
  double k1c = std::sqrt(hc.k1_sq), k2c = std::sqrt(hc.k2_sq);
  ElasticaParams p =
      ElasticaParams::make(0.5 * hc.k1_sq - hc.k2_sq, hc.k1_sq * k2c);
  ElasticaProfile prof = solve_elastica(p, k1c, 0.0, hc.curve.period(), 256);
  CurveArc arc = reconstruct_curve_s3(prof);
  CHECK(closure_error(arc).position_gap < 1e-8);
  FrenetApparatus ap = frenet(arc_to_closed_curve(arc));
  CHECK((ap.curvature_or_zero(1).array() - k1c).abs().maxCoeff() < 1e-7);
  CHECK((ap.curvature_or_zero(2).cwiseAbs().array() - k2c).abs().maxCoeff() <
        1e-7);
}

TEST_CASE("zero-curvature profile reconstructs a great circle") {
  ElasticaProfile prof;
  prof.params = ElasticaParams::make(0.0, 0.0);
  prof.nodes = Eigen::VectorXd::LinSpaced(257, 0.0, 2.0 * pi);
  prof.k1 = Eigen::VectorXd::Zero(257);
  prof.k1_prime = Eigen::VectorXd::Zero(257);
  prof.k2 = Eigen::VectorXd::Zero(257);
  CurveArc arc = reconstruct_curve_s3(prof);
  CHECK(closure_error(arc).position_gap < 1e-10);
  // the image stays in the coordinate 2-plane of the seed frame
  CHECK(arc.positions.col(2).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(arc.positions.col(3).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("shooting closes the constant solution") {
  ElasticaProfile prof = shoot_closed(ElasticaParams::make(1.0, 0.0), 1.5, 3.5);
  CHECK(prof.k1[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(prof.length() == doctest::Approx(2.0 * pi / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("infeasible shooting parameters fail loudly") {
  CHECK_THROWS_AS(shoot_closed(ElasticaParams::make(-5.0, 10.0), 0.1, 5.0),
                  NoConvergence);
}

TEST_CASE("homogeneous curve closure and parameter validation") {
  CHECK_THROWS_AS(homogeneous_curve(0.6, 0.7, 2.0), BadParams);
  CHECK_THROWS_AS(homogeneous_curve(0.6, 0.8, std::sqrt(2.0)), BadParams);
  HomogeneousCurve hc = homogeneous_curve(1.0 / std::sqrt(3.0),
                                          std::sqrt(2.0 / 3.0), 0.0, 256);
  CHECK(hc.k1_sq == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("classification of the named tori") {
  auto ejiri = build_tensor_torus(ejiri_factor(256), great_circle(256));
  CWClassification c1 = classify_tensor_cw(ejiri);
  CHECK(c1.verdict == CwVerdict::willmore);
  REQUIRE(c1.fitted_a0.has_value());
  CHECK(*c1.fitted_a0 == doctest::Approx(1.0).epsilon(1e-8));

  auto homog = build_tensor_torus(homogeneous_curve(0.6, 0.8, 2.0).curve,
                                  great_circle(256));
  CWClassification c2 = classify_tensor_cw(homog);
  CHECK(c2.verdict == CwVerdict::constrained_willmore);
  HomogeneousCurve hc = homogeneous_curve(0.6, 0.8, 2.0);
  CHECK(*c2.fitted_a0 ==
        doctest::Approx(0.5 * hc.k1_sq - hc.k2_sq).epsilon(1e-6));

  auto pair = build_tensor_torus(small_circle(1.0 / std::sqrt(3.0), 256),
                                 small_circle(1.0 / std::sqrt(3.0), 256));
  CHECK(classify_tensor_cw(pair).verdict ==
        CwVerdict::not_constrained_willmore);
}

}  // TEST_SUITE
