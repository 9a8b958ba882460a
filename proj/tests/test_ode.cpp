#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wlab/ode.hpp"

using namespace wlab;
using std::numbers::pi;

TEST_SUITE("ode") {

TEST_CASE("harmonic oscillator over many periods") {
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.resize(2);
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  std::vector<double> times;
  for (int j = 0; j <= 100; ++j) times.push_back(0.2 * pi * j);
  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  double worst = 0.0;
  integrate_dopri5(rhs, y0, 0.0, times.back(), times,
                   [&](double t, const Eigen::VectorXd& y) {
                     worst = std::max(worst, std::abs(y[0] - std::cos(t)));
                   });
  CHECK(worst < 1e-9);
}

TEST_CASE("observer fires exactly at the requested times") {
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy = -y;
  };
  std::vector<double> times = {0.0, 0.31, 1.7, 2.0};
  std::vector<double> seen;
  Eigen::VectorXd y0 = Eigen::VectorXd::Ones(1);
  integrate_dopri5(rhs, y0, 0.0, 2.0, times,
                   [&](double t, const Eigen::VectorXd& y) {
                     seen.push_back(t);
                     CHECK(y[0] == doctest::Approx(std::exp(-t)).epsilon(1e-11));
                   });
  REQUIRE(seen.size() == times.size());
  for (size_t j = 0; j < times.size(); ++j) CHECK(seen[j] == times[j]);
}

TEST_CASE("hook runs and may adjust the state") {
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.resize(2);
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  int calls = 0;
  OdeOptions opt;
  opt.hook_every = 1;
  std::vector<double> times = {20.0};
  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  integrate_dopri5(rhs, y0, 0.0, 20.0, times,
                   [](double, const Eigen::VectorXd&) {}, opt,
                   [&](Eigen::VectorXd& y) {
                     ++calls;
                     y *= 1.0 / std::hypot(y[0], y[1]);
                   });
  CHECK(calls > 0);
}

TEST_CASE("step collapse surfaces as an error") {
  // finite-time blow-up: y' = y^2, y(0) = 1 explodes at t = 1
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.resize(1);
    dy[0] = y[0] * y[0];
  };
  std::vector<double> times = {2.0};
  Eigen::VectorXd y0 = Eigen::VectorXd::Ones(1);
  CHECK_THROWS_AS(integrate_dopri5(rhs, y0, 0.0, 2.0, times,
                                   [](double, const Eigen::VectorXd&) {}),
                  Error);
}

}  // TEST_SUITE
