#pragma once

// Deterministic desk-scale corpus of closed spherical curves and tensor
// tori used by the property and acceptance suites.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wlab/curve.hpp"
#include "wlab/elastica.hpp"
#include "wlab/families.hpp"

namespace wlab {

struct CorpusEntry {
  std::string name;
  ClosedCurve curve;
  // a0 for which this curve is the exact equality case of the bending
  // bound (the circle with k1 = sqrt(a0-2)); nan otherwise
  double equality_a0 = std::nan("");
};

// Smooth random perturbation of a great circle, normalized back to the
// sphere and reparametrized to unit speed. Deterministic in `seed`.
inline ClosedCurve perturbed_great_circle(unsigned seed, double eps,
                                          int n = 256) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  // low-harmonic trigonometric perturbation of each coordinate
  Eigen::MatrixXd cs(3, 5), sn(3, 5);
  for (int c = 0; c < 3; ++c) {
    for (int m = 0; m < 5; ++m) {
      cs(c, m) = uni(rng);
      sn(c, m) = uni(rng);
    }
  }
  auto gen = [cs, sn, eps](double t) {
    Eigen::VectorXd p(3);
    p << std::cos(t), std::sin(t), 0.0;
    for (int c = 0; c < 3; ++c) {
      for (int m = 1; m <= 4; ++m) {
        p[c] += eps * (cs(c, m) * std::cos(m * t) + sn(c, m) * std::sin(m * t));
      }
    }
    p.normalize();
    return p;
  };
  return arclength_reparametrize(
      ClosedCurve(3, 2.0 * std::numbers::pi, n, gen));
}

inline std::vector<CorpusEntry> curve_corpus(int n = 256) {
  std::vector<CorpusEntry> out;
  auto add = [&out](std::string name, ClosedCurve c, double eq = std::nan("")) {
    out.push_back({std::move(name), std::move(c), eq});
  };

  // The four equality circles of the bending bound for a0 in {2,3,4,6}:
  // k1 = 0, 1, sqrt(2), 2, i.e. a = 1, 1/sqrt(2), 1/sqrt(3), 1/sqrt(5).
  add("great_circle", great_circle_s2(n), 2.0);
  add("circle_k1", small_circle(1.0 / std::sqrt(2.0), n), 3.0);
  add("circle_ksqrt2", ejiri_factor(n), 4.0);
  add("circle_k2", small_circle(1.0 / std::sqrt(5.0), n), 6.0);

  // small circles across the radius range
  for (int i = 0; i < 20; ++i) {
    double a = 0.15 + 0.8 * i / 19.0;
    add("small_circle_a" + std::to_string(i), small_circle(a, n));
  }

  // perturbed great circles
  for (int i = 0; i < 18; ++i) {
    double eps = 0.05 + 0.01 * (i % 6);
    add("perturbed_" + std::to_string(i),
        perturbed_great_circle(1000u + i, eps, n));
  }

  // homogeneous curves in S^3
  const double ab[4][2] = {{0.6, 0.8}, {0.8, 0.6},
                           {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
                           {0.3, std::sqrt(1.0 - 0.09)}};
  const double lambdas[2] = {2.0, 3.0};
  for (int i = 0; i < 4; ++i) {
    for (int l = 0; l < 2; ++l) {
      add("homogeneous_" + std::to_string(i) + "_" + std::to_string(l),
          homogeneous_curve(ab[i][0], ab[i][1], lambdas[l], n).curve);
    }
  }
  return out;  // 50 curves
}

// Tensor-torus corpus: representative factor pairs.
inline std::vector<std::pair<std::string, TensorTorus>> torus_corpus(
    int n = 256) {
  std::vector<std::pair<std::string, TensorTorus>> out;
  auto add = [&out](std::string name, TensorTorus t) {
    out.emplace_back(std::move(name), std::move(t));
  };
  add("clifford_double", build_tensor_torus(great_circle(n), great_circle(n)));
  add("ejiri", build_tensor_torus(ejiri_factor(n), great_circle(n)));
  add("inf_a0.5", build_tensor_torus(small_circle(0.5, n), small_circle(0.5, n)));
  add("tilde_a0.7", build_tensor_torus(ejiri_factor(n), small_circle(0.7, n)));
  add("small_x_small", build_tensor_torus(small_circle(0.4, n),
                                          small_circle(0.85, n)));
  add("perturbed_x_great",
      build_tensor_torus(perturbed_great_circle(42u, 0.08, n),
                         great_circle(n)));
  add("perturbed_x_small",
      build_tensor_torus(perturbed_great_circle(43u, 0.06, n),
                         small_circle(0.6, n)));
  add("homogeneous_x_great",
      build_tensor_torus(homogeneous_curve(0.6, 0.8, 2.0, n).curve,
                         great_circle(n)));
  add("perturbed_x_perturbed",
      build_tensor_torus(perturbed_great_circle(44u, 0.05, n),
                         perturbed_great_circle(45u, 0.07, n)));
  return out;
}

}  // namespace wlab
