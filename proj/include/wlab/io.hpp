#pragma once

// File formats: plain-text curve samples, JSON torus descriptors, JSON
// reports and CSV tables. All numeric output uses 17 significant digits
// so identical configurations produce byte-identical artifacts.

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wlab/curve.hpp"
#include "wlab/elastica.hpp"
#include "wlab/energy.hpp"
#include "wlab/errors.hpp"
#include "wlab/families.hpp"
#include "wlab/tensor.hpp"

namespace wlab {

using json = nlohmann::json;

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Write via a temporary file and rename, so readers never see a partial
// artifact.
inline void write_atomic(const std::filesystem::path& path,
                         const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot open " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

// Curve text format: header `dim period sample_count`, then one sample
// row of ambient coordinates per line.
inline std::string curve_to_text(const ClosedCurve& c) {
  std::ostringstream out;
  out << c.ambient_dim() << ' ' << fmt17(c.period()) << ' '
      << c.sample_count() << '\n';
  for (int j = 0; j < c.sample_count(); ++j) {
    for (int k = 0; k < c.ambient_dim(); ++k) {
      if (k) out << ' ';
      out << fmt17(c.samples()(j, k));
    }
    out << '\n';
  }
  return out.str();
}

inline void save_curve(const std::filesystem::path& path,
                       const ClosedCurve& c) {
  write_atomic(path, curve_to_text(c));
}

inline ClosedCurve curve_from_text(std::istream& in) {
  int dim = 0, n = 0;
  double period = 0.0;
  if (!(in >> dim >> period >> n)) throw IoError("bad curve header");
  Eigen::MatrixXd samples(n, dim);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < dim; ++k) {
      if (!(in >> samples(j, k))) throw IoError("truncated curve samples");
    }
  }
  return ClosedCurve(period, std::move(samples));
}

inline ClosedCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return curve_from_text(in);
}

// Torus descriptor: JSON referencing the two factor curve files.
inline TensorTorus load_torus_descriptor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  in >> j;
  std::filesystem::path base = path.parent_path();
  ClosedCurve left = load_curve(base / j.at("left").get<std::string>());
  ClosedCurve right = load_curve(base / j.at("right").get<std::string>());
  return build_tensor_torus(std::move(left), std::move(right));
}

inline void save_torus_descriptor(const std::filesystem::path& path,
                                  const std::string& left_file,
                                  const std::string& right_file,
                                  const std::string& name,
                                  const std::string& provenance) {
  json j;
  j["left"] = left_file;
  j["right"] = right_file;
  j["name"] = name;
  j["provenance"] = provenance;
  write_atomic(path, j.dump(2) + "\n");
}

inline json energy_report_json(const EnergyReport& r) {
  json j;
  j["value"] = fmt17(r.value);
  j["grid"] = {r.grid_u, r.grid_v};
  j["method"] = r.method;
  j["estimated_error"] = fmt17(r.estimated_error);
  return j;
}

inline json classification_json(const CWClassification& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  if (c.fitted_a0) {
    j["fitted_a0"] = fmt17(*c.fitted_a0);
  } else {
    j["fitted_a0"] = nullptr;
  }
  j["obstructions"] = {
      {"k1kh1_product", fmt17(c.obstructions.k1kh1_product)},
      {"elastica_residual", fmt17(c.obstructions.elastica_residual)},
      {"torsion_obstruction", fmt17(c.obstructions.torsion_obstruction)}};
  return j;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "param,value,reference,abs_err\n";
  for (const auto& r : rows) {
    out << fmt17(r.param) << ',' << fmt17(r.value) << ',';
    if (std::isfinite(r.reference)) out << fmt17(r.reference);
    out << ',';
    if (std::isfinite(r.abs_err)) out << fmt17(r.abs_err);
    out << '\n';
  }
  return out.str();
}

inline json probe_json(const StabilityProbe& p) {
  json j;
  j["at"] = fmt17(p.at);
  j["h"] = fmt17(p.h);
  j["first_derivative"] = fmt17(p.first_derivative);
  j["second_derivative"] = fmt17(p.second_derivative);
  j["conformal_class_drift"] = fmt17(p.conformal_class_drift);
  return j;
}

// Profile dump: CSV columns s, k1, k1p, k2.
inline std::string profile_csv(const ElasticaProfile& p) {
  std::ostringstream out;
  out << "s,k1,k1p,k2\n";
  for (int i = 0; i < p.nodes.size(); ++i) {
    out << fmt17(p.nodes[i]) << ',' << fmt17(p.k1[i]) << ','
        << fmt17(p.k1_prime[i]) << ',' << fmt17(p.k2[i]) << '\n';
  }
  return out.str();
}

}  // namespace wlab
