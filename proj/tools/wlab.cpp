// wlab: batch CLI over the header library. Subcommands compute energies,
// classify tensor tori, run family sweeps and stability probes, solve the
// elastica system and run the verification suite.
//
// Exit codes: 0 success, 1 input error, 2 verification failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlab/elastica.hpp"
#include "wlab/energy.hpp"
#include "wlab/families.hpp"
#include "wlab/io.hpp"
#include "wlab/verify.hpp"

namespace {

struct CommonOpts {
  int grid = 256;
  std::string emit = "json";
  std::string out;
  std::vector<std::string> tol;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--grid", o.grid, "per-axis grid resolution")
      ->check(CLI::Range(16, 1 << 14));
  cmd->add_option("--emit", o.emit, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--tol", o.tol, "tolerance override, name=value");
}

double tolerance(const CommonOpts& o, const std::string& name, double dflt) {
  for (const std::string& t : o.tol) {
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw wlab::BadParams("--tol expects name=value, got " + t);
    }
    if (t.substr(0, eq) == name) {
      double v = std::stod(t.substr(eq + 1));
      if (v <= 0.0) throw wlab::BadParams("tolerance must be positive");
      return v;
    }
  }
  return dflt;
}

void deliver(const CommonOpts& o, std::string content) {
  if (content.empty() || content.back() != '\n') content += '\n';
  if (o.out.empty()) {
    std::cout << content;
  } else {
    wlab::write_atomic(o.out, content);
  }
}

// --surface NAME | --family NAME --param X | --left FILE --right FILE
struct SurfaceArgs {
  std::string surface;
  std::string family;
  double param = 0.0;
  bool has_param = false;
  std::string left, right;
};

void add_surface_args(CLI::App* cmd, SurfaceArgs& a) {
  cmd->add_option("--surface", a.surface, "named surface (ejiri, clifford_double)");
  cmd->add_option("--family", a.family, "family name");
  cmd->add_option("--param", a.param, "family parameter")
      ->each([&a](const std::string&) { a.has_param = true; });
  cmd->add_option("--left", a.left, "left factor curve file");
  cmd->add_option("--right", a.right, "right factor curve file");
}

wlab::Surface resolve_surface(const SurfaceArgs& a, int samples) {
  using namespace wlab;
  if (!a.left.empty() || !a.right.empty()) {
    if (a.left.empty() || a.right.empty()) {
      throw BadParams("--left and --right must be given together");
    }
    Surface s;
    s.tensor = build_tensor_torus(load_curve(a.left), load_curve(a.right));
    return s;
  }
  std::string name = !a.surface.empty() ? a.surface : a.family;
  if (name.empty()) {
    throw BadParams("need --surface, --family or --left/--right");
  }
  FamilySpec spec = family_spec(family_from_string(name), samples);
  double param = a.has_param ? a.param : spec.lo;
  if ((spec.name == FamilyName::ejiri ||
       spec.name == FamilyName::clifford_double) &&
      !a.has_param) {
    param = 0.0;
  }
  return make_surface(spec, param);
}

std::vector<double> parse_range(const std::string& s) {
  // lo:hi:n
  auto c1 = s.find(':');
  auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw wlab::BadParams("--param-range expects lo:hi:n, got " + s);
  }
  double lo = std::stod(s.substr(0, c1));
  double hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  int n = std::stoi(s.substr(c2 + 1));
  if (n < 1 || hi < lo) throw wlab::BadParams("bad --param-range " + s);
  std::vector<double> out;
  for (int j = 0; j < n; ++j) {
    out.push_back(n == 1 ? lo : lo + (hi - lo) * j / (n - 1));
  }
  return out;
}

int run_energy(const SurfaceArgs& sa, const CommonOpts& co) {
  using namespace wlab;
  Surface s = resolve_surface(sa, co.grid);
  EnergyReport r;
  if (s.tensor) {
    r = willmore_tensor(*s.tensor);
  } else {
    r = willmore_flat_conformal(*s.parametric, co.grid,
                                s.chart.value_or(FlatChart{}));
  }
  if (co.emit == "json") {
    deliver(co, energy_report_json(r).dump(2));
  } else {
    std::ostringstream out;
    out << "value,grid_u,grid_v,method,estimated_error\n"
        << fmt17(r.value) << ',' << r.grid_u << ',' << r.grid_v << ','
        << r.method << ',' << fmt17(r.estimated_error) << '\n';
    deliver(co, out.str());
  }
  return 0;
}

int run_classify(const SurfaceArgs& sa, const CommonOpts& co) {
  using namespace wlab;
  Surface s = resolve_surface(sa, co.grid);
  if (!s.tensor) throw BadParams("classify needs a tensor torus");
  CWClassification c =
      classify_tensor_cw(*s.tensor, tolerance(co, "classify", 1e-6));
  deliver(co, classification_json(c).dump(2));
  return 0;
}

int run_sweep(const SurfaceArgs& sa, const std::string& range,
              const CommonOpts& co) {
  using namespace wlab;
  if (sa.family.empty()) throw BadParams("sweep needs --family");
  FamilySpec spec = family_spec(family_from_string(sa.family), co.grid);
  std::vector<double> params = parse_range(range);
  std::vector<SweepRow> rows = energy_sweep(spec, params, co.grid);
  if (co.emit == "csv") {
    deliver(co, sweep_csv(rows));
  } else {
    json arr = json::array();
    for (const SweepRow& r : rows) {
      json j;
      j["param"] = fmt17(r.param);
      j["value"] = fmt17(r.value);
      if (std::isfinite(r.reference)) {
        j["reference"] = fmt17(r.reference);
        j["abs_err"] = fmt17(r.abs_err);
      }
      arr.push_back(j);
    }
    deliver(co, arr.dump(2));
  }
  return 0;
}

int run_probe(const SurfaceArgs& sa, double at, double h,
              const CommonOpts& co) {
  using namespace wlab;
  if (sa.family.empty()) throw BadParams("probe needs --family");
  FamilySpec spec = family_spec(family_from_string(sa.family), co.grid);
  StabilityProbe p = stability_probe(spec, at, h, co.grid);
  deliver(co, probe_json(p).dump(2));
  return 0;
}

int run_elastica(double a0, double J, double k1, double k1p, double length,
                 int nodes, const CommonOpts& co) {
  using namespace wlab;
  ElasticaProfile prof =
      solve_elastica(ElasticaParams::make(a0, J), k1, k1p, length, nodes);
  if (co.emit == "csv") {
    deliver(co, profile_csv(prof));
  } else {
    json j;
    j["a0"] = fmt17(a0);
    j["J"] = fmt17(J);
    j["length"] = fmt17(prof.length());
    j["k1_final"] = fmt17(prof.k1[prof.k1.size() - 1]);
    j["hamiltonian"] =
        fmt17(elastica_hamiltonian(prof.params, prof.k1[0], prof.k1_prime[0]));
    deliver(co, j.dump(2));
  }
  return 0;
}

int run_verify(const std::string& suite, const CommonOpts& co) {
  using namespace wlab;
  if (suite != "acceptance") throw BadParams("unknown suite: " + suite);
  std::vector<CriterionResult> results = run_acceptance();
  bool all = true;
  std::ostringstream out;
  for (const CriterionResult& r : results) {
    char line[512];
    std::snprintf(line, sizeof(line), "%-40s %s %s\n", r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.detail.c_str());
    out << line;
    all = all && r.pass;
  }
  deliver(co, out.str());
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Willmore tensor-torus laboratory"};
  app.require_subcommand(1);

  CommonOpts co;
  SurfaceArgs sa;
  std::string range, suite = "acceptance";
  double probe_at = 0.0, probe_h = 1e-3;
  double e_a0 = 1.0, e_J = 0.0, e_k1 = 1.0, e_k1p = 0.0, e_len = 10.0;
  int e_nodes = 1024;

  CLI::App* energy = app.add_subcommand("energy", "Willmore energy of a surface");
  add_surface_args(energy, sa);
  add_common(energy, co);

  CLI::App* classify = app.add_subcommand("classify", "constrained-Willmore verdict");
  add_surface_args(classify, sa);
  add_common(classify, co);

  CLI::App* sweep = app.add_subcommand("sweep", "energy sweep over a family");
  add_surface_args(sweep, sa);
  sweep->add_option("--param-range", range, "lo:hi:n")->required();
  add_common(sweep, co);

  CLI::App* probe = app.add_subcommand("probe", "finite-difference stability probe");
  add_surface_args(probe, sa);
  probe->add_option("--at", probe_at, "probe location")->required();
  probe->add_option("--step", probe_h, "probe step");
  add_common(probe, co);

  CLI::App* elastica = app.add_subcommand("elastica", "solve the elastica system");
  elastica->add_option("--a0", e_a0, "curvature-equation constant");
  elastica->add_option("--J", e_J, "first integral k1^2 k2");
  elastica->add_option("--k1", e_k1, "initial k1")->required();
  elastica->add_option("--k1p", e_k1p, "initial k1'");
  elastica->add_option("--length", e_len, "arc length");
  elastica->add_option("--nodes", e_nodes, "output nodes")
      ->check(CLI::Range(16, 1 << 16));
  add_common(elastica, co);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name");
  add_common(verify, co);

  CLI11_PARSE(app, argc, argv);

  try {
    if (energy->parsed()) return run_energy(sa, co);
    if (classify->parsed()) return run_classify(sa, co);
    if (sweep->parsed()) return run_sweep(sa, range, co);
    if (probe->parsed()) return run_probe(sa, probe_at, probe_h, co);
    if (elastica->parsed()) {
      return run_elastica(e_a0, e_J, e_k1, e_k1p, e_len, e_nodes, co);
    }
    if (verify->parsed()) return run_verify(suite, co);
  } catch (const wlab::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "InternalError: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
