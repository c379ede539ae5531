#include "follmer/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "follmer/functional.hpp"
#include "follmer/integral.hpp"
#include "follmer/io.hpp"
#include "follmer/pathgen.hpp"
#include "follmer/rng.hpp"
#include "follmer/solvers.hpp"

namespace follmer::run {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::domain_error {
  using std::domain_error::domain_error;
};

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

const json& need(const json& obj, const std::string& key,
                 const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError(where + ": missing required key '" + key + "'");
  return *it;
}

double need_num(const json& obj, const std::string& key,
                const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

double num_or(const json& obj, const std::string& key, double dflt) {
  auto it = obj.find(key);
  return it == obj.end() ? dflt : it->get<double>();
}

int need_int(const json& obj, const std::string& key,
             const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_number_integer())
    throw ConfigError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

std::string need_str(const json& obj, const std::string& key,
                     const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_string()) throw ConfigError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<int> need_int_vec(const json& obj, const std::string& key,
                              const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_array() || v.empty())
    throw ConfigError(where + ": '" + key + "' must be a non-empty array");
  return v.get<std::vector<int>>();
}

std::vector<double> need_num_vec(const json& obj, const std::string& key,
                                 const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_array() || v.empty())
    throw ConfigError(where + ": '" + key + "' must be a non-empty array");
  return v.get<std::vector<double>>();
}

SamplePath make_path(const json& cfg, std::uint64_t seed) {
  check_keys(cfg, {"kind", "level", "H", "depth", "param"}, "path");
  const std::string kind = need_str(cfg, "kind", "path");
  const int level = need_int(cfg, "level", "path");
  if (kind == "wiener") return gen_fbm(0.5, level, seed);
  if (kind == "fbm") return gen_fbm(need_num(cfg, "H", "path"), level, seed);
  if (kind == "takagi") {
    const double H = need_num(cfg, "H", "path");
    const int depth = cfg.contains("depth") ? need_int(cfg, "depth", "path") : level;
    return gen_takagi_landsberg(H, depth, level);
  }
  if (kind == "linear")
    return gen_deterministic(DeterministicKind::Linear,
                             num_or(cfg, "param", 1.0), level);
  if (kind == "constant")
    return gen_deterministic(DeterministicKind::Constant,
                             num_or(cfg, "param", 0.0), level);
  if (kind == "monomial")
    return gen_deterministic(DeterministicKind::Monomial,
                             num_or(cfg, "param", 2.0), level);
  throw ConfigError("path: unknown kind '" + kind + "'");
}

GridPtr make_grid(const json& cfg) {
  check_keys(cfg, {"N", "L_dom"}, "grid");
  return std::make_shared<SpectralGrid>(
      static_cast<std::size_t>(need_int(cfg, "N", "grid")),
      need_num(cfg, "L_dom", "grid"));
}

GridField make_x0(const json& cfg, const GridPtr& grid) {
  check_keys(cfg, {"kind", "center", "width", "k", "amp"}, "x0");
  const std::string kind = need_str(cfg, "kind", "x0");
  const double center = num_or(cfg, "center", 0.0);
  const double width = num_or(cfg, "width", 1.0);
  const double amp = num_or(cfg, "amp", 1.0);
  if (kind == "gaussian") {
    return sample_field(grid, [=](double x) {
      const double d = (x - center) / width;
      return std::complex<double>(amp * std::exp(-0.5 * d * d), 0.0);
    });
  }
  if (kind == "wave_packet") {
    const double k0 = num_or(cfg, "k", 2.0);
    return sample_field(grid, [=](double x) {
      const double d = (x - center) / width;
      return amp * std::exp(-0.5 * d * d) *
             std::exp(std::complex<double>(0.0, k0 * x));
    });
  }
  if (kind == "cosine") {
    const double k0 = num_or(cfg, "k", 1.0);
    const double L = grid->L_dom;
    return sample_field(grid, [=](double x) {
      return std::complex<double>(amp * std::cos(M_PI * k0 * x / L), 0.0);
    });
  }
  throw ConfigError("x0: unknown kind '" + kind + "'");
}

std::vector<double> make_g(const json& cfg, const GridPtr& grid) {
  check_keys(cfg, {"kind", "value", "base", "amp", "width"}, "g");
  const std::string kind = need_str(cfg, "kind", "g");
  std::vector<double> g(grid->N);
  if (kind == "constant") {
    const double v = need_num(cfg, "value", "g");
    std::fill(g.begin(), g.end(), v);
    return g;
  }
  if (kind == "bump") {
    const double base = need_num(cfg, "base", "g");
    const double amp = num_or(cfg, "amp", 0.0);
    const double width = num_or(cfg, "width", 1.0);
    for (std::size_t i = 0; i < grid->N; ++i) {
      const double d = grid->x(i) / width;
      g[i] = base + amp * std::exp(-0.5 * d * d);
    }
    return g;
  }
  if (kind == "zero") {
    std::fill(g.begin(), g.end(), 0.0);
    return g;
  }
  throw ConfigError("g: unknown kind '" + kind + "'");
}

std::function<std::complex<double>(double)> make_generator_symbol(
    const json& cfg) {
  check_keys(cfg, {"kind", "a", "b", "k"}, "generator");
  const std::string kind = need_str(cfg, "kind", "generator");
  if (kind == "heat") {
    const double a = need_num(cfg, "a", "generator");
    if (!(a > 0.0)) throw ConfigError("generator: heat coefficient must be > 0");
    return [a](double xi) {
      return std::complex<double>(-a * xi * xi, 0.0);
    };
  }
  if (kind == "elliptic") {
    const double a = need_num(cfg, "a", "generator");
    const double b = need_num(cfg, "b", "generator");
    const int k = need_int(cfg, "k", "generator");
    const double c2k = gaussian_abs_moment(2 * k);
    double fact = 1.0;
    for (int q = 2; q <= 2 * k; ++q) fact *= static_cast<double>(q);
    const double coeff = c2k / fact * std::pow(b, 2 * k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return [a, coeff, sign, k](double xi) {
      const double xi2 = xi * xi;
      return std::complex<double>(-a * xi2 - coeff * sign * std::pow(xi2, k),
                                  0.0);
    };
  }
  throw ConfigError("generator: unknown kind '" + kind + "'");
}

CommutativeProblem make_commutative_problem(const json& P,
                                            const std::string& where) {
  CommutativeProblem prob;
  prob.grid = make_grid(need(P, "grid", where));
  prob.a_symbol = make_generator_symbol(need(P, "generator", where));
  const json& noise = need(P, "noise", where);
  check_keys(noise, {"kind", "b"}, "noise");
  const std::string nk = need_str(noise, "kind", "noise");
  if (nk == "scalar")
    prob.noise = NoiseKind::ScalarId;
  else if (nk == "shift")
    prob.noise = NoiseKind::Shift;
  else
    throw ConfigError("noise: unknown kind '" + nk + "'");
  prob.b = need_num(noise, "b", "noise");
  prob.p = need_int(P, "p", where);
  prob.x0 = make_x0(need(P, "x0", where), prob.grid);
  return prob;
}

VariationEstimate make_variation(const json& P, const SamplePath& path,
                                 int p, const std::string& where) {
  if (P.contains("variation_slope")) {
    return theoretical_variation(p, P.at("variation_slope").get<double>(),
                                 std::min(path.level(), 14));
  }
  PartitionSequence seq{PartitionKind::Dyadic, {}};
  return variation_limit(path, seq, p, need_int_vec(P, "levels", where));
}

// ---------------------------------------------------------------------
// Experiments. Each returns the manifest stats block; artifacts are
// written only when out_dir is non-empty.
// ---------------------------------------------------------------------

json exp_gen_path(const json& P, std::uint64_t seed,
                  const std::string& out_dir) {
  check_keys(P, {"path"}, "params");
  const SamplePath path = make_path(need(P, "path", "params"), seed);
  if (!out_dir.empty()) write_path_csv(path, out_dir + "/path.csv");
  double sup = 0.0;
  for (double v : path.values) sup = std::max(sup, std::abs(v));
  json stats;
  stats["label"] = path.label;
  stats["endpoint"] = path.values.back();
  stats["sup_abs"] = sup;
  stats["headline"] = path.values.back();
  return stats;
}

json exp_variation(const json& P, std::uint64_t seed,
                   const std::string& out_dir) {
  check_keys(P, {"path", "p", "levels", "times"}, "params");
  const SamplePath path = make_path(need(P, "path", "params"), seed);
  const int p = need_int(P, "p", "params");
  const auto levels = need_int_vec(P, "levels", "params");
  const auto times = need_num_vec(P, "times", "params");

  PartitionSequence seq{PartitionKind::Dyadic, levels};
  const VariationEstimate est = variation_limit(path, seq, p, levels);
  if (!out_dir.empty()) write_variation_csvs(est, out_dir + "/variation");

  json stats;
  stats["p"] = p;
  json at = json::array();
  for (double t : times)
    at.push_back({{"t", t}, {"value", variation_value_at(est, t)}});
  stats["limit_at"] = at;
  stats["mass"] = est.limit_values.back();
  stats["levels"] = est.levels;
  stats["gap_to_finest"] = est.gap_to_finest;
  stats["gap_to_next"] = est.gap_to_next;
  stats["headline"] = est.limit_values.back();
  return stats;
}

SmoothFunctional<double> make_functional(const json& cfg, int p) {
  check_keys(cfg, {"kind", "coeffs", "q"}, "functional");
  const std::string kind = need_str(cfg, "kind", "functional");
  if (kind == "polynomial")
    return polynomial_functional(
        need(cfg, "coeffs", "functional").get<std::vector<double>>(), p);
  if (kind == "monomial")
    return monomial_functional(need_int(cfg, "q", "functional"), p);
  throw ConfigError("functional: unknown kind '" + kind + "'");
}

json exp_integrate(const json& P, std::uint64_t seed,
                   const std::string& out_dir) {
  check_keys(P, {"path", "p", "functional", "levels", "t"}, "params");
  const SamplePath path = make_path(need(P, "path", "params"), seed);
  const int p = need_int(P, "p", "params");
  const auto levels = need_int_vec(P, "levels", "params");
  const double t = need_num(P, "t", "params");
  const SmoothFunctional<double> F =
      make_functional(need(P, "functional", "params"), p);

  PartitionSequence seq{PartitionKind::Dyadic, levels};
  const auto integral = follmer_integral(F, path, seq, t, levels);
  const VariationEstimate est = variation_limit(path, seq, p, levels);
  const ResidualReport residual = ito_follmer_residual(F, path, seq, est, t);

  if (!out_dir.empty()) {
    std::ostringstream out;
    out << "level,compensated_sum,residual\n";
    for (std::size_t i = 0; i < levels.size(); ++i)
      out << levels[i] << ',' << format_full(integral.level_values[i]) << ','
          << format_full(residual.residuals[i]) << '\n';
    atomic_write_text(out_dir + "/integral.csv", out.str());
  }

  json stats;
  stats["value"] = integral.value;
  stats["converged"] = integral.converged;
  stats["level_values"] = integral.level_values;
  stats["residuals"] = residual.residuals;
  stats["final_residual"] = residual.final_residual;
  stats["headline"] = integral.value;
  return stats;
}

json exp_solve_geometric(const json& P, std::uint64_t seed,
                         const std::string& out_dir) {
  check_keys(P, {"path", "p", "a", "b", "levels", "times", "variation_slope"},
             "params");
  const SamplePath path = make_path(need(P, "path", "params"), seed);
  const int p = need_int(P, "p", "params");
  const double a = need_num(P, "a", "params");
  const double b = need_num(P, "b", "params");
  const auto times = need_num_vec(P, "times", "params");
  const VariationEstimate est = make_variation(P, path, p, "params");

  const ScalarTrajectory traj = solve_scalar_geometric(a, b, p, path, est, times);
  if (!out_dir.empty())
    write_scalar_trajectory_csv(traj, out_dir + "/trajectory.csv");

  json stats;
  stats["times"] = traj.times;
  stats["values"] = traj.values;
  stats["headline"] = traj.values.back();
  return stats;
}

json exp_solve_commutative(const json& P, std::uint64_t seed,
                           const std::string& out_dir) {
  check_keys(P,
             {"grid", "generator", "noise", "p", "x0", "path", "levels",
              "times", "variation_slope"},
             "params");
  const CommutativeProblem prob = make_commutative_problem(P, "params");
  const SamplePath path = make_path(need(P, "path", "params"), seed);
  const auto times = need_num_vec(P, "times", "params");
  const VariationEstimate est = make_variation(P, path, prob.p, "params");

  const FieldTrajectory traj = solve_commutative(prob, path, est, times);
  if (!out_dir.empty())
    write_field_trajectory_csvs(traj, out_dir + "/trajectory");

  json stats;
  stats["times"] = traj.times;
  stats["norms"] = traj.norms;
  stats["headline"] = traj.norms.back();
  return stats;
}

json exp_solve_parabolic(const json& P, std::uint64_t seed,
                         const std::string& out_dir) {
  check_keys(P,
             {"grid", "g", "a_diff", "x0", "path", "levels", "dt", "times",
              "variation_slope", "max_clipped_mass", "vdot_window"},
             "params");
  ParabolicProblem prob;
  prob.grid = make_grid(need(P, "grid", "params"));
  prob.g_samples = make_g(need(P, "g", "params"), prob.grid);
  prob.a_diff = need_num(P, "a_diff", "params");
  prob.x0 = make_x0(need(P, "x0", "params"), prob.grid);
  prob.dt = need_num(P, "dt", "params");
  if (P.contains("vdot_window"))
    prob.vdot_window = need_int(P, "vdot_window", "params");
  const SamplePath path = make_path(need(P, "path", "params"), seed);
  const auto times = need_num_vec(P, "times", "params");
  const VariationEstimate est = make_variation(P, path, 4, "params");

  const EvolutionSystem system(prob, path, est);
  const FieldTrajectory traj = system.solve(times);
  const double max_clipped = num_or(P, "max_clipped_mass", 1e-3);
  if (traj.clipped_mass > max_clipped)
    throw std::runtime_error("parabolic solve: clipped L2 mass " +
                             format_full(traj.clipped_mass) +
                             " exceeds the guard " + format_full(max_clipped));
  if (!out_dir.empty())
    write_field_trajectory_csvs(traj, out_dir + "/trajectory");

  json stats;
  stats["times"] = traj.times;
  stats["norms"] = traj.norms;
  stats["clipped_mass"] = traj.clipped_mass;
  stats["edge_warning"] = traj.edge_warning;
  stats["headline"] = traj.norms.back();
  return stats;
}

json exp_solve_hyperbolic(const json& P, std::uint64_t seed,
                          const std::string& out_dir) {
  check_keys(P, {"grid", "g", "x0", "path", "dt", "times"}, "params");
  HyperbolicProblem prob;
  prob.grid = make_grid(need(P, "grid", "params"));
  prob.g_samples = make_g(need(P, "g", "params"), prob.grid);
  prob.x0 = make_x0(need(P, "x0", "params"), prob.grid);
  prob.dt = need_num(P, "dt", "params");
  const SamplePath path = make_path(need(P, "path", "params"), seed);
  const auto times = need_num_vec(P, "times", "params");

  const FieldTrajectory traj = solve_hyperbolic(prob, path, times);
  if (!out_dir.empty())
    write_field_trajectory_csvs(traj, out_dir + "/trajectory");

  const double norm0 = prob.x0.l2_norm();
  double drift = 0.0;
  for (double n : traj.norms) drift = std::max(drift, std::abs(n - norm0));

  json stats;
  stats["times"] = traj.times;
  stats["norms"] = traj.norms;
  stats["norm_drift"] = drift;
  stats["symbol_max_abs_re"] = hyperbolic_symbol_max_abs_re(*prob.grid);
  stats["headline"] = drift;
  return stats;
}

json exp_verify(const json& P, std::uint64_t seed,
                const std::string& out_dir) {
  const std::string problem = need_str(P, "problem", "params");
  ResidualReport report;
  std::vector<int> vlevels;
  if (problem == "scalar_geometric") {
    check_keys(P,
               {"problem", "path", "p", "a", "b", "levels", "verify_levels",
                "t", "variation_slope"},
               "params");
    const SamplePath path = make_path(need(P, "path", "params"), seed);
    const int p = need_int(P, "p", "params");
    const VariationEstimate est = make_variation(P, path, p, "params");
    vlevels = need_int_vec(P, "verify_levels", "params");
    PartitionSequence seq{PartitionKind::Dyadic, vlevels};
    report = verify_scalar_geometric(need_num(P, "a", "params"),
                                     need_num(P, "b", "params"), p, path, est,
                                     seq, vlevels, need_num(P, "t", "params"));
  } else if (problem == "commutative") {
    check_keys(P,
               {"problem", "grid", "generator", "noise", "p", "x0", "path",
                "levels", "verify_levels", "t", "variation_slope"},
               "params");
    const CommutativeProblem prob = make_commutative_problem(P, "params");
    const SamplePath path = make_path(need(P, "path", "params"), seed);
    const VariationEstimate est = make_variation(P, path, prob.p, "params");
    vlevels = need_int_vec(P, "verify_levels", "params");
    PartitionSequence seq{PartitionKind::Dyadic, vlevels};
    report = verify_commutative(prob, path, est, seq, vlevels,
                                need_num(P, "t", "params"));
  } else {
    throw ConfigError("params: unknown verify problem '" + problem + "'");
  }

  if (!out_dir.empty()) {
    std::ostringstream out;
    out << "level,residual\n";
    for (std::size_t i = 0; i < report.levels.size(); ++i)
      out << report.levels[i] << ',' << format_full(report.residuals[i])
          << '\n';
    atomic_write_text(out_dir + "/residuals.csv", out.str());
  }

  json stats;
  stats["levels"] = report.levels;
  stats["residuals"] = report.residuals;
  stats["final_residual"] = report.final_residual;
  stats["headline"] = report.final_residual;
  return stats;
}

json run_experiment(const std::string& name, const json& params,
                    std::uint64_t seed, const std::string& out_dir,
                    int threads);

json exp_monte_carlo(const json& P, std::uint64_t seed,
                     const std::string& out_dir, int threads) {
  check_keys(P, {"experiment", "params", "n_seeds", "collect"}, "params");
  const std::string inner_name = need_str(P, "experiment", "params");
  if (inner_name == "MonteCarlo")
    throw ConfigError("params: MonteCarlo cannot nest itself");
  const json& inner_params = need(P, "params", "params");
  const int n_seeds = need_int(P, "n_seeds", "params");
  if (n_seeds < 1) throw ConfigError("params: n_seeds must be >= 1");
  const auto pointers =
      need(P, "collect", "params").get<std::vector<std::string>>();

  std::vector<json> per_seed(static_cast<std::size_t>(n_seeds));
  std::vector<std::string> errors(static_cast<std::size_t>(n_seeds));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_seeds) return;
      try {
        per_seed[static_cast<std::size_t>(i)] =
            run_experiment(inner_name, inner_params,
                           derive_seed(seed, static_cast<std::uint64_t>(i)),
                           "", 1);
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(i)] = e.what();
      }
    }
  };
  const int nthreads = std::max(1, std::min(threads, n_seeds));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < n_seeds; ++i)
    if (!errors[static_cast<std::size_t>(i)].empty())
      throw std::runtime_error("monte carlo seed " + std::to_string(i) + ": " +
                               errors[static_cast<std::size_t>(i)]);

  // Fixed reduction order by seed index: identical across thread counts.
  json stats;
  json collected = json::object();
  for (const std::string& ptr : pointers) {
    std::vector<double> values;
    values.reserve(per_seed.size());
    for (const json& s : per_seed) {
      const json& v = s.at(json::json_pointer(ptr));
      if (!v.is_number())
        throw ConfigError("collect pointer '" + ptr + "' is not numeric");
      values.push_back(v.get<double>());
    }
    double sum = 0.0, mn = values.front(), mx = values.front();
    for (double v : values) {
      sum += v;
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    collected[ptr] = {{"mean", sum / static_cast<double>(values.size())},
                      {"min", mn},
                      {"max", mx},
                      {"values", values}};
  }
  stats["n_seeds"] = n_seeds;
  stats["collected"] = collected;
  if (!pointers.empty())
    stats["headline"] = collected[pointers.front()]["mean"];
  else
    stats["headline"] = 0.0;

  if (!out_dir.empty()) {
    std::ostringstream out;
    out << "seed_index";
    for (const auto& ptr : pointers) out << ',' << ptr;
    out << '\n';
    for (int i = 0; i < n_seeds; ++i) {
      out << i;
      for (const auto& ptr : pointers)
        out << ','
            << format_full(per_seed[static_cast<std::size_t>(i)]
                               .at(json::json_pointer(ptr))
                               .get<double>());
      out << '\n';
    }
    atomic_write_text(out_dir + "/monte_carlo.csv", out.str());
  }
  return stats;
}

json run_experiment(const std::string& name, const json& params,
                    std::uint64_t seed, const std::string& out_dir,
                    int threads) {
  if (name == "GenPath") return exp_gen_path(params, seed, out_dir);
  if (name == "Variation") return exp_variation(params, seed, out_dir);
  if (name == "Integrate") return exp_integrate(params, seed, out_dir);
  if (name == "SolveGeometric") return exp_solve_geometric(params, seed, out_dir);
  if (name == "SolveCommutative")
    return exp_solve_commutative(params, seed, out_dir);
  if (name == "SolveParabolic") return exp_solve_parabolic(params, seed, out_dir);
  if (name == "SolveHyperbolic")
    return exp_solve_hyperbolic(params, seed, out_dir);
  if (name == "Verify") return exp_verify(params, seed, out_dir);
  if (name == "MonteCarlo") return exp_monte_carlo(params, seed, out_dir, threads);
  throw ConfigError("unknown experiment '" + name + "'");
}

struct AssertionResult {
  json spec;
  double value = 0.0;
  bool pass = false;
};

std::vector<AssertionResult> evaluate_assertions(const json& assertions,
                                                 const json& stats) {
  std::vector<AssertionResult> results;
  if (assertions.is_null()) return results;
  if (!assertions.is_array())
    throw ConfigError("assertions: expected an array");
  for (const json& a : assertions) {
    check_keys(a, {"stat", "op", "target", "tol"}, "assertion");
    const std::string ptr = need_str(a, "stat", "assertion");
    const std::string op = need_str(a, "op", "assertion");
    const json& v = stats.at(json::json_pointer(ptr));
    if (!v.is_number())
      throw ConfigError("assertion: stat '" + ptr + "' is not numeric");
    AssertionResult r;
    r.spec = a;
    r.value = v.get<double>();
    if (op == "le") {
      r.pass = r.value <= need_num(a, "target", "assertion");
    } else if (op == "ge") {
      r.pass = r.value >= need_num(a, "target", "assertion");
    } else if (op == "within_rel") {
      const double target = need_num(a, "target", "assertion");
      r.pass = std::abs(r.value - target) <=
               need_num(a, "tol", "assertion") * std::abs(target);
    } else if (op == "within_abs") {
      r.pass = std::abs(r.value - need_num(a, "target", "assertion")) <=
               need_num(a, "tol", "assertion");
    } else {
      throw ConfigError("assertion: unknown op '" + op + "'");
    }
    results.push_back(std::move(r));
  }
  return results;
}

int resolve_threads(const json& cfg, const Overrides& overrides) {
  if (overrides.threads) return std::max(1, *overrides.threads);
  if (cfg.contains("threads")) return std::max(1, cfg.at("threads").get<int>());
  if (const char* env = std::getenv("FOLLMER_KIT_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
      throw ConfigError("FOLLMER_KIT_THREADS is not an integer");
    }
  }
  return 1;
}

void csv_escape(std::ostringstream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

int run_config_text(const std::string& config_json, const Overrides& overrides) {
  json cfg;
  std::string out_dir = overrides.out.value_or("");
  json manifest;
  manifest["tool_version"] = kToolVersion;

  auto finish = [&](int code, const json& error) -> int {
    manifest["exit_code"] = code;
    if (!error.is_null()) manifest["error"] = error;
    if (out_dir.empty()) out_dir = "follmer_out";
    std::filesystem::create_directories(out_dir);
    atomic_write_text(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return code;
  };

  const auto t_start = std::chrono::steady_clock::now();
  try {
    cfg = json::parse(config_json);
    check_keys(cfg,
               {"experiment", "params", "seed", "output_dir", "threads",
                "assertions"},
               "config");
    const std::string experiment = need_str(cfg, "experiment", "config");
    const json& params = need(cfg, "params", "config");
    std::uint64_t seed = overrides.seed.value_or(
        cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 1ULL);
    if (out_dir.empty() && cfg.contains("output_dir"))
      out_dir = cfg.at("output_dir").get<std::string>();
    const int threads = resolve_threads(cfg, overrides);

    // Manifest echoes everything that determines the numerics; thread
    // count deliberately excluded (results are thread-count invariant).
    manifest["config"] = {
        {"experiment", experiment}, {"params", params}, {"seed", seed}};
    if (cfg.contains("assertions"))
      manifest["config"]["assertions"] = cfg.at("assertions");

    const json stats = run_experiment(experiment, params, seed,
                                      out_dir.empty() ? "follmer_out" : out_dir,
                                      threads);
    manifest["stats"] = stats;

    const auto results = evaluate_assertions(
        cfg.contains("assertions") ? cfg.at("assertions") : json(), stats);
    bool all_pass = true;
    json asserts = json::array();
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      json row = r.spec;
      row["value"] = r.value;
      row["pass"] = r.pass;
      asserts.push_back(std::move(row));
    }
    manifest["assertions"] = asserts;
    manifest["pass"] = all_pass;

    const auto t_end = std::chrono::steady_clock::now();
    const int code = finish(all_pass ? 0 : 1, json());
    // Wall-clock lives outside the manifest so reruns stay bit-identical.
    json timings;
    timings["wall_ms"] =
        std::chrono::duration<double, std::milli>(t_end - t_start).count();
    atomic_write_text(out_dir + "/timings.json", timings.dump(2) + "\n");
    return code;
  } catch (const ConfigError& e) {
    return finish(2, {{"kind", "config"}, {"message", e.what()}});
  } catch (const json::exception& e) {
    return finish(2, {{"kind", "config"}, {"message", e.what()}});
  } catch (const std::domain_error& e) {
    return finish(2, {{"kind", "config"}, {"message", e.what()}});
  } catch (const std::invalid_argument& e) {
    return finish(2, {{"kind", "config"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    return finish(3, {{"kind", "numerical_guard"}, {"message", e.what()}});
  }
}

int run_config_file(const std::string& config_path, const Overrides& overrides) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    json manifest;
    manifest["tool_version"] = kToolVersion;
    manifest["exit_code"] = 2;
    manifest["error"] = {{"kind", "config"},
                         {"message", "cannot read config file: " + config_path}};
    const std::string out_dir = overrides.out.value_or("follmer_out");
    std::filesystem::create_directories(out_dir);
    atomic_write_text(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_config_text(buf.str(), overrides);
}

std::string report_csv(const std::vector<std::string>& manifest_dirs) {
  struct Row {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string params;
    std::string headline;
    std::string pass;
  };
  std::vector<Row> rows;
  for (const std::string& dir : manifest_dirs) {
    std::ifstream in(dir + "/manifest.json", std::ios::binary);
    if (!in)
      throw std::runtime_error("report: cannot read " + dir + "/manifest.json");
    json m = json::parse(in);
    Row row;
    if (m.contains("config")) {
      row.experiment = m["config"].value("experiment", std::string("?"));
      row.seed = m["config"].value("seed", 0ULL);
      if (m["config"].contains("params"))
        row.params = m["config"]["params"].dump();
    }
    if (m.contains("stats") && m["stats"].contains("headline"))
      row.headline = format_full(m["stats"]["headline"].get<double>());
    if (m.contains("pass"))
      row.pass = m["pass"].get<bool>() ? "pass" : "fail";
    else
      row.pass = "error";
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.experiment != b.experiment) return a.experiment < b.experiment;
    return a.seed < b.seed;
  });

  std::ostringstream out;
  out << "experiment,seed,params,headline,pass\n";
  for (const Row& row : rows) {
    out << row.experiment << ',' << row.seed << ',';
    csv_escape(out, row.params);
    out << ',' << row.headline << ',' << row.pass << '\n';
  }
  return out.str();
}

}  // namespace follmer::run
