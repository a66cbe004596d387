#include "qfib/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qfib/parallel.hpp"
#include "qfib/random_states.hpp"

namespace qfib {

using nlohmann::json;

namespace {


[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

ToleranceConfig parse_tolerances(const json& cfg) {
  ToleranceConfig tol;
  if (!cfg.contains("tolerances")) return tol;
  const json& t = cfg.at("tolerances");
  if (!t.is_object()) config_error("tolerances", "must be an object");
  auto set = [&](const char* name, double& slot) {
    if (t.contains(name)) slot = t.at(name).get<double>();
  };
  set("herm", tol.herm);
  set("trace", tol.trace);
  set("psd", tol.psd);
  set("eig", tol.eig);
  set("povm", tol.povm);
  set("rank", tol.rank);
  set("sld", tol.sld);
  set("prob", tol.prob);
  set("opt", tol.opt);
  set("bcast", tol.bcast);
  set("unif", tol.unif);
  set("prod", tol.prod);
  set("comm", tol.comm);
  return tol;
}

std::uint64_t parse_seed(const json& cfg) {
  if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
  if (const char* env = std::getenv(kSeedEnvVar)) {
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  }
  return 0;
}

cmat matrix_from_json(const json& rows, const std::string& field) {
  if (!rows.is_array() || rows.empty()) config_error(field, "expected a matrix");
  const std::size_t nr = rows.size();
  const std::size_t nc = rows.at(0).size();
  cmat m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows.at(i).size() != nc) config_error(field, "ragged matrix");
    for (std::size_t j = 0; j < nc; ++j) {
      const json& e = rows.at(i).at(j);
      if (e.is_array() && e.size() == 2) {
        m(i, j) = cxd(e.at(0).get<double>(), e.at(1).get<double>());
      } else if (e.is_number()) {
        m(i, j) = cxd(e.get<double>(), 0.0);
      } else {
        config_error(field, "matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

ParametricFamily family_from_file(const std::string& path, const ToleranceConfig& tol) {
  std::ifstream in(path);
  if (!in) config_error("family.path", "cannot open '" + path + "'");
  json j;
  in >> j;
  if (!j.contains("thetas") || !j.contains("states")) {
    config_error("family.path", "file needs 'thetas' and 'states'");
  }
  auto thetas = j.at("thetas").get<std::vector<double>>();
  std::vector<int> dims = j.contains("dims") ? j.at("dims").get<std::vector<int>>()
                                             : std::vector<int>{};
  std::vector<cmat> mats;
  for (const json& s : j.at("states")) mats.push_back(matrix_from_json(s, "family.states"));
  if (thetas.size() != mats.size() || thetas.size() < 3) {
    config_error("family.path", "need >= 3 matching thetas and states");
  }
  if (!std::is_sorted(thetas.begin(), thetas.end())) {
    config_error("family.path", "thetas must be ascending");
  }
  if (dims.empty()) dims = {static_cast<int>(mats.front().rows())};

  auto locate = [thetas](double t) {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      if (std::abs(thetas[i] - t) <= 1e-9) return i;
    }
    throw OutOfDomain("file family: theta is not a tabulated point");
  };
  auto state = [thetas, mats, dims, tol, locate](double t) {
    return DensityMatrix(mats[locate(t)], dims, tol);
  };
  // second-order three-point derivative on the tabulated (possibly uneven) grid
  auto deriv = [thetas, mats, locate](double t) {
    const std::size_t i = locate(t);
    const std::size_t n = thetas.size();
    const std::size_t a = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    const double x0 = thetas[a], x1 = thetas[a + 1], x2 = thetas[a + 2];
    auto w = [&](double xi, double xj, double xk) {
      return (2.0 * t - xj - xk) / ((xi - xj) * (xi - xk));
    };
    cmat d = w(x0, x1, x2) * mats[a] + w(x1, x0, x2) * mats[a + 1] +
             w(x2, x0, x1) * mats[a + 2];
    return cmat(hermitize(d));
  };
  return ParametricFamily::analytic(Interval{thetas.front(), thetas.back()}, state, deriv);
}

ParametricFamily make_family(const json& cfg, const ToleranceConfig& tol) {
  if (!cfg.contains("family")) config_error("family", "missing");
  const json& f = cfg.at("family");
  const std::string name = f.value("name", "");
  if (name == "equatorial") return builtin_equatorial();
  if (name == "piecewise_xyz") return builtin_piecewise_xyz();
  if (name == "classical_diagonal") return builtin_classical_diagonal();
  if (name == "random") {
    const std::uint64_t seed = f.value("seed", parse_seed(cfg));
    std::vector<int> dims = f.contains("dims") ? f.at("dims").get<std::vector<int>>()
                                               : std::vector<int>{f.value("dim", 2)};
    const std::string kind = f.value("kind", "mixed");
    return random_family(dims, seed,
                         kind == "pure" ? FamilyKind::PureOrbit : FamilyKind::UnitaryOrbit,
                         0.1, tol);
  }
  if (name == "file") {
    if (!f.contains("path")) config_error("family.path", "missing");
    return family_from_file(f.at("path").get<std::string>(), tol);
  }
  config_error("family.name", "unknown family '" + name + "'");
}

std::vector<double> make_grid(const json& cfg, const ParametricFamily& fam) {
  std::vector<double> grid;
  if (!cfg.contains("grid")) {
    // default: 30 interior points across the domain
    const Interval d = fam.domain();
    const double margin = 0.05 * d.width();
    for (int i = 0; i < 30; ++i) {
      grid.push_back(d.lo + margin + (d.width() - 2 * margin) * i / 29.0);
    }
  } else if (cfg.at("grid").contains("points")) {
    grid = cfg.at("grid").at("points").get<std::vector<double>>();
  } else {
    const json& g = cfg.at("grid");
    const double start = g.value("start", 0.0);
    const double stop = g.value("stop", 0.0);
    const int count = g.value("count", 0);
    if (count < 1) config_error("grid.count", "must be >= 1");
    if (stop < start) config_error("grid", "stop must be >= start");
    for (int i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1.0));
    }
  }
  if (grid.empty()) config_error("grid", "empty grid");
  return grid;
}

KrausChannel make_channel(const json& cfg, const ParametricFamily& fam,
                          const std::vector<double>& grid, const ToleranceConfig& tol) {
  const json& c = cfg.at("channel");
  const std::string name = c.value("name", "");
  if (name == "hadamard_cnot") return hadamard_cnot_broadcaster();
  if (name == "depolarizing") return depolarizing_channel(c.value("p", 1.0));
  if (name == "outcome_broadcast") {
    const double theta0 = c.value("theta0", grid.front());
    const int n_parties = c.value("n_parties", 2);
    const int piece = fam.piece_index(theta0);
    const POVM m = optimal_measurement(fam.state_at(theta0, piece, tol),
                                       fam.derivative(theta0, piece, tol), tol);
    return outcome_broadcast_channel(m, n_parties, m.n_outcomes(), tol);
  }
  if (name == "infinite_broadcast") {
    const int n_parties = c.value("n_parties", 2);
    return infinite_broadcast_channel(fam, grid, n_parties, tol);
  }
  if (name == "identity_x_constant" || name == "constant_x_identity") {
    const int d = fam.dim();
    const DensityMatrix tau(cmat(cmat::Identity(d, d) / static_cast<double>(d)), {d}, tol);
    return tensor_with_constant(tau, fam.dims(), name == "constant_x_identity", tol);
  }
  config_error("channel.name", "unknown channel '" + name + "'");
}

bool approx_match(double value, const json& expected, double default_tol) {
  const double target = expected.value("value", 0.0);
  const double tol = expected.value("tol", default_tol);
  return std::abs(value - target) <= tol;
}

json check_qfi(const ParametricFamily& fam, const std::vector<double>& grid,
               const json& expected, const ToleranceConfig& tol, int jobs,
               std::vector<double>& excluded) {
  std::vector<double> values(grid.size());
  std::vector<bool> degenerate(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const SldResult r = sld_at(fam, grid[i], tol);
    values[i] = r.qfi;
    degenerate[i] = r.degenerate;
  });
  bool pass = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (degenerate[i]) {
      excluded.push_back(grid[i]);
      continue;
    }
    if (!expected.is_null() && !approx_match(values[i], expected, 1e-9)) pass = false;
  }
  json out;
  out["theta"] = grid;
  out["qfi"] = values;
  out["degenerate"] = degenerate;
  if (!expected.is_null()) out["expected"] = expected;
  out["pass"] = pass;
  return out;
}

json check_broadcast(const ParametricFamily& working, const ParametricFamily* input,
                     const std::vector<double>& grid, const json& expected,
                     const ToleranceConfig& tol, int jobs, std::vector<double>& excluded) {
  BroadcastReport rep = is_qfi_broadcast(working, grid, tol, jobs);
  if (input != nullptr) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rep.input_qfi[i] = qfi(*input, grid[i], tol);
    }
  }
  for (double t : rep.degenerate_points) excluded.push_back(t);
  const std::string verdict =
      rep.verdict == BroadcastVerdict::Broadcast ? "Broadcast" : "NotBroadcast";
  const std::string want = expected.is_string() ? expected.get<std::string>() : "Broadcast";
  json out;
  out["verdict"] = verdict;
  out["max_deficit"] = rep.max_deficit;
  out["theta"] = rep.theta_grid;
  out["input_qfi"] = rep.input_qfi;
  out["joint_qfi"] = rep.joint_qfi;
  out["party_qfi"] = rep.party_qfi;
  out["degenerate_points"] = rep.degenerate_points;
  out["pass"] = verdict == want;
  return out;
}

json check_uniform_run(const ParametricFamily& fam, const std::vector<double>& grid,
                       const json& expected, const ToleranceConfig& tol, int jobs,
                       std::vector<double>& excluded) {
  // keep user grids clear of declared junctions; the checker probes them
  std::vector<double> clean;
  for (double t : grid) {
    if (fam.is_piece_boundary(t)) {
      excluded.push_back(t);
    } else {
      clean.push_back(t);
    }
  }
  const UniformnessReport rep = check_uniform(fam, clean, {}, tol, jobs);
  for (double t : rep.excluded_points) excluded.push_back(t);
  const char* verdict = rep.verdict == UniformVerdict::Uniform        ? "Uniform"
                        : rep.verdict == UniformVerdict::NotUniform   ? "NotUniform"
                                                                      : "Inconclusive";
  json pts = json::array();
  for (const EvalPoint& e : rep.points) {
    pts.push_back({{"theta", e.theta}, {"piece", e.piece}, {"junction_side", e.junction_side}});
  }
  json out;
  out["verdict"] = verdict;
  out["points"] = pts;
  out["ratios"] = rep.per_theta_ratio;
  if (rep.certificate) {
    out["certificate"] = {
        {"measurement_at",
         {{"theta", rep.certificate->first.theta}, {"piece", rep.certificate->first.piece}}},
        {"fails_at",
         {{"theta", rep.certificate->second.theta}, {"piece", rep.certificate->second.piece}}},
        {"ratio", rep.certificate_ratio}};
  }
  const std::string want = expected.is_string() ? expected.get<std::string>() : verdict;
  out["pass"] = want == verdict;
  return out;
}

json check_no_cloning(const KrausChannel& ch, const ParametricFamily& input,
                      const std::vector<double>& grid, const ToleranceConfig& tol) {
  const CloningAudit audit = no_cloning_audit(ch, input, grid, tol);
  json rows = json::array();
  for (const CloningRow& r : audit.rows) {
    rows.push_back({{"theta", r.theta}, {"f_in", r.f_in}, {"f_a", r.f_a}, {"f_b", r.f_b}});
  }
  json out;
  out["rows"] = rows;
  out["theorem_holds"] = audit.theorem_holds;
  out["max_sum_excess"] = audit.max_sum_excess;
  out["pass"] = audit.theorem_holds && audit.max_sum_excess <= 1e-7;
  return out;
}

json check_residuals(const ParametricFamily& fam, const std::vector<double>& grid,
                     const json& expected, const ToleranceConfig& tol, bool lift) {
  const int n_parties = static_cast<int>(fam.dims().size());
  if (n_parties < 2) {
    throw InvalidSubsystem("residual checks need a multipartite family");
  }
  std::vector<double> thetas, residuals;
  std::vector<int> parties;
  double max_res = 0.0;
  for (double t : grid) {
    for (int k = 0; k < n_parties; ++k) {
      const double r = lift ? check_sld_lift(fam, k, t, tol)
                            : check_reduced_commutativity(fam, k, t, tol);
      thetas.push_back(t);
      parties.push_back(k);
      residuals.push_back(r);
      max_res = std::max(max_res, r);
    }
  }
  bool pass;
  if (expected.is_object() && expected.contains("min")) {
    pass = max_res >= expected.at("min").get<double>();
  } else {
    const double cap = expected.is_object() && expected.contains("max")
                           ? expected.at("max").get<double>()
                           : (lift ? tol.sld : tol.comm);
    pass = max_res <= cap;
  }
  json out;
  out["theta"] = thetas;
  out["party"] = parties;
  out["residual"] = residuals;
  out["max_residual"] = max_res;
  out["pass"] = pass;
  return out;
}

json check_estimate(const ParametricFamily& fam, const json& cfg, const json& expected,
                    std::uint64_t seed, const ToleranceConfig& tol, int jobs) {
  const json e = cfg.value("estimate", json::object());
  const double theta_true = e.value("theta_true", 1.0);
  const std::int64_t n_samples = e.value("n_samples", 1000);
  const std::int64_t n_trials = e.value("n_trials", 500);

  const int piece = fam.piece_index(theta_true);
  const POVM m = optimal_measurement(fam.state_at(theta_true, piece, tol),
                                     fam.derivative(theta_true, piece, tol), tol);
  EstimationOptions opts;
  opts.jobs = jobs;
  if (e.contains("search_halfwidth")) opts.search_halfwidth = e.at("search_halfwidth");
  const EstimationReport rep =
      simulate_estimation(fam, m, theta_true, n_samples, n_trials, seed, tol, opts);

  double band_lo = 0.8, band_hi = 1.5;
  if (expected.is_object() && expected.contains("band")) {
    band_lo = expected.at("band").at(0).get<double>();
    band_hi = expected.at("band").at(1).get<double>();
  }
  const double ratio = rep.estimator_variance / rep.crb;
  json out;
  out["theta_true"] = rep.theta_true;
  out["n_samples"] = rep.n_samples;
  out["n_trials"] = rep.n_trials;
  out["variance"] = rep.estimator_variance;
  out["crb"] = rep.crb;
  out["variance_over_crb"] = ratio;
  out["seed"] = rep.rng_seed;
  out["pass"] = ratio >= band_lo && ratio <= band_hi;
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  ExperimentConfig c;
  c.raw = j;
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

RunReport run(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const json& cfg = config.raw;

  const ToleranceConfig tol = parse_tolerances(cfg);
  const std::uint64_t seed = parse_seed(cfg);
  const int jobs = cfg.value("jobs", 1);

  const ParametricFamily base = make_family(cfg, tol);
  const std::vector<double> grid = make_grid(cfg, base);
  for (double t : grid) {
    if (t < base.domain().lo - 1e-9 || t > base.domain().hi + 1e-9) {
      config_error("grid", "grid point outside family domain");
    }
  }

  const bool has_channel = cfg.contains("channel");
  std::vector<KrausChannel> channel;
  if (has_channel) channel.push_back(make_channel(cfg, base, grid, tol));
  const ParametricFamily working =
      has_channel ? through_channel(channel.front(), base, tol) : base;

  std::vector<std::string> checks;
  if (cfg.contains("checks")) {
    checks = cfg.at("checks").get<std::vector<std::string>>();
  } else {
    checks = {"qfi"};
  }
  const json expected_all = cfg.value("expected", json::object());

  RunReport rep;
  rep.config = cfg;
  rep.version = kVersion;
  rep.results = json::object();

  for (const std::string& name : checks) {
    const json expected = expected_all.value(name, json());
    json result;
    if (name == "qfi") {
      result = check_qfi(working, grid, expected, tol, jobs, rep.excluded_thetas);
    } else if (name == "broadcast") {
      result = check_broadcast(working, has_channel ? &base : nullptr, grid, expected, tol,
                               jobs, rep.excluded_thetas);
    } else if (name == "uniform") {
      result = check_uniform_run(working, grid, expected, tol, jobs, rep.excluded_thetas);
    } else if (name == "no_cloning") {
      if (!has_channel) config_error("checks", "no_cloning requires a channel");
      result = check_no_cloning(channel.front(), base, grid, tol);
    } else if (name == "sld_lift") {
      result = check_residuals(working, grid, expected, tol, true);
    } else if (name == "commutativity") {
      result = check_residuals(working, grid, expected, tol, false);
    } else if (name == "estimate") {
      result = check_estimate(working, cfg, expected, seed, tol, jobs);
    } else {
      config_error("checks", "unknown check '" + name + "'");
    }
    rep.results[name] = result;
    rep.verdicts[name] = result.at("pass").get<bool>();
    rep.all_pass = rep.all_pass && rep.verdicts[name];
  }

  std::sort(rep.excluded_thetas.begin(), rep.excluded_thetas.end());
  rep.excluded_thetas.erase(
      std::unique(rep.excluded_thetas.begin(), rep.excluded_thetas.end()),
      rep.excluded_thetas.end());

  const auto t1 = std::chrono::steady_clock::now();
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

std::vector<RunReport> sweep(const ExperimentConfig& config,
                             const std::string& parameter_path,
                             const std::vector<json>& values) {
  std::string pointer = "/" + parameter_path;
  std::replace(pointer.begin(), pointer.end(), '.', '/');
  std::vector<RunReport> reports;
  for (const json& v : values) {
    json cfg = config.raw;
    try {
      cfg[json::json_pointer(pointer)] = v;
    } catch (const json::exception& e) {
      throw ConfigError("sweep parameter path '" + parameter_path + "': " + e.what());
    }
    reports.push_back(run(ExperimentConfig::from_json(cfg)));
  }
  return reports;
}

json RunReport::to_json() const {
  json j;
  j["config"] = config;
  j["version"] = version;
  j["wall_time_ms"] = wall_time_ms;
  j["results"] = results;
  j["verdicts"] = verdicts;
  j["all_pass"] = all_pass;
  j["excluded_thetas"] = excluded_thetas;
  return j;
}

RunReport RunReport::from_json(const json& j) {
  RunReport r;
  r.config = j.at("config");
  r.version = j.at("version").get<std::string>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  r.results = j.at("results");
  r.verdicts = j.at("verdicts").get<std::map<std::string, bool>>();
  r.all_pass = j.at("all_pass").get<bool>();
  r.excluded_thetas = j.at("excluded_thetas").get<std::vector<double>>();
  return r;
}

std::string RunReport::canonical_dump() const {
  json j = to_json();
  j.erase("wall_time_ms");
  return j.dump(2);
}

bool RunReport::operator==(const RunReport& other) const {
  return to_json() == other.to_json();
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void csv_row(std::ostringstream& out, double theta, const json& input_qfi, const json& party,
             const json& party_qfi, const json& residual, const std::string& flags) {
  out << fmt_double(theta) << ',';
  out << (input_qfi.is_number() ? fmt_double(input_qfi.get<double>()) : "") << ',';
  out << (party.is_number_integer() ? std::to_string(party.get<int>()) : "") << ',';
  out << (party_qfi.is_number() ? fmt_double(party_qfi.get<double>()) : "") << ',';
  out << (residual.is_number() ? fmt_double(residual.get<double>()) : "") << ',';
  out << flags << '\n';
}

}  // namespace

std::string RunReport::to_csv() const {
  std::ostringstream out;
  out << "theta,input_qfi,party_index,party_qfi,residuals,flags\n";
  for (auto it = results.begin(); it != results.end(); ++it) {
    const std::string& name = it.key();
    const json& r = it.value();
    if (name == "qfi") {
      for (std::size_t i = 0; i < r.at("theta").size(); ++i) {
        const bool deg = r.at("degenerate").at(i).get<bool>();
        csv_row(out, r.at("theta").at(i), r.at("qfi").at(i), json(), json(), json(),
                deg ? "qfi;degenerate" : "qfi");
      }
    } else if (name == "broadcast") {
      const json& party_qfi = r.at("party_qfi");
      for (std::size_t i = 0; i < r.at("theta").size(); ++i) {
        for (std::size_t k = 0; k < party_qfi.size(); ++k) {
          const double deficit = std::abs(party_qfi.at(k).at(i).get<double>() -
                                          r.at("joint_qfi").at(i).get<double>());
          csv_row(out, r.at("theta").at(i), r.at("input_qfi").at(i), json(static_cast<int>(k)),
                  party_qfi.at(k).at(i), json(deficit), "broadcast");
        }
      }
    } else if (name == "uniform") {
      for (std::size_t i = 0; i < r.at("points").size(); ++i) {
        const json& p = r.at("points").at(i);
        csv_row(out, p.at("theta"), json(), json(), json(), r.at("ratios").at(i),
                p.at("junction_side").get<bool>() ? "uniform;junction_side" : "uniform");
      }
    } else if (name == "no_cloning") {
      for (const json& row : r.at("rows")) {
        const double excess = row.at("f_a").get<double>() + row.at("f_b").get<double>() -
                              row.at("f_in").get<double>();
        csv_row(out, row.at("theta"), row.at("f_in"), json(0), row.at("f_a"), json(excess),
                "no_cloning");
        csv_row(out, row.at("theta"), row.at("f_in"), json(1), row.at("f_b"), json(excess),
                "no_cloning");
      }
    } else if (name == "sld_lift" || name == "commutativity") {
      for (std::size_t i = 0; i < r.at("theta").size(); ++i) {
        csv_row(out, r.at("theta").at(i), json(), r.at("party").at(i), json(),
                r.at("residual").at(i), name);
      }
    } else if (name == "estimate") {
      csv_row(out, r.at("theta_true"), json(), json(), json(), r.at("variance"), "estimate");
    }
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string>> list_families() {
  return {
      {"equatorial", "qubit (|0> + e^{i theta}|1>)/sqrt(2) on [0, 2pi), QFI 1"},
      {"piecewise_xyz", "two-qubit cos t|ii> + sin t|ibar ibar> over yy/zz/xx pieces, QFI 4"},
      {"classical_diagonal", "diag(cos^2(theta/2), sin^2(theta/2)) on (0, pi), QFI 1"},
      {"random", "unitary-orbit family exp(-i theta H) rho0; params: seed, dims, kind"},
      {"file", "tabulated states from JSON; params: path"},
  };
}

std::vector<std::pair<std::string, std::string>> list_channels() {
  return {
      {"hadamard_cnot", "H then CNOT onto |0>: isometry from 1 qubit to 2"},
      {"outcome_broadcast", "measure optimally at theta0, hand |j><j| to n parties"},
      {"infinite_broadcast", "outcome broadcast with the uniform measurement (Theorem 2)"},
      {"identity_x_constant", "sigma -> sigma (x) I/d; product output, F_b = 0"},
      {"constant_x_identity", "sigma -> I/d (x) sigma; product output, F_a = 0"},
      {"depolarizing", "qubit depolarizing; params: p"},
  };
}

}  // namespace qfib
