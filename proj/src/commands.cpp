// Copyright 2026 The puresteady Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "puresteady/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numeric>

#include "puresteady/csv.hpp"
#include "puresteady/families.hpp"

namespace puresteady {

using nlohmann::json;

Tolerances GlobalOptions::tolerances() const {
  Tolerances t = default_tolerances();
  if (tol) {
    if (!(*tol > 0.0)) throw ValidationError("--tol must be positive");
    t.certification = *tol;
  }
  return t;
}

namespace {

void emit(const json& report, const GlobalOptions& opts, std::ostream& out,
          const std::string& name) {
  if (!opts.quiet) out << report.dump(2) << '\n';
  if (opts.output_dir) {
    std::filesystem::create_directories(*opts.output_dir);
    std::ofstream file(*opts.output_dir / (name + ".json"));
    if (!file) throw Error("cannot write report to " + opts.output_dir->string());
    file << report.dump(2) << '\n';
  }
}

json complex_list(const std::vector<Complex>& values) {
  json out = json::array();
  for (Complex z : values) out.push_back(complex_to_json(z));
  return out;
}

json certificate_json(const PureSteadyCertificate& cert) {
  return {
      {"state", vector_to_json(cert.state.amplitudes())},
      {"lindblad_eigenvalues", complex_list(cert.lindblad_eigenvalues)},
      {"drift_eigenvalue", complex_to_json(cert.drift_eigenvalue)},
      {"lindblad_residuals", cert.lindblad_residuals},
      {"drift_residual", cert.drift_residual},
      {"generator_residual", cert.generator_residual},
  };
}

struct CertificationOutcome {
  json report;
  bool found = false;
};

CertificationOutcome certify_problem(const Problem& p, const Tolerances& tol) {
  CertificationOutcome result;
  json& report = result.report;
  const LindbladSystem sys = p.system();
  std::vector<PureSteadyCertificate> certs;
  if (p.measured()) {
    const FeedbackSetup setup = p.feedback_setup();
    if (setup.eta() == 1.0) {
      certs = enumerate_feedback_pure_steady_states(setup, tol);
    } else {
      certs = enumerate_pure_steady_states(sys, tol);
      const InefficientFeedbackReport ineff = certify_inefficient_feedback(setup, tol);
      json diag = {{"measurement_shares_eigenvector",
                    ineff.diagnosis.measurement_shares_eigenvector}};
      if (ineff.diagnosis.shared_state) {
        diag["shared_state"] = vector_to_json(ineff.diagnosis.shared_state->amplitudes());
      }
      diag["message"] = ineff.diagnosis.measurement_shares_eigenvector
                            ? "c and iH + c^dagger c / 2 share an eigenvector"
                            : "c and iH + c^dagger c / 2 share no eigenvector: no feedback F "
                              "can produce a pure steady state at this efficiency";
      report["diagnosis"] = std::move(diag);
    }
  } else {
    certs = enumerate_pure_steady_states(sys, tol);
  }
  result.found = !certs.empty();
  report["certified"] = result.found;
  if (result.found) {
    report["certificate"] = certificate_json(certs.front());
    json all = json::array();
    for (const auto& c : certs) all.push_back(certificate_json(c));
    report["certificates"] = std::move(all);
  } else {
    report["message"] = "no pure steady state";
  }
  if (p.target) {
    const PureSteadyCertificate cert = make_certificate(sys, StateVector(*p.target));
    json t = certificate_json(cert);
    t["steady"] = cert.generator_residual <= tol.generator_residual * sys.scale();
    report["target"] = std::move(t);
  }
  return result;
}

std::string kind_name(const std::string& kind) {
  if (kind == "single-atom" || kind == "two-qubit" || kind == "two-qubit-original") return kind;
  throw ParseError("family kind must be single-atom, two-qubit or two-qubit-original, got '" +
                   kind + "'");
}

}  // namespace

int cmd_steady(const Problem& p, const GlobalOptions& opts, std::ostream& out) {
  const Tolerances tol = opts.tolerances();
  SteadyStateOptions options;
  if (p.initial) options.initial = DensityMatrix(*p.initial);
  const SteadyStateResult result = steady_state(p.system(), options, tol);
  json report = {
      {"state", matrix_to_json(result.rho.matrix())},
      {"purity", purity(result.rho)},
      {"unique", result.unique},
      {"steady_dimension", result.steady_dimension},
      {"spectral_abscissa", result.spectral_abscissa},
      {"residual", result.residual},
  };
  if (result.rho.dim() == 4) report["concurrence"] = concurrence(result.rho);
  if (p.target) report["fidelity_to_target"] = fidelity(result.rho, StateVector(*p.target));
  emit(report, opts, out, "steady");
  return kExitOk;
}

int cmd_certify(const Problem& p, const GlobalOptions& opts, std::ostream& out) {
  const CertificationOutcome outcome = certify_problem(p, opts.tolerances());
  emit(outcome.report, opts, out, "certify");
  return outcome.found ? kExitOk : kExitNoCertificate;
}

int cmd_family(const std::string& kind, const std::map<std::string, double>& params,
               const std::optional<std::string>& sign, double gamma,
               const std::optional<std::filesystem::path>& file, const GlobalOptions& opts,
               std::ostream& out) {
  Problem p;
  p.gamma = gamma;
  if (!(gamma > 0.0)) throw ParseError("--gamma must be positive");
  auto param = [&](const std::string& name) {
    const auto it = params.find(name);
    return it == params.end() ? 0.0 : it->second;
  };
  if (params.count("eta")) p.eta = params.at("eta");
  if (!(p.eta > 0.0 && p.eta <= 1.0)) throw ParseError("--eta must lie in (0, 1]");

  const std::string which = kind_name(kind);
  if (which == "single-atom") {
    p.kind = SystemKind::single_atom;
    double alpha = param("alpha");
    double lambda = param("lambda");
    if (params.count("theta")) {
      if (params.count("alpha") || params.count("lambda")) {
        throw ParseError("give either --theta or --alpha/--lambda, not both");
      }
      const std::string s = sign.value_or("+");
      if (s != "+" && s != "-") throw ParseError("--sign must be + or -");
      const SingleAtomPoint point =
          single_atom_point(params.at("theta"), s == "+" ? Branch::plus : Branch::minus, gamma);
      alpha = point.alpha;
      lambda = point.lambda;
      p.scalars["theta"] = point.theta;
      p.branch = s;
      p.target = point.phi.amplitudes();
    }
    p.scalars["alpha"] = alpha;
    p.scalars["lambda"] = lambda;
    const FeedbackSetup setup = single_atom_setup(alpha, lambda, gamma, p.eta);
    p.H = setup.hamiltonian();
    p.c = setup.measurement();
    p.F = setup.feedback();
  } else if (which == "two-qubit") {
    p.kind = SystemKind::two_qubit;
    for (const char* name : {"x1", "x2", "x3", "x4", "mu"}) p.scalars[name] = param(name);
    const BellFamilyPoint point =
        bell_feedback_family(param("x1"), param("x2"), param("x3"), param("x4"), param("mu"),
                             gamma);
    p.H = Matrix::Zero(4, 4);
    p.c = two_qubit_measurement_operator(gamma);
    p.F = point.F;
    p.target = bell_state().amplitudes();
  } else {
    p.kind = SystemKind::two_qubit_original;
    p.scalars["alpha"] = param("alpha");
    p.scalars["lambda"] = param("lambda");
    const OriginalScheme scheme = two_qubit_original_scheme(param("alpha"), param("lambda"), gamma);
    p.H = scheme.H;
    p.c = two_qubit_measurement_operator(gamma);
    p.F = scheme.F;
    p.target = bell_state().amplitudes();
  }

  const std::filesystem::path path = file.value_or(opts.directory() / "family.json");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  save_problem(p, path);

  const CertificationOutcome outcome = certify_problem(p, opts.tolerances());
  json report = outcome.report;
  report["problem_file"] = path.string();
  report["kind"] = which;
  report["H"] = matrix_to_json(p.H);
  report["c"] = matrix_to_json(*p.c);
  report["F"] = matrix_to_json(*p.F);
  emit(report, opts, out, "family");
  return outcome.found ? kExitOk : kExitNoCertificate;
}

int cmd_simulate(const Problem& p, const GlobalOptions& opts, std::ostream& out,
                 unsigned threads) {
  if (!p.simulation) throw ParseError("field 'simulation': required by simulate");
  const SimulationBlock& sim = *p.simulation;
  const DensityMatrix rho0 = p.initial_state();
  const bool four = p.dim() == 4;
  const std::optional<StateVector> target =
      p.target ? std::optional<StateVector>(StateVector(*p.target)) : std::nullopt;

  const LindbladSystem averaged = [&] {
    if (!p.measured()) return p.system();
    if (sim.control == Control::plain) return LindbladSystem(p.H, {*p.c});
    return p.system();
  }();
  const IntegrationResult deterministic =
      integrate(averaged, rho0, sim.horizon, sim.dt, sim.sample_every);

  const std::filesystem::path dir = opts.directory();
  std::filesystem::create_directories(dir);
  const std::filesystem::path traj_path = dir / "trajectories.csv";
  const std::filesystem::path summary_path = dir / "summary.csv";
  std::ofstream traj_file(traj_path);
  std::ofstream summary_file(summary_path);
  if (!traj_file || !summary_file) throw Error("cannot write CSV output to " + dir.string());

  std::vector<std::string> traj_cols{"time", "traj_id", "purity"};
  if (four) traj_cols.push_back("concurrence");
  if (target) traj_cols.push_back("fidelity_to_target");
  traj_cols.push_back("dy");
  std::vector<std::string> summary_cols{"time", "mean_purity"};
  if (target) summary_cols.push_back("mean_fidelity");
  summary_cols.push_back("trace_distance_to_deterministic");
  CsvWriter traj_csv(traj_file, traj_cols);
  CsvWriter summary_csv(summary_file, summary_cols);

  auto state_row = [&](double t, double id, const DensityMatrix& rho, double dy) {
    std::vector<double> row{t, id, purity(rho)};
    if (four) row.push_back(concurrence(rho));
    if (target) row.push_back(fidelity(rho, *target));
    row.push_back(dy);
    traj_csv.row(row);
  };

  const std::size_t samples = deterministic.times.size();
  std::vector<double> mean_purity(samples, 0.0);
  std::vector<double> mean_fid(samples, 0.0);
  std::vector<double> distance(samples, 0.0);

  if (sim.n_traj == 0) {
    const Matrix current_op = p.measured() ? Matrix(*p.c + p.c->adjoint())
                                           : Matrix::Zero(p.dim(), p.dim());
    for (std::size_t k = 0; k < samples; ++k) {
      const DensityMatrix& rho = deterministic.states[k];
      const double dy = k == 0 ? 0.0
                               : (current_op * deterministic.states[k - 1].matrix()).trace().real() *
                                     (deterministic.times[k] - deterministic.times[k - 1]);
      state_row(deterministic.times[k], 0.0, rho, dy);
      mean_purity[k] = purity(rho);
      if (target) mean_fid[k] = fidelity(rho, *target);
    }
  } else {
    TrajectoryConfig config;
    config.dt = sim.dt;
    config.horizon = sim.horizon;
    config.seed = sim.seed;
    config.n_traj = sim.n_traj;
    config.sample_every = sim.sample_every;
    config.control = sim.control;
    config.scheme = sim.scheme;
    config.threads = std::max(1u, threads);
    const std::vector<TrajectoryRecord> records = simulate(rho0, p.feedback_setup(), config);
    for (const TrajectoryRecord& rec : records) {
      std::size_t step = 0;
      for (std::size_t k = 0; k < rec.times.size(); ++k) {
        const auto until = static_cast<std::size_t>(std::llround(rec.times[k] / sim.dt));
        double dy = 0.0;
        for (; step < until; ++step) dy += rec.record[step];
        state_row(rec.times[k], static_cast<double>(rec.index), rec.states[k], dy);
        mean_purity[k] += purity(rec.states[k]);
        if (target) mean_fid[k] += fidelity(rec.states[k], *target);
      }
    }
    const double inv = 1.0 / static_cast<double>(records.size());
    const EnsembleAverage mean = ensemble_average(records);
    for (std::size_t k = 0; k < samples; ++k) {
      mean_purity[k] *= inv;
      mean_fid[k] *= inv;
      distance[k] = trace_distance(mean.states[k].matrix(), deterministic.states[k].matrix());
    }
  }

  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<double> row{deterministic.times[k], mean_purity[k]};
    if (target) row.push_back(mean_fid[k]);
    row.push_back(distance[k]);
    summary_csv.row(row);
  }

  json report = {
      {"trajectories_csv", traj_path.string()},
      {"summary_csv", summary_path.string()},
      {"n_traj", sim.n_traj},
      {"final_mean_purity", mean_purity.back()},
      {"max_trace_distance_to_deterministic",
       *std::max_element(distance.begin(), distance.end())},
      {"warnings", deterministic.warnings},
  };
  if (target) report["final_mean_fidelity"] = mean_fid.back();
  if (!opts.quiet) out << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_dfs(const Problem& p, Index d, bool strict, const GlobalOptions& opts,
            std::ostream& out) {
  const Tolerances tol = opts.tolerances();
  const LindbladSystem sys = p.system();
  const std::optional<DfsSpec> spec = decoherence_free_check(sys, d, strict, tol);
  json report = {{"decoherence_free", spec.has_value()}, {"dimension", d}, {"strict", strict}};
  if (spec) {
    report["alpha"] = complex_list(spec->alpha);
    json states = json::array();
    for (Index h = 0; h < d; ++h) {
      states.push_back(certificate_json(decoherence_free_steady_state(*spec, h, tol)));
    }
    report["states"] = std::move(states);
  }
  emit(report, opts, out, "dfs");
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pure steady states of Lindblad dynamics with homodyne feedback"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  double tol_value = 0.0;
  std::string output_dir;
  auto* tol_opt = app.add_option("--tol", tol_value, "Relative certification tolerance");
  auto* dir_opt = app.add_option("--output-dir", output_dir, "Directory for written files");
  app.add_flag("--quiet", opts.quiet, "Suppress the report on stdout");

  std::string problem_path;
  auto* steady = app.add_subcommand("steady", "Solve for the steady state");
  steady->add_option("problem", problem_path, "Problem file")->required();
  auto* certify = app.add_subcommand("certify", "Search for a certified pure steady state");
  certify->add_option("problem", problem_path, "Problem file")->required();
  unsigned threads = 1;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run homodyne trajectories");
  simulate_cmd->add_option("problem", problem_path, "Problem file")->required();
  simulate_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  Index dfs_dim = 0;
  bool strict = false;
  auto* dfs = app.add_subcommand("dfs", "Check a decoherence-free split");
  dfs->add_option("problem", problem_path, "Problem file")->required();
  dfs->add_option("--dim", dfs_dim, "Subspace dimension d")->required();
  dfs->add_flag("--strict", strict, "Also require the off-diagonal coupling Q to vanish");

  std::string kind;
  std::map<std::string, double> params;
  std::string sign;
  double gamma = 1.0;
  std::string family_file;
  auto* family = app.add_subcommand("family", "Generate a stabilizing parameter point");
  family->add_option("kind", kind, "single-atom, two-qubit or two-qubit-original")->required();
  for (const char* name : {"theta", "alpha", "lambda", "x1", "x2", "x3", "x4", "mu", "eta"}) {
    family->add_option_function<double>(
        std::string("--") + name, [&params, name](double v) { params[name] = v; },
        std::string("Parameter ") + name);
  }
  auto* sign_opt = family->add_option("--sign", sign, "Branch of the single-atom family (+/-)");
  family->add_option("--gamma", gamma, "Decay rate");
  auto* file_opt = family->add_option("--out", family_file, "Problem file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  if (*tol_opt) opts.tol = tol_value;
  if (*dir_opt) opts.output_dir = output_dir;

  try {
    if (*family) {
      return cmd_family(kind, params, *sign_opt ? std::optional<std::string>(sign) : std::nullopt,
                        gamma,
                        *file_opt ? std::optional<std::filesystem::path>(family_file)
                                  : std::nullopt,
                        opts, out);
    }
    const Problem problem = load_problem(problem_path);
    if (*steady) return cmd_steady(problem, opts, out);
    if (*certify) {
      const int code = cmd_certify(problem, opts, out);
      if (code == kExitNoCertificate && !opts.quiet) err << "no pure steady state\n";
      return code;
    }
    if (*simulate_cmd) return cmd_simulate(problem, opts, out, threads);
    if (*dfs) return cmd_dfs(problem, dfs_dim, strict, opts, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DimensionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitParse;
}

}  // namespace puresteady
