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

#include "puresteady/sme.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "puresteady/random.hpp"

namespace puresteady {

namespace {

constexpr double kStepQualityFloor = -1e-4;

Matrix dissipator(const Matrix& b, const Matrix& rho) {
  const Matrix bdb = b.adjoint() * b;
  return b * rho * b.adjoint() - 0.5 * (bdb * rho + rho * bdb);
}

double mean_current(const Matrix& c, const Matrix& rho) {
  return ((c + c.adjoint()) * rho).trace().real();
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void check_step_args(const DensityMatrix& rho, const Matrix& h, double dt) {
  if (!(dt > 0.0)) {
    throw ValidationError("time step must be positive");
  }
  if (h.rows() != rho.dim()) {
    throw DimensionError("state and Hamiltonian dimensions differ");
  }
}

SmeStep finish(const Matrix& updated, double dy) {
  DensityMatrix state = DensityMatrix::hermitized(updated);
  const double lowest = min_eigenvalue(state.matrix());
  if (lowest < kStepQualityFloor) {
    std::ostringstream msg;
    msg << "state eigenvalue " << lowest << " below " << kStepQualityFloor
        << " after a step; reduce dt";
    throw StepQualityError(msg.str());
  }
  return SmeStep{std::move(state), dy, lowest};
}

SmeStep kraus_step(const Matrix& rho, const Matrix& h, const Matrix& c, double current,
                   double dW, double dt) {
  const double dy = current * dt + dW;
  const Index n = rho.rows();
  const Matrix m = Matrix::Identity(n, n) - (kI * h + 0.5 * c.adjoint() * c) * dt + c * dy;
  return finish(m * rho * m.adjoint(), dy);
}

}  // namespace

SmeTerms sme_terms(const Matrix& rho, const Matrix& hamiltonian, const Matrix& measurement) {
  const double current = mean_current(measurement, rho);
  return SmeTerms{
      -kI * comm(hamiltonian, rho) + dissipator(measurement, rho),
      measurement * rho + rho * measurement.adjoint() - current * rho,
      current,
  };
}

SmeTerms feedback_sme_terms(const Matrix& rho, const FeedbackSetup& setup) {
  const Matrix& c = setup.measurement();
  const Matrix& f = setup.feedback();
  SmeTerms terms = sme_terms(rho, setup.hamiltonian(), c);
  const Matrix kick = c * rho + rho * c.adjoint();
  terms.drift += -kI * comm(f, kick) + dissipator(f, rho);
  terms.diffusion += -kI * comm(f, rho);
  return terms;
}

SmeStep sme_step(const DensityMatrix& rho, const Matrix& hamiltonian, const Matrix& measurement,
                 double dW, double dt, SmeScheme scheme) {
  check_step_args(rho, hamiltonian, dt);
  if (measurement.rows() != rho.dim() || measurement.cols() != rho.dim()) {
    throw DimensionError("state and measurement operator dimensions differ");
  }
  const Matrix& r = rho.matrix();
  if (scheme == SmeScheme::kraus) {
    return kraus_step(r, hamiltonian, measurement, mean_current(measurement, r), dW, dt);
  }
  const SmeTerms terms = sme_terms(r, hamiltonian, measurement);
  return finish(r + terms.drift * dt + terms.diffusion * dW, terms.mean_current * dt + dW);
}

SmeStep feedback_sme_step(const DensityMatrix& rho, const FeedbackSetup& setup, double dW,
                          double dt, SmeScheme scheme) {
  if (setup.eta() != 1.0) {
    throw ValidationError("feedback trajectories require eta == 1");
  }
  check_step_args(rho, setup.hamiltonian(), dt);
  const Matrix& r = rho.matrix();
  if (scheme == SmeScheme::kraus) {
    return kraus_step(r, setup.effective_hamiltonian(), setup.effective_measurement(),
                      mean_current(setup.measurement(), r), dW, dt);
  }
  const SmeTerms terms = feedback_sme_terms(r, setup);
  return finish(r + terms.drift * dt + terms.diffusion * dW, terms.mean_current * dt + dW);
}

std::size_t TrajectoryConfig::steps() const {
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

void TrajectoryConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("dt must be positive");
  }
  if (!(horizon >= dt) || !std::isfinite(horizon)) {
    throw ValidationError("horizon T must be at least dt");
  }
  if (n_traj < 1) {
    throw ValidationError("n_traj must be at least 1");
  }
  if (sample_every < 1) {
    throw ValidationError("sample_every must be at least 1");
  }
}

namespace {

TrajectoryRecord run_trajectory(const DensityMatrix& rho0, const FeedbackSetup& setup,
                                const TrajectoryConfig& config, std::size_t index) {
  Xoshiro256 rng(substream_seed(config.seed, index));
  const std::size_t steps = config.steps();
  const double sqrt_dt = std::sqrt(config.dt);

  TrajectoryRecord out;
  out.seed = config.seed;
  out.index = index;
  out.record.reserve(steps);
  out.times.push_back(0.0);
  out.states.push_back(rho0);

  DensityMatrix rho = rho0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double dW = sqrt_dt * rng.gaussian();
    SmeStep step = [&] {
      try {
        return config.control == Control::feedback
                   ? feedback_sme_step(rho, setup, dW, config.dt, config.scheme)
                   : sme_step(rho, setup.hamiltonian(), setup.measurement(), dW, config.dt,
                              config.scheme);
      } catch (const StepQualityError& e) {
        std::ostringstream msg;
        msg << "trajectory " << index << ", step " << k << ": " << e.what();
        throw StepQualityError(msg.str());
      }
    }();
    rho = std::move(step.state);
    out.record.push_back(step.dy);
    if (k % config.sample_every == 0 || k == steps) {
      out.times.push_back(static_cast<double>(k) * config.dt);
      out.states.push_back(rho);
    }
  }
  return out;
}

}  // namespace

std::vector<TrajectoryRecord> simulate(const DensityMatrix& rho0, const FeedbackSetup& setup,
                                       const TrajectoryConfig& config) {
  config.validate();
  if (rho0.dim() != setup.dim()) {
    throw DimensionError("initial state and system dimensions differ");
  }
  if (config.control == Control::feedback && setup.eta() != 1.0) {
    throw ValidationError("feedback trajectories require eta == 1");
  }
  std::vector<TrajectoryRecord> records(config.n_traj);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(config.threads, config.n_traj));
  if (workers == 1) {
    for (std::size_t i = 0; i < config.n_traj; ++i) {
      records[i] = run_trajectory(rho0, setup, config, i);
    }
    return records;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < config.n_traj; i += workers) {
          records[i] = run_trajectory(rho0, setup, config, i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

EnsembleAverage ensemble_average(const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) {
    throw ValidationError("no trajectories to average");
  }
  const auto& times = records.front().times;
  std::vector<Matrix> sums;
  sums.reserve(times.size());
  for (const auto& s : records.front().states) sums.push_back(Matrix::Zero(s.dim(), s.dim()));
  for (const auto& rec : records) {
    if (rec.times != times || rec.states.size() != times.size()) {
      throw ValidationError("trajectories have mismatched time grids");
    }
    for (std::size_t k = 0; k < times.size(); ++k) sums[k] += rec.states[k].matrix();
  }
  EnsembleAverage out;
  out.times = times;
  const double inv = 1.0 / static_cast<double>(records.size());
  for (auto& m : sums) out.states.push_back(DensityMatrix::hermitized(m * inv));
  return out;
}

}  // namespace puresteady
