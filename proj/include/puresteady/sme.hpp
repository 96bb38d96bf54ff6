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

#ifndef PURESTEADY_SME_HPP
#define PURESTEADY_SME_HPP

#include <cstdint>
#include <vector>

#include "puresteady/feedback.hpp"

namespace puresteady {

/// Time discretization of the conditioned evolution.
///  kraus:          rho' = M rho M^dagger / Tr, M = I - (iH + c^dagger c / 2) dt + c dy.
///                  Positive by construction; with feedback it is applied to (H', c - iF).
///  euler_maruyama: rho' = rho + drift dt + diffusion dW, then Hermitized and renormalized.
enum class SmeScheme { kraus, euler_maruyama };

enum class Control { plain, feedback };

/// Drift and dW-coefficient of the homodyne stochastic master equation at rho.
struct SmeTerms {
  Matrix drift;
  Matrix diffusion;
  double mean_current = 0.0;  // Tr[(c + c^dagger) rho]
};

/// drift = -i[H, rho] + D[c]rho, diffusion = c rho + rho c^dagger - Tr[(c + c^dagger) rho] rho.
SmeTerms sme_terms(const Matrix& rho, const Matrix& hamiltonian, const Matrix& measurement);

/// Adds -i[F, c rho + rho c^dagger] + D[F]rho to the drift and -i[F, rho] to the diffusion.
SmeTerms feedback_sme_terms(const Matrix& rho, const FeedbackSetup& setup);

struct SmeStep {
  DensityMatrix state;
  double dy = 0.0;              // Tr[(c + c^dagger) rho] dt + dW
  double min_eigenvalue = 0.0;  // of the updated state
};

/// One step of the plain scheme. Throws StepQualityError when the updated
/// state has an eigenvalue below -1e-4.
SmeStep sme_step(const DensityMatrix& rho, const Matrix& hamiltonian, const Matrix& measurement,
                 double dW, double dt, SmeScheme scheme = SmeScheme::kraus);

/// One step with the current fed back through F. Requires eta == 1.
SmeStep feedback_sme_step(const DensityMatrix& rho, const FeedbackSetup& setup, double dW,
                          double dt, SmeScheme scheme = SmeScheme::kraus);

struct TrajectoryConfig {
  double dt = 1e-3;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  std::size_t n_traj = 1;
  std::size_t sample_every = 1;
  Control control = Control::feedback;
  SmeScheme scheme = SmeScheme::kraus;
  unsigned threads = 1;

  /// Number of steps, round(horizon / dt).
  std::size_t steps() const;
  /// Throws ValidationError unless dt > 0, horizon >= dt, n_traj >= 1, sample_every >= 1.
  void validate() const;
};

struct TrajectoryRecord {
  std::vector<double> times;          // sample times k * dt
  std::vector<DensityMatrix> states;  // conditioned state at each sample time
  std::vector<double> record;         // dy of every step
  std::uint64_t seed = 0;             // configured seed
  std::size_t index = 0;              // trajectory number
};

/// Runs config.n_traj independent trajectories. Trajectory i draws its
/// Wiener increments from Xoshiro256(substream_seed(seed, i)), so results do
/// not depend on config.threads. Samples are taken at step 0, every
/// sample_every steps and at the final step. Step failures are rethrown as
/// StepQualityError naming the trajectory and step.
std::vector<TrajectoryRecord> simulate(const DensityMatrix& rho0, const FeedbackSetup& setup,
                                       const TrajectoryConfig& config);

struct EnsembleAverage {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// Pointwise mean of the conditioned states. Throws ValidationError for an
/// empty list or mismatched time grids.
EnsembleAverage ensemble_average(const std::vector<TrajectoryRecord>& records);

}  // namespace puresteady

#endif  // PURESTEADY_SME_HPP
