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

#ifndef PURESTEADY_PROBLEM_HPP
#define PURESTEADY_PROBLEM_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "puresteady/sme.hpp"

namespace puresteady {

inline constexpr int kProblemVersion = 1;

enum class SystemKind { custom, single_atom, two_qubit, two_qubit_original };

struct SimulationBlock {
  double dt = 1e-3;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  std::size_t n_traj = 1;  // 0 integrates the averaged master equation only
  std::size_t sample_every = 1;
  Control control = Control::feedback;
  SmeScheme scheme = SmeScheme::kraus;
};

/// Contents of a problem file. Either `lindblad` (a plain system) or `c` with
/// optional F and eta (a measured, possibly fed-back system) describes the
/// dissipation; both at once is rejected.
struct Problem {
  int version = kProblemVersion;
  SystemKind kind = SystemKind::custom;
  double gamma = 1.0;
  Matrix H;
  std::vector<Matrix> lindblad;
  std::optional<Matrix> c;
  std::optional<Matrix> F;
  double eta = 1.0;
  std::map<std::string, double> scalars;  // alpha, lambda, theta, x1..x4, mu
  std::optional<std::string> branch;      // "+" or "-"
  std::optional<Vector> target;
  std::optional<Matrix> initial;
  std::optional<SimulationBlock> simulation;

  Index dim() const { return H.rows(); }
  bool measured() const { return c.has_value(); }
  /// Requires `c`. F defaults to zero.
  FeedbackSetup feedback_setup() const;
  /// The averaged dynamics: the closed loop for measured problems.
  LindbladSystem system() const;
  /// `initial`, or the last basis state when absent.
  DensityMatrix initial_state() const;
};

std::string_view to_string(SystemKind kind);

/// Parses and validates a problem. Missing matrices of a non-custom kind are
/// generated from its scalars. Throws ParseError naming the offending field.
Problem parse_problem(const nlohmann::json& doc);
Problem parse_problem_text(std::string_view text);
Problem load_problem(const std::filesystem::path& path);

/// Matrices are written as row-major arrays of [re, im]; doubles round-trip exactly.
nlohmann::json to_json(const Problem& problem);
void save_problem(const Problem& problem, const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json vector_to_json(const Vector& v);
nlohmann::json complex_to_json(Complex z);

}  // namespace puresteady

#endif  // PURESTEADY_PROBLEM_HPP
