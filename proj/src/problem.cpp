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

#include "puresteady/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "puresteady/families.hpp"

namespace puresteady {

using nlohmann::json;

namespace {

constexpr double kLoadHermiticity = 1e-12;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

double read_number(const json& node, const std::string& field) {
  if (!node.is_number()) fail(field, "expected a number");
  return node.get<double>();
}

Complex read_complex(const json& node, const std::string& field) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    fail(field, "expected an [re, im] pair");
  }
  return {node[0].get<double>(), node[1].get<double>()};
}

Vector read_vector(const json& node, const std::string& field) {
  if (!node.is_array() || node.empty()) fail(field, "expected a non-empty array of [re, im]");
  Vector v(static_cast<Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    v(static_cast<Index>(i)) = read_complex(node[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix read_matrix(const json& node, const std::string& field) {
  if (!node.is_array() || node.empty()) fail(field, "expected a square array of rows");
  const std::size_t n = node.size();
  Matrix m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row = field + "[" + std::to_string(i) + "]";
    if (!node[i].is_array() || node[i].size() != n) {
      fail(row, "expected " + std::to_string(n) + " entries (matrix must be square)");
    }
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) =
          read_complex(node[i][j], row + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

void require_dim(const Matrix& m, Index n, const std::string& field) {
  if (m.rows() != n) {
    fail(field, "dimension " + std::to_string(m.rows()) + " does not match H (" +
                    std::to_string(n) + ")");
  }
}

void require_hermitian(const Matrix& m, const std::string& field) {
  if (hermiticity_defect(m) > kLoadHermiticity) fail(field, "matrix is not Hermitian");
}

SystemKind read_kind(const json& node) {
  if (!node.is_string()) fail("kind", "expected a string");
  const std::string s = node.get<std::string>();
  if (s == "custom") return SystemKind::custom;
  if (s == "single-atom") return SystemKind::single_atom;
  if (s == "two-qubit") return SystemKind::two_qubit;
  if (s == "two-qubit-original") return SystemKind::two_qubit_original;
  fail("kind", "unknown system kind '" + s + "'");
}

SimulationBlock read_simulation(const json& node) {
  if (!node.is_object()) fail("simulation", "expected an object");
  SimulationBlock sim;
  for (const auto& [key, value] : node.items()) {
    const std::string field = "simulation." + key;
    if (key == "dt") {
      sim.dt = read_number(value, field);
    } else if (key == "T") {
      sim.horizon = read_number(value, field);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) fail(field, "expected a non-negative integer");
      sim.seed = value.get<std::uint64_t>();
    } else if (key == "n_traj" || key == "sample_every") {
      if (!value.is_number_unsigned()) fail(field, "expected a non-negative integer");
      (key == "n_traj" ? sim.n_traj : sim.sample_every) = value.get<std::size_t>();
    } else if (key == "control") {
      const std::string s = value.is_string() ? value.get<std::string>() : "";
      if (s == "plain") {
        sim.control = Control::plain;
      } else if (s == "feedback") {
        sim.control = Control::feedback;
      } else {
        fail(field, "expected \"plain\" or \"feedback\"");
      }
    } else if (key == "scheme") {
      const std::string s = value.is_string() ? value.get<std::string>() : "";
      if (s == "kraus") {
        sim.scheme = SmeScheme::kraus;
      } else if (s == "euler-maruyama") {
        sim.scheme = SmeScheme::euler_maruyama;
      } else {
        fail(field, "expected \"kraus\" or \"euler-maruyama\"");
      }
    } else {
      fail(field, "unknown key");
    }
  }
  if (!(sim.dt > 0.0)) fail("simulation.dt", "must be positive");
  if (!(sim.horizon >= sim.dt)) fail("simulation.T", "must be at least dt");
  if (sim.sample_every < 1) fail("simulation.sample_every", "must be at least 1");
  return sim;
}

double scalar_or(const Problem& p, const std::string& name, double fallback) {
  const auto it = p.scalars.find(name);
  return it == p.scalars.end() ? fallback : it->second;
}

void generate_matrices(Problem& p) {
  switch (p.kind) {
    case SystemKind::custom:
      fail("H", "required for kind \"custom\"");
    case SystemKind::single_atom: {
      FeedbackSetup setup = [&] {
        if (p.scalars.count("theta")) {
          const std::string sign = p.branch.value_or("+");
          const SingleAtomPoint point = single_atom_point(
              p.scalars.at("theta"), sign == "-" ? Branch::minus : Branch::plus, p.gamma);
          return single_atom_setup(point.alpha, point.lambda, p.gamma, p.eta);
        }
        return single_atom_setup(scalar_or(p, "alpha", 0.0), scalar_or(p, "lambda", 0.0), p.gamma,
                                 p.eta);
      }();
      p.H = setup.hamiltonian();
      p.c = setup.measurement();
      p.F = setup.feedback();
      return;
    }
    case SystemKind::two_qubit: {
      const BellFamilyPoint point = bell_feedback_family(
          scalar_or(p, "x1", 0.0), scalar_or(p, "x2", 0.0), scalar_or(p, "x3", 0.0),
          scalar_or(p, "x4", 0.0), scalar_or(p, "mu", 0.0), p.gamma);
      p.H = Matrix::Zero(4, 4);
      p.c = two_qubit_measurement_operator(p.gamma);
      p.F = point.F;
      return;
    }
    case SystemKind::two_qubit_original: {
      const OriginalScheme scheme = two_qubit_original_scheme(
          scalar_or(p, "alpha", 0.0), scalar_or(p, "lambda", 0.0), p.gamma);
      p.H = scheme.H;
      p.c = two_qubit_measurement_operator(p.gamma);
      p.F = scheme.F;
      return;
    }
  }
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::custom:
      return "custom";
    case SystemKind::single_atom:
      return "single-atom";
    case SystemKind::two_qubit:
      return "two-qubit";
    case SystemKind::two_qubit_original:
      return "two-qubit-original";
  }
  return "custom";
}

FeedbackSetup Problem::feedback_setup() const {
  if (!c) throw ValidationError("problem has no measurement operator c");
  return FeedbackSetup(H, *c, F.value_or(Matrix::Zero(dim(), dim())), eta);
}

LindbladSystem Problem::system() const {
  if (c) return inefficient_feedback_master_equation(feedback_setup());
  return LindbladSystem(H, lindblad);
}

DensityMatrix Problem::initial_state() const {
  if (initial) return DensityMatrix(*initial);
  return DensityMatrix::pure(StateVector(basis_vector(dim(), dim() - 1)));
}

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) throw ParseError("problem file must be a JSON object");
  Problem p;
  if (!doc.contains("version")) fail("version", "missing");
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kProblemVersion) {
    fail("version", "unsupported schema version (expected " + std::to_string(kProblemVersion) +
                        ")");
  }
  static const char* const known[] = {"version", "kind", "gamma", "H", "lindblad", "c", "F",
                                      "eta", "scalars", "branch", "target", "initial",
                                      "simulation"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      fail(key, "unknown key");
    }
  }
  if (doc.contains("kind")) p.kind = read_kind(doc["kind"]);
  if (doc.contains("gamma")) p.gamma = read_number(doc["gamma"], "gamma");
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) fail("gamma", "must be positive");
  if (doc.contains("eta")) p.eta = read_number(doc["eta"], "eta");
  if (!(p.eta > 0.0 && p.eta <= 1.0)) fail("eta", "must lie in (0, 1]");
  if (doc.contains("scalars")) {
    if (!doc["scalars"].is_object()) fail("scalars", "expected an object");
    for (const auto& [key, value] : doc["scalars"].items()) {
      p.scalars[key] = read_number(value, "scalars." + key);
    }
  }
  if (doc.contains("branch")) {
    const json& b = doc["branch"];
    if (!b.is_string() || (b.get<std::string>() != "+" && b.get<std::string>() != "-")) {
      fail("branch", "expected \"+\" or \"-\"");
    }
    p.branch = b.get<std::string>();
  }

  if (doc.contains("H")) {
    p.H = read_matrix(doc["H"], "H");
    if (doc.contains("c")) p.c = read_matrix(doc["c"], "c");
    if (doc.contains("F")) {
      if (!p.c) fail("F", "feedback requires a measurement operator c");
      p.F = read_matrix(doc["F"], "F");
    }
  } else {
    if (doc.contains("c") || doc.contains("F") || doc.contains("lindblad")) {
      fail("H", "required when c, F or lindblad is given");
    }
    try {
      generate_matrices(p);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail("scalars", e.what());
    }
  }
  if (doc.contains("lindblad")) {
    if (p.c) fail("lindblad", "cannot be combined with c");
    const json& list = doc["lindblad"];
    if (!list.is_array()) fail("lindblad", "expected an array of matrices");
    for (std::size_t k = 0; k < list.size(); ++k) {
      p.lindblad.push_back(read_matrix(list[k], "lindblad[" + std::to_string(k) + "]"));
    }
  }

  const Index n = p.dim();
  require_hermitian(p.H, "H");
  for (std::size_t k = 0; k < p.lindblad.size(); ++k) {
    require_dim(p.lindblad[k], n, "lindblad[" + std::to_string(k) + "]");
  }
  if (p.c) require_dim(*p.c, n, "c");
  if (p.F) {
    require_dim(*p.F, n, "F");
    require_hermitian(*p.F, "F");
  }
  if (p.eta != 1.0 && !p.c) fail("eta", "only meaningful with a measurement operator c");

  if (doc.contains("target")) {
    Vector t = read_vector(doc["target"], "target");
    if (t.size() != n) fail("target", "length does not match H");
    try {
      StateVector check(t);
    } catch (const Error& e) {
      fail("target", e.what());
    }
    p.target = std::move(t);
  }
  if (doc.contains("initial")) {
    Matrix rho = read_matrix(doc["initial"], "initial");
    require_dim(rho, n, "initial");
    try {
      DensityMatrix check(rho);
    } catch (const Error& e) {
      fail("initial", e.what());
    }
    p.initial = std::move(rho);
  }
  if (doc.contains("simulation")) p.simulation = read_simulation(doc["simulation"]);
  return p;
}

Problem parse_problem_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return parse_problem(doc);
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_problem_text(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const Problem& p) {
  json doc;
  doc["version"] = p.version;
  doc["kind"] = std::string(to_string(p.kind));
  doc["gamma"] = p.gamma;
  doc["H"] = matrix_to_json(p.H);
  if (!p.lindblad.empty()) {
    json list = json::array();
    for (const auto& b : p.lindblad) list.push_back(matrix_to_json(b));
    doc["lindblad"] = std::move(list);
  }
  if (p.c) doc["c"] = matrix_to_json(*p.c);
  if (p.F) doc["F"] = matrix_to_json(*p.F);
  if (p.c) doc["eta"] = p.eta;
  if (!p.scalars.empty()) {
    json s = json::object();
    for (const auto& [k, v] : p.scalars) s[k] = v;
    doc["scalars"] = std::move(s);
  }
  if (p.branch) doc["branch"] = *p.branch;
  if (p.target) doc["target"] = vector_to_json(*p.target);
  if (p.initial) doc["initial"] = matrix_to_json(*p.initial);
  if (p.simulation) {
    const SimulationBlock& s = *p.simulation;
    doc["simulation"] = {
        {"dt", s.dt},
        {"T", s.horizon},
        {"seed", s.seed},
        {"n_traj", s.n_traj},
        {"sample_every", s.sample_every},
        {"control", s.control == Control::plain ? "plain" : "feedback"},
        {"scheme", s.scheme == SmeScheme::kraus ? "kraus" : "euler-maruyama"},
    };
  }
  return doc;
}

void save_problem(const Problem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(problem).dump(2) << '\n';
}

}  // namespace puresteady
