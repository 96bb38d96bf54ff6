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

#include "puresteady/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace puresteady {

namespace {

bool eigenvalues_before(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    if (a[k].real() != b[k].real()) {
      return a[k].real() < b[k].real();
    }
    if (a[k].imag() != b[k].imag()) {
      return a[k].imag() < b[k].imag();
    }
  }
  return a.size() < b.size();
}

double max_column_residual(const Matrix& op, const Matrix& basis, Complex lambda) {
  return (op * basis - lambda * basis).colwise().norm().maxCoeff();
}

/// Splits the subspace `basis` into the pieces on which `op` acts as a scalar.
std::vector<JointEigenspace> refine(const JointEigenspace& parent, const Matrix& op,
                                    double relative_tol, const Tolerances& tol) {
  const double scale = op.norm();
  const Matrix& s = parent.basis;
  std::vector<JointEigenspace> out;
  if (scale == 0.0) {
    JointEigenspace child = parent;
    child.eigenvalues.emplace_back(0.0, 0.0);
    out.push_back(std::move(child));
    return out;
  }
  const double threshold = relative_tol * scale;
  const Matrix compressed = s.adjoint() * op * s;
  const Matrix leak_projector = Matrix::Identity(s.rows(), s.rows()) - s * s.adjoint();
  for (const Eigenspace& space :
       eigenspaces_within(compressed, threshold, tol.eigen_cluster * scale)) {
    const Matrix candidates = s * space.basis;
    // Keep only directions that op maps back into the parent subspace.
    const Matrix kept = null_space(leak_projector * op * candidates, threshold);
    if (kept.cols() == 0) {
      continue;
    }
    Matrix basis = candidates * kept;
    // Re-orthonormalize against accumulated rounding.
    Eigen::HouseholderQR<Matrix> qr(basis);
    basis = qr.householderQ() * Matrix::Identity(basis.rows(), basis.cols());
    const Complex lambda = (basis.adjoint() * op * basis).trace() / static_cast<double>(basis.cols());
    if (max_column_residual(op, basis, lambda) > threshold) {
      continue;
    }
    JointEigenspace child{std::move(basis), parent.eigenvalues};
    child.eigenvalues.push_back(lambda);
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<Matrix> certification_operators(const LindbladSystem& sys) {
  std::vector<Matrix> ops;
  ops.reserve(sys.lindblad_ops().size() + 1);
  ops.push_back(sys.drift());
  for (const Matrix& b : sys.lindblad_ops()) {
    ops.push_back(b);
  }
  return ops;
}

}  // namespace

std::vector<JointEigenspace> joint_eigenspaces(std::span<const Matrix> ops, double relative_tol,
                                               const Tolerances& tol) {
  if (ops.empty()) {
    return {};
  }
  const Index n = ops.front().rows();
  for (const Matrix& op : ops) {
    if (op.rows() != n || op.cols() != n) {
      throw DimensionError("joint eigenspaces need square operators of equal dimension");
    }
  }
  std::vector<JointEigenspace> spaces{JointEigenspace{Matrix::Identity(n, n), {}}};
  for (const Matrix& op : ops) {
    std::vector<JointEigenspace> next;
    for (const JointEigenspace& space : spaces) {
      for (JointEigenspace& child : refine(space, op, relative_tol, tol)) {
        next.push_back(std::move(child));
      }
    }
    spaces = std::move(next);
    if (spaces.empty()) {
      break;
    }
  }
  std::stable_sort(spaces.begin(), spaces.end(), [](const auto& a, const auto& b) {
    return eigenvalues_before(a.eigenvalues, b.eigenvalues);
  });
  return spaces;
}

std::optional<CommonEigenvector> common_eigenvector(const Matrix& m1, const Matrix& m2,
                                                    double relative_tol) {
  if (m1.rows() != m1.cols() || m2.rows() != m2.cols() || m1.rows() != m2.rows()) {
    throw DimensionError("common_eigenvector needs square matrices of equal dimension");
  }
  const std::vector<Matrix> ops{m2, m1};
  const auto spaces = joint_eigenspaces(ops, relative_tol);
  if (spaces.empty()) {
    return std::nullopt;
  }
  StateVector v = StateVector::normalized(spaces.front().basis.col(0)).canonical_phase();
  const Vector& a = v.amplitudes();
  const Complex l1 = a.dot(m1 * a);
  const Complex l2 = a.dot(m2 * a);
  return CommonEigenvector{std::move(v), l1, l2};
}

PureSteadyCertificate make_certificate(const LindbladSystem& sys, const StateVector& phi) {
  if (phi.dim() != sys.dim()) {
    throw DimensionError("state dimension does not match the Lindblad system");
  }
  const Vector& v = phi.amplitudes();
  PureSteadyCertificate cert{phi, {}, {}, {}, 0.0, 0.0};
  for (const Matrix& b : sys.lindblad_ops()) {
    const Vector bv = b * v;
    const Complex mu = v.dot(bv);
    cert.lindblad_eigenvalues.push_back(mu);
    cert.lindblad_residuals.push_back((bv - mu * v).norm());
  }
  const Vector dv = sys.drift() * v;
  cert.drift_eigenvalue = v.dot(dv);
  cert.drift_residual = (dv - cert.drift_eigenvalue * v).norm();
  cert.generator_residual = apply_liouvillian(sys, phi.projector()).norm();
  return cert;
}

std::vector<PureSteadyCertificate> enumerate_pure_steady_states(const LindbladSystem& sys,
                                                                const Tolerances& tol) {
  const std::vector<Matrix> ops = certification_operators(sys);
  std::vector<PureSteadyCertificate> out;
  for (const JointEigenspace& space : joint_eigenspaces(ops, tol.certification, tol)) {
    for (Index k = 0; k < space.basis.cols(); ++k) {
      const StateVector phi = StateVector::normalized(space.basis.col(k)).canonical_phase();
      PureSteadyCertificate cert = make_certificate(sys, phi);
      if (cert.generator_residual <= tol.generator_residual) {
        out.push_back(std::move(cert));
      }
    }
  }
  return out;
}

std::optional<PureSteadyCertificate> certify_pure_steady_state(const LindbladSystem& sys,
                                                               const Tolerances& tol) {
  auto all = enumerate_pure_steady_states(sys, tol);
  if (all.empty()) {
    return std::nullopt;
  }
  return std::move(all.front());
}

double schwarz_gap(const LindbladSystem& sys, const StateVector& phi) {
  if (phi.dim() != sys.dim()) {
    throw DimensionError("state dimension does not match the Lindblad system");
  }
  const Vector& v = phi.amplitudes();
  double gap = 0.0;
  for (const Matrix& b : sys.lindblad_ops()) {
    const Vector bv = b * v;
    gap += std::norm(v.dot(bv)) - bv.squaredNorm();
  }
  return gap;
}

bool schwarz_saturation(const LindbladSystem& sys, const StateVector& phi) {
  return schwarz_gap(sys, phi) >= -1e-10;
}

// ---------------------------------------------------------------------------

std::optional<DfsSpec> decoherence_free_check(const LindbladSystem& sys, Index d, bool strict,
                                              const Tolerances& tol) {
  const Index n = sys.dim();
  if (d < 1 || d >= n) {
    throw ValidationError("decoherence-free split must satisfy 1 <= d < n (d=" +
                          std::to_string(d) + ", n=" + std::to_string(n) + ")");
  }
  const Index m = n - d;
  const double eps = tol.certification;
  const Matrix& h = sys.hamiltonian();

  DfsSpec spec{sys, d, strict, {}, {}, {}, {}, {}, h.topLeftCorner(d, d), h.topRightCorner(d, m),
               h.bottomRightCorner(m, m)};
  Matrix coupling = spec.H2;
  for (const Matrix& b : sys.lindblad_ops()) {
    const double bound = eps * b.norm();
    Matrix p = b.topLeftCorner(d, d);
    const Complex alpha = p.trace() / static_cast<double>(d);
    const Matrix off_diagonal = p - Matrix(p.diagonal().asDiagonal());
    const double spread = (p.diagonal().array() - alpha).abs().maxCoeff();
    if (off_diagonal.cwiseAbs().maxCoeff() > bound || spread > bound) {
      return std::nullopt;
    }
    Matrix r = b.bottomLeftCorner(m, d);
    if (r.norm() > bound) {
      return std::nullopt;
    }
    Matrix q = b.topRightCorner(d, m);
    if (strict && q.norm() > bound) {
      return std::nullopt;
    }
    coupling += 0.5 * kI * std::conj(alpha) * q;
    spec.alpha.push_back(alpha);
    spec.P.push_back(std::move(p));
    spec.Q.push_back(std::move(q));
    spec.R.push_back(std::move(r));
    spec.S.push_back(b.bottomRightCorner(m, m));
  }
  if (coupling.norm() > eps * sys.scale()) {
    return std::nullopt;
  }
  return spec;
}

PureSteadyCertificate decoherence_free_steady_state(const DfsSpec& spec, Index h_index,
                                                    const Tolerances& tol) {
  const Index d = spec.split;
  if (h_index < 0 || h_index >= d) {
    throw DimensionError("H1 eigenvector index " + std::to_string(h_index) + " out of range");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(spec.H1));
  const double h = solver.eigenvalues()(h_index);
  Vector psi = Vector::Zero(spec.system.dim());
  psi.head(d) = solver.eigenvectors().col(h_index);
  PureSteadyCertificate cert =
      make_certificate(spec.system, StateVector::normalized(psi).canonical_phase());

  double alpha_sq = 0.0;
  for (const Complex& a : spec.alpha) {
    alpha_sq += std::norm(a);
  }
  const Complex expected_drift{0.5 * alpha_sq, h};
  const double eps = tol.certification;
  bool consistent = std::abs(cert.drift_eigenvalue - expected_drift) <= eps * spec.system.scale() &&
                    cert.drift_residual <= eps * spec.system.scale() &&
                    cert.generator_residual <= tol.generator_residual;
  for (std::size_t k = 0; k < spec.alpha.size(); ++k) {
    const double bound = eps * std::max(1.0, spec.system.lindblad_ops()[k].norm());
    consistent = consistent && cert.lindblad_residuals[k] <= bound &&
                 std::abs(cert.lindblad_eigenvalues[k] - spec.alpha[k]) <= bound;
  }
  if (!consistent) {
    std::ostringstream msg;
    msg << "decoherence-free state failed certification (generator residual "
        << cert.generator_residual << ")";
    throw NumericalError(msg.str());
  }
  return cert;
}

}  // namespace puresteady
