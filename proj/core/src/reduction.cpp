#include "lps/reduction.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "lps/error.hpp"

namespace lps {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kGroupTol = 1e-10;
constexpr double kPsdFloor = -1e-10;
constexpr double kContractionSlack = 1e-10;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool contains(const std::vector<Matrix>& group, const Matrix& u) {
  for (const auto& g : group) {
    if (max_abs(g - u) <= kGroupTol) return true;
  }
  return false;
}

std::vector<Matrix> lower_partial_sums(const DecompositionOfUnity& d) {
  std::vector<Matrix> q;
  q.reserve(d.size());
  Matrix acc = Matrix::Zero(d.dim(), d.dim());
  for (const auto& p : d.projectors()) {
    acc += p;
    q.push_back(acc);
  }
  return q;
}

void require_dim(const ReductionOp& r, const Matrix& m, std::string_view op) {
  require_square(m, op);
  if (m.rows() != r.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch with reduction");
  }
}

}  // namespace

std::string_view to_string(ReductionOp::Kind kind) {
  switch (kind) {
    case ReductionOp::Kind::Measurement: return "measurement";
    case ReductionOp::Kind::LowerTriangularize: return "lower_triangularize";
    case ReductionOp::Kind::GroupAverage: return "group_average";
  }
  return "?";
}

ReductionOp ReductionOp::measurement(DecompositionOfUnity d) {
  if (!validate_decomposition(d)) {
    throw ContractError("measurement: projectors are not a decomposition of unity");
  }
  const int n = d.dim();
  return ReductionOp(Kind::Measurement, n, std::move(d));
}

ReductionOp ReductionOp::lower_triangularize(DecompositionOfUnity d) {
  if (!validate_decomposition(d)) {
    throw ContractError("lower_triangularize: projectors are not a decomposition of unity");
  }
  const int n = d.dim();
  return ReductionOp(Kind::LowerTriangularize, n, std::move(d));
}

ReductionOp ReductionOp::group_average(std::vector<Matrix> unitaries) {
  if (unitaries.empty()) throw ContractError("group_average: empty group");
  const auto n = unitaries.front().rows();
  for (const auto& u : unitaries) {
    require_same_dim(unitaries.front(), u, "group_average");
    if (max_abs(u * u.adjoint() - Matrix::Identity(n, n)) > kUnitaryTol) {
      throw ContractError("group_average: element is not unitary");
    }
  }
  for (const auto& u : unitaries) {
    if (!contains(unitaries, u.adjoint())) {
      throw ContractError("group_average: not closed under inverses");
    }
    for (const auto& v : unitaries) {
      if (!contains(unitaries, u * v)) {
        throw ContractError("group_average: not closed under products");
      }
    }
  }
  return ReductionOp(Kind::GroupAverage, static_cast<int>(n), std::move(unitaries));
}

const DecompositionOfUnity& ReductionOp::decomposition() const {
  if (kind_ == Kind::GroupAverage) throw ContractError("decomposition: group average");
  return std::get<DecompositionOfUnity>(payload_);
}

const std::vector<Matrix>& ReductionOp::unitaries() const {
  if (kind_ != Kind::GroupAverage) throw ContractError("unitaries: not a group average");
  return std::get<std::vector<Matrix>>(payload_);
}

std::vector<Matrix> generate_group(const std::vector<Matrix>& generators,
                                   std::size_t max_order) {
  if (generators.empty()) throw ContractError("generate_group: no generators");
  const auto n = generators.front().rows();
  std::vector<Matrix> group{Matrix::Identity(n, n)};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : generators) {
      Matrix next = group[i] * g;
      if (!contains(group, next)) {
        if (group.size() >= max_order) {
          throw ContractError("generate_group: group order exceeds limit");
        }
        group.push_back(std::move(next));
      }
    }
  }
  return group;
}

Matrix apply(const ReductionOp& r, const Matrix& rho) {
  require_dim(r, rho, "apply");
  const int n = r.dim();
  Matrix out = Matrix::Zero(n, n);
  switch (r.kind()) {
    case ReductionOp::Kind::Measurement:
      for (const auto& p : r.decomposition().projectors()) out += p * rho * p;
      break;
    case ReductionOp::Kind::LowerTriangularize: {
      const auto& ps = r.decomposition().projectors();
      const auto qs = lower_partial_sums(r.decomposition());
      for (std::size_t k = 0; k < ps.size(); ++k) out += ps[k] * rho * qs[k];
      break;
    }
    case ReductionOp::Kind::GroupAverage: {
      const auto& us = r.unitaries();
      for (const auto& u : us) out += u * rho * u.adjoint();
      out /= static_cast<double>(us.size());
      break;
    }
  }
  return out;
}

Matrix apply_dual(const ReductionOp& r, const Matrix& x) {
  require_dim(r, x, "apply_dual");
  const int n = r.dim();
  Matrix out = Matrix::Zero(n, n);
  switch (r.kind()) {
    case ReductionOp::Kind::Measurement:
      for (const auto& p : r.decomposition().projectors()) out += p * x * p;
      break;
    case ReductionOp::Kind::LowerTriangularize: {
      const auto& ps = r.decomposition().projectors();
      const auto qs = lower_partial_sums(r.decomposition());
      for (std::size_t k = 0; k < ps.size(); ++k) out += qs[k] * x * ps[k];
      break;
    }
    case ReductionOp::Kind::GroupAverage: {
      const auto& us = r.unitaries();
      for (const auto& u : us) out += u.adjoint() * x * u;
      out /= static_cast<double>(us.size());
      break;
    }
  }
  return out;
}

MatrixMap as_map(const ReductionOp& r) {
  return {r.dim(), r.dim(), [r](const Matrix& rho) { return apply(r, rho); },
          [r](const Matrix& x) { return apply_dual(r, x); }};
}

double closure_defect(const ReductionOp& r, const Matrix& x, const Matrix& y) {
  const Matrix prod = apply_dual(r, x) * apply_dual(r, y);
  return operator_norm(apply_dual(r, prod) - prod);
}

bool contraction_check(const ReductionOp& r, const Matrix& rho) {
  return trace_norm(apply(r, rho)) <= trace_norm(rho) + kContractionSlack;
}

std::optional<bool> positivity_check(const ReductionOp& r, const Matrix& rho) {
  require_dim(r, rho, "positivity_check");
  if (!validate(ClassTag::Hermitian, rho, kExactTol)) {
    throw ContractError("positivity_check: state is not Hermitian");
  }
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> in(herm, Eigen::EigenvaluesOnly);
  if (in.info() != Eigen::Success) throw NumericalError("positivity_check: eigensolver failed");
  if (in.eigenvalues().minCoeff() < kPsdFloor) {
    throw ContractError("positivity_check: state is not positive semidefinite");
  }
  if (r.kind() == ReductionOp::Kind::LowerTriangularize) return std::nullopt;

  const Matrix out = apply(r, rho);
  if (!validate(ClassTag::Hermitian, out, kExactTol)) return false;
  const Matrix out_herm = 0.5 * (out + out.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(out_herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("positivity_check: eigensolver failed");
  const bool psd = es.eigenvalues().minCoeff() >= kPsdFloor;
  const bool trace_kept = std::abs(out.trace() - rho.trace()) <= kExactTol;
  return psd && trace_kept;
}

}  // namespace lps
