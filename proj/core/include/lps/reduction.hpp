#pragma once

// Quantum reduction maps: norm one projectors R on the truncated predual
// whose dual R^* has a Lie subalgebra as image.
//
//   Measurement          R(rho) = sum_n P_n rho P_n
//   LowerTriangularize   R(rho) = sum_n P_n rho Q_n,   Q_n = sum_{m<=n} P_m
//   GroupAverage         R(rho) = 1/|G| sum_U U rho U*
//
// with the duals under the trace pairing
//
//   Measurement          R*(X) = sum_n P_n X P_n
//   LowerTriangularize   R*(X) = sum_n Q_n X P_n
//   GroupAverage         R*(X) = 1/|G| sum_U U* X U

#include <optional>
#include <variant>
#include <vector>

#include "lps/operator_core.hpp"
#include "lps/poisson.hpp"

namespace lps {

class ReductionOp {
 public:
  enum class Kind { Measurement, LowerTriangularize, GroupAverage };

  /// Throw ContractError if the decomposition or the group is invalid.
  static ReductionOp measurement(DecompositionOfUnity d);
  static ReductionOp lower_triangularize(DecompositionOfUnity d);
  /// The unitaries must form a finite group: UU* = I to 1e-12, closed under
  /// products and inverses to 1e-10.
  static ReductionOp group_average(std::vector<Matrix> unitaries);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  /// Decomposition for Measurement / LowerTriangularize.
  const DecompositionOfUnity& decomposition() const;
  /// Group elements for GroupAverage.
  const std::vector<Matrix>& unitaries() const;

 private:
  ReductionOp(Kind k, int dim, std::variant<DecompositionOfUnity, std::vector<Matrix>> payload)
      : kind_(k), dim_(dim), payload_(std::move(payload)) {}

  Kind kind_;
  int dim_;
  std::variant<DecompositionOfUnity, std::vector<Matrix>> payload_;
};

std::string_view to_string(ReductionOp::Kind kind);

/// Unitaries of a finite group given by generators, closed under products.
/// Throws ContractError if closure exceeds max_order elements.
std::vector<Matrix> generate_group(const std::vector<Matrix>& generators,
                                   std::size_t max_order = 4096);

Matrix apply(const ReductionOp& r, const Matrix& rho);
Matrix apply_dual(const ReductionOp& r, const Matrix& x);

/// The projector as a map with apply_dual as its pullback.
MatrixMap as_map(const ReductionOp& r);

/// || R*(R*(X) R*(Y)) - R*(X) R*(Y) ||_op
double closure_defect(const ReductionOp& r, const Matrix& x, const Matrix& y);

/// ||R(rho)||_1 <= ||rho||_1 + 1e-10
bool contraction_check(const ReductionOp& r, const Matrix& rho);

/// R(rho) is Hermitian PSD (min eigenvalue >= -1e-10) and tr R(rho) = tr rho
/// to 1e-12. nullopt for LowerTriangularize, for which positivity is not a
/// property of the map. Throws ContractError unless rho is Hermitian PSD.
std::optional<bool> positivity_check(const ReductionOp& r, const Matrix& rho);

}  // namespace lps
