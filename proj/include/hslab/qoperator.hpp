#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hslab/hermitian.hpp"
#include "hslab/linalg.hpp"

namespace hslab {

/// Constant-coefficient section of Q in the frame [e_1..e_2n | E_0 | E_1].
using QSection = Vec<Scalar>;

/// Square matrix of invariant forms acting on a rank-(2n+2) frame:
/// (A s)_i = Σ_j A_{ij} s_j. A connection matrix A means D e_j = Σ_i A_{ij} e_i.
class QOperator {
 public:
  QOperator() = default;
  QOperator(const NilmanifoldModel* model, int rank);
  static QOperator constant(const NilmanifoldModel* model, const SMat& m);

  const NilmanifoldModel* model() const { return model_; }
  int rank() const { return rank_; }
  InvariantForm& operator()(int i, int j) { return e_[i * rank_ + j]; }
  const InvariantForm& operator()(int i, int j) const { return e_[i * rank_ + j]; }

  bool is_zero() const;
  /// Form degree of the first nonzero entry, -1 for zero.
  int degree() const;
  /// Matrix of coefficients along one basis monomial.
  SMat coefficient(Mask m) const;
  /// Basis monomials occurring in some entry, ascending.
  std::vector<Mask> support() const;

  QOperator operator-() const;
  QOperator& operator+=(const QOperator& o);
  QOperator& operator-=(const QOperator& o);
  QOperator& operator*=(const Scalar& s);
  friend QOperator operator+(QOperator a, const QOperator& b) { return a += b; }
  friend QOperator operator-(QOperator a, const QOperator& b) { return a -= b; }
  friend QOperator operator*(QOperator a, const Scalar& s) { return a *= s; }
  friend QOperator operator*(const Scalar& s, QOperator a) { return a *= s; }
  friend bool operator==(const QOperator& a, const QOperator& b);
  friend bool operator!=(const QOperator& a, const QOperator& b) { return !(a == b); }

  /// JSON array of rows of form literals.
  std::string to_json() const;
  /// Throws std::invalid_argument on malformed input.
  static QOperator from_json(const NilmanifoldModel* model, std::string_view text);

 private:
  const NilmanifoldModel* model_ = nullptr;
  int rank_ = 0;
  std::vector<InvariantForm> e_;
};

/// (A ∧ B)_{ij} = Σ_k A_{ik} ∧ B_{kj}.
QOperator wedge(const QOperator& a, const QOperator& b);
/// A_{ij} ∧ f.
QOperator wedge(const QOperator& a, const InvariantForm& f);
/// Graded commutator [A ∧ B] = A∧B − (−1)^{|A||B|} B∧A.
QOperator bracket(const QOperator& a, const QOperator& b);
QOperator d(const QOperator& a);
QOperator component(const QOperator& a, int p, int q);
QOperator transpose(const QOperator& a);
/// Entrywise conjugation of the forms, no transpose.
QOperator conjugate(const QOperator& a);
QOperator contract(const InvariantVector& v, const QOperator& a);
QOperator hodge_star(const QOperator& a, const HermitianStructure& h);
QOperator operator*(const SMat& m, const QOperator& a);
QOperator operator*(const QOperator& a, const SMat& m);
std::vector<InvariantForm> apply(const QOperator& a, const QSection& s);

/// Curvature dA + A∧A of the connection with matrix A on a constant frame.
QOperator curvature(const QOperator& conn);

/// Block-diagonal Hermitian form on Q: H(x, y) = xᵀ M ȳ with M =
/// diag(T-block, e_0, e_1). The T-block is π-free, the End entries real
/// monomials, so the inverse stays exact.
class QMetric {
 public:
  QMetric(GMat t_block, std::vector<Scalar> end_entries);

  const GMat& t_block() const { return t_; }
  const std::vector<Scalar>& end_entries() const { return end_; }
  int rank() const { return static_cast<int>(t_.rows() + end_.size()); }
  const SMat& matrix() const { return matrix_; }
  /// Throws std::domain_error for a singular metric.
  const SMat& inverse() const;
  /// (positive, negative) eigenvalue counts at floating-point π.
  std::pair<int, int> signature() const;
  bool is_positive() const;

 private:
  GMat t_;
  std::vector<Scalar> end_;
  SMat matrix_;
  std::optional<SMat> inverse_;
};

/// H-adjoint of an operator-valued form: conj(M⁻¹ Aᵀ M), conjugating forms.
QOperator adjoint(const QOperator& a, const QMetric& h);
SMat adjoint(const SMat& a, const QMetric& h);

/// H(x, y) = xᵀ M ȳ.
Scalar hermitian_pairing(const QSection& x, const QSection& y, const QMetric& h);

/// The metric g(e_a, ē_b) on the complexified frame, as a Hermitian matrix.
GMat hermitian_t_block(const HermitianStructure& h);

}  // namespace hslab
