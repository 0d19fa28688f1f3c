#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hslab/scalar.hpp"

namespace hslab {

class InvariantForm;

/// Basis monomial over the 2n generators; bit j set means generator j is a
/// factor. Generators 0..n-1 are ω_1..ω_n, n..2n-1 their conjugates.
using Mask = uint16_t;

inline int popcount(unsigned m) { return __builtin_popcount(m); }

/// Sign of e_a ∧ e_b relative to e_{a|b}; 0 if they share a factor.
int wedge_sign(Mask a, Mask b);

/// Complexified Chevalley-Eilenberg algebra of a nilpotent Lie algebra with
/// a complex structure, presented by the differentials of the (1,0)
/// generators.
class NilmanifoldModel {
 public:
  /// d_holo[j] is dω_{j+1}. The conjugate differentials are derived.
  /// Throws std::invalid_argument if d² ≠ 0 or the complex structure is not
  /// integrable.
  static std::shared_ptr<const NilmanifoldModel> create(int n,
                                                         const std::vector<InvariantForm>& d_holo);
  /// Same, with an explicit differential for every generator (2n entries);
  /// additionally checks that d commutes with conjugation.
  static std::shared_ptr<const NilmanifoldModel> create_full(int n,
                                                              const std::vector<InvariantForm>& d_all);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  Mask full_mask() const { return static_cast<Mask>((1u << (2 * n_)) - 1); }
  Mask holo_mask() const { return static_cast<Mask>((1u << n_) - 1); }
  Mask antiholo_mask() const { return static_cast<Mask>(full_mask() & ~holo_mask()); }
  int conj_index(int j) const { return j < n_ ? j + n_ : j - n_; }

  /// "w1".."wn", "w1b".."wnb".
  std::string label(int j) const;
  int index_of(std::string_view label) const;

  const InvariantForm& d_generator(int j) const;
  /// d of a basis monomial, by Leibniz over its factors.
  const InvariantForm& d_monomial(Mask m) const;

  /// Structure constants c^k_{ij} in [e_i, e_j] = Σ_k c^k_{ij} e_k for the
  /// dual frame, from dω^k(e_i, e_j) = -ω^k([e_i, e_j]).
  const Scalar& bracket(int i, int j, int k) const { return bracket_[(i * dim() + j) * dim() + k]; }

 private:
  NilmanifoldModel() = default;
  void finish();

  int n_ = 0;
  std::vector<InvariantForm> d_gen_;
  std::vector<InvariantForm> d_table_;
  std::vector<Scalar> bracket_;
};

/// Sparse element of the complexified exterior algebra of a model.
class InvariantForm {
 public:
  struct Term {
    Mask mask;
    Scalar c;
  };
  using Terms = std::vector<Term>;

  InvariantForm() = default;
  explicit InvariantForm(const NilmanifoldModel* model) : model_(model) {}
  InvariantForm(const NilmanifoldModel* model, Mask mask, Scalar c);
  /// Scalar times the constant function 1.
  static InvariantForm constant(const NilmanifoldModel* model, Scalar c) { return {model, 0, std::move(c)}; }
  static InvariantForm generator(const NilmanifoldModel* model, int j, Scalar c = Scalar(1)) {
    return {model, static_cast<Mask>(1u << j), std::move(c)};
  }
  /// Builds from unsorted terms, merging duplicates.
  static InvariantForm from_terms(const NilmanifoldModel* model, Terms terms);

  const NilmanifoldModel* model() const { return model_; }
  /// Copy attached to another model (terms unchanged).
  InvariantForm rebind(const NilmanifoldModel* model) const;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the monomial (zero if absent).
  Scalar coeff(Mask m) const;
  /// Degree of the first term, or -1 for zero.
  int degree() const;
  bool is_homogeneous() const;

  InvariantForm operator-() const;
  InvariantForm& operator+=(const InvariantForm& o);
  InvariantForm& operator-=(const InvariantForm& o);
  InvariantForm& operator*=(const Scalar& s);
  friend InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
  friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }
  friend InvariantForm operator*(InvariantForm a, const Scalar& s) { return a *= s; }
  friend InvariantForm operator*(const Scalar& s, InvariantForm a) { return a *= s; }
  friend bool operator==(const InvariantForm& a, const InvariantForm& b);
  friend bool operator!=(const InvariantForm& a, const InvariantForm& b) { return !(a == b); }

  /// Canonical literal "(c) w1^w2b + ...", "0" for zero.
  std::string to_string() const;

 private:
  const NilmanifoldModel* model_ = nullptr;
  Terms terms_;
};

/// Constant-coefficient vector field Σ v_j Z_j + Σ v_{n+j} Z̄_j.
class InvariantVector {
 public:
  InvariantVector() = default;
  explicit InvariantVector(const NilmanifoldModel* model);
  static InvariantVector basis(const NilmanifoldModel* model, int j);

  const NilmanifoldModel* model() const { return model_; }
  int dim() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int j) const { return c_[j]; }
  Scalar& operator[](int j) { return c_[j]; }

  InvariantVector conj() const;
  friend bool operator==(const InvariantVector& a, const InvariantVector& b) {
    return a.model_ == b.model_ && a.c_ == b.c_;
  }

 private:
  const NilmanifoldModel* model_ = nullptr;
  std::vector<Scalar> c_;
};

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b);
InvariantForm d(const InvariantForm& a);
/// Component of bidegree (p, q).
InvariantForm component(const InvariantForm& a, int p, int q);
std::map<std::pair<int, int>, InvariantForm> bigrade(const InvariantForm& a);
InvariantForm del(const InvariantForm& a);
InvariantForm delbar(const InvariantForm& a);
/// d^c = i(∂̄ − ∂).
InvariantForm dc(const InvariantForm& a);
InvariantForm conjugate(const InvariantForm& a);
/// Interior product i_v a.
InvariantForm contract(const InvariantVector& v, const InvariantForm& a);
/// i_{e_j} a for a single frame vector.
InvariantForm contract_basis(int j, const InvariantForm& a);
/// a(e_i, e_j) for a 2-form, with (α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X).
Scalar eval2(const InvariantForm& a, int i, int j);
/// J on forms as the dual action Jα = −α∘J: J ω_j = −i ω_j, J ω̄_j = i ω̄_j on
/// 1-forms, extended as an algebra automorphism (multiplication by i^{q−p}).
InvariantForm apply_J(const InvariantForm& a);

/// Top-degree coefficient of a.
Scalar top_coeff(const InvariantForm& a);

/// Parses "(c) w1^w2b + (c') w3 - w1^w1b"; a bare scalar is a 0-form.
InvariantForm parse_form(const NilmanifoldModel* model, std::string_view text);

/// Model from JSON text {"n": 3, "d": {"w3": [["w1","w2","1"]]}}.
std::shared_ptr<const NilmanifoldModel> model_from_json(std::string_view json_text);

}  // namespace hslab
