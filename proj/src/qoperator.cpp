#include "hslab/qoperator.hpp"

#include <Eigen/Eigenvalues>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace hslab {

QOperator::QOperator(const NilmanifoldModel* model, int rank)
    : model_(model), rank_(rank), e_(static_cast<size_t>(rank) * rank, InvariantForm(model)) {}

QOperator QOperator::constant(const NilmanifoldModel* model, const SMat& m) {
  QOperator out(model, static_cast<int>(m.rows()));
  for (int i = 0; i < out.rank_; ++i)
    for (int j = 0; j < out.rank_; ++j)
      if (!m(i, j).is_zero()) out(i, j) = InvariantForm::constant(model, m(i, j));
  return out;
}

bool QOperator::is_zero() const {
  for (const auto& f : e_)
    if (!f.is_zero()) return false;
  return true;
}

int QOperator::degree() const {
  for (const auto& f : e_)
    if (!f.is_zero()) return f.degree();
  return -1;
}

SMat QOperator::coefficient(Mask m) const {
  SMat out = SMat::Zero(rank_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out(i, j) = (*this)(i, j).coeff(m);
  return out;
}

std::vector<Mask> QOperator::support() const {
  std::set<Mask> s;
  for (const auto& f : e_)
    for (const auto& t : f.terms()) s.insert(t.mask);
  return {s.begin(), s.end()};
}

QOperator QOperator::operator-() const {
  QOperator out = *this;
  for (auto& f : out.e_) f = -f;
  return out;
}

QOperator& QOperator::operator+=(const QOperator& o) {
  if (rank_ == 0) return *this = o;
  if (o.rank_ == 0) return *this;
  if (rank_ != o.rank_) throw std::invalid_argument("QOperator: rank mismatch");
  for (size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

QOperator& QOperator::operator-=(const QOperator& o) { return *this += -o; }

QOperator& QOperator::operator*=(const Scalar& s) {
  for (auto& f : e_) f *= s;
  return *this;
}

bool operator==(const QOperator& a, const QOperator& b) {
  if (a.rank_ == 0 || b.rank_ == 0) return a.is_zero() && b.is_zero();
  return a.rank_ == b.rank_ && a.e_ == b.e_;
}

std::string QOperator::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < rank_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < rank_; ++j) row.push_back((*this)(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

QOperator QOperator::from_json(const NilmanifoldModel* model, std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("operator json: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("operator json: expected an array of rows");
  const int r = static_cast<int>(j.size());
  QOperator out(model, r);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != r)
      throw std::invalid_argument("operator json: matrix must be square");
    for (int k = 0; k < r; ++k) {
      if (!j[i][k].is_string()) throw std::invalid_argument("operator json: entries must be form literals");
      out(i, k) = parse_form(model, j[i][k].get<std::string>());
    }
  }
  return out;
}

namespace {

void check_same(const QOperator& a, const QOperator& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("QOperator: rank mismatch");
}

}  // namespace

QOperator wedge(const QOperator& a, const QOperator& b) {
  check_same(a, b);
  const int r = a.rank();
  QOperator out(a.model() ? a.model() : b.model(), r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      const InvariantForm& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < r; ++j)
        if (!b(k, j).is_zero()) out(i, j) += wedge(aik, b(k, j));
    }
  return out;
}

QOperator wedge(const QOperator& a, const InvariantForm& f) {
  QOperator out(a.model(), a.rank());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j)
      if (!a(i, j).is_zero()) out(i, j) = wedge(a(i, j), f);
  return out;
}

QOperator bracket(const QOperator& a, const QOperator& b) {
  const int da = std::max(a.degree(), 0), db = std::max(b.degree(), 0);
  QOperator out = wedge(a, b);
  if ((da * db) % 2) return out + wedge(b, a);
  return out - wedge(b, a);
}

namespace {

template <class F>
QOperator entrywise(const QOperator& a, F f) {
  QOperator out(a.model(), a.rank());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j)
      if (!a(i, j).is_zero()) out(i, j) = f(a(i, j));
  return out;
}

}  // namespace

QOperator d(const QOperator& a) {
  return entrywise(a, [](const InvariantForm& f) { return d(f); });
}

QOperator component(const QOperator& a, int p, int q) {
  return entrywise(a, [&](const InvariantForm& f) { return component(f, p, q); });
}

QOperator conjugate(const QOperator& a) {
  return entrywise(a, [](const InvariantForm& f) { return conjugate(f); });
}

QOperator contract(const InvariantVector& v, const QOperator& a) {
  return entrywise(a, [&](const InvariantForm& f) { return contract(v, f); });
}

QOperator hodge_star(const QOperator& a, const HermitianStructure& h) {
  return entrywise(a, [&](const InvariantForm& f) { return hodge_star(f, h); });
}

QOperator transpose(const QOperator& a) {
  QOperator out(a.model(), a.rank());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) out(j, i) = a(i, j);
  return out;
}

QOperator operator*(const SMat& m, const QOperator& a) {
  const int r = a.rank();
  if (m.rows() != r || m.cols() != r) throw std::invalid_argument("QOperator: matrix size mismatch");
  QOperator out(a.model(), r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      if (m(i, k).is_zero()) continue;
      for (int j = 0; j < r; ++j)
        if (!a(k, j).is_zero()) out(i, j) += a(k, j) * m(i, k);
    }
  return out;
}

QOperator operator*(const QOperator& a, const SMat& m) {
  const int r = a.rank();
  if (m.rows() != r || m.cols() != r) throw std::invalid_argument("QOperator: matrix size mismatch");
  QOperator out(a.model(), r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < r; ++j)
        if (!m(k, j).is_zero()) out(i, j) += a(i, k) * m(k, j);
    }
  return out;
}

std::vector<InvariantForm> apply(const QOperator& a, const QSection& s) {
  if (s.size() != a.rank()) throw std::invalid_argument("QOperator: section size mismatch");
  std::vector<InvariantForm> out(a.rank(), InvariantForm(a.model()));
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j)
      if (!s(j).is_zero() && !a(i, j).is_zero()) out[i] += a(i, j) * s(j);
  return out;
}

QOperator curvature(const QOperator& conn) { return d(conn) + wedge(conn, conn); }

QMetric::QMetric(GMat t_block, std::vector<Scalar> end_entries) : t_(std::move(t_block)), end_(std::move(end_entries)) {
  if (t_.rows() != t_.cols()) throw std::invalid_argument("QMetric: T-block must be square");
  if (t_ != conj(GMat(t_.transpose()))) throw std::invalid_argument("QMetric: T-block must be Hermitian");
  for (const auto& e : end_)
    if (e.is_zero() || !e.is_monomial() || !e.is_real()) throw std::invalid_argument("QMetric: End entries must be nonzero real monomials");
  const int t = static_cast<int>(t_.rows());
  matrix_ = SMat::Zero(rank(), rank());
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) matrix_(i, j) = Scalar(t_(i, j));
  for (size_t k = 0; k < end_.size(); ++k) matrix_(t + k, t + k) = end_[k];
  try {
    GMat ti = hslab::inverse(t_);
    SMat mi = SMat::Zero(rank(), rank());
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) mi(i, j) = Scalar(ti(i, j));
    for (size_t k = 0; k < end_.size(); ++k) mi(t + k, t + k) = Scalar(1) / end_[k];
    inverse_ = std::move(mi);
  } catch (const std::domain_error&) {
  }
}

const SMat& QMetric::inverse() const {
  if (!inverse_) throw std::domain_error("QMetric: singular metric");
  return *inverse_;
}

std::pair<int, int> QMetric::signature() const {
  Eigen::MatrixXcd m = to_complex(matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  int pos = 0, neg = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 0) ++pos;
    if (es.eigenvalues()(i) < 0) ++neg;
  }
  return {pos, neg};
}

bool QMetric::is_positive() const { return signature().first == rank(); }

SMat adjoint(const SMat& a, const QMetric& h) {
  SMat t = sparse_product(sparse_product(h.inverse(), SMat(a.transpose())), h.matrix());
  return t.unaryExpr([](const Scalar& s) { return s.conj(); });
}

QOperator adjoint(const QOperator& a, const QMetric& h) {
  if (a.rank() != h.rank()) throw std::invalid_argument("adjoint: rank mismatch");
  return conjugate(h.inverse() * transpose(a) * h.matrix());
}

Scalar hermitian_pairing(const QSection& x, const QSection& y, const QMetric& h) {
  SMat m = h.matrix();
  Scalar s;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) s += x(i) * m(i, j) * y(j).conj();
  return s;
}

GMat hermitian_t_block(const HermitianStructure& h) {
  const int N = h.dim();
  GMat out(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) out(a, b) = h.g()(a, h.model()->conj_index(b));
  return out;
}

}  // namespace hslab
