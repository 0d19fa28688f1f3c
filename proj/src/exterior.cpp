#include "hslab/exterior.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace hslab {

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (unsigned rest = b; rest; rest &= rest - 1) {
    int y = __builtin_ctz(rest);
    inversions += popcount(static_cast<unsigned>(a) >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {

int label_index(int n, std::string_view label) {
  if (label.size() < 2 || label[0] != 'w') return -1;
  bool bar = label.back() == 'b';
  std::string_view digits = label.substr(1, label.size() - 1 - (bar ? 1 : 0));
  if (digits.empty()) return -1;
  int j = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return -1;
    j = j * 10 + (c - '0');
  }
  if (j < 1 || j > n) return -1;
  return bar ? j - 1 + n : j - 1;
}

const NilmanifoldModel* pick_model(const InvariantForm& a, const InvariantForm& b) {
  if (a.model() && b.model() && a.model() != b.model())
    throw std::invalid_argument("forms belong to different models");
  return a.model() ? a.model() : b.model();
}

void check_degree_two_or_zero(const InvariantForm& f, const char* what) {
  for (const auto& t : f.terms())
    if (popcount(t.mask) != 2) throw std::invalid_argument(std::string(what) + " must be a 2-form");
}

}  // namespace

// ---------------------------------------------------------------- model

std::shared_ptr<const NilmanifoldModel> NilmanifoldModel::create(int n,
                                                                  const std::vector<InvariantForm>& d_holo) {
  if (n < 1 || n > 8) throw std::invalid_argument("model: n must be in 1..8");
  if (static_cast<int>(d_holo.size()) != n) throw std::invalid_argument("model: need one differential per generator");
  std::shared_ptr<NilmanifoldModel> m(new NilmanifoldModel());
  m->n_ = n;
  m->d_gen_.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    check_degree_two_or_zero(d_holo[j], "structure differential");
    m->d_gen_[j] = d_holo[j].rebind(m.get());
  }
  for (int j = 0; j < n; ++j) m->d_gen_[j + n] = conjugate(m->d_gen_[j]);
  m->finish();
  return m;
}

std::shared_ptr<const NilmanifoldModel> NilmanifoldModel::create_full(int n,
                                                                       const std::vector<InvariantForm>& d_all) {
  if (n < 1 || n > 8) throw std::invalid_argument("model: n must be in 1..8");
  if (static_cast<int>(d_all.size()) != 2 * n) throw std::invalid_argument("model: need 2n differentials");
  std::shared_ptr<NilmanifoldModel> m(new NilmanifoldModel());
  m->n_ = n;
  for (const auto& f : d_all) {
    check_degree_two_or_zero(f, "structure differential");
    m->d_gen_.push_back(f.rebind(m.get()));
  }
  for (int j = 0; j < n; ++j)
    if (conjugate(m->d_gen_[j]) != m->d_gen_[j + n])
      throw std::invalid_argument("model: d does not commute with conjugation at " + m->label(j));
  m->finish();
  return m;
}

void NilmanifoldModel::finish() {
  const int N = dim();
  // integrability: no (0,2) part in d of a (1,0) generator
  for (int j = 0; j < n_; ++j)
    for (const auto& t : d_gen_[j].terms())
      if ((t.mask & holo_mask()) == 0)
        throw std::invalid_argument("model: complex structure not integrable at " + label(j));

  d_table_.assign(size_t(1) << N, InvariantForm(this));
  for (unsigned m = 1; m < (1u << N); ++m) {
    int b = __builtin_ctz(m);
    Mask rest = static_cast<Mask>(m & (m - 1));
    InvariantForm rest_form(this, rest, Scalar(1));
    InvariantForm first(this, static_cast<Mask>(1u << b), Scalar(1));
    d_table_[m] = wedge(d_gen_[b], rest_form) - wedge(first, d_table_[rest]);
  }
  for (int j = 0; j < N; ++j)
    if (!d(d_gen_[j]).is_zero()) throw std::invalid_argument("model: d^2 != 0 on " + label(j));

  bracket_.assign(size_t(N) * N * N, Scalar());
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) bracket_[(i * N + j) * N + k] = -eval2(d_gen_[k], i, j);
}

std::string NilmanifoldModel::label(int j) const {
  return j < n_ ? "w" + std::to_string(j + 1) : "w" + std::to_string(j - n_ + 1) + "b";
}

int NilmanifoldModel::index_of(std::string_view label) const { return label_index(n_, label); }

const InvariantForm& NilmanifoldModel::d_generator(int j) const { return d_gen_.at(j); }

const InvariantForm& NilmanifoldModel::d_monomial(Mask m) const { return d_table_.at(m); }

// ---------------------------------------------------------------- forms

InvariantForm::InvariantForm(const NilmanifoldModel* model, Mask mask, Scalar c) : model_(model) {
  if (!c.is_zero()) terms_.push_back({mask, std::move(c)});
}

InvariantForm InvariantForm::from_terms(const NilmanifoldModel* model, Terms terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mask < b.mask; });
  InvariantForm f(model);
  for (auto& t : terms) {
    if (!f.terms_.empty() && f.terms_.back().mask == t.mask) {
      f.terms_.back().c += t.c;
      if (f.terms_.back().c.is_zero()) f.terms_.pop_back();
    } else if (!t.c.is_zero()) {
      f.terms_.push_back(std::move(t));
    }
  }
  return f;
}

InvariantForm InvariantForm::rebind(const NilmanifoldModel* model) const {
  InvariantForm f = *this;
  f.model_ = model;
  return f;
}

Scalar InvariantForm::coeff(Mask m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Mask v) { return t.mask < v; });
  if (it != terms_.end() && it->mask == m) return it->c;
  return {};
}

int InvariantForm::degree() const { return terms_.empty() ? -1 : popcount(terms_.front().mask); }

bool InvariantForm::is_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return popcount(t.mask) == degree(); });
}

InvariantForm InvariantForm::operator-() const {
  InvariantForm f = *this;
  for (auto& t : f.terms_) t.c = -t.c;
  return f;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
  model_ = pick_model(*this, o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  Terms out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mask < b->mask)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->mask < a->mask) {
      out.push_back(*b++);
    } else {
      Scalar c = std::move(a->c);
      c += b->c;
      if (!c.is_zero()) out.push_back({a->mask, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& o) { return *this += -o; }

InvariantForm& InvariantForm::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= s;
  return *this;
}

bool operator==(const InvariantForm& a, const InvariantForm& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mask != b.terms_[i].mask || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

std::string InvariantForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    const auto& ts = t.c.terms();
    bool bare = ts.size() == 1 && ts[0].k == 0;
    s += bare ? t.c.to_string() : "(" + t.c.to_string() + ")";
    std::string mono;
    for (unsigned m = t.mask; m; m &= m - 1) {
      if (!mono.empty()) mono += "^";
      int j = __builtin_ctz(m);
      mono += model_ ? model_->label(j) : "e" + std::to_string(j);
    }
    if (!mono.empty()) s += " " + mono;
  }
  return s;
}

// ---------------------------------------------------------------- vectors

InvariantVector::InvariantVector(const NilmanifoldModel* model) : model_(model), c_(model->dim()) {}

InvariantVector InvariantVector::basis(const NilmanifoldModel* model, int j) {
  InvariantVector v(model);
  v.c_.at(j) = Scalar(1);
  return v;
}

InvariantVector InvariantVector::conj() const {
  InvariantVector v(model_);
  for (int j = 0; j < dim(); ++j) v.c_[model_->conj_index(j)] = c_[j].conj();
  return v;
}

// ---------------------------------------------------------------- operations

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
  const NilmanifoldModel* m = pick_model(a, b);
  if (a.is_zero() || b.is_zero()) return InvariantForm(m);
  InvariantForm::Terms out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      int s = wedge_sign(x.mask, y.mask);
      if (s == 0) continue;
      Scalar c = x.c * y.c;
      if (s < 0) c = -c;
      out.push_back({static_cast<Mask>(x.mask | y.mask), std::move(c)});
    }
  return InvariantForm::from_terms(m, std::move(out));
}

InvariantForm d(const InvariantForm& a) {
  const NilmanifoldModel* m = a.model();
  if (!m || a.is_zero()) return InvariantForm(m);
  InvariantForm::Terms out;
  for (const auto& t : a.terms())
    for (const auto& u : m->d_monomial(t.mask).terms()) out.push_back({u.mask, t.c * u.c});
  return InvariantForm::from_terms(m, std::move(out));
}

namespace {

std::pair<int, int> bidegree(const NilmanifoldModel* m, Mask mask) {
  return {popcount(mask & m->holo_mask()), popcount(mask & m->antiholo_mask())};
}

// Part of d raising the bidegree by (dp, dq).
InvariantForm d_part(const InvariantForm& a, int dp, int dq) {
  const NilmanifoldModel* m = a.model();
  if (!m || a.is_zero()) return InvariantForm(m);
  InvariantForm::Terms out;
  for (const auto& t : a.terms()) {
    auto [p, q] = bidegree(m, t.mask);
    for (const auto& u : m->d_monomial(t.mask).terms()) {
      if (bidegree(m, u.mask) != std::pair{p + dp, q + dq}) continue;
      out.push_back({u.mask, t.c * u.c});
    }
  }
  return InvariantForm::from_terms(m, std::move(out));
}

}  // namespace

InvariantForm component(const InvariantForm& a, int p, int q) {
  InvariantForm::Terms out;
  for (const auto& t : a.terms())
    if (a.model() && bidegree(a.model(), t.mask) == std::pair{p, q}) out.push_back(t);
  return InvariantForm::from_terms(a.model(), std::move(out));
}

std::map<std::pair<int, int>, InvariantForm> bigrade(const InvariantForm& a) {
  std::map<std::pair<int, int>, InvariantForm> parts;
  for (const auto& t : a.terms()) {
    auto& slot = parts[bidegree(a.model(), t.mask)];
    slot += InvariantForm(a.model(), t.mask, t.c);
  }
  return parts;
}

InvariantForm del(const InvariantForm& a) { return d_part(a, 1, 0); }

InvariantForm delbar(const InvariantForm& a) { return d_part(a, 0, 1); }

InvariantForm dc(const InvariantForm& a) { return (delbar(a) - del(a)) * Scalar::I(); }

InvariantForm conjugate(const InvariantForm& a) {
  const NilmanifoldModel* m = a.model();
  if (!m || a.is_zero()) return InvariantForm(m);
  const int n = m->n();
  InvariantForm::Terms out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    Mask lo = t.mask & m->holo_mask();
    Mask hi = static_cast<Mask>(t.mask >> n);
    Mask mc = static_cast<Mask>((lo << n) | hi);
    Scalar c = t.c.conj();
    if ((popcount(lo) * popcount(hi)) & 1) c = -c;
    out.push_back({mc, std::move(c)});
  }
  return InvariantForm::from_terms(m, std::move(out));
}

InvariantForm contract_basis(int j, const InvariantForm& a) {
  InvariantForm::Terms out;
  const unsigned bit = 1u << j;
  for (const auto& t : a.terms()) {
    if (!(t.mask & bit)) continue;
    bool odd = popcount(t.mask & (bit - 1)) & 1;
    out.push_back({static_cast<Mask>(t.mask & ~bit), odd ? -t.c : t.c});
  }
  return InvariantForm::from_terms(a.model(), std::move(out));
}

InvariantForm contract(const InvariantVector& v, const InvariantForm& a) {
  InvariantForm r(pick_model(a, InvariantForm(v.model())));
  for (int j = 0; j < v.dim(); ++j)
    if (!v[j].is_zero()) r += contract_basis(j, a) * v[j];
  return r;
}

Scalar eval2(const InvariantForm& a, int i, int j) {
  if (i == j) return {};
  Mask m = static_cast<Mask>((1u << i) | (1u << j));
  Scalar c = a.coeff(m);
  return i < j ? c : -c;
}

InvariantForm apply_J(const InvariantForm& a) {
  InvariantForm::Terms out;
  for (const auto& t : a.terms()) {
    auto [p, q] = bidegree(a.model(), t.mask);
    int e = ((q - p) % 4 + 4) % 4;
    Scalar c = t.c;
    if (e == 1) c *= Scalar::I();
    if (e == 2) c = -c;
    if (e == 3) c *= -Scalar::I();
    out.push_back({t.mask, std::move(c)});
  }
  return InvariantForm::from_terms(a.model(), std::move(out));
}

Scalar top_coeff(const InvariantForm& a) {
  if (!a.model()) return {};
  return a.coeff(a.model()->full_mask());
}

// ---------------------------------------------------------------- parsing

InvariantForm parse_form(const NilmanifoldModel* model, std::string_view text) {
  std::string s(text);
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("form literal '" + s + "': " + why);
  };
  // split at top-level + / - (not after '^', which introduces a π exponent)
  std::vector<std::pair<bool, std::string>> pieces;
  int depth = 0;
  std::string cur;
  bool neg = false;
  auto flush = [&] {
    size_t a = cur.find_first_not_of(" \t");
    if (a == std::string::npos) {
      if (!pieces.empty() || neg) fail("empty term");
      cur.clear();
      return;
    }
    pieces.push_back({neg, cur});
    cur.clear();
  };
  char prev = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) fail("unbalanced parentheses");
    if (depth == 0 && (c == '+' || c == '-') && prev != '^') {
      if (cur.find_first_not_of(" \t") != std::string::npos) {
        flush();
      } else if (!pieces.empty()) {
        fail("dangling operator");
      }
      neg = (c == '-');
      prev = c;
      continue;
    }
    if (c != ' ') prev = c;
    cur += c;
  }
  if (depth != 0) fail("unbalanced parentheses");
  flush();

  InvariantForm out(model);
  for (auto& [negative, body] : pieces) {
    // the monomial starts at the first top-level 'w'
    size_t split = std::string::npos;
    int dd = 0;
    for (size_t k = 0; k < body.size(); ++k) {
      if (body[k] == '(') ++dd;
      if (body[k] == ')') --dd;
      if (dd == 0 && body[k] == 'w') {
        split = k;
        break;
      }
    }
    std::string coef = body.substr(0, split);
    std::string mono = split == std::string::npos ? "" : body.substr(split);
    while (!coef.empty() && (coef.back() == ' ' || coef.back() == '*')) coef.pop_back();
    size_t first = coef.find_first_not_of(' ');
    coef = first == std::string::npos ? "" : coef.substr(first);
    Scalar c = coef.empty() ? Scalar(1) : Scalar::parse(coef);
    if (negative) c = -c;

    InvariantForm term = InvariantForm::constant(model, c);
    size_t pos = 0;
    while (pos < mono.size()) {
      size_t next = mono.find('^', pos);
      std::string lab = mono.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      while (!lab.empty() && lab.back() == ' ') lab.pop_back();
      while (!lab.empty() && lab.front() == ' ') lab.erase(lab.begin());
      int j = model->index_of(lab);
      if (j < 0) fail("unknown generator '" + lab + "'");
      term = wedge(term, InvariantForm::generator(model, j));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    out += term;
  }
  return out;
}

std::shared_ptr<const NilmanifoldModel> model_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model json: ") + e.what());
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw std::invalid_argument("model json: missing n");
  int n = doc["n"].get<int>();
  if (n < 1 || n > 8) throw std::invalid_argument("model json: n must be in 1..8");
  std::vector<InvariantForm> diffs(2 * n);
  bool has_conjugates = false;
  if (doc.contains("d")) {
    for (auto& [key, value] : doc["d"].items()) {
      int j = label_index(n, key);
      if (j < 0) throw std::invalid_argument("model json: unknown generator " + key);
      if (j >= n) has_conjugates = true;
      InvariantForm f;
      for (const auto& entry : value) {
        if (!entry.is_array() || entry.size() < 2) throw std::invalid_argument("model json: bad term for " + key);
        Scalar c = Scalar::parse(entry.back().get<std::string>());
        Mask mask = 0;
        int sign = 1;
        for (size_t k = 0; k + 1 < entry.size(); ++k) {
          int g = label_index(n, entry[k].get<std::string>());
          if (g < 0) throw std::invalid_argument("model json: unknown generator in d(" + key + ")");
          Mask bit = static_cast<Mask>(1u << g);
          sign *= wedge_sign(mask, bit);
          mask |= bit;
        }
        if (sign == 0) continue;
        f += InvariantForm(nullptr, mask, sign < 0 ? -c : c);
      }
      diffs[j] = f;
    }
  }
  if (has_conjugates) return NilmanifoldModel::create_full(n, diffs);
  diffs.resize(n);
  return NilmanifoldModel::create(n, diffs);
}

}  // namespace hslab
