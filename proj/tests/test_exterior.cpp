#include <doctest.h>

#include <random>

#include "hslab/exterior.hpp"
#include "support.hpp"

using namespace hslab;
using testsupport::parity;
using testsupport::random_form;

namespace {

std::shared_ptr<const NilmanifoldModel> heisenberg() {
  std::vector<InvariantForm> dh(3);
  dh[2] = InvariantForm(nullptr, 0b000011, Scalar(1));
  return NilmanifoldModel::create(3, dh);
}

}  // namespace

TEST_CASE("structure equations of the complex Heisenberg model") {
  auto model = heisenberg();
  const auto* m = model.get();
  auto w = [&](std::string_view s) { return parse_form(m, s); };
  CHECK(d(w("w3")) == w("w1^w2"));
  CHECK(d(w("w1")).is_zero());
  CHECK(d(w("w2b")).is_zero());
  CHECK(d(w("w3b")) == w("w1b^w2b"));
  CHECK(d(w("w1^w2^w1b^w2b")).is_zero());
  CHECK(m->bracket(0, 1, 2) == Scalar(-1));
  CHECK(m->bracket(1, 0, 2) == Scalar(1));
}

TEST_CASE("wedge basics") {
  auto model = heisenberg();
  const auto* m = model.get();
  auto w1 = InvariantForm::generator(m, 0), w2 = InvariantForm::generator(m, 1);
  CHECK(wedge(w1, w2) == parse_form(m, "w1^w2"));
  CHECK(wedge(w2, w1) == parse_form(m, "-w1^w2"));
  CHECK(wedge(w1, w1).is_zero());
  CHECK(wedge_sign(0b10, 0b01) == -1);
  CHECK(wedge_sign(0b101, 0b010) == -1);
  CHECK(wedge_sign(0b011, 0b100) == 1);
}

TEST_CASE("randomized algebraic identities") {
  auto model = heisenberg();
  const auto* m = model.get();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> deg(0, 6);
    InvariantForm a = random_form(m, rng, deg(rng));
    InvariantForm b = random_form(m, rng, deg(rng));
    InvariantForm c = random_form(m, rng);
    int sign = (parity(a) && parity(b)) ? -1 : 1;
    CHECK(wedge(a, b) == wedge(b, a) * Scalar(sign));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(d(d(c)).is_zero());
    CHECK(d(wedge(a, b)) == wedge(d(a), b) + wedge(a, d(b)) * Scalar(parity(a) ? -1 : 1));
    CHECK(conjugate(conjugate(c)) == c);
    CHECK(conjugate(d(c)) == d(conjugate(c)));
    CHECK(del(c) + delbar(c) == d(c));
    CHECK(d(dc(c)) == -dc(d(c)));
    InvariantForm sum(m);
    for (const auto& [pq, part] : bigrade(c)) {
      CHECK(part == component(c, pq.first, pq.second));
      sum += part;
    }
    CHECK(sum == c);
    for (int j = 0; j < 6; ++j) {
      CHECK(contract_basis(j, contract_basis(j, c)).is_zero());
      CHECK(contract_basis(j, wedge(a, b)) ==
            wedge(contract_basis(j, a), b) + wedge(a, contract_basis(j, b)) * Scalar(parity(a) ? -1 : 1));
    }
    CHECK(parse_form(m, c.to_string()) == c);
  }
}

TEST_CASE("invariant 5-forms have exact differentials with no top component") {
  auto model = heisenberg();
  const auto* m = model.get();
  for (int j = 0; j < 6; ++j) {
    Mask five = static_cast<Mask>(m->full_mask() & ~(1u << j));
    CHECK(top_coeff(d(InvariantForm(m, five, Scalar(1)))).is_zero());
  }
}

TEST_CASE("the reference metric's differentials") {
  auto model = heisenberg();
  const auto* m = model.get();
  InvariantForm w0 = parse_form(m, "(1/2 i) w1^w1b + (1/2 i) w2^w2b + (1/2 i) w3^w3b");
  // d(ω3 ∧ ω3̄) = ω12 ∧ ω3̄ − ω3 ∧ ω1̄2̄, by hand
  auto parts = bigrade(d(w0));
  CHECK(parts.size() == 2);
  CHECK(parts[{2, 1}] == parse_form(m, "(1/2 i) w1^w2^w3b"));
  CHECK(parts[{1, 2}] == parse_form(m, "(-1/2 i) w3^w1b^w2b"));
  CHECK(dc(w0) == parse_form(m, "(1/2) w1^w2^w3b + (1/2) w3^w1b^w2b"));
  CHECK(d(dc(w0)) == parse_form(m, "w1^w2^w1b^w2b"));
  CHECK(dc(parse_form(m, "(7) w1^w2^w1b^w2b")).is_zero());
  CHECK(conjugate(w0) == w0);
  CHECK(conjugate(parse_form(m, "i w1^w1b")) == parse_form(m, "i w1^w1b"));
  CHECK(conjugate(parse_form(m, "w1")) == parse_form(m, "w1b"));
}

TEST_CASE("contraction and evaluation") {
  auto model = heisenberg();
  const auto* m = model.get();
  CHECK(contract_basis(0, parse_form(m, "w1^w2")) == parse_form(m, "w2"));
  CHECK(contract_basis(1, parse_form(m, "w1^w2")) == parse_form(m, "-w1"));
  CHECK(contract_basis(2, parse_form(m, "w1^w2")).is_zero());
  CHECK(contract_basis(0, InvariantForm::constant(m, Scalar(3))).is_zero());
  InvariantVector v(m);
  v[0] = Scalar(2);
  v[4] = Scalar::I();
  CHECK(contract(v, parse_form(m, "w1^w2b")) == parse_form(m, "2 w2b - i w1"));
  CHECK(eval2(parse_form(m, "w1^w2"), 0, 1) == Scalar(1));
  CHECK(eval2(parse_form(m, "w1^w2"), 1, 0) == Scalar(-1));
  CHECK(apply_J(parse_form(m, "w1 + w2b")) == parse_form(m, "-i w1 + i w2b"));
}

TEST_CASE("model loading and validation") {
  auto json_model = model_from_json(R"({"n": 3, "d": {"w3": [["w1","w2","1"]]}})");
  auto direct = heisenberg();
  for (int j = 0; j < 6; ++j)
    CHECK(json_model->d_generator(j).to_string() == direct->d_generator(j).to_string());
  auto explicit_conj = model_from_json(R"({"n": 3, "d": {"w3": [["w1","w2","1"]], "w3b": [["w1b","w2b","1"]]}})");
  CHECK(explicit_conj->d_generator(5).to_string() == direct->d_generator(5).to_string());
  // (0,2) part in d of a (1,0) generator
  CHECK_THROWS(model_from_json(R"({"n": 2, "d": {"w2": [["w1b","w2b","1"]]}})"));
  // d² ≠ 0
  CHECK_THROWS(model_from_json(R"({"n": 2, "d": {"w1": [["w2","w2b","1"]], "w2": [["w1","w1b","1"]]}})"));
  // d not compatible with conjugation
  CHECK_THROWS(model_from_json(R"({"n": 3, "d": {"w3": [["w1","w2","1"]], "w3b": [["w1b","w2b","2"]]}})"));
  CHECK_THROWS(model_from_json(R"({"n": 3, "d": {"w9": [["w1","w2","1"]]}})"));
  CHECK_THROWS(model_from_json("not json"));
}
