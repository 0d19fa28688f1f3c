#include "hslab/iwasawa.hpp"

namespace hslab::iwasawa {

const NilmanifoldModel* model() {
  static const std::shared_ptr<const NilmanifoldModel> instance = [] {
    std::vector<InvariantForm> dh(3);
    dh[2] = InvariantForm(nullptr, 0b000011, Scalar(1));
    return NilmanifoldModel::create(3, dh);
  }();
  return instance.get();
}

InvariantForm omega0() { return parse_form(model(), "(1/2 i) w1^w1b + (1/2 i) w2^w2b + (1/2 i) w3^w3b"); }

InvariantForm holomorphic_volume() { return parse_form(model(), "w1^w2^w3"); }

std::array<InvariantForm, 4> tau_basis() {
  const auto* m = model();
  return {parse_form(m, "w1^w3b - w3^w1b"), parse_form(m, "i w1^w3b + i w3^w1b"),
          parse_form(m, "w2^w3b - w3^w2b"), parse_form(m, "i w2^w3b + i w3^w2b")};
}

InvariantForm omega_1212() { return parse_form(model(), "w1^w2^w1b^w2b"); }

}  // namespace hslab::iwasawa
