#pragma once

#include <random>

#include "hslab/exterior.hpp"

namespace testsupport {

inline hslab::InvariantForm random_form(const hslab::NilmanifoldModel* m, std::mt19937& rng, int degree = -1,
                                        bool with_pi = true) {
  using namespace hslab;
  std::uniform_int_distribution<int> coef(-3, 3), power(with_pi ? -1 : 0, with_pi ? 2 : 0), count(1, 4);
  std::uniform_int_distribution<unsigned> mask_dist(0, m->full_mask());
  InvariantForm f(m);
  int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    Mask mask;
    do {
      mask = static_cast<Mask>(mask_dist(rng));
    } while (degree >= 0 && popcount(mask) != degree);
    Scalar c(GaussRational(Rational(coef(rng)), Rational(coef(rng))), power(rng));
    f += InvariantForm(m, mask, c);
  }
  return f;
}

inline int parity(const hslab::InvariantForm& f) { return f.degree() < 0 ? 0 : f.degree() & 1; }

}  // namespace testsupport
