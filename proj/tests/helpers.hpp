#pragma once
#include <random>

#include "stableforms/form.hpp"

namespace sfc::testutil {

inline mpq_class rand_rational(std::mt19937_64& rng, int span = 6) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, span);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline ScalarK rand_scalar(std::mt19937_64& rng, bool full = true) {
  ScalarK s(rand_rational(rng));
  if (full)
    for (int rad : {2, 3, 5, 6, 10, 15, 30}) s += ScalarK::radical(rand_rational(rng), rad);
  return s;
}

inline ScalarK rand_nonzero_scalar(std::mt19937_64& rng) {
  for (;;) {
    ScalarK s = rand_scalar(rng);
    if (!s.is_zero()) return s;
  }
}

inline FormK rand_form(std::mt19937_64& rng, int n, int k, int terms = 4) {
  FormK f(n);
  auto bl = blades(n, k);
  std::uniform_int_distribution<int> pick(0, (int)bl.size() - 1);
  for (int t = 0; t < terms; ++t) f.add(bl[pick(rng)], ScalarK(rand_rational(rng)));
  return f;
}

inline VecK rand_vector(std::mt19937_64& rng, int n) {
  VecK v(n);
  for (int i = 0; i < n; ++i) v.x[i] = ScalarK(rand_rational(rng));
  return v;
}

}  // namespace sfc::testutil
