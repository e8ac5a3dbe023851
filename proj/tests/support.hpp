#pragma once

#include <initializer_list>
#include <vector>

#include "zcc/polynomial.hpp"

namespace zcc::test {

inline Polynomial P(std::initializer_list<long> c) {
  std::vector<GaussRational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(std::move(v));
}

inline Polynomial monomial(long k) { return Polynomial::monomial(GaussRational(1), k); }

// T_0 = 1, T_1 = z, T_{k+1} = 2z T_k - T_{k-1}
inline Polynomial chebyshev(int k) {
  Polynomial prev = P({1}), cur = P({0, 1});
  if (k == 0) return prev;
  for (int j = 1; j < k; ++j) {
    Polynomial next = P({0, 2}) * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace zcc::test
