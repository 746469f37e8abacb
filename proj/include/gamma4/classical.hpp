#pragma once

#include <cstdint>

#include "gamma4/torus_knot.hpp"

namespace gamma4 {

namespace detail {
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? d - 1 : d;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }
}  // namespace detail

/// Brieskorn count: each pair (i, j), 1 <= i < p, 1 <= j < q, contributes -1 when
/// 1/2 < i/p + j/q < 3/2 and +1 otherwise. O(min(p, q)).
inline std::int64_t signature(const TorusKnot& K) {
  if (K.is_unknot()) return 0;
  const std::int64_t p = K.lo(), q = K.hi();
  const std::int64_t pq = checked::mul(p, q);
  std::int64_t inside = 0;
  for (std::int64_t i = 1; i < p; ++i) {
    // pq < 2(iq + jp) < 3pq, solved for j.
    const std::int64_t lo = std::max<std::int64_t>(1, detail::floor_div(pq - 2 * i * q, 2 * p) + 1);
    const std::int64_t hi = std::min<std::int64_t>(q - 1, detail::ceil_div(3 * pq - 2 * i * q, 2 * p) - 1);
    if (hi >= lo) inside += hi - lo + 1;
  }
  return checked::mul(p - 1, q - 1) - 2 * inside;
}

/// Arf invariant from the determinant: 0 iff det = +-1 mod 8.
inline int arf(const TorusKnot& K) {
  const std::int64_t r = determinant(K) % 8;
  return (r == 1 || r == 7) ? 0 : 1;
}

struct ClassicalRecord {
  TorusKnot knot;
  std::int64_t signature = 0;
  int arf = 0;
  int yasuhara_class = 0;  // (sigma + 4 arf) mod 8
  bool mobius_parity_obstructed = false;
};

inline bool yasuhara_allows(int cls) { return cls == 0 || cls == 2 || cls == 6; }

inline ClassicalRecord yasuhara_obstruction(const TorusKnot& K) {
  ClassicalRecord rec{K};
  rec.signature = signature(K);
  rec.arf = arf(K);
  rec.yasuhara_class = static_cast<int>(mod_floor(rec.signature + 4 * rec.arf, std::int64_t{8}));
  rec.mobius_parity_obstructed = !yasuhara_allows(rec.yasuhara_class);
  return rec;
}

}  // namespace gamma4
