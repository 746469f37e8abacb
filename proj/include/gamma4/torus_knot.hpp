#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gamma4/arith.hpp"
#include "gamma4/laurent.hpp"

namespace gamma4 {

// p*q must fit comfortably in int64 for the semigroup and pinch arithmetic.
inline constexpr std::int64_t kMaxTorusParameter = 2147483647;
// Gap lists and Alexander polynomials are O(genus); refuse anything larger.
inline constexpr std::int64_t kMaxGenus = 10'000'000;

class TorusKnot {
 public:
  static TorusKnot make(std::int64_t p, std::int64_t q) {
    check(p >= 0 && q >= 0, ErrorKind::InvalidArgument,
          "torus knot parameters must be nonnegative, got (" + std::to_string(p) + ", " + std::to_string(q) + ")");
    check(p <= kMaxTorusParameter && q <= kMaxTorusParameter, ErrorKind::InvalidArgument,
          "torus knot parameters must be below 2^31");
    if (p == 0 && q == 0) fail(ErrorKind::NotAKnot, "T(0,0) is not a knot");
    if (std::gcd(p, q) != 1)
      fail(ErrorKind::NotAKnot, "T(" + std::to_string(p) + "," + std::to_string(q) + ") is a link: parameters not coprime");
    return TorusKnot(p, q);
  }

  static TorusKnot unknot() { return TorusKnot(1, 1); }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  std::int64_t lo() const { return std::min(p_, q_); }
  std::int64_t hi() const { return std::max(p_, q_); }
  bool is_unknot() const { return lo() <= 1; }
  TorusKnot swapped() const { return TorusKnot(q_, p_); }
  // Same knot with the smaller parameter first.
  TorusKnot canonical() const { return TorusKnot(lo(), hi()); }

  std::string name() const { return "T(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

  friend bool operator==(const TorusKnot& a, const TorusKnot& b) {
    if (a.is_unknot() && b.is_unknot()) return true;
    return a.lo() == b.lo() && a.hi() == b.hi();
  }

 private:
  TorusKnot(std::int64_t p, std::int64_t q) : p_(p), q_(q) {}
  std::int64_t p_;
  std::int64_t q_;
};

inline std::int64_t genus(const TorusKnot& K) {
  if (K.is_unknot()) return 0;
  return checked::mul(K.p() - 1, K.q() - 1) / 2;
}

inline std::int64_t determinant(const TorusKnot& K) {
  if (K.is_unknot()) return 1;
  if (K.p() % 2 == 0) return K.q();
  if (K.q() % 2 == 0) return K.p();
  return 1;
}

// Numerical semigroup <p, q>; only the gaps are stored.
class Semigroup {
 public:
  explicit Semigroup(const TorusKnot& K) : a_(K.lo()), b_(K.hi()) {
    if (K.is_unknot()) {
      frobenius_ = -1;
      return;
    }
    check(genus(K) <= kMaxGenus, ErrorKind::ComputationTooLarge, "semigroup of " + K.name() + " is too large");
    b_inv_mod_a_ = mod_inverse(b_ % a_, a_);
    frobenius_ = a_ * b_ - a_ - b_;
    gaps_.reserve(static_cast<std::size_t>(genus(K)));
    for (std::int64_t x = 1; x <= frobenius_; ++x)
      if (!contains(x)) gaps_.push_back(x);
  }

  std::int64_t p() const { return a_; }
  std::int64_t q() const { return b_; }
  std::int64_t frobenius() const { return frobenius_; }
  const std::vector<std::int64_t>& gaps() const { return gaps_; }

  // x = i*a + j*b with i, j >= 0 iff x >= b * (x * b^{-1} mod a).
  bool contains(std::int64_t x) const {
    if (x < 0) return false;
    if (x > frobenius_) return true;
    if (a_ <= 1) return true;
    const std::int64_t j = static_cast<std::int64_t>((static_cast<__int128>(x % a_) * b_inv_mod_a_) % a_);
    return x >= j * b_;
  }

 private:
  std::int64_t a_, b_;
  std::int64_t b_inv_mod_a_ = 0;
  std::int64_t frobenius_ = -1;
  std::vector<std::int64_t> gaps_;
};

inline Semigroup semigroup(const TorusKnot& K) { return Semigroup(K); }

// Coefficient of t^i is [g+i in S] - [g+i-1 in S].
inline LaurentPoly alexander_semigroup(const TorusKnot& K) {
  LaurentPoly out;
  if (K.is_unknot()) {
    out.add_term(0, 1);
    return out;
  }
  const std::int64_t g = genus(K);
  check(g <= kMaxGenus, ErrorKind::ComputationTooLarge, "Alexander polynomial of " + K.name() + " is too large");
  const std::int64_t a = K.lo(), b = K.hi();
  const std::int64_t binv = mod_inverse(b % a, a);
  auto member = [&](std::int64_t x) {
    if (x < 0) return false;
    const std::int64_t j = static_cast<std::int64_t>((static_cast<__int128>(x % a) * binv) % a);
    return x >= j * b;
  };
  bool prev = member(-1);
  for (std::int64_t i = -g; i <= g; ++i) {
    const bool cur = member(g + i);
    if (cur != prev) out.add_term(i, cur ? 1 : -1);
    prev = cur;
  }
  return out;
}

// (t-1)(t^{pq}-1) / ((t^p-1)(t^q-1)), shifted by t^{-g}. Dense; used as a cross-check.
inline constexpr std::int64_t kMaxDivisionDegree = 20'000'000;

inline LaurentPoly alexander_division(const TorusKnot& K) {
  LaurentPoly out;
  if (K.is_unknot()) {
    out.add_term(0, 1);
    return out;
  }
  const std::int64_t p = K.p(), q = K.q();
  const std::int64_t pq = checked::mul(p, q);
  check(pq <= kMaxDivisionDegree, ErrorKind::ComputationTooLarge, "division route too large for " + K.name());
  // A = (t^{pq}-1)/(t^p-1) = sum_{i<q} t^{ip}; B = (t-1) A.
  const std::int64_t degB = p * (q - 1) + 1;
  std::vector<std::int64_t> B(static_cast<std::size_t>(degB + 1), 0);
  for (std::int64_t i = 0; i < q; ++i) {
    B[static_cast<std::size_t>(i * p + 1)] += 1;
    B[static_cast<std::size_t>(i * p)] -= 1;
  }
  // B = C (t^q - 1): B_k = C_{k-q} - C_k.
  const std::int64_t degC = degB - q;
  std::vector<std::int64_t> C(static_cast<std::size_t>(degC + 1), 0);
  for (std::int64_t k = 0; k <= degC; ++k) {
    const std::int64_t back = k >= q ? C[static_cast<std::size_t>(k - q)] : 0;
    C[static_cast<std::size_t>(k)] = back - B[static_cast<std::size_t>(k)];
  }
  for (std::int64_t k = degC + 1; k <= degB; ++k) {
    const std::int64_t back = k - q >= 0 && k - q <= degC ? C[static_cast<std::size_t>(k - q)] : 0;
    check(back == B[static_cast<std::size_t>(k)], ErrorKind::InternalError, "Alexander division left a remainder");
  }
  const std::int64_t g = genus(K);
  check(degC == 2 * g, ErrorKind::InternalError, "Alexander division has the wrong degree");
  for (std::int64_t k = 0; k <= degC; ++k) out.add_term(k - g, C[static_cast<std::size_t>(k)]);
  return out;
}

// Cross-checks against the division route below this size.
inline constexpr std::int64_t kAlexanderCrossCheckLimit = 200'000;

inline LaurentPoly alexander(const TorusKnot& K) {
  LaurentPoly a = alexander_semigroup(K);
  if (!K.is_unknot() && K.p() * K.q() <= kAlexanderCrossCheckLimit)
    check(a == alexander_division(K), ErrorKind::InternalError,
          "Alexander routes disagree for " + K.name());
  return a;
}

/// Exponent of the first positive-degree term when the constant term is -1.
inline std::optional<std::int64_t> stretch_of(const LaurentPoly& delta) {
  if (delta.coeff(0) != -1) return std::nullopt;
  auto it = delta.terms().upper_bound(0);
  if (it == delta.terms().end()) return std::nullopt;
  return it->first;
}

inline std::optional<std::int64_t> stretch(const TorusKnot& K) {
  if (K.is_unknot()) return std::nullopt;
  return stretch_of(alexander(K));
}

/// floor((a_k - 1)/2) + 1 from q/p = [a_0, ..., a_k]; empty when k < 2.
inline std::optional<std::int64_t> stretch_cf(const TorusKnot& K) {
  if (K.is_unknot()) return std::nullopt;
  const auto cf = continued_fraction(Integer(K.hi()), Integer(K.lo()));
  if (cf.last_index() < 2) return std::nullopt;
  const std::int64_t ak = to_int64(cf.terms.back());
  return (ak - 1) / 2 + 1;
}

enum class PinchSign { Positive, Negative };

inline const char* to_string(PinchSign s) { return s == PinchSign::Positive ? "positive" : "negative"; }

struct PinchStep {
  TorusKnot from;
  TorusKnot to;
  std::int64_t t = 0;
  std::int64_t h = 0;
  std::int64_t r = 0;  // |p - 2t|
  std::int64_t s = 0;  // |q - 2h|
  PinchSign sign = PinchSign::Negative;
};

inline PinchStep pinch_once(const TorusKnot& K) {
  check(!K.is_unknot(), ErrorKind::InvalidArgument, "cannot pinch the unknot " + K.name());
  const std::int64_t p = K.p(), q = K.q();
  const std::int64_t t = mod_floor(-mod_inverse(q % p, p), p);
  const std::int64_t h = mod_inverse(p % q, q);
  const std::int64_t r = std::abs(p - 2 * t);
  const std::int64_t s = std::abs(q - 2 * h);
  const std::int64_t orient = checked::sub(checked::mul(r, q), checked::mul(s, p));
  check(orient != 0, ErrorKind::InternalError, "degenerate pinch on " + K.name());
  return PinchStep{K, TorusKnot::make(r, s), t, h, r, s, orient > 0 ? PinchSign::Positive : PinchSign::Negative};
}

inline std::vector<PinchStep> pinch_sequence(const TorusKnot& K) {
  std::vector<PinchStep> out;
  TorusKnot cur = K;
  while (!cur.is_unknot()) {
    out.push_back(pinch_once(cur));
    check(out.back().r + out.back().s < cur.p() + cur.q(), ErrorKind::InternalError, "pinch did not shrink");
    cur = out.back().to;
  }
  return out;
}

inline std::int64_t pinch_number(const TorusKnot& K) { return static_cast<std::int64_t>(pinch_sequence(K).size()); }

}  // namespace gamma4
