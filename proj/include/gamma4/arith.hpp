#pragma once

// Exact integer and number-theoretic primitives.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gamma4/error.hpp"

namespace gamma4 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Overflow-checked int64 helpers; a wrap is reported, never silently taken.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::InvalidArgument, "int64 overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::InvalidArgument, "int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::InvalidArgument, "int64 overflow in multiplication");
  return r;
}

}  // namespace checked

inline std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(ErrorKind::InvalidArgument, "integer does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
}

/// Non-negative modulus in [0, m) for m > 0.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  check(!(a == 0 && b == 0), ErrorKind::InvalidArgument, "gcd(0, 0) is undefined");
  return boost::multiprecision::gcd(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
}

/// Inverse of a modulo m, returned in [1, m-1].
inline Integer mod_inverse(const Integer& a, const Integer& m) {
  check(m >= 2, ErrorKind::InvalidArgument, "mod_inverse needs modulus >= 2");
  Integer old_r = mod_floor(a, m), r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer quot = old_r / r;
    Integer tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) fail(ErrorKind::NoInverse, to_string(a) + " has no inverse modulo " + to_string(m));
  return mod_floor(old_s, m);
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  return to_int64(mod_inverse(Integer(a), Integer(m)));
}

/// Jacobi symbol (a/n) for odd n >= 1.
inline int jacobi_symbol(const Integer& a_in, const Integer& n_in) {
  check(n_in >= 1 && (n_in % 2) == 1, ErrorKind::InvalidArgument,
        "jacobi_symbol needs an odd positive modulus, got " + to_string(n_in));
  Integer a = mod_floor(a_in, n_in);
  Integer n = n_in;
  int result = 1;
  while (a != 0) {
    while ((a % 2) == 0) {
      a /= 2;
      const auto r = static_cast<int>(n % 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a % 4) == 3 && (n % 4) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

struct ContinuedFraction {
  Integer numerator;
  Integer denominator;
  std::vector<Integer> terms;

  Rational value() const {
    Rational acc = Rational(terms.back());
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) acc = Rational(*it) + 1 / acc;
    return acc;
  }
  /// Index of the last term (the k in [a_0, ..., a_k]).
  std::size_t last_index() const { return terms.size() - 1; }
};

inline ContinuedFraction continued_fraction(const Integer& num, const Integer& den) {
  check(num > 0 && den > 0, ErrorKind::InvalidArgument, "continued_fraction needs positive input");
  check(gcd(num, den) == 1, ErrorKind::InvalidArgument,
        "continued_fraction needs coprime input: " + to_string(num) + "/" + to_string(den));
  ContinuedFraction cf{num, den, {}};
  Integer n = num, d = den;
  while (d != 0) {
    cf.terms.push_back(n / d);
    Integer r = n % d;
    n = d;
    d = r;
  }
  // [..., a, 1] == [..., a + 1]
  if (cf.terms.size() >= 2 && cf.terms.back() == 1) {
    cf.terms.pop_back();
    cf.terms.back() += 1;
  }
  return cf;
}

inline bool is_perfect_square(const Integer& n) {
  check(n >= 0, ErrorKind::InvalidArgument, "is_perfect_square needs n >= 0");
  const Integer root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

// Miller-Rabin with the first 13 prime bases is deterministic below this bound.
inline const Integer& primality_bound() {
  static const Integer bound("3317044064679887385961981");
  return bound;
}

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

constexpr std::uint64_t kWitnessBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

inline bool strong_probable_prime64(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod64(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool strong_probable_prime(const Integer& n, const Integer& a) {
  Integer d = n - 1;
  unsigned s = 0;
  while ((d % 2) == 0) {
    d /= 2;
    ++s;
  }
  Integer x = boost::multiprecision::powm(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

inline bool is_prime64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnessBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (std::uint64_t a : kWitnessBases)
    if (!strong_probable_prime64(n, a)) return false;
  return true;
}

}  // namespace detail

/// Deterministic primality for n below primality_bound(); larger inputs are rejected.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n >= primality_bound())
    fail(ErrorKind::PrimalityOutOfRange, "primality test limited to n < 3.3e24, got " + to_string(n));
  if (n <= std::numeric_limits<std::uint64_t>::max()) return detail::is_prime64(static_cast<std::uint64_t>(n));
  for (std::uint64_t p : detail::kWitnessBases)
    if (n % p == 0) return false;
  for (std::uint64_t a : detail::kWitnessBases)
    if (!detail::strong_probable_prime(n, Integer(a))) return false;
  return true;
}

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  Integer value;
  std::vector<PrimePower> factors;  // primes strictly increasing

  Integer product() const {
    Integer acc = 1;
    for (const auto& f : factors) acc *= boost::multiprecision::pow(f.prime, f.exponent);
    return acc;
  }
};

inline constexpr unsigned kDefaultMaxFactorDigits = 24;

namespace detail {

inline unsigned decimal_digits(const Integer& n) { return static_cast<unsigned>(n.str().size()); }

inline std::uint64_t rho64(std::uint64_t n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  for (;;) {
    const std::uint64_t c = rng() % (n - 1) + 1;
    std::uint64_t y = rng() % n, g = 1, q = 1, x = 0, ys = 0;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline Integer rho_big(const Integer& n, std::mt19937_64& rng) {
  if ((n % 2) == 0) return 2;
  for (;;) {
    const Integer c = Integer(rng()) % (n - 1) + 1;
    Integer y = Integer(rng()) % n, g = 1, q = 1, x = 0, ys = 0;
    const unsigned m = 128;
    std::uint64_t r = 1;
    auto f = [&](const Integer& v) { return (v * v + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(m, r - k); ++i) {
          y = f(y);
          q = (q * boost::multiprecision::abs(x - y)) % n;
        }
        g = boost::multiprecision::gcd(q, n);
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_composite(const Integer& n, std::vector<Integer>& primes, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer d = n <= std::numeric_limits<std::uint64_t>::max()
                  ? Integer(rho64(static_cast<std::uint64_t>(n), rng))
                  : rho_big(n, rng);
  split_composite(d, primes, rng);
  split_composite(n / d, primes, rng);
}

}  // namespace detail

/// Complete prime factorization. Trial division below a fixed cutoff, then
/// Pollard-Brent rho with a fixed seed so output is reproducible.
inline Factorization factorize(const Integer& n, unsigned max_digits = kDefaultMaxFactorDigits) {
  check(n >= 1, ErrorKind::InvalidArgument, "factorize needs n >= 1");
  if (detail::decimal_digits(n) > max_digits)
    fail(ErrorKind::FactorizationTooHard,
         to_string(n) + " exceeds the factorization ceiling of " + std::to_string(max_digits) + " digits");
  std::vector<Integer> primes;
  Integer rest = n;
  constexpr std::uint32_t kTrialCutoff = 10000;
  for (std::uint32_t d = 2; d < kTrialCutoff && Integer(d) * d <= rest; d += (d == 2 ? 1 : 2)) {
    while ((rest % d) == 0) {
      primes.emplace_back(d);
      rest /= d;
    }
  }
  if (rest > 1) {
    std::mt19937_64 rng(0x6a09e667f3bcc909ULL);
    detail::split_composite(rest, primes, rng);
  }
  std::sort(primes.begin(), primes.end());
  Factorization out{n, {}};
  for (const auto& p : primes) {
    if (!out.factors.empty() && out.factors.back().prime == p)
      ++out.factors.back().exponent;
    else
      out.factors.push_back({p, 1});
  }
  return out;
}

inline const Integer& default_prime_search_ceiling() {
  static const Integer ceiling("1000000000000");
  return ceiling;
}

/// The first `count` primes congruent to r modulo m, in increasing order.
inline std::vector<Integer> primes_in_class(const Integer& r, const Integer& m, std::size_t count,
                                            const Integer& ceiling = default_prime_search_ceiling()) {
  check(m >= 1, ErrorKind::InvalidArgument, "modulus must be positive");
  const Integer residue = mod_floor(r, m);
  if (gcd(residue, m) != 1)
    fail(ErrorKind::NoDirichletClass, to_string(r) + " is not a unit modulo " + to_string(m));
  std::vector<Integer> out;
  Integer s = residue;
  while (s < 2) s += m;
  for (; out.size() < count; s += m) {
    if (s > ceiling)
      fail(ErrorKind::SearchExhausted,
           "no prime = " + to_string(residue) + " mod " + to_string(m) + " below " + to_string(ceiling));
    if (is_prime(s)) out.push_back(s);
  }
  return out;
}

inline Integer smallest_prime_in_class(const Integer& r, const Integer& m,
                                       const Integer& ceiling = default_prime_search_ceiling()) {
  return primes_in_class(r, m, 1, ceiling).front();
}

}  // namespace gamma4
