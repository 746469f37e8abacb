#pragma once

// Goeritz matrices of T(p,q) for even p and the linking form of the double branched cover.

#include <cstdint>
#include <optional>
#include <vector>

#include "gamma4/arith.hpp"
#include "gamma4/torus_knot.hpp"

namespace gamma4 {

inline constexpr std::int64_t kDefaultMaxMatrix = 2000;

struct GoeritzData {
  TorusKnot knot;
  std::int64_t size = 0;
  std::vector<std::int64_t> entries;  // row-major, size x size
  Integer determinant;

  std::int64_t at(std::int64_t i, std::int64_t j) const { return entries[static_cast<std::size_t>(i * size + j)]; }
};

namespace detail {

inline void require_even_p(const TorusKnot& K) {
  check(!K.is_unknot(), ErrorKind::InvalidArgument, "the Goeritz construction needs a nontrivial knot");
  if (K.p() % 2 != 0)
    fail(ErrorKind::NeedsEvenP, K.name() + ": the Goeritz construction needs the first parameter even");
}

inline std::int64_t goeritz_size(const TorusKnot& K) {
  return (checked::mul(K.p(), K.q()) - 2 * K.q() + 2) / 2;
}

// Block matrix: corner q, a border of -1 into the first block, blocks A on the
// diagonal (cycle adjacency on q vertices) and -I between consecutive blocks.
inline std::vector<std::int64_t> goeritz_entries(std::int64_t p, std::int64_t q) {
  const std::int64_t N = (p * q - 2 * q + 2) / 2;
  std::vector<std::int64_t> G(static_cast<std::size_t>(N * N), 0);
  auto at = [&](std::int64_t i, std::int64_t j) -> std::int64_t& { return G[static_cast<std::size_t>(i * N + j)]; };
  at(0, 0) = q;
  const std::int64_t blocks = (p - 2) / 2;
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::int64_t off = 1 + b * q;
    if (b == 0)
      for (std::int64_t i = 0; i < q; ++i) at(0, off + i) = at(off + i, 0) = -1;
    for (std::int64_t i = 0; i < q; ++i) {
      const std::int64_t j = (i + 1) % q;
      at(off + i, off + j) += 1;
      at(off + j, off + i) += 1;
    }
    if (b + 1 < blocks)
      for (std::int64_t i = 0; i < q; ++i) at(off + i, off + q + i) = at(off + q + i, off + i) = -1;
  }
  return G;
}

struct Elimination {
  Integer determinant;
  std::vector<Rational> solution;
};

// Exact Gaussian elimination over Q with full pivoting; solves G x = rhs.
inline Elimination solve_exact(std::int64_t N, const std::vector<std::int64_t>& G, const std::vector<Rational>& rhs) {
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(N));
  for (std::int64_t i = 0; i < N; ++i) {
    auto& row = a[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(N + 1));
    for (std::int64_t j = 0; j < N; ++j) row.emplace_back(G[static_cast<std::size_t>(i * N + j)]);
    row.push_back(rhs[static_cast<std::size_t>(i)]);
  }
  std::vector<std::size_t> colperm(static_cast<std::size_t>(N));
  for (std::size_t j = 0; j < colperm.size(); ++j) colperm[j] = j;
  Rational det = 1;
  const auto n = static_cast<std::size_t>(N);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    for (std::size_t i = k; i < n && pr == n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == n) fail(ErrorKind::InternalError, "Goeritz matrix is singular");
    if (pr != k) {
      std::swap(a[pr], a[k]);
      det = -det;
    }
    if (pc != k) {
      for (auto& row : a) std::swap(row[pc], row[k]);
      std::swap(colperm[pc], colperm[k]);
      det = -det;
    }
    const Rational piv = a[k][k];
    det *= piv;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / piv;
      for (std::size_t j = k; j <= n; ++j)
        if (a[k][j] != 0) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational s = a[k][n];
    for (std::size_t j = k + 1; j < n; ++j)
      if (a[k][j] != 0) s -= a[k][j] * y[j];
    y[k] = s / a[k][k];
  }
  Elimination out;
  out.solution.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.solution[colperm[j]] = y[j];
  check(boost::multiprecision::denominator(det) == 1, ErrorKind::InternalError, "integer matrix has fractional determinant");
  out.determinant = boost::multiprecision::numerator(det);
  return out;
}

}  // namespace detail

inline GoeritzData goeritz_matrix(const TorusKnot& K, std::int64_t max_size = kDefaultMaxMatrix) {
  detail::require_even_p(K);
  const std::int64_t N = detail::goeritz_size(K);
  if (N > max_size)
    fail(ErrorKind::MatrixTooLarge,
         "Goeritz matrix of " + K.name() + " has size " + std::to_string(N) + " > " + std::to_string(max_size));
  GoeritzData g{K, N, detail::goeritz_entries(K.p(), K.q()), 0};
  std::vector<Rational> zero(static_cast<std::size_t>(N), Rational(0));
  g.determinant = detail::solve_exact(N, g.entries, zero).determinant;
  return g;
}

/// Row vector v with vG = (q, 0, ..., 0): p/2, then q copies each of p/2 - 1, ..., 1.
inline std::vector<std::int64_t> goeritz_row_vector(const TorusKnot& K) {
  detail::require_even_p(K);
  const std::int64_t half = K.p() / 2;
  std::vector<std::int64_t> v{half};
  for (std::int64_t level = half - 1; level >= 1; --level)
    for (std::int64_t i = 0; i < K.q(); ++i) v.push_back(level);
  return v;
}

inline std::vector<Integer> row_times_matrix(const std::vector<std::int64_t>& v, const GoeritzData& G) {
  std::vector<Integer> out(static_cast<std::size_t>(G.size), Integer(0));
  for (std::int64_t i = 0; i < G.size; ++i) {
    if (v[static_cast<std::size_t>(i)] == 0) continue;
    for (std::int64_t j = 0; j < G.size; ++j)
      if (G.at(i, j) != 0) out[static_cast<std::size_t>(j)] += Integer(v[static_cast<std::size_t>(i)]) * G.at(i, j);
  }
  return out;
}

struct CornerEntries {
  Rational top_right;     // (1, N) entry of G^{-1}
  Rational bottom_right;  // (N, N) entry of G^{-1}
  Integer m;              // q * bottom_right, reduced into [0, q)
};

inline CornerEntries corner_inverse_entries(const GoeritzData& G) {
  const std::int64_t N = G.size;
  const std::int64_t q = G.knot.q();
  std::vector<Rational> e(static_cast<std::size_t>(N), Rational(0));
  e.back() = 1;
  // G is symmetric, so its last column of the inverse is also the last row.
  const auto sol = detail::solve_exact(N, G.entries, e);
  CornerEntries c{sol.solution.front(), sol.solution.back(), 0};
  check(c.top_right == Rational(1, q), ErrorKind::InternalError,
        "(1,N) entry of the inverse Goeritz matrix is " + to_string(c.top_right) + ", expected 1/" + std::to_string(q));
  const Rational mq = c.bottom_right * q;
  check(boost::multiprecision::denominator(mq) == 1, ErrorKind::InternalError, "(N,N) entry is not a multiple of 1/q");
  c.m = mod_floor(boost::multiprecision::numerator(mq), Integer(q));
  check(mod_floor(c.m * (G.knot.p() / 2), Integer(q)) == mod_floor(Integer(1), Integer(q)), ErrorKind::InternalError,
        "m * p/2 is not 1 mod q");
  return c;
}

/// Representative of x mod 1 in [0, 1).
inline Rational frac(const Rational& x) {
  const Integer n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  return Rational(mod_floor(n, d), d);
}

struct LinkingFormValue {
  std::int64_t group_order = 0;
  Rational value;                  // lambda(x, x) mod 1 in [0, 1)
  std::optional<Rational> matrix_value;  // the same value recomputed through G^{-1}
};

inline LinkingFormValue linking_form(const TorusKnot& K, std::int64_t max_matrix = kDefaultMaxMatrix) {
  detail::require_even_p(K);
  const std::int64_t q = K.q();
  const std::int64_t half = K.p() / 2;
  LinkingFormValue out{q, frac(Rational(-half, q)), std::nullopt};
  if (detail::goeritz_size(K) <= max_matrix) {
    const auto G = goeritz_matrix(K, max_matrix);
    check(boost::multiprecision::abs(G.determinant) == q, ErrorKind::InternalError, "|det G| != q");
    const auto c = corner_inverse_entries(G);
    // The generator dual to the last basis vector, scaled by p/2.
    out.matrix_value = frac(Rational(-c.m * half * half, q));
    check(*out.matrix_value == out.value, ErrorKind::InternalError,
          "linking form via G^{-1} disagrees with -p/2q for " + K.name());
  }
  return out;
}

}  // namespace gamma4
