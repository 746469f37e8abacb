#include <gtest/gtest.h>

#include "gamma4/linkform.hpp"
#include "oracles.hpp"

using namespace gamma4;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::InternalError;
}

std::vector<std::vector<Integer>> dense(const GoeritzData& G) {
  std::vector<std::vector<Integer>> m(static_cast<std::size_t>(G.size), std::vector<Integer>(static_cast<std::size_t>(G.size)));
  for (std::int64_t i = 0; i < G.size; ++i)
    for (std::int64_t j = 0; j < G.size; ++j) m[i][j] = G.at(i, j);
  return m;
}

// Each even p <= 10 paired with odd coprime 3 <= q <= 13.
std::vector<TorusKnot> small_even_knots() {
  std::vector<TorusKnot> out;
  for (std::int64_t p = 2; p <= 10; p += 2)
    for (std::int64_t q = 3; q <= 13; q += 2)
      if (std::gcd(p, q) == 1) out.push_back(TorusKnot::make(p, q));
  return out;
}

}  // namespace

TEST(Goeritz, Examples) {
  const auto a = goeritz_matrix(TorusKnot::make(2, 3));
  EXPECT_EQ(a.size, 1);
  EXPECT_EQ(a.at(0, 0), 3);
  EXPECT_EQ(a.determinant, 3);

  const auto b = goeritz_matrix(TorusKnot::make(4, 5));
  EXPECT_EQ(b.size, 6);
  EXPECT_EQ(boost::multiprecision::abs(b.determinant), 5);

  const auto c = goeritz_matrix(TorusKnot::make(4, 9));
  EXPECT_EQ(c.size, 10);
  EXPECT_EQ(boost::multiprecision::abs(c.determinant), 9);

  EXPECT_EQ(kind_of([] { goeritz_matrix(TorusKnot::make(3, 4)); }), ErrorKind::NeedsEvenP);
  EXPECT_EQ(kind_of([] { goeritz_matrix(TorusKnot::make(4, 9), 5); }), ErrorKind::MatrixTooLarge);
}

TEST(Goeritz, BlockLayoutForFourFive) {
  // corner 5, a border of -1, one 5-cycle block
  const auto G = goeritz_matrix(TorusKnot::make(4, 5));
  EXPECT_EQ(G.at(0, 0), 5);
  for (int i = 1; i < 6; ++i) {
    EXPECT_EQ(G.at(0, i), -1);
    EXPECT_EQ(G.at(i, 0), -1);
    EXPECT_EQ(G.at(i, i), 0);
    const int next = 1 + (i % 5);
    EXPECT_EQ(G.at(i, next), 1);
  }
}

TEST(Goeritz, DeterminantIdentityAndSymmetry) {
  for (const auto& K : small_even_knots()) {
    const auto G = goeritz_matrix(K);
    ASSERT_EQ(G.size, (K.p() * K.q() - 2 * K.q() + 2) / 2);
    for (std::int64_t i = 0; i < G.size; ++i)
      for (std::int64_t j = 0; j < G.size; ++j) ASSERT_EQ(G.at(i, j), G.at(j, i));
    ASSERT_EQ(boost::multiprecision::abs(G.determinant), K.q()) << K.name();
    ASSERT_EQ(oracle::bareiss_det(dense(G)), G.determinant) << K.name();
  }
}

TEST(Goeritz, RowVectorIdentity) {
  for (const auto& K : small_even_knots()) {
    const auto G = goeritz_matrix(K);
    const auto v = row_times_matrix(goeritz_row_vector(K), G);
    ASSERT_EQ(v[0], K.q()) << K.name();
    for (std::size_t j = 1; j < v.size(); ++j) ASSERT_EQ(v[j], 0) << K.name() << " column " << j;
  }
}

TEST(CornerEntries, Examples) {
  const auto a = corner_inverse_entries(goeritz_matrix(TorusKnot::make(4, 5)));
  EXPECT_EQ(a.top_right, Rational(1, 5));
  EXPECT_EQ(a.m, 3);
  const auto b = corner_inverse_entries(goeritz_matrix(TorusKnot::make(2, 3)));
  EXPECT_EQ(b.top_right, Rational(1, 3));
  EXPECT_EQ(b.bottom_right, Rational(1, 3));
  EXPECT_EQ(b.m, 1);
  EXPECT_EQ(corner_inverse_entries(goeritz_matrix(TorusKnot::make(4, 9))).top_right, Rational(1, 9));
}

TEST(CornerEntries, MatchFullInverse) {
  for (const auto& K : small_even_knots()) {
    const auto G = goeritz_matrix(K);
    const auto inv = oracle::inverse(dense(G));
    const auto c = corner_inverse_entries(G);
    const std::size_t N = static_cast<std::size_t>(G.size);
    ASSERT_EQ(c.top_right, inv[0][N - 1]) << K.name();
    ASSERT_EQ(c.bottom_right, inv[N - 1][N - 1]) << K.name();
    ASSERT_EQ(c.top_right, Rational(1, K.q()));
    // m p/2 = 1 mod q
    ASSERT_EQ((c.m * (K.p() / 2)) % K.q(), 1) << K.name();
    const Rational scaled = c.bottom_right * K.q();
    ASSERT_EQ(boost::multiprecision::denominator(scaled), 1);
    ASSERT_EQ(mod_floor(boost::multiprecision::numerator(scaled), Integer(K.q())), c.m);
  }
}

TEST(LinkingForm, Examples) {
  EXPECT_EQ(linking_form(TorusKnot::make(4, 5)).value, Rational(3, 5));
  EXPECT_EQ(linking_form(TorusKnot::make(2, 3)).value, Rational(2, 3));
  const auto c = linking_form(TorusKnot::make(4, 9));
  EXPECT_EQ(c.value, Rational(7, 9));
  EXPECT_EQ(c.group_order, 9);
  ASSERT_TRUE(c.matrix_value);
  EXPECT_EQ(*c.matrix_value, Rational(7, 9));
  // past the matrix cap only the closed form is reported
  const auto d = linking_form(TorusKnot::make(4, 9), 5);
  EXPECT_EQ(d.value, Rational(7, 9));
  EXPECT_FALSE(d.matrix_value);
}

TEST(LinkingForm, ClosedFormMatchesInverse) {
  for (const auto& K : small_even_knots()) {
    const auto lf = linking_form(K);
    ASSERT_TRUE(lf.matrix_value);
    ASSERT_EQ(*lf.matrix_value, lf.value);
    ASSERT_GE(lf.value, 0);
    ASSERT_LT(lf.value, 1);
    ASSERT_EQ(K.q() % boost::multiprecision::denominator(lf.value), 0);
    // value = -p/(2q) mod 1, recomputed through the oracle inverse
    const auto inv = oracle::inverse(dense(goeritz_matrix(K)));
    const std::size_t N = inv.size();
    const Rational half(K.p() / 2);
    const Rational x = -inv[N - 1][N - 1] * half * half;
    ASSERT_EQ(frac(x), lf.value) << K.name();
    ASSERT_EQ(frac(Rational(-K.p(), 2 * K.q())), lf.value);
  }
}

TEST(LinkingForm, Frac) {
  EXPECT_EQ(frac(Rational(-2, 5)), Rational(3, 5));
  EXPECT_EQ(frac(Rational(7, 3)), Rational(1, 3));
  EXPECT_EQ(frac(Rational(4)), Rational(0));
}
