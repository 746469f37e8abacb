#include <gtest/gtest.h>

#include "gamma4/topobstruct.hpp"
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

bool square(std::int64_t n) {
  std::int64_t r = 0;
  while (r * r < n) ++r;
  return r * r == n;
}

// Classes mod 2p where both +-p/2 are nonresidues, decided by Euler's criterion at the first prime.
std::vector<std::int64_t> classes_by_euler(std::int64_t p) {
  std::vector<std::int64_t> out;
  const std::int64_t m = 2 * p, half = p / 2;
  for (std::int64_t r = 1; r < m; ++r) {
    if (std::gcd(r, m) != 1) continue;
    std::int64_t s = r;
    while (!oracle::is_prime_trial(s)) s += m;
    if (oracle::legendre(half, s) == -1 && oracle::legendre(s - half % s, s) == -1) out.push_back(r);
  }
  return out;
}

bool obstructed_by_oracle(std::int64_t q, const std::vector<std::int64_t>& classes, std::int64_t m) {
  for (auto [s, e] : oracle::factor_trial(q))
    if (e % 2 == 1 && std::find(classes.begin(), classes.end(), s % m) != classes.end()) return true;
  return false;
}

}  // namespace

TEST(Residues, Examples) {
  EXPECT_EQ(obstructing_residues(4).classes, (std::vector<std::int64_t>{5}));
  EXPECT_EQ(obstructing_residues(4).modulus, 8);
  const auto six = obstructing_residues(6);
  EXPECT_EQ(six.classes, (std::vector<std::int64_t>{5}));
  EXPECT_EQ(six.witnesses.at(5), (std::vector<std::int64_t>{5, 17, 29}));
  EXPECT_EQ(kind_of([] { obstructing_residues(8); }), ErrorKind::Inapplicable);
  EXPECT_EQ(kind_of([] { obstructing_residues(5); }), ErrorKind::InvalidArgument);
}

TEST(Residues, MatchEulerCriterionAndWitnessIndependence) {
  for (std::int64_t p = 2; p <= 50; p += 2) {
    if (square(p / 2)) {
      EXPECT_EQ(kind_of([&] { obstructing_residues(p); }), ErrorKind::Inapplicable) << p;
      continue;
    }
    const auto R = obstructing_residues(p);
    EXPECT_FALSE(R.classes.empty());
    EXPECT_EQ(R.classes, classes_by_euler(p)) << p;
    for (const auto& [r, ws] : R.witnesses) {
      ASSERT_EQ(ws.size(), kResidueWitnesses);
      for (auto s : ws) {
        ASSERT_TRUE(oracle::is_prime_trial(s));
        ASSERT_EQ(s % (2 * p), r);
        ASSERT_EQ(oracle::legendre(p / 2, s), -1);
        ASSERT_EQ(oracle::legendre(s - (p / 2) % s, s), -1);
      }
    }
    std::vector<std::int64_t> extra;
    for (auto r : R.classes)
      if (r % 4 != 1) extra.push_back(r);
    EXPECT_EQ(R.extra_classes, extra) << p;
  }
}

TEST(LfObstruction, Examples) {
  const auto a = lf_mobius_obstructed(TorusKnot::make(4, 35));
  EXPECT_EQ(a.verdict, LfVerdict::Obstructed);
  EXPECT_EQ(a.witness_prime, Integer(5));
  EXPECT_EQ(lf_mobius_obstructed(TorusKnot::make(4, 25)).verdict, LfVerdict::NotObstructedByThisTest);
  EXPECT_EQ(lf_mobius_obstructed(TorusKnot::make(4, 13)).verdict, LfVerdict::Obstructed);
  EXPECT_EQ(lf_mobius_obstructed(TorusKnot::make(35, 4)).verdict, LfVerdict::Obstructed);
  EXPECT_EQ(lf_mobius_obstructed(TorusKnot::make(3, 5)).verdict, LfVerdict::Inapplicable);
  EXPECT_EQ(lf_mobius_obstructed(TorusKnot::make(8, 13)).verdict, LfVerdict::Inapplicable);
  EXPECT_EQ(lf_mobius_obstructed(TorusKnot::unknot()).verdict, LfVerdict::Inapplicable);
  EXPECT_EQ(kind_of([] { lf_mobius_obstructed(TorusKnot::make(4, 1000003), 3); }), ErrorKind::FactorizationTooHard);
}

TEST(LfObstruction, FourQOpenRange) {
  std::vector<std::int64_t> hits;
  for (std::int64_t q = 1; q <= 105; q += 2) {
    if (q % 8 != 1 && q % 8 != 3) continue;
    if (lf_mobius_obstructed(TorusKnot::make(4, q)).verdict == LfVerdict::Obstructed) hits.push_back(q);
  }
  EXPECT_EQ(hits, (std::vector<std::int64_t>{35, 65, 91, 105}));
}

TEST(LfObstruction, MatchesFactorOracle) {
  for (std::int64_t p : {4, 6, 10, 12}) {
    const auto classes = classes_by_euler(p);
    for (std::int64_t q = 3; q <= 3000; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const bool want = obstructed_by_oracle(q, classes, 2 * p);
      ASSERT_EQ(lf_mobius_obstructed(TorusKnot::make(p, q)).verdict == LfVerdict::Obstructed, want) << p << "," << q;
    }
  }
}

TEST(LfObstruction, SquaresNeverObstruct) {
  for (std::int64_t p : {4, 6, 10, 12, 14})
    for (std::int64_t m = 3; m < 200; m += 2) {
      if (std::gcd(p, m) != 1) continue;
      EXPECT_EQ(lf_mobius_obstructed(TorusKnot::make(p, m * m)).verdict, LfVerdict::NotObstructedByThisTest)
          << p << "," << m * m;
    }
}

TEST(Density, SmallExample) {
  const auto d = density_experiment(4, 100);
  EXPECT_EQ(d.eligible, 50);
  EXPECT_EQ(d.obstructed, 16);
  EXPECT_EQ(d.ratio, Rational(34, 50));
  // 5, 13, 29, 37, 53, 61 are the primes = 5 mod 8 below 100 ...
  Rational want = 1;
  for (std::int64_t s : {5, 13, 29, 37, 53, 61}) want *= Rational(s, s + 1);
  EXPECT_EQ(d.mertens_estimate, want);
  EXPECT_NEAR(d.mertens_decimal, static_cast<double>(want), 1e-12);
  EXPECT_EQ(d.csv_row(), "4,100,50,16,17,25," + boost::multiprecision::numerator(want).str() + "," +
                             boost::multiprecision::denominator(want).str());
  EXPECT_STREQ(DensityReport::csv_header(), "p,N,eligible,obstructed,ratio_num,ratio_den,mertens_num,mertens_den");
}

TEST(Density, MatchesBruteForceScan) {
  for (std::int64_t p : {4, 6, 10, 12}) {
    const auto classes = classes_by_euler(p);
    const std::int64_t N = 2000;
    std::int64_t eligible = 0, obstructed = 0;
    Rational mertens = 1;
    for (std::int64_t q = 1; q <= N; ++q) {
      if (oracle::is_prime_trial(q) &&
          std::find(classes.begin(), classes.end(), q % (2 * p)) != classes.end())
        mertens *= Rational(q, q + 1);
      if (std::gcd(p, q) != 1) continue;
      ++eligible;
      if (q > 1 && obstructed_by_oracle(q, classes, 2 * p)) ++obstructed;
    }
    for (unsigned jobs : {1U, 3U}) {
      const auto d = density_experiment(p, N, jobs);
      EXPECT_EQ(d.eligible, eligible) << p;
      EXPECT_EQ(d.obstructed, obstructed) << p;
      EXPECT_EQ(d.ratio, Rational(eligible - obstructed, eligible));
      EXPECT_EQ(d.mertens_estimate, mertens);
      EXPECT_GE(d.ratio, 0);
      EXPECT_LE(d.ratio, 1);
    }
  }
}

TEST(Density, NonincreasingAcrossScales) {
  for (std::int64_t p : {4, 6, 10, 12}) {
    Rational prev = 2;
    for (std::int64_t N : {1000, 10000, 100000}) {
      const auto d = density_experiment(p, N, 2);
      EXPECT_LE(d.ratio, prev) << p << " N=" << N;
      if (d.monotone_vs_cache) EXPECT_TRUE(*d.monotone_vs_cache);
      prev = d.ratio;
    }
  }
}

TEST(Density, Errors) {
  EXPECT_EQ(kind_of([] { density_experiment(8, 100); }), ErrorKind::Inapplicable);
  EXPECT_EQ(kind_of([] { density_experiment(4, 0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { density_experiment(4, kMaxDensityN + 1); }), ErrorKind::ComputationTooLarge);
}
