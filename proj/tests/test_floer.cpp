#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "gamma4/floer.hpp"
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

std::vector<TorusKnot> small_torus_knots(std::int64_t bound) {
  std::vector<TorusKnot> out;
  for (std::int64_t p = 2; p <= bound; ++p)
    for (std::int64_t q = p + 1; q <= bound; ++q)
      if (std::gcd(p, q) == 1) out.push_back(TorusKnot::make(p, q));
  return out;
}

std::vector<std::int64_t> random_gaps(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 6), step(1, 4);
  std::vector<std::int64_t> g;
  std::int64_t cur = 0;
  for (int i = len(rng); i > 0; --i) g.push_back(cur += step(rng));
  return g;
}

}  // namespace

TEST(Complex, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { CfkComplex::make({}, {}); }), ErrorKind::NotAComplex);
  EXPECT_EQ(kind_of([] { CfkComplex::make({{"a", 0}, {"a", 0}}, {}); }), ErrorKind::NotAComplex);
  // grading rule: exponent must be delta(to) - delta(from) + 1
  EXPECT_EQ(kind_of([] { CfkComplex::make({{"a", 0}, {"b", 0}}, {{0, 0, 1}}); }), ErrorKind::NotAComplex);
  // d^2 != 0: a -> b -> c
  EXPECT_EQ(kind_of([] { CfkComplex::make({{"a", 0}, {"b", 0}, {"c", 0}}, {{0, 1, 1}, {1, 1, 2}}); }),
            ErrorKind::NotAComplex);
  const auto C = CfkComplex::make({{"a", 0}, {"b", 0}}, {{0, 1, 1}});
  // swapping a and b does not commute with d
  EXPECT_EQ(kind_of([&] { Involution::make(C, {{0, 0, 1}, {1, 0, 0}}); }), ErrorKind::NotAComplex);
}

TEST(Staircase, Shapes) {
  const auto u = staircase(TorusKnot::unknot());
  EXPECT_EQ(u.complex.size(), 1U);
  EXPECT_EQ(u.complex.delta(0), 0);
  EXPECT_TRUE(u.complex.arrows().empty());

  const auto t23 = staircase(TorusKnot::make(2, 3));
  EXPECT_EQ(t23.complex.size(), 3U);
  EXPECT_EQ(t23.gaps, (std::vector<std::int64_t>{1}));

  const auto t45 = staircase(TorusKnot::make(4, 5));
  EXPECT_EQ(t45.complex.size(), 7U);
  EXPECT_EQ(t45.gaps, (std::vector<std::int64_t>{2, 5, 6}));

  LaurentPoly bad;
  bad.add_term(-1, 1);
  bad.add_term(0, 1);
  bad.add_term(1, 1);
  EXPECT_EQ(kind_of([&] { staircase_from_alexander(bad); }), ErrorKind::NotStaircase);
  EXPECT_EQ(kind_of([] { staircase(std::vector<std::int64_t>{2, 2}); }), ErrorKind::NotStaircase);
}

TEST(Staircase, InvolutionSwapsArms) {
  const auto st = staircase(TorusKnot::make(3, 7));
  const auto& C = st.complex;
  for (const auto& a : st.iota.arrows()) {
    const auto& from = C.generator(a.from).name;
    const auto& to = C.generator(a.to).name;
    if (from == "x0") {
      EXPECT_EQ(to, "x0");
    } else {
      EXPECT_EQ(from.substr(2), to.substr(2));
      EXPECT_NE(from.substr(0, 2), to.substr(0, 2));
    }
  }
}

TEST(Homology, Examples) {
  const auto hu = homology(staircase(TorusKnot::unknot()).complex);
  ASSERT_EQ(hu.towers.size(), 1U);
  EXPECT_EQ(hu.towers[0].grading, 0);

  const auto st = staircase(TorusKnot::make(2, 3));
  const auto h = homology(st.complex);
  ASSERT_EQ(h.towers.size(), 1U);
  EXPECT_EQ(h.towers[0].grading, upsilon(TorusKnot::make(2, 3)));
  EXPECT_EQ(h.towers[0].grading, -1);
}

TEST(Upsilon, Examples) {
  EXPECT_EQ(upsilon(TorusKnot::unknot()), 0);
  EXPECT_EQ(upsilon(TorusKnot::make(4, 9)), -8);
  EXPECT_EQ(upsilon(TorusKnot::make(4, 7)), -6);
}

TEST(Upsilon, FourQCalibration) {
  for (std::int64_t q = 5; q <= 99; q += 2) EXPECT_EQ(upsilon(TorusKnot::make(4, q)), -(q - 1)) << q;
}

TEST(Upsilon, MatchesSemigroupFormula) {
  for (const auto& K : small_torus_knots(15))
    EXPECT_EQ(upsilon(staircase(K).complex), oracle::upsilon_from_semigroup(K.lo(), K.hi())) << K.name();
}

TEST(Involutive, UnknotAndFigureEight) {
  const auto u = involutive_upsilons(staircase(TorusKnot::unknot()));
  EXPECT_EQ(u.upsilon, 0);
  EXPECT_EQ(u.upsilon_bar, 0);
  EXPECT_EQ(u.upsilon_underbar, 0);

  const auto f8 = parse_complex(kFigureEightFixture);
  const auto s = involutive_upsilons(f8.complex, f8.iota);
  EXPECT_EQ(s.upsilon, 0);
  EXPECT_EQ(s.upsilon_bar, 1);
  EXPECT_EQ(s.upsilon_underbar, -1);
  EXPECT_EQ(s.towers.size(), 2U);
}

TEST(Involutive, FixtureFileMatchesEmbeddedCopy) {
  std::ifstream in(std::string(GAMMA4_SOURCE_DIR) + "/fixtures/figure8.cfk");
  ASSERT_TRUE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), std::string(kFigureEightFixture));
}

TEST(Involutive, TorusKnotStructure) {
  for (const auto& K : small_torus_knots(12)) {
    const auto st = staircase(K);
    ASSERT_EQ(homology(st.complex).towers.size(), 1U) << K.name();
    const auto s = involutive_upsilons(st);
    ASSERT_EQ(s.towers.size(), 2U) << K.name();
    ASSERT_GE(s.upsilon_bar, s.upsilon);
    ASSERT_GE(s.upsilon, s.upsilon_underbar);
    if (stretch(K)) {
      const auto l = involutive_upsilons_lspace(K);
      EXPECT_EQ(l.upsilon_bar, l.upsilon) << K.name();
      EXPECT_GE(l.upsilon_bar - l.upsilon_underbar, st.gaps.front()) << K.name();
    } else {
      EXPECT_EQ(kind_of([&] { involutive_upsilons_lspace(K); }), ErrorKind::ConstantTermPlusOne);
    }
  }
}

TEST(Involutive, LspaceExamples) {
  const auto a = involutive_upsilons_lspace(TorusKnot::make(2, 3));
  EXPECT_EQ(a.upsilon_bar, a.upsilon);
  EXPECT_GE(a.upsilon_bar - a.upsilon_underbar, 1);
  const auto b = involutive_upsilons_lspace(TorusKnot::make(4, 7));
  EXPECT_EQ(b.upsilon_bar, -6);
  EXPECT_LE(b.upsilon_underbar, -8);
  EXPECT_EQ(kind_of([] { involutive_upsilons_lspace(TorusKnot::make(4, 9)); }), ErrorKind::ConstantTermPlusOne);
}

TEST(Involutive, IdentityInvolutionOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto st = staircase(random_gaps(rng));
    const auto s = involutive_upsilons(st.complex, Involution::identity(st.complex));
    EXPECT_EQ(s.upsilon_bar, s.upsilon);
    EXPECT_EQ(s.upsilon_underbar, s.upsilon);
    EXPECT_EQ(s.upsilon, upsilon(st.complex));
  }
}

TEST(Involutive, SquaredInvolutionIsIdentityOnStaircases) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto st = staircase(random_gaps(rng));
    const auto sq = Involution::compose(st.complex, st.iota, st.iota);
    EXPECT_EQ(sq.columns(), Involution::identity(st.complex).columns());
    const auto a = involutive_upsilons(st.complex, Involution::compose(st.complex, sq, st.iota));
    const auto b = involutive_upsilons(st);
    EXPECT_EQ(a.upsilon, b.upsilon);
    EXPECT_EQ(a.upsilon_bar, b.upsilon_bar);
    EXPECT_EQ(a.upsilon_underbar, b.upsilon_underbar);
  }
}

TEST(ThinKnots, Formula) {
  EXPECT_EQ(thin_knot_upsilons(0, 0), (ThinUpsilons{0, 0, 0}));
  EXPECT_EQ(thin_knot_upsilons(-8, 1), (ThinUpsilons{1, 0, -1}));
  EXPECT_EQ(kind_of([] { thin_knot_upsilons(-2, 0); }), ErrorKind::NotCovered);
  EXPECT_EQ(kind_of([] { thin_knot_upsilons(-3, 0); }), ErrorKind::InvalidArgument);
  // figure-eight: sigma 0, Arf 1
  const auto f8 = parse_complex(kFigureEightFixture);
  const auto s = involutive_upsilons(f8.complex, f8.iota);
  EXPECT_EQ(thin_knot_upsilons(0, 1), (ThinUpsilons{s.upsilon_bar, s.upsilon, s.upsilon_underbar}));
}

TEST(Parser, RoundTripAndErrors) {
  const auto f8 = parse_complex(kFigureEightFixture);
  const auto again = parse_complex(format_complex(f8.complex, f8.iota));
  EXPECT_EQ(again.complex.arrows(), f8.complex.arrows());
  EXPECT_EQ(again.iota.arrows(), f8.iota.arrows());
  EXPECT_EQ(kind_of([] { parse_complex("gen a 0\nfoo\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_complex("gen a x\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_complex("gen a 0\niota a 0 b\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_complex("gen a 0\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse_complex("# nothing\n"); }), ErrorKind::ParseError);
}

TEST(Calibration, Passes) {
  const auto& rep = floer_calibration();
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.checks.size(), 4U);
  EXPECT_TRUE(rep.failures.empty());
}

TEST(Memo, ConcurrentReadersAgree) {
  const auto K = TorusKnot::make(5, 7);
  const auto want = involutive_upsilons(staircase(K));
  std::vector<std::thread> pool;
  std::vector<HfkiSummary> got(8);
  for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { got[static_cast<std::size_t>(i)] = torus_knot_upsilons(K); });
  for (auto& t : pool) t.join();
  for (const auto& g : got) EXPECT_EQ(g, want);
  EXPECT_TRUE(FloerMemo::instance().contains(K.swapped()));
}

TEST(Engine, GeneratorCeiling) {
  std::vector<std::int64_t> gaps;
  for (std::int64_t i = 1; i <= 1501; ++i) gaps.push_back(i);
  EXPECT_EQ(kind_of([&] { staircase(gaps); }), ErrorKind::ComputationTooLarge);
}
