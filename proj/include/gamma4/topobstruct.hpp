#pragma once

// Quadratic-residue obstruction to locally flat Moebius bands and the density experiment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gamma4/arith.hpp"
#include "gamma4/torus_knot.hpp"

namespace gamma4 {

inline constexpr std::size_t kResidueWitnesses = 3;

struct ObstructionResidues {
  std::int64_t p = 0;
  std::int64_t modulus = 0;  // 2p
  std::vector<std::int64_t> classes;
  std::map<std::int64_t, std::vector<std::int64_t>> witnesses;  // class -> witness primes
  std::vector<std::int64_t> extra_classes;  // classes with r != 1 mod 4
};

inline bool both_nonresidues(std::int64_t half, std::int64_t s) {
  return jacobi_symbol(Integer(half), Integer(s)) == -1 && jacobi_symbol(Integer(-half), Integer(s)) == -1;
}

inline ObstructionResidues obstructing_residues(std::int64_t p) {
  check(p >= 2 && p % 2 == 0, ErrorKind::InvalidArgument, "obstructing_residues needs an even p >= 2");
  const std::int64_t half = p / 2;
  if (is_perfect_square(Integer(half)))
    fail(ErrorKind::Inapplicable, "p/2 = " + std::to_string(half) + " is a perfect square");
  ObstructionResidues out;
  out.p = p;
  out.modulus = 2 * p;
  for (std::int64_t r = 1; r < out.modulus; ++r) {
    if (std::gcd(r, out.modulus) != 1) continue;
    std::vector<std::int64_t> ws;
    for (const auto& s : primes_in_class(Integer(r), Integer(out.modulus), kResidueWitnesses))
      ws.push_back(to_int64(s));
    const bool first = both_nonresidues(half, ws.front());
    for (auto s : ws)
      check(both_nonresidues(half, s) == first, ErrorKind::InternalError,
            "residue verdict depends on the witness prime for r = " + std::to_string(r));
    if (!first) continue;
    out.classes.push_back(r);
    out.witnesses[r] = ws;
    if (r % 4 != 1) out.extra_classes.push_back(r);
  }
  check(!out.classes.empty(), ErrorKind::InternalError, "no obstructing class found for p = " + std::to_string(p));
  return out;
}

inline const ObstructionResidues& obstructing_residues_cached(std::int64_t p) {
  static std::mutex mu;
  static std::map<std::int64_t, ObstructionResidues> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(p);
  if (it == memo.end()) it = memo.emplace(p, obstructing_residues(p)).first;
  return it->second;
}

enum class LfVerdict { Obstructed, NotObstructedByThisTest, Inapplicable };

inline const char* to_string(LfVerdict v) {
  switch (v) {
    case LfVerdict::Obstructed: return "obstructed";
    case LfVerdict::NotObstructedByThisTest: return "not_obstructed_by_this_test";
    case LfVerdict::Inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

struct LfResult {
  LfVerdict verdict = LfVerdict::Inapplicable;
  std::optional<std::int64_t> even_parameter;
  std::optional<Integer> witness_prime;  // odd-power prime factor in an obstructing class
};

/// Test with the even parameter in the role of p (T(p,q) = T(q,p)).
template <class Factorizer>
LfResult lf_mobius_obstructed_by(const TorusKnot& K, Factorizer&& factor) {
  LfResult res;
  if (K.is_unknot()) return res;
  std::int64_t p = K.p(), q = K.q();
  if (p % 2 != 0) std::swap(p, q);
  if (p % 2 != 0) return res;
  res.even_parameter = p;
  if (is_perfect_square(Integer(p / 2))) return res;
  const auto& R = obstructing_residues_cached(p);
  const Factorization f = factor(Integer(q));
  res.verdict = LfVerdict::NotObstructedByThisTest;
  for (const auto& pp : f.factors) {
    if (pp.exponent % 2 == 0) continue;
    const std::int64_t cls = to_int64(pp.prime % R.modulus);
    if (std::binary_search(R.classes.begin(), R.classes.end(), cls)) {
      res.verdict = LfVerdict::Obstructed;
      res.witness_prime = pp.prime;
      break;
    }
  }
  return res;
}

inline LfResult lf_mobius_obstructed(const TorusKnot& K, unsigned max_factor_digits = kDefaultMaxFactorDigits) {
  return lf_mobius_obstructed_by(K, [&](const Integer& n) { return factorize(n, max_factor_digits); });
}

struct DensityReport {
  std::int64_t p = 0;
  std::int64_t N = 0;
  std::int64_t eligible = 0;
  std::int64_t obstructed = 0;
  Rational ratio;            // non-obstructed fraction (eligible - obstructed) / eligible
  Rational mertens_estimate;   // product of s/(s+1) over obstructing-class primes s <= N
  double mertens_decimal = 0;  // the same product in floating point, for display
  std::optional<bool> monotone_vs_cache;  // ratio <= every cached ratio at smaller N

  std::string csv_row() const {
    return std::to_string(p) + "," + std::to_string(N) + "," + std::to_string(eligible) + "," +
           std::to_string(obstructed) + "," + boost::multiprecision::numerator(ratio).str() + "," +
           boost::multiprecision::denominator(ratio).str() + "," +
           boost::multiprecision::numerator(mertens_estimate).str() + "," +
           boost::multiprecision::denominator(mertens_estimate).str();
  }
  static const char* csv_header() { return "p,N,eligible,obstructed,ratio_num,ratio_den,mertens_num,mertens_den"; }
};

inline constexpr std::int64_t kMaxDensityN = 100'000'000;

namespace detail {

inline std::vector<std::uint32_t> smallest_prime_factors(std::int64_t N) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t i = 2; i <= N; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    spf[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
    if (i > N / i) continue;
    for (std::int64_t j = i * i; j <= N; j += i)
      if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

class DensityCache {
 public:
  static DensityCache& instance() {
    static DensityCache c;
    return c;
  }
  std::optional<bool> check_and_store(std::int64_t p, std::int64_t N, const Rational& ratio) {
    std::lock_guard lock(mu_);
    std::optional<bool> mono;
    for (const auto& [key, r] : runs_) {
      if (key.first != p || key.second >= N) continue;
      mono = mono.value_or(true) && ratio <= r;
    }
    runs_[{p, N}] = ratio;
    return mono;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> runs_;
};

inline Integer product_tree(std::vector<Integer> v) {
  if (v.empty()) return 1;
  while (v.size() > 1) {
    std::vector<Integer> next;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(v[i] * v[i + 1]);
    if (v.size() % 2) next.push_back(v.back());
    v.swap(next);
  }
  return v.front();
}

}  // namespace detail

inline DensityReport density_experiment(std::int64_t p, std::int64_t N, unsigned jobs = 1) {
  check(N >= 1, ErrorKind::InvalidArgument, "density needs N >= 1");
  check(N <= kMaxDensityN, ErrorKind::ComputationTooLarge, "density sweep limited to N <= 1e8");
  const auto& R = obstructing_residues_cached(p);
  const std::int64_t mod = R.modulus;
  std::vector<char> in_class(static_cast<std::size_t>(mod), 0);
  for (auto r : R.classes) in_class[static_cast<std::size_t>(r)] = 1;
  const auto spf = detail::smallest_prime_factors(N);

  jobs = std::max(1U, jobs);
  std::vector<std::int64_t> elig(jobs, 0), obs(jobs, 0);
  auto work = [&](unsigned w) {
    const std::int64_t chunk = (N + jobs - 1) / jobs;
    const std::int64_t from = 1 + static_cast<std::int64_t>(w) * chunk;
    const std::int64_t to = std::min<std::int64_t>(N, from + chunk - 1);
    for (std::int64_t q = from; q <= to; ++q) {
      if (std::gcd(q, p) != 1) continue;
      ++elig[w];
      std::int64_t n = q;
      while (n > 1) {
        const std::int64_t s = spf[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % s == 0) {
          n /= s;
          ++e;
        }
        if ((e & 1) && in_class[static_cast<std::size_t>(s % mod)]) {
          ++obs[w];
          break;
        }
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  DensityReport rep;
  rep.p = p;
  rep.N = N;
  for (unsigned w = 0; w < jobs; ++w) {
    rep.eligible += elig[w];
    rep.obstructed += obs[w];
  }
  rep.ratio = Rational(rep.eligible - rep.obstructed, rep.eligible);
  // product tree keeps the big multiplications balanced
  std::vector<Integer> nums, dens;
  double log_product = 0;
  for (std::int64_t s = 2; s <= N; ++s)
    if (spf[static_cast<std::size_t>(s)] == s && in_class[static_cast<std::size_t>(s % mod)]) {
      nums.emplace_back(s);
      dens.emplace_back(s + 1);
      log_product += std::log1p(-1.0 / static_cast<double>(s + 1));
    }
  rep.mertens_estimate = Rational(detail::product_tree(nums), detail::product_tree(dens));
  rep.mertens_decimal = std::exp(log_product);
  rep.monotone_vs_cache = detail::DensityCache::instance().check_and_store(p, N, rep.ratio);
  return rep;
}

}  // namespace gamma4
