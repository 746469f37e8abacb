#pragma once

// Certified intervals for the smooth and topological nonorientable 4-ball genus.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gamma4/classical.hpp"
#include "gamma4/floer.hpp"
#include "gamma4/literature.hpp"
#include "gamma4/topobstruct.hpp"
#include "gamma4/torus_knot.hpp"

namespace gamma4 {

enum class Bound { Lower, Upper };
enum class Category { Smooth, Topological };

inline const char* to_string(Bound b) { return b == Bound::Lower ? "lower" : "upper"; }
inline const char* to_string(Category c) { return c == Category::Smooth ? "smooth" : "topological"; }

struct BoundCertificate {
  std::string name;  // definition, pinch-upper, stretch-mobius, stretch-general, oss, yasuhara,
                     // involutive-bar, involutive-underbar, involutive-gap, involutive-mobius,
                     // d-invariant, literature, pinch-reduction, lf-residue
  std::int64_t value = 0;
  Bound direction = Bound::Lower;
  Category category = Category::Smooth;
  std::string citation;
  friend bool operator==(const BoundCertificate&, const BoundCertificate&) = default;
};

struct Interval {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
  bool exact() const { return lo == hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct BoundOptions {
  bool use_floer = true;
  bool use_linkform = true;
  unsigned max_factor_digits = kDefaultMaxFactorDigits;
};

struct BoundReport {
  TorusKnot knot = TorusKnot::unknot();
  Interval smooth{1, 0};
  Interval topological{1, 0};
  std::vector<BoundCertificate> certificates;
  std::vector<std::string> withheld;  // certificates not produced, with the reason

  // Intersects the intervals with the certificate; never widens them.
  void add(const BoundCertificate& c) {
    certificates.push_back(c);
    if (c.category == Category::Smooth) {
      if (c.direction == Bound::Lower) {
        smooth.lo = std::max(smooth.lo, c.value);
      } else {
        smooth.hi = smooth_hi_set_ ? std::min(smooth.hi, c.value) : c.value;
        smooth_hi_set_ = true;
        // gamma4_top <= gamma4
        topological.hi = topo_hi_set_ ? std::min(topological.hi, smooth.hi) : smooth.hi;
        topo_hi_set_ = true;
      }
    } else {
      if (c.direction == Bound::Lower) {
        topological.lo = std::max(topological.lo, c.value);
      } else {
        topological.hi = topo_hi_set_ ? std::min(topological.hi, c.value) : c.value;
        topo_hi_set_ = true;
      }
    }
  }

  void verify() const {
    check(smooth_hi_set_ && smooth.lo <= smooth.hi, ErrorKind::InternalError,
          "smooth bounds for " + knot.name() + " are inconsistent: [" + std::to_string(smooth.lo) + ", " +
              std::to_string(smooth.hi) + "]");
    check(topological.lo <= topological.hi && topological.hi <= smooth.hi, ErrorKind::InternalError,
          "topological bounds for " + knot.name() + " are inconsistent");
  }

 private:
  bool smooth_hi_set_ = false;
  bool topo_hi_set_ = false;
};

// ---------------------------------------------------------------------------
// Individual certificates

inline std::optional<BoundCertificate> stretch_lower_bound(const TorusKnot& K) {
  const auto k = stretch(K);
  if (!k || *k < 2) return std::nullopt;
  return BoundCertificate{"stretch-general", std::max<std::int64_t>(2, *k - 1), Bound::Lower, Category::Smooth,
                          "stretch k = " + std::to_string(*k) + ": no Moebius band when k >= 2, gamma4 >= k-1"};
}

inline std::vector<BoundCertificate> stretch_certificates(const TorusKnot& K) {
  std::vector<BoundCertificate> out;
  const auto k = stretch(K);
  if (!k || *k < 2) return out;
  out.push_back({"stretch-mobius", 2, Bound::Lower, Category::Smooth,
                 "stretch k = " + std::to_string(*k) + " >= 2 excludes a smooth Moebius band"});
  out.push_back({"stretch-general", *k - 1, Bound::Lower, Category::Smooth,
                 "stretch k = " + std::to_string(*k) + " gives gamma4 >= k-1"});
  return out;
}

inline BoundCertificate oss_lower_bound(const TorusKnot& K) {
  const std::int64_t u = upsilon(K);
  const std::int64_t s = signature(K);
  return {"oss", std::abs(u - s / 2), Bound::Lower, Category::Smooth,
          "|upsilon - sigma/2| with upsilon = " + std::to_string(u) + ", sigma = " + std::to_string(s)};
}

inline std::vector<BoundCertificate> involutive_lower_bounds(const HfkiSummary& h) {
  std::vector<BoundCertificate> out;
  auto tag = [&](const std::string& what) {
    return what + " with (upsilon_bar, upsilon, upsilon_underbar) = (" + std::to_string(h.upsilon_bar) + ", " +
           std::to_string(h.upsilon) + ", " + std::to_string(h.upsilon_underbar) + ")";
  };
  out.push_back({"involutive-bar", h.upsilon_bar - h.upsilon - 1, Bound::Lower, Category::Smooth,
                 tag("upsilon_bar - upsilon - 1")});
  out.push_back({"involutive-underbar", h.upsilon - h.upsilon_underbar - 1, Bound::Lower, Category::Smooth,
                 tag("upsilon - upsilon_underbar - 1")});
  out.push_back({"involutive-gap", h.upsilon_bar - h.upsilon_underbar - 2, Bound::Lower, Category::Smooth,
                 tag("upsilon_bar - upsilon_underbar - 2")});
  if (h.upsilon_bar - h.upsilon_underbar >= 2)
    out.push_back({"involutive-mobius", 2, Bound::Lower, Category::Smooth,
                   tag("upsilon_bar - upsilon_underbar >= 2 excludes a smooth Moebius band")});
  return out;
}

inline std::vector<BoundCertificate> involutive_lower_bounds(const TorusKnot& K) {
  return involutive_lower_bounds(torus_knot_upsilons(K));
}

inline std::optional<BoundCertificate> yasuhara_certificate(const TorusKnot& K) {
  const auto rec = yasuhara_obstruction(K);
  if (!rec.mobius_parity_obstructed) return std::nullopt;
  return BoundCertificate{"yasuhara", 2, Bound::Lower, Category::Smooth,
                          "sigma + 4 Arf = " + std::to_string(rec.yasuhara_class) + " mod 8 is not 0 or +-2"};
}

inline BoundCertificate pinch_upper_bound(const TorusKnot& K) {
  const std::int64_t theta = pinch_number(K);
  return {"pinch-upper", std::max<std::int64_t>(theta, 1), Bound::Upper, Category::Smooth,
          "pinch number " + std::to_string(theta)};
}

/// sigma(T(-4,q))/2 - d(S^3_{-1}(T(-4,q))) from the closed forms, for T(4,q) only.
inline std::optional<BoundCertificate> d_invariant_bound(const TorusKnot& K) {
  if (K.is_unknot() || K.lo() != 4) return std::nullopt;
  static constexpr std::int64_t by_class[8] = {0, 0, 0, 1, 0, -2, 0, -1};
  const std::int64_t v = by_class[K.hi() % 8];
  return BoundCertificate{"d-invariant", v, Bound::Lower, Category::Smooth,
                          "Batson d-invariant bound for T(4,q), q = " + std::to_string(K.hi() % 8) + " mod 8"};
}

inline std::vector<BoundCertificate> literature_certificates(const TorusKnot& K,
                                                             const LiteratureTable& table = LiteratureTable::builtin()) {
  std::vector<BoundCertificate> out;
  for (const auto& f : table.lookup(K)) {
    if (f.direction != Direction::Upper)
      out.push_back({"literature", f.value, Bound::Lower, Category::Smooth, f.citation});
    if (f.direction != Direction::Lower)
      out.push_back({"literature", f.value, Bound::Upper, Category::Smooth, f.citation});
  }
  return out;
}

/// If j pinch moves reach a knot with a tabulated upper bound u, then gamma4 <= u + j.
inline std::optional<BoundCertificate> pinch_reduction(const TorusKnot& K,
                                                       const LiteratureTable& table = LiteratureTable::builtin()) {
  std::optional<BoundCertificate> best;
  std::int64_t j = 0;
  TorusKnot cur = K;
  while (!cur.is_unknot()) {
    cur = pinch_once(cur).to;
    ++j;
    for (const auto& f : table.lookup(cur)) {
      if (f.direction == Direction::Lower) continue;
      const std::int64_t v = f.value + j;
      if (!best || v < best->value)
        best = BoundCertificate{"pinch-reduction", v, Bound::Upper, Category::Smooth,
                                f.citation + " value " + std::to_string(f.value) + " for " + cur.canonical().name() +
                                    " after " + std::to_string(j) + " pinch moves"};
    }
  }
  return best;
}

inline std::optional<BoundCertificate> lf_residue_certificate(const TorusKnot& K, unsigned max_factor_digits) {
  const auto r = lf_mobius_obstructed(K, max_factor_digits);
  if (r.verdict != LfVerdict::Obstructed) return std::nullopt;
  return BoundCertificate{"lf-residue", 2, Bound::Lower, Category::Topological,
                          "odd-power prime factor " + r.witness_prime->str() + " in an obstructing class mod " +
                              std::to_string(2 * *r.even_parameter)};
}

// ---------------------------------------------------------------------------
// Aggregation

inline BoundReport assemble_bounds(const TorusKnot& K, const BoundOptions& opt = {}) {
  BoundReport rep;
  rep.knot = K;
  rep.add({"definition", 1, Bound::Lower, Category::Smooth, "gamma4 >= 1 for every knot"});
  rep.add({"definition", 1, Bound::Lower, Category::Topological, "gamma4_top >= 1 for every knot"});
  rep.add(pinch_upper_bound(K));
  for (const auto& c : literature_certificates(K)) rep.add(c);
  if (auto c = pinch_reduction(K)) rep.add(*c);
  if (K.is_unknot()) {
    rep.verify();
    return rep;
  }
  if (auto c = yasuhara_certificate(K)) rep.add(*c);
  try {
    for (const auto& c : stretch_certificates(K)) rep.add(c);
  } catch (const Error& e) {
    if (!is_ceiling(e.kind())) throw;
    rep.withheld.push_back(std::string("stretch: ") + e.what());
  }
  if (auto c = d_invariant_bound(K)) rep.add(*c);

  if (!opt.use_floer) {
    rep.withheld.push_back("oss: Floer computations disabled");
    rep.withheld.push_back("involutive: Floer computations disabled");
  } else if (!floer_calibration().ok) {
    rep.withheld.push_back("oss: Floer grading calibration failed");
    rep.withheld.push_back("involutive: Floer grading calibration failed");
  } else {
    try {
      const auto h = torus_knot_upsilons(K);
      rep.add(oss_lower_bound(K));
      for (const auto& c : involutive_lower_bounds(h)) rep.add(c);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ComputationTooLarge) throw;
      rep.withheld.push_back(std::string("oss and involutive: ") + e.what());
    }
  }
  if (!opt.use_linkform) {
    rep.withheld.push_back("lf-residue: linking form test disabled");
  } else {
    try {
      if (auto c = lf_residue_certificate(K, opt.max_factor_digits)) rep.add(*c);
    } catch (const Error& e) {
      if (!is_ceiling(e.kind())) throw;
      rep.withheld.push_back(std::string("lf-residue: ") + e.what());
    }
  }
  rep.verify();
  return rep;
}

inline BoundReport smooth_bounds(const TorusKnot& K, const BoundOptions& opt = {}) { return assemble_bounds(K, opt); }
inline BoundReport topological_bounds(const TorusKnot& K, const BoundOptions& opt = {}) {
  return assemble_bounds(K, opt);
}

/// Recomputes a certificate from its source module; empty if the certificate does not apply to K.
inline std::optional<std::int64_t> reproduce(const TorusKnot& K, const BoundCertificate& c,
                                             const BoundOptions& opt = {}) {
  auto find_in = [&](const std::vector<BoundCertificate>& cs) -> std::optional<std::int64_t> {
    for (const auto& x : cs)
      if (x.name == c.name && x.direction == c.direction && x.citation == c.citation) return x.value;
    return std::nullopt;
  };
  if (c.name == "definition") return 1;
  if (c.name == "pinch-upper") return pinch_upper_bound(K).value;
  if (c.name == "literature") return find_in(literature_certificates(K));
  if (c.name == "pinch-reduction") {
    auto r = pinch_reduction(K);
    return r ? std::optional(r->value) : std::nullopt;
  }
  if (c.name == "yasuhara") {
    auto r = yasuhara_certificate(K);
    return r ? std::optional(r->value) : std::nullopt;
  }
  if (c.name == "stretch-mobius" || c.name == "stretch-general") return find_in(stretch_certificates(K));
  if (c.name == "d-invariant") {
    auto r = d_invariant_bound(K);
    return r ? std::optional(r->value) : std::nullopt;
  }
  if (c.name == "oss") return oss_lower_bound(K).value;
  if (c.name.rfind("involutive-", 0) == 0) return find_in(involutive_lower_bounds(K));
  if (c.name == "lf-residue") {
    auto r = lf_residue_certificate(K, opt.max_factor_digits);
    return r ? std::optional(r->value) : std::nullopt;
  }
  return std::nullopt;
}

}  // namespace gamma4
