#pragma once

// Literature table of externally proven gamma4 values, embedded from data/literature.facts.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gamma4/error.hpp"
#include "gamma4/torus_knot.hpp"

namespace gamma4 {

inline constexpr const char* kLiteratureFacts = R"FACTS(# Externally proven values of the smooth nonorientable 4-ball genus of torus knots.
# version 1
#
# fact <p> <q> <lower|upper|exact> <value> <citation-key>
#   a single knot; T(p,q) and T(q,p) are the same entry.
# family <name> <n-parity> <lower|upper|exact>
#   longo   T(4n, (2n+1)^2) and T(4n, (2n-1)^2), n >= 2: gamma4 <= 2n-1
#   tairi   T(4n+2m+2, 10n+6m+5), n >= 0, m >= 2:       gamma4 = m
#   batson  T(2n, 2n-1), n >= 2:                          gamma4 = n-1
#   n-parity is one of any, even, odd and restricts the family index n.

fact 4 9 exact 1 lobb
fact 4 11 exact 1 tairi

family longo any upper
family tairi any exact
family batson any exact
)FACTS";

enum class Direction { Lower, Upper, Exact };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::Lower: return "lower";
    case Direction::Upper: return "upper";
    case Direction::Exact: return "exact";
  }
  return "exact";
}

inline Direction parse_direction(const std::string& s) {
  if (s == "lower") return Direction::Lower;
  if (s == "upper") return Direction::Upper;
  if (s == "exact") return Direction::Exact;
  fail(ErrorKind::ParseError, "unknown direction '" + s + "'");
}

struct LiteratureFact {
  Direction direction = Direction::Exact;
  std::int64_t value = 0;
  std::string citation;
};

class LiteratureTable {
 public:
  static LiteratureTable parse(const std::string& text) {
    LiteratureTable t;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream ls(line);
      std::vector<std::string> tok;
      for (std::string s; ls >> s;) tok.push_back(s);
      if (tok.empty()) continue;
      auto err = [&](const std::string& m) { fail(ErrorKind::ParseError, "literature line " + std::to_string(lineno) + ": " + m); };
      if (tok[0] == "fact") {
        if (tok.size() != 6) err("expected: fact <p> <q> <direction> <value> <citation>");
        Single f;
        try {
          f.p = std::stoll(tok[1]);
          f.q = std::stoll(tok[2]);
          f.fact.value = std::stoll(tok[4]);
        } catch (const std::exception&) {
          err("bad integer");
        }
        f.fact.direction = parse_direction(tok[3]);
        f.fact.citation = tok[5];
        t.singles_.push_back(f);
      } else if (tok[0] == "family") {
        if (tok.size() != 4) err("expected: family <name> <n-parity> <direction>");
        Family f{tok[1], tok[2], parse_direction(tok[3])};
        if (f.name != "longo" && f.name != "tairi" && f.name != "batson") err("unknown family " + f.name);
        if (f.parity != "any" && f.parity != "even" && f.parity != "odd") err("bad n-parity " + f.parity);
        t.families_.push_back(f);
      } else {
        err("unknown directive '" + tok[0] + "'");
      }
    }
    return t;
  }

  static const LiteratureTable& builtin() {
    static const LiteratureTable t = parse(kLiteratureFacts);
    return t;
  }

  std::vector<LiteratureFact> lookup(const TorusKnot& K) const {
    std::vector<LiteratureFact> out;
    if (K.is_unknot()) return out;
    const std::int64_t a = K.lo(), b = K.hi();
    for (const auto& s : singles_)
      if (std::min(s.p, s.q) == a && std::max(s.p, s.q) == b) out.push_back(s.fact);
    for (const auto& f : families_)
      if (auto v = family_value(f, a, b)) out.push_back({f.direction, *v, f.name});
    return out;
  }

 private:
  struct Single {
    std::int64_t p = 0, q = 0;
    LiteratureFact fact;
  };
  struct Family {
    std::string name, parity;
    Direction direction;
  };

  static bool parity_ok(const std::string& parity, std::int64_t n) {
    return parity == "any" || (parity == "even" && n % 2 == 0) || (parity == "odd" && n % 2 != 0);
  }

  // Value attached to T(a,b), a < b, when it belongs to the family.
  static std::optional<std::int64_t> family_value(const Family& f, std::int64_t a, std::int64_t b) {
    if (f.name == "longo") {
      if (a % 4 != 0) return std::nullopt;
      const std::int64_t n = a / 4;
      if (n < 2 || !parity_ok(f.parity, n)) return std::nullopt;
      if (b == (2 * n + 1) * (2 * n + 1) || b == (2 * n - 1) * (2 * n - 1)) return 2 * n - 1;
      return std::nullopt;
    }
    if (f.name == "tairi") {
      // a = 4n+2m+2, b = 10n+6m+5
      if (a % 2 != 0 || b % 2 == 0) return std::nullopt;
      const std::int64_t x = (a - 2) / 2, y = (b - 5) / 2;
      const std::int64_t n = 3 * x - y, m = x - 2 * n;
      if (n < 0 || m < 2 || !parity_ok(f.parity, n)) return std::nullopt;
      return m;
    }
    if (f.name == "batson") {
      // T(2n, 2n-1): gamma4 = n - 1
      if (b % 2 != 0 || a != b - 1 || !parity_ok(f.parity, b / 2)) return std::nullopt;
      return (b - 2) / 2;
    }
    return std::nullopt;
  }

  std::vector<Single> singles_;
  std::vector<Family> families_;
};

}  // namespace gamma4
