#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gamma4 {

// Sparse integer Laurent polynomial in t. Zero coefficients are never stored.
class LaurentPoly {
 public:
  using Exponent = std::int64_t;
  using Coeff = std::int64_t;

  LaurentPoly() = default;
  explicit LaurentPoly(std::map<Exponent, Coeff> terms) {
    for (auto [e, c] : terms)
      if (c != 0) terms_.emplace(e, c);
  }

  void add_term(Exponent e, Coeff c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else if ((it->second += c) == 0) {
      terms_.erase(it);
    }
  }

  Coeff coeff(Exponent e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  const std::map<Exponent, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Exponent max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  Exponent min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  // For a symmetric polynomial this is the usual degree d.
  Exponent degree() const { return max_exponent(); }

  bool is_symmetric() const {
    for (auto [e, c] : terms_)
      if (coeff(-e) != c) return false;
    return true;
  }

  Coeff eval_at_one() const {
    Coeff s = 0;
    for (auto [e, c] : terms_) s += c;
    return s;
  }

  Coeff eval_at_minus_one() const {
    Coeff s = 0;
    for (auto [e, c] : terms_) s += (e % 2 == 0) ? c : -c;
    return s;
  }

  // Exponents carrying a nonzero coefficient, in decreasing order.
  std::vector<Exponent> exponents_descending() const {
    std::vector<Exponent> out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) out.push_back(it->first);
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [e, c] : terms_) {
      Coeff mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::map<Exponent, Coeff> terms_;
};

}  // namespace gamma4
