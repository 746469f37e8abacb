#pragma once

// Serialized output record shared by the CLI subcommands.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gamma4/bounds.hpp"
#include "gamma4/floer.hpp"

namespace gamma4::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kRecordVersion = 1;

struct InvariantsBlock {
  std::optional<std::int64_t> signature;
  std::optional<std::int64_t> arf;
  std::optional<std::int64_t> determinant;
  std::optional<std::int64_t> genus;
  std::optional<std::int64_t> upsilon;
  std::optional<std::int64_t> upsilon_bar;
  std::optional<std::int64_t> upsilon_underbar;
  std::optional<std::int64_t> stretch;
  std::optional<std::int64_t> pinch_number;
  std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> alexander;  // descending exponents
  std::optional<std::string> linking_form;                                      // "a/b" in [0,1)
  std::optional<std::string> lf_obstruction;
  friend bool operator==(const InvariantsBlock&, const InvariantsBlock&) = default;
};

struct BoundsBlock {
  Interval smooth;
  Interval topological;
  std::vector<BoundCertificate> certificates;
  std::vector<std::string> withheld;
  friend bool operator==(const BoundsBlock&, const BoundsBlock&) = default;
};

struct Diagnostics {
  std::optional<bool> calibration_ok;
  std::optional<std::map<std::string, double>> timings_ms;
  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

struct OutputRecord {
  std::int64_t p = 0;
  std::int64_t q = 0;
  InvariantsBlock invariants;
  std::optional<BoundsBlock> bounds;
  Diagnostics diagnostics;
  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

namespace detail {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> get_opt(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

inline Json interval_json(const Interval& i) { return Json{{"lo", i.lo}, {"hi", i.hi}, {"exact", i.exact()}}; }

inline Interval interval_from(const Json& j) { return {j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>()}; }

}  // namespace detail

inline Json certificate_json(const BoundCertificate& c) {
  return Json{{"name", c.name},
              {"value", c.value},
              {"direction", to_string(c.direction)},
              {"category", to_string(c.category)},
              {"citation", c.citation}};
}

inline BoundCertificate certificate_from(const Json& j) {
  BoundCertificate c;
  c.name = j.at("name").get<std::string>();
  c.value = j.at("value").get<std::int64_t>();
  const auto dir = j.at("direction").get<std::string>();
  if (dir != "lower" && dir != "upper") fail(ErrorKind::ParseError, "bad certificate direction " + dir);
  c.direction = dir == "lower" ? Bound::Lower : Bound::Upper;
  const auto cat = j.at("category").get<std::string>();
  if (cat != "smooth" && cat != "topological") fail(ErrorKind::ParseError, "bad certificate category " + cat);
  c.category = cat == "smooth" ? Category::Smooth : Category::Topological;
  c.citation = j.at("citation").get<std::string>();
  return c;
}

inline Json to_json(const OutputRecord& r) {
  Json inv;
  const auto& I = r.invariants;
  inv["signature"] = detail::opt(I.signature);
  inv["arf"] = detail::opt(I.arf);
  inv["determinant"] = detail::opt(I.determinant);
  inv["genus"] = detail::opt(I.genus);
  inv["upsilon"] = detail::opt(I.upsilon);
  inv["upsilon_bar"] = detail::opt(I.upsilon_bar);
  inv["upsilon_underbar"] = detail::opt(I.upsilon_underbar);
  inv["stretch"] = detail::opt(I.stretch);
  inv["pinch_number"] = detail::opt(I.pinch_number);
  if (I.alexander) {
    Json a = Json::object();
    for (const auto& [e, c] : *I.alexander) a[std::to_string(e)] = c;
    inv["alexander"] = a;
  } else {
    inv["alexander"] = nullptr;
  }
  inv["linking_form"] = detail::opt(I.linking_form);
  inv["lf_obstruction"] = detail::opt(I.lf_obstruction);

  Json bounds = nullptr;
  if (r.bounds) {
    Json certs = Json::array();
    for (const auto& c : r.bounds->certificates) certs.push_back(certificate_json(c));
    bounds = Json{{"smooth", detail::interval_json(r.bounds->smooth)},
                  {"topological", detail::interval_json(r.bounds->topological)},
                  {"certificates", certs},
                  {"withheld", r.bounds->withheld}};
  }
  Json diag;
  diag["calibration_ok"] = detail::opt(r.diagnostics.calibration_ok);
  if (r.diagnostics.timings_ms) {
    Json t = Json::object();
    for (const auto& [k, v] : *r.diagnostics.timings_ms) t[k] = v;
    diag["timings_ms"] = t;
  } else {
    diag["timings_ms"] = nullptr;
  }
  return Json{{"version", kRecordVersion},
              {"knot", Json{{"p", r.p}, {"q", r.q}}},
              {"invariants", inv},
              {"bounds", bounds},
              {"diagnostics", diag}};
}

inline OutputRecord record_from_json(const Json& j) {
  try {
    if (j.at("version").get<int>() != kRecordVersion) fail(ErrorKind::ParseError, "unsupported record version");
    OutputRecord r;
    r.p = j.at("knot").at("p").get<std::int64_t>();
    r.q = j.at("knot").at("q").get<std::int64_t>();
    const auto& inv = j.at("invariants");
    auto& I = r.invariants;
    I.signature = detail::get_opt<std::int64_t>(inv, "signature");
    I.arf = detail::get_opt<std::int64_t>(inv, "arf");
    I.determinant = detail::get_opt<std::int64_t>(inv, "determinant");
    I.genus = detail::get_opt<std::int64_t>(inv, "genus");
    I.upsilon = detail::get_opt<std::int64_t>(inv, "upsilon");
    I.upsilon_bar = detail::get_opt<std::int64_t>(inv, "upsilon_bar");
    I.upsilon_underbar = detail::get_opt<std::int64_t>(inv, "upsilon_underbar");
    I.stretch = detail::get_opt<std::int64_t>(inv, "stretch");
    I.pinch_number = detail::get_opt<std::int64_t>(inv, "pinch_number");
    if (!inv.at("alexander").is_null()) {
      std::vector<std::pair<std::int64_t, std::int64_t>> a;
      for (const auto& [k, v] : inv.at("alexander").items()) a.emplace_back(std::stoll(k), v.get<std::int64_t>());
      I.alexander = a;
    }
    I.linking_form = detail::get_opt<std::string>(inv, "linking_form");
    I.lf_obstruction = detail::get_opt<std::string>(inv, "lf_obstruction");
    if (!j.at("bounds").is_null()) {
      const auto& b = j.at("bounds");
      BoundsBlock B;
      B.smooth = detail::interval_from(b.at("smooth"));
      B.topological = detail::interval_from(b.at("topological"));
      for (const auto& c : b.at("certificates")) B.certificates.push_back(certificate_from(c));
      B.withheld = b.at("withheld").get<std::vector<std::string>>();
      r.bounds = B;
    }
    const auto& d = j.at("diagnostics");
    r.diagnostics.calibration_ok = detail::get_opt<bool>(d, "calibration_ok");
    if (!d.at("timings_ms").is_null()) {
      std::map<std::string, double> t;
      for (const auto& [k, v] : d.at("timings_ms").items()) t[k] = v.get<double>();
      r.diagnostics.timings_ms = t;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed output record: ") + e.what());
  }
}

inline Json hfki_json(const HfkiSummary& s) {
  Json towers = Json::array();
  for (const auto& t : s.towers) towers.push_back(Json{{"grading", t.grading}, {"in_image_of_q", t.in_image_of_q}});
  return Json{{"upsilon", s.upsilon},
              {"upsilon_bar", s.upsilon_bar},
              {"upsilon_underbar", s.upsilon_underbar},
              {"towers", towers}};
}

inline HfkiSummary hfki_from_json(const Json& j) {
  HfkiSummary s;
  s.upsilon = j.at("upsilon").get<std::int64_t>();
  s.upsilon_bar = j.at("upsilon_bar").get<std::int64_t>();
  s.upsilon_underbar = j.at("upsilon_underbar").get<std::int64_t>();
  for (const auto& t : j.at("towers")) s.towers.push_back({t.at("grading").get<std::int64_t>(), t.at("in_image_of_q").get<bool>()});
  return s;
}

inline Json error_json(ErrorKind kind, const std::string& message) {
  return Json{{"error", Json{{"kind", std::string(kind_name(kind))}, {"message", message}}}};
}

}  // namespace gamma4::cli
