#pragma once

// Append-only JSON-lines cache keyed by "<kind>/<module version>/<key>".

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "gamma4/cli/record.hpp"

namespace gamma4::cli {

// Bump when a cached computation changes meaning.
inline constexpr const char* kFloerCacheVersion = "hfki-v1";
inline constexpr const char* kFactorCacheVersion = "factor-v1";

class DiskCache {
 public:
  DiskCache() = default;
  explicit DiskCache(const std::filesystem::path& dir) : path_(dir / "gamma4-cache.jsonl") {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      // torn or foreign lines are skipped
      auto j = Json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("value")) continue;
      if (!j["key"].is_string()) continue;
      entries_[j["key"].get<std::string>()] = j["value"];
    }
  }

  bool enabled() const { return !path_.empty(); }
  const std::filesystem::path& path() const { return path_; }

  std::optional<Json> get(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& key, const Json& value) {
    if (!enabled()) return;
    std::unique_lock lock(mu_);
    if (entries_.count(key)) return;
    entries_[key] = value;
    std::ofstream out(path_, std::ios::app);
    out << Json{{"key", key}, {"value", value}}.dump() << "\n";
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
  }

 private:
  std::filesystem::path path_;
  mutable std::shared_mutex mu_;
  std::map<std::string, Json> entries_;
};

inline std::string floer_key(const TorusKnot& K) {
  const auto C = K.is_unknot() ? TorusKnot::unknot() : K.canonical();
  return std::string(kFloerCacheVersion) + "/" + std::to_string(C.p()) + "," + std::to_string(C.q());
}

inline std::string factor_key(const Integer& n) { return std::string(kFactorCacheVersion) + "/" + n.str(); }

/// Floer summary of K through the cache; seeds the in-process memo on a hit.
inline HfkiSummary cached_upsilons(const TorusKnot& K, DiskCache* cache) {
  if (cache && cache->enabled() && !FloerMemo::instance().contains(K)) {
    if (auto hit = cache->get(floer_key(K))) {
      try {
        FloerMemo::instance().put(K, hfki_from_json(*hit));
      } catch (const nlohmann::json::exception&) {
        // stale entry, recompute
      }
    }
  }
  HfkiSummary s = torus_knot_upsilons(K);
  if (cache) cache->put(floer_key(K), hfki_json(s));
  return s;
}

inline Json factorization_json(const Factorization& f) {
  Json fs = Json::array();
  for (const auto& pp : f.factors) fs.push_back(Json{{"prime", pp.prime.str()}, {"exponent", pp.exponent}});
  return Json{{"value", f.value.str()}, {"factors", fs}};
}

inline Factorization factorization_from_json(const Json& j) {
  Factorization f;
  f.value = Integer(j.at("value").get<std::string>());
  for (const auto& x : j.at("factors"))
    f.factors.push_back({Integer(x.at("prime").get<std::string>()), x.at("exponent").get<unsigned>()});
  check(f.product() == f.value, ErrorKind::ParseError, "cached factorization does not multiply out");
  return f;
}

inline Factorization cached_factorize(const Integer& n, unsigned max_digits, DiskCache* cache) {
  if (cache && cache->enabled()) {
    if (auto hit = cache->get(factor_key(n))) {
      try {
        return factorization_from_json(*hit);
      } catch (const std::exception&) {
      }
    }
  }
  Factorization f = factorize(n, max_digits);
  if (cache) cache->put(factor_key(n), factorization_json(f));
  return f;
}

}  // namespace gamma4::cli
