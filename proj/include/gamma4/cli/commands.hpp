#pragma once

// Subcommand logic for the gamma4 tool. Kept header-only so tests can drive it directly.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gamma4/bounds.hpp"
#include "gamma4/classical.hpp"
#include "gamma4/cli/cache.hpp"
#include "gamma4/cli/record.hpp"
#include "gamma4/floer.hpp"
#include "gamma4/linkform.hpp"
#include "gamma4/topobstruct.hpp"
#include "gamma4/torus_knot.hpp"

namespace gamma4::cli {

enum class Format { Table, Json, Csv };

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  fail(ErrorKind::InvalidArgument, "unknown format '" + s + "' (expected table, json or csv)");
}

struct Options {
  std::optional<Format> format;  // unset: table on a terminal, json otherwise
  unsigned jobs = 1;
  bool use_cache = true;
  std::string cache_dir;  // empty disables the cache
  bool skip_floer = false;
  bool skip_linkform = false;
  unsigned max_factor_digits = kDefaultMaxFactorDigits;
  std::int64_t max_matrix = kDefaultMaxMatrix;
  bool timings = false;
};

// Values given on the command line; unset fields fall through to the environment, then the config file.
struct FlagValues {
  std::optional<std::string> format;
  std::optional<unsigned> jobs;
  bool no_cache = false;
  bool skip_floer = false;
  bool skip_linkform = false;
  std::optional<unsigned> max_factor_digits;
  std::optional<std::int64_t> max_matrix;
  bool timings = false;
  std::optional<std::string> config_path;
};

inline unsigned parse_jobs(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos == s.size() && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, where + ": jobs must be an integer in [1, 1024], got '" + s + "'");
}

/// Precedence: flags > GAMMA4_* environment > config file > defaults.
template <class Env>
Options resolve_options(const FlagValues& f, Env&& getenv_fn) {
  Json cfg = Json::object();
  if (f.config_path) {
    std::ifstream in(*f.config_path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot read config file " + *f.config_path);
    cfg = Json::parse(in, nullptr, false);
    if (cfg.is_discarded() || !cfg.is_object()) fail(ErrorKind::ParseError, "config file is not a JSON object");
  }
  auto cfg_get = [&](const char* key) -> const Json* { return cfg.contains(key) ? &cfg[key] : nullptr; };
  Options o;
  try {
    if (auto* v = cfg_get("format")) o.format = parse_format(v->template get<std::string>());
    if (auto* v = cfg_get("jobs")) o.jobs = parse_jobs(std::to_string(v->template get<long>()), "config");
    if (auto* v = cfg_get("cache_dir")) o.cache_dir = v->template get<std::string>();
    if (auto* v = cfg_get("no_cache")) o.use_cache = !v->template get<bool>();
    if (auto* v = cfg_get("skip_floer")) o.skip_floer = v->template get<bool>();
    if (auto* v = cfg_get("skip_linkform")) o.skip_linkform = v->template get<bool>();
    if (auto* v = cfg_get("max_factor_digits")) o.max_factor_digits = v->template get<unsigned>();
    if (auto* v = cfg_get("max_matrix")) o.max_matrix = v->template get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad config value: ") + e.what());
  }
  if (const char* v = getenv_fn("GAMMA4_JOBS"); v && *v) o.jobs = parse_jobs(v, "GAMMA4_JOBS");
  if (const char* v = getenv_fn("GAMMA4_CACHE_DIR"); v && *v) o.cache_dir = v;
  if (f.format) o.format = parse_format(*f.format);
  if (f.jobs) o.jobs = parse_jobs(std::to_string(*f.jobs), "--jobs");
  if (f.no_cache) o.use_cache = false;
  if (f.skip_floer) o.skip_floer = true;
  if (f.skip_linkform) o.skip_linkform = true;
  if (f.max_factor_digits) o.max_factor_digits = *f.max_factor_digits;
  if (f.max_matrix) o.max_matrix = *f.max_matrix;
  o.timings = f.timings;
  check(o.max_factor_digits >= 1, ErrorKind::InvalidArgument, "--max-factor-digits must be positive");
  check(o.max_matrix >= 1, ErrorKind::InvalidArgument, "--max-matrix must be positive");
  return o;
}

inline Options resolve_options(const FlagValues& f) {
  return resolve_options(f, [](const char* k) { return std::getenv(k); });
}

class Context {
 public:
  explicit Context(Options o) : opt(std::move(o)) {
    if (opt.use_cache && !opt.cache_dir.empty()) cache = std::make_unique<DiskCache>(opt.cache_dir);
  }
  Options opt;
  std::unique_ptr<DiskCache> cache;
  DiskCache* cache_ptr() { return cache.get(); }
};

/// Exit status for an error kind: 2 bad input, 3 a configured ceiling, 1 an internal failure.
inline int exit_code_for(ErrorKind k) {
  if (is_ceiling(k)) return 3;
  if (k == ErrorKind::InternalError || k == ErrorKind::StructureViolation) return 1;
  return 2;
}

namespace detail {

class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on) {}
  template <class F>
  auto time(const std::string& label, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(label, t0);
    } else {
      auto r = f();
      record(label, t0);
      return r;
    }
  }
  std::optional<std::map<std::string, double>> result() const {
    if (!on_) return std::nullopt;
    return ms_;
  }

 private:
  void record(const std::string& label, std::chrono::steady_clock::time_point t0) {
    if (!on_) return;
    ms_[label] += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  bool on_;
  std::map<std::string, double> ms_;
};

// Runs f, turning a ceiling into an empty value; other errors propagate.
template <class F>
auto unless_ceiling(F&& f) -> std::optional<decltype(f())> {
  try {
    return f();
  } catch (const Error& e) {
    if (!is_ceiling(e.kind())) throw;
    return std::nullopt;
  }
}

// The same knot with its even parameter first, if it has one.
inline std::optional<TorusKnot> even_first(const TorusKnot& K) {
  if (K.is_unknot()) return std::nullopt;
  if (K.p() % 2 == 0) return K;
  if (K.q() % 2 == 0) return K.swapped();
  return std::nullopt;
}

}  // namespace detail

inline OutputRecord cmd_invariants(std::int64_t p, std::int64_t q, Context& ctx) {
  const TorusKnot K = TorusKnot::make(p, q);
  detail::Stopwatch sw(ctx.opt.timings);
  OutputRecord r;
  r.p = p;
  r.q = q;
  auto& I = r.invariants;
  sw.time("classical", [&] {
    const auto rec = yasuhara_obstruction(K);
    I.signature = rec.signature;
    I.arf = rec.arf;
    I.determinant = determinant(K);
    I.genus = genus(K);
  });
  sw.time("pinch", [&] { I.pinch_number = pinch_number(K); });
  sw.time("alexander", [&] {
    if (auto delta = detail::unless_ceiling([&] { return alexander(K); })) {
      std::vector<std::pair<std::int64_t, std::int64_t>> terms;
      for (auto e : delta->exponents_descending()) terms.emplace_back(e, delta->coeff(e));
      I.alexander = terms;
      I.stretch = stretch_of(*delta);
    }
  });
  if (!ctx.opt.skip_floer) {
    r.diagnostics.calibration_ok = floer_calibration().ok;
    if (floer_calibration().ok) {
      sw.time("floer", [&] {
        if (auto h = detail::unless_ceiling([&] { return cached_upsilons(K, ctx.cache_ptr()); })) {
          I.upsilon = h->upsilon;
          I.upsilon_bar = h->upsilon_bar;
          I.upsilon_underbar = h->upsilon_underbar;
        }
      });
    }
  }
  if (!ctx.opt.skip_linkform) {
    sw.time("linkform", [&] {
      if (auto E = detail::even_first(K)) {
        const auto lf = linking_form(*E, ctx.opt.max_matrix);
        I.linking_form = to_string(lf.value);
      }
      const unsigned digits = ctx.opt.max_factor_digits;
      auto factor = [&](const Integer& n) { return cached_factorize(n, digits, ctx.cache_ptr()); };
      if (auto v = detail::unless_ceiling([&] { return lf_mobius_obstructed_by(K, factor); }))
        I.lf_obstruction = to_string(v->verdict);
    });
  }
  r.diagnostics.timings_ms = sw.result();
  return r;
}

inline BoundsBlock bounds_block(const BoundReport& rep) {
  return BoundsBlock{rep.smooth, rep.topological, rep.certificates, rep.withheld};
}

inline OutputRecord cmd_bounds(std::int64_t p, std::int64_t q, Context& ctx) {
  OutputRecord r = cmd_invariants(p, q, ctx);
  const TorusKnot K = TorusKnot::make(p, q);
  BoundOptions bo;
  bo.use_floer = !ctx.opt.skip_floer;
  bo.use_linkform = !ctx.opt.skip_linkform;
  bo.max_factor_digits = ctx.opt.max_factor_digits;
  detail::Stopwatch sw(ctx.opt.timings);
  const auto rep = sw.time("bounds", [&] { return assemble_bounds(K, bo); });
  r.bounds = bounds_block(rep);
  r.diagnostics.calibration_ok = bo.use_floer ? std::optional(floer_calibration().ok) : std::nullopt;
  if (const auto t = sw.result(); t && r.diagnostics.timings_ms)
    for (const auto& [k, v] : *t) (*r.diagnostics.timings_ms)[k] = v;
  return r;
}

inline Json cmd_pinch(std::int64_t p, std::int64_t q) {
  const TorusKnot K = TorusKnot::make(p, q);
  Json steps = Json::array();
  for (const auto& s : pinch_sequence(K))
    steps.push_back(Json{{"from", Json{{"p", s.from.p()}, {"q", s.from.q()}}},
                         {"to", Json{{"p", s.to.p()}, {"q", s.to.q()}}},
                         {"t", s.t},
                         {"h", s.h},
                         {"sign", to_string(s.sign)}});
  return Json{{"knot", Json{{"p", p}, {"q", q}}}, {"pinch_number", steps.size()}, {"steps", steps}};
}

inline Json cmd_linking_form(std::int64_t p, std::int64_t q, Context& ctx) {
  const TorusKnot K = TorusKnot::make(p, q);
  const auto E = detail::even_first(K);
  if (!E) fail(ErrorKind::NeedsEvenP, K.name() + " has no even parameter");
  const auto lf = linking_form(*E, ctx.opt.max_matrix);
  Json out{{"knot", Json{{"p", p}, {"q", q}}},
           {"group_order", lf.group_order},
           {"value", to_string(lf.value)},
           {"matrix_value", lf.matrix_value ? Json(to_string(*lf.matrix_value)) : Json(nullptr)},
           {"goeritz_size", (E->p() * E->q() - 2 * E->q() + 2) / 2}};
  return out;
}

inline Json cmd_obstruct_top(std::int64_t p, std::int64_t q, Context& ctx) {
  const TorusKnot K = TorusKnot::make(p, q);
  const unsigned digits = ctx.opt.max_factor_digits;
  auto factor = [&](const Integer& n) { return cached_factorize(n, digits, ctx.cache_ptr()); };
  const auto res = lf_mobius_obstructed_by(K, factor);
  Json out{{"knot", Json{{"p", p}, {"q", q}}},
           {"verdict", to_string(res.verdict)},
           {"even_parameter", res.even_parameter ? Json(*res.even_parameter) : Json(nullptr)},
           {"witness_prime", res.witness_prime ? Json(res.witness_prime->str()) : Json(nullptr)},
           {"residues", nullptr}};
  if (res.verdict != LfVerdict::Inapplicable) {
    const auto& R = obstructing_residues_cached(*res.even_parameter);
    out["residues"] = Json{{"modulus", R.modulus}, {"classes", R.classes}};
  }
  return out;
}

inline Json density_json(const DensityReport& d) {
  return Json{{"p", d.p},
              {"N", d.N},
              {"eligible", d.eligible},
              {"obstructed", d.obstructed},
              {"ratio", to_string(d.ratio)},
              {"ratio_decimal", static_cast<double>(d.ratio)},
              {"mertens_estimate", to_string(d.mertens_estimate)},
              {"mertens_decimal", d.mertens_decimal},
              {"monotone_vs_previous", d.monotone_vs_cache ? Json(*d.monotone_vs_cache) : Json(nullptr)}};
}

inline std::vector<DensityReport> cmd_density(std::int64_t p, const std::vector<std::int64_t>& Ns, Context& ctx) {
  check(p >= 2 && p % 2 == 0, ErrorKind::InvalidArgument, "density needs an even p >= 2");
  std::vector<DensityReport> out;
  for (auto N : Ns) out.push_back(density_experiment(p, N, ctx.opt.jobs));
  return out;
}

inline Json cmd_floer_text(const std::string& text) {
  const auto parsed = parse_complex(text);
  const auto s = involutive_upsilons(parsed.complex, parsed.iota);
  Json j = hfki_json(s);
  j["generators"] = parsed.complex.size();
  return j;
}

inline Json cmd_floer(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return cmd_floer_text(ss.str());
}

// ---------------------------------------------------------------------------
// Family tables: `p=4 q=5..99 odd`.

struct TableSpec {
  std::int64_t p_from = 0, p_to = 0;
  std::int64_t q_from = 0, q_to = 0;
  enum class Parity { All, Odd, Even } q_parity = Parity::All;
};

inline constexpr std::int64_t kMaxTableRows = 1'000'000;

inline TableSpec parse_table_spec(const std::vector<std::string>& tokens) {
  TableSpec s;
  bool have_p = false, have_q = false;
  auto range = [](const std::string& v, std::int64_t& lo, std::int64_t& hi) {
    try {
      const auto dots = v.find("..");
      std::size_t pos = 0;
      if (dots == std::string::npos) {
        lo = hi = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
      } else {
        const std::string a = v.substr(0, dots), b = v.substr(dots + 2);
        lo = std::stoll(a, &pos);
        if (pos != a.size()) throw std::invalid_argument(v);
        hi = std::stoll(b, &pos);
        if (pos != b.size()) throw std::invalid_argument(v);
      }
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "bad range '" + v + "'");
    }
    if (lo > hi) fail(ErrorKind::InvalidArgument, "empty range '" + v + "'");
  };
  for (const auto& t : tokens) {
    if (t.rfind("p=", 0) == 0) {
      range(t.substr(2), s.p_from, s.p_to);
      have_p = true;
    } else if (t.rfind("q=", 0) == 0) {
      range(t.substr(2), s.q_from, s.q_to);
      have_q = true;
    } else if (t == "odd") {
      s.q_parity = TableSpec::Parity::Odd;
    } else if (t == "even") {
      s.q_parity = TableSpec::Parity::Even;
    } else if (t == "all") {
      s.q_parity = TableSpec::Parity::All;
    } else {
      fail(ErrorKind::InvalidArgument, "unknown table token '" + t + "' (expected p=A[..B] q=A..B [odd|even|all])");
    }
  }
  if (!have_p || !have_q) fail(ErrorKind::InvalidArgument, "table spec needs both p=... and q=...");
  const std::int64_t rows = (s.p_to - s.p_from + 1) * (s.q_to - s.q_from + 1);
  check(rows <= kMaxTableRows, ErrorKind::ComputationTooLarge, "table spec exceeds " + std::to_string(kMaxTableRows) + " rows");
  return s;
}

struct TableRow {
  std::int64_t p = 0, q = 0;
  std::optional<OutputRecord> record;
  std::optional<Json> error;
};

inline std::vector<std::pair<std::int64_t, std::int64_t>> table_pairs(const TableSpec& s) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t p = s.p_from; p <= s.p_to; ++p)
    for (std::int64_t q = s.q_from; q <= s.q_to; ++q) {
      if (s.q_parity == TableSpec::Parity::Odd && q % 2 == 0) continue;
      if (s.q_parity == TableSpec::Parity::Even && q % 2 != 0) continue;
      out.emplace_back(p, q);
    }
  return out;
}

/// Rows come back in input order; a failing knot annotates its row instead of aborting the batch.
inline std::vector<TableRow> cmd_table(const TableSpec& spec, Context& ctx) {
  const auto pairs = table_pairs(spec);
  std::vector<TableRow> rows(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      auto& row = rows[i];
      row.p = pairs[i].first;
      row.q = pairs[i].second;
      try {
        row.record = cmd_bounds(row.p, row.q, ctx);
      } catch (const Error& e) {
        row.error = error_json(e.kind(), e.what());
      }
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(ctx.opt.jobs, static_cast<unsigned>(std::max<std::size_t>(1, pairs.size()))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

inline const char* table_csv_header() {
  return "p,q,signature,arf,upsilon,upsilon_bar,upsilon_underbar,stretch,pinch_number,"
         "smooth_lo,smooth_hi,top_lo,top_hi,lf_obstruction,error";
}

inline std::string table_csv_row(const TableRow& row) {
  auto f = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  std::ostringstream os;
  os << row.p << "," << row.q << ",";
  if (row.record) {
    const auto& I = row.record->invariants;
    os << f(I.signature) << "," << f(I.arf) << "," << f(I.upsilon) << "," << f(I.upsilon_bar) << ","
       << f(I.upsilon_underbar) << "," << f(I.stretch) << "," << f(I.pinch_number) << ",";
    const auto& B = *row.record->bounds;
    os << B.smooth.lo << "," << B.smooth.hi << "," << B.topological.lo << "," << B.topological.hi << ","
       << I.lf_obstruction.value_or("") << ",";
  } else {
    os << ",,,,,,,,,,,,";
    os << (*row.error)["error"]["kind"].get<std::string>();
  }
  return os.str();
}

inline Json table_row_json(const TableRow& row) {
  if (row.record) return to_json(*row.record);
  Json j = *row.error;
  j["knot"] = Json{{"p", row.p}, {"q", row.q}};
  return j;
}

// ---------------------------------------------------------------------------
// Self-test: Floer calibration plus the Goeritz vector identity.

struct SelftestReport {
  bool ok = true;
  std::vector<std::string> lines;
};

inline SelftestReport cmd_selftest() {
  SelftestReport rep;
  const auto& cal = floer_calibration();
  for (const auto& c : cal.checks) rep.lines.push_back(c);
  rep.ok = cal.ok;
  bool vec_ok = true;
  std::string bad;
  try {
    for (std::int64_t p = 2; p <= 10; p += 2)
      for (std::int64_t q = 3; q <= 13; q += 2) {
        if (std::gcd(p, q) != 1) continue;
        const auto K = TorusKnot::make(p, q);
        const auto G = goeritz_matrix(K);
        const auto v = row_times_matrix(goeritz_row_vector(K), G);
        bool good = v[0] == q;
        for (std::size_t i = 1; i < v.size(); ++i) good = good && v[i] == 0;
        if (!good) {
          vec_ok = false;
          bad += " " + K.name();
        }
      }
  } catch (const Error& e) {
    vec_ok = false;
    bad += std::string(" raised ") + e.what();
  }
  rep.lines.push_back(std::string(vec_ok ? "PASS " : "FAIL ") + "Goeritz vector identity vG = (q,0,...,0) for even p <= 10, odd q <= 13" + bad);
  rep.ok = rep.ok && vec_ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Human-readable rendering.

inline std::string render_record(const OutputRecord& r) {
  std::ostringstream os;
  auto f = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  const auto& I = r.invariants;
  os << "T(" << r.p << "," << r.q << ")\n";
  os << "  signature          " << f(I.signature) << "\n";
  os << "  arf                " << f(I.arf) << "\n";
  os << "  determinant        " << f(I.determinant) << "\n";
  os << "  genus              " << f(I.genus) << "\n";
  os << "  upsilon            " << f(I.upsilon) << "\n";
  os << "  upsilon_bar        " << f(I.upsilon_bar) << "\n";
  os << "  upsilon_underbar   " << f(I.upsilon_underbar) << "\n";
  os << "  stretch            " << f(I.stretch) << "\n";
  os << "  pinch number       " << f(I.pinch_number) << "\n";
  if (I.alexander && I.alexander->size() <= 40) {
    LaurentPoly d;
    for (const auto& [e, c] : *I.alexander) d.add_term(e, c);
    os << "  alexander          " << d.to_string() << "\n";
  } else if (I.alexander) {
    os << "  alexander          " << I.alexander->size() << " terms\n";
  }
  os << "  linking form       " << I.linking_form.value_or("-") << "\n";
  os << "  lf obstruction     " << I.lf_obstruction.value_or("-") << "\n";
  if (r.bounds) {
    const auto& B = *r.bounds;
    os << "  gamma4             [" << B.smooth.lo << ", " << B.smooth.hi << "]" << (B.smooth.exact() ? " exact" : "") << "\n";
    os << "  gamma4_top         [" << B.topological.lo << ", " << B.topological.hi << "]"
       << (B.topological.exact() ? " exact" : "") << "\n";
    os << "  certificates\n";
    for (const auto& c : B.certificates)
      os << "    " << std::left << std::setw(20) << c.name << std::setw(6) << to_string(c.direction) << std::right
         << std::setw(4) << c.value << "  " << to_string(c.category) << "  " << c.citation << "\n";
    for (const auto& w : B.withheld) os << "  withheld: " << w << "\n";
  }
  if (r.diagnostics.calibration_ok)
    os << "  calibration        " << (*r.diagnostics.calibration_ok ? "ok" : "FAILED") << "\n";
  if (r.diagnostics.timings_ms)
    for (const auto& [k, v] : *r.diagnostics.timings_ms)
      os << "  time " << std::left << std::setw(14) << k << std::right << std::fixed << std::setprecision(3) << v << " ms\n";
  return os.str();
}

// Flat JSON objects as aligned key/value lines.
inline std::string render_flat(const Json& j, int indent = 0) {
  std::ostringstream os;
  for (const auto& [k, v] : j.items()) {
    os << std::string(static_cast<std::size_t>(indent), ' ') << std::left << std::setw(18) << k;
    if (v.is_object()) {
      os << "\n" << render_flat(v, indent + 2);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << "\n";
      for (const auto& e : v) os << std::string(static_cast<std::size_t>(indent + 2), ' ') << e.dump() << "\n";
    } else {
      os << (v.is_null() ? std::string("-") : v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  return os.str();
}

}  // namespace gamma4::cli
