// gamma4: torus knot invariants and nonorientable 4-ball genus bounds.

#include <unistd.h>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gamma4/cli/commands.hpp"

using namespace gamma4;
using namespace gamma4::cli;

namespace {

Format output_format(const Options& o) {
  if (o.format) return *o.format;
  return isatty(fileno(stdout)) ? Format::Table : Format::Json;
}

void emit_json(const Json& j) { std::cout << j.dump() << "\n"; }

int report_error(const Error& e, Format fmt) {
  if (fmt == Format::Table)
    std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << "\n";
  else
    emit_json(error_json(e.kind(), e.what()));
  return exit_code_for(e.kind());
}

void emit_record(const OutputRecord& r, Format fmt) {
  if (fmt == Format::Table)
    std::cout << render_record(r);
  else
    emit_json(to_json(r));
}

void emit_object(const Json& j, Format fmt) {
  if (fmt == Format::Table)
    std::cout << render_flat(j);
  else
    emit_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torus knot invariants and bounds on the nonorientable 4-ball genus"};
  app.require_subcommand(1);
  app.fallthrough();

  FlagValues flags;
  app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--jobs", flags.jobs, "Worker threads for table and density");
  app.add_flag("--no-cache", flags.no_cache, "Disable the on-disk cache");
  app.add_flag("--skip-floer", flags.skip_floer, "Skip knot Floer computations");
  app.add_flag("--skip-linkform", flags.skip_linkform, "Skip linking form and residue obstruction");
  app.add_option("--max-factor-digits", flags.max_factor_digits, "Largest number of digits to factor");
  app.add_option("--max-matrix", flags.max_matrix, "Largest Goeritz matrix to invert");
  app.add_flag("--timings", flags.timings, "Report per-stage timings");
  app.add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);

  std::int64_t p = 0, q = 0;
  auto knot_args = [&](CLI::App* sub) {
    sub->add_option("p", p, "First parameter")->required();
    sub->add_option("q", q, "Second parameter")->required();
  };
  auto* invariants = app.add_subcommand("invariants", "Classical, Floer and linking form invariants of T(p,q)");
  knot_args(invariants);
  auto* bounds = app.add_subcommand("bounds", "Certified intervals for gamma4 and gamma4_top");
  knot_args(bounds);
  auto* pinch = app.add_subcommand("pinch", "Pinch sequence down to the unknot");
  knot_args(pinch);
  auto* lf = app.add_subcommand("linking-form", "Linking form of the double branched cover");
  knot_args(lf);
  auto* obstruct = app.add_subcommand("obstruct-top", "Residue obstruction to a locally flat Moebius band");
  knot_args(obstruct);

  std::int64_t density_p = 0;
  std::vector<std::int64_t> density_n;
  auto* density = app.add_subcommand("density", "Fraction of q <= N not obstructed for fixed even p");
  density->add_option("p", density_p, "Even parameter")->required();
  density->add_option("N", density_n, "One or more bounds N")->required();

  std::vector<std::string> table_spec;
  auto* table = app.add_subcommand("table", "Bounds over a family, e.g. p=4 q=5..99 odd");
  table->add_option("spec", table_spec, "Family spec")->required();

  std::string fixture;
  auto* floer = app.add_subcommand("floer", "Involutive upsilons of a complex description file");
  floer->add_option("file", fixture, "Complex description")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the calibration suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Format fmt = Format::Json;
  try {
    Context ctx(resolve_options(flags));
    fmt = output_format(ctx.opt);

    if (*invariants) {
      emit_record(cmd_invariants(p, q, ctx), fmt);
    } else if (*bounds) {
      emit_record(cmd_bounds(p, q, ctx), fmt);
    } else if (*pinch) {
      emit_object(cmd_pinch(p, q), fmt);
    } else if (*lf) {
      emit_object(cmd_linking_form(p, q, ctx), fmt);
    } else if (*obstruct) {
      emit_object(cmd_obstruct_top(p, q, ctx), fmt);
    } else if (*density) {
      const auto reps = cmd_density(density_p, density_n, ctx);
      if (fmt == Format::Csv) {
        std::cout << DensityReport::csv_header() << "\n";
        for (const auto& r : reps) std::cout << r.csv_row() << "\n";
      } else if (fmt == Format::Json) {
        for (const auto& r : reps) emit_json(density_json(r));
      } else {
        std::printf("%4s %10s %10s %10s %12s %10s %10s\n", "p", "N", "eligible", "obstructed", "ratio", "decimal",
                    "mertens");
        for (const auto& r : reps)
          std::printf("%4lld %10lld %10lld %10lld %12s %10.6f %10.6f\n", static_cast<long long>(r.p),
                      static_cast<long long>(r.N), static_cast<long long>(r.eligible),
                      static_cast<long long>(r.obstructed), to_string(r.ratio).c_str(), static_cast<double>(r.ratio),
                      r.mertens_decimal);
      }
    } else if (*table) {
      const auto rows = cmd_table(parse_table_spec(table_spec), ctx);
      if (fmt == Format::Json) {
        for (const auto& r : rows) emit_json(table_row_json(r));
      } else {
        // the table view is the CSV layout
        std::cout << table_csv_header() << "\n";
        for (const auto& r : rows) std::cout << table_csv_row(r) << "\n";
      }
    } else if (*floer) {
      emit_object(cmd_floer(fixture), fmt);
    } else if (*selftest) {
      const auto rep = cmd_selftest();
      for (const auto& line : rep.lines) std::cout << line << "\n";
      return rep.ok ? 0 : 1;
    }
  } catch (const Error& e) {
    return report_error(e, fmt);
  } catch (const std::exception& e) {
    return report_error(Error(ErrorKind::InternalError, e.what()), fmt);
  }
  return 0;
}
