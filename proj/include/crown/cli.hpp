#pragma once

// Subcommands of crown_harmonics as library functions, so tests can drive
// them without spawning processes. Each one reads RunConfig, writes its
// files and returns a process exit code; errors propagate as crown::Error and
// are mapped by exit_code_for.

#include <fmt/format.h>

#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crown/error.hpp"
#include "crown/intertwining.hpp"
#include "crown/io.hpp"
#include "crown/paley_wiener.hpp"
#include "crown/parallel.hpp"
#include "crown/sphere.hpp"
#include "crown/test_function.hpp"
#include "crown/transform.hpp"
#include "crown/verify.hpp"

namespace crown {

enum class Command { Analyze, Synthesize, Extend, PwReport, IntertwinerDump, Verify };

struct RunConfig {
  Command command = Command::Verify;
  std::string input;
  std::string output;
  std::string csv;
  int lmax = 32;
  std::optional<int> n_theta;
  std::optional<int> n_phi;
  std::vector<double> radii;
  std::optional<double> line_tmax;
  std::map<std::string, double> calibration;
  std::uint64_t seed = 0;
  bool sequential = false;
  std::vector<cplx> ells;
  std::vector<int> ms;

  void validate() const {
    require(lmax >= 0, ErrorKind::InvalidArgument, "--lmax must be non-negative");
    require(input.empty() || input != output, ErrorKind::InvalidArgument,
            "--input and --output must differ");
    require(csv.empty() || (csv != input && csv != output), ErrorKind::InvalidArgument,
            "--csv must differ from the other paths");
    for (double r : radii) {
      require(r > 0.0 && r < kPi / 2, ErrorKind::InvalidArgument,
              fmt::format("radius {} outside (0, pi/2)", r));
    }
  }
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Schema: return 2;
    case ErrorKind::Domain: return 3;
    case ErrorKind::Pole:
    case ErrorKind::Singular:
    case ErrorKind::Numerical: return 4;
  }
  return 4;
}

inline std::string error_json(ErrorKind kind, const std::string& message) {
  return Json{{"error", to_string(kind)}, {"message", message}, {"exit_code", exit_code_for(kind)}}.dump();
}

namespace cli_detail {

inline void require_input(const RunConfig& cfg) {
  require(!cfg.input.empty(), ErrorKind::InvalidArgument, "--input is required");
}

inline void require_output(const RunConfig& cfg) {
  require(!cfg.output.empty(), ErrorKind::InvalidArgument, "--output is required");
}

inline int default_n_theta(const RunConfig& cfg) { return cfg.n_theta.value_or(std::max(96, cfg.lmax + 2)); }
inline int default_n_phi(const RunConfig& cfg) { return cfg.n_phi.value_or(std::max(16, 2 * cfg.lmax + 2)); }

/// GridFunction JSON as is; BumpSpec JSON (recognized by "radius") sampled on
/// the cap grid of its support with the --grid dimensions.
inline GridFunction load_function(const RunConfig& cfg) {
  require_input(cfg);
  const Json j = read_json_file(cfg.input);
  require(j.is_object(), ErrorKind::Schema, "input must be a JSON object");
  if (j.contains("radius")) {
    const BumpSpec spec = bump_spec_from_json(j);
    require(spec.radius > 0.0 && spec.radius < kPi / 2, ErrorKind::Domain,
            fmt::format("bump radius {} leaves the crown", spec.radius));
    const SphereGrid grid(default_n_theta(cfg), default_n_phi(cfg),
                          std::min(kPi, spec.center.theta + spec.radius));
    return make_bump(spec, grid).samples;
  }
  require(j.contains("values"), ErrorKind::Schema,
          "input is neither a GridFunction (values) nor a BumpSpec (radius)");
  return grid_function_from_json(j);
}

inline Calibration calibration_of(const RunConfig& cfg) {
  Calibration c;
  for (const auto& [k, v] : cfg.calibration) c.set(k, v);
  if (cfg.line_tmax) c.set("line_tmax", *cfg.line_tmax);
  return c;
}

inline std::shared_ptr<const FourierExtension> extension_of(const GridFunction& f, const Calibration& c) {
  return std::make_shared<const FourierExtension>(f, c.get("support_threshold"));
}

}  // namespace cli_detail

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out = std::cout) {
  cli_detail::require_output(cfg);
  const auto f = cli_detail::load_function(cfg);
  const auto table = analyze(f, cfg.lmax);
  write_text_file(cfg.output, dump_json(to_json(table, false)));
  out << dump_json({{"command", "analyze"},
                    {"lmax", cfg.lmax},
                    {"max_abs", table.max_abs()},
                    {"max_below_diagonal", table.max_below_diagonal()}});
  return 0;
}

/// Coefficient-table input goes through the table provider; grid or bump
/// input through the holomorphic extension.
inline int cmd_synthesize(const RunConfig& cfg, std::ostream& out = std::cout) {
  cli_detail::require_input(cfg);
  cli_detail::require_output(cfg);
  const Calibration calib = cli_detail::calibration_of(cfg);
  const Json j = read_json_file(cfg.input);
  CoefficientProvider provider;
  std::string source;
  if (j.is_object() && j.contains("entries")) {
    const auto table = table_from_json(j);
    require(cfg.lmax <= table.lmax(), ErrorKind::InvalidArgument,
            fmt::format("--lmax {} exceeds the table's lmax {}", cfg.lmax, table.lmax()));
    provider = table_provider(table);
    source = "table";
  } else {
    provider = extension_provider(cli_detail::extension_of(cli_detail::load_function(cfg), calib));
    source = "extension";
  }
  const SphereGrid grid(cfg.n_theta.value_or(256), cfg.n_phi.value_or(std::max(16, 2 * cfg.lmax + 2)));
  const auto f = synthesize(provider, grid, cfg.lmax);
  write_text_file(cfg.output, dump_json(to_json(f)));
  const double threshold = calib.get("synth_support_threshold");
  out << dump_json({{"command", "synthesize"},
                    {"provider", source},
                    {"lmax", cfg.lmax},
                    {"support_radius", support_radius(f, threshold)},
                    {"support_threshold", threshold}});
  return 0;
}

inline int cmd_extend(const RunConfig& cfg, std::ostream& out = std::cout) {
  const Calibration calib = cli_detail::calibration_of(cfg);
  const auto ext = cli_detail::extension_of(cli_detail::load_function(cfg), calib);
  require(!cfg.ells.empty(), ErrorKind::InvalidArgument, "extend needs at least one --ell");
  const std::vector<int> ms = cfg.ms.empty() ? ext->ktypes() : cfg.ms;
  Json values = Json::array();
  for (const auto& ell : cfg.ells) {
    for (int m : ms) {
      const cplx v = (*ext)(SpectralParam(ell), m);
      values.push_back({{"l_re", ell.real()}, {"l_im", ell.imag()}, {"m", m}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  const Json doc{{"support_radius", ext->support()}, {"ktypes", ext->ktypes()}, {"values", std::move(values)}};
  if (cfg.output.empty()) {
    out << dump_json(doc);
  } else {
    write_text_file(cfg.output, dump_json(doc));
  }
  return 0;
}

inline int cmd_pw_report(const RunConfig& cfg, std::ostream& out = std::cout) {
  cli_detail::require_output(cfg);
  require(!cfg.radii.empty(), ErrorKind::InvalidArgument, "pw-report needs --radii");
  const Calibration calib = cli_detail::calibration_of(cfg);
  const auto f = cli_detail::load_function(cfg);
  const auto provider = extension_provider(cli_detail::extension_of(f, calib));
  const auto rep = pw_report(provider, cfg.radii, calib);
  write_text_file(cfg.output, dump_json(to_json(rep)));
  if (!cfg.csv.empty()) write_text_file(cfg.csv, type_curve_csv(rep.type));
  Json verdicts = Json::object();
  for (const auto& v : rep.verdicts) verdicts[fmt::format("{}", v.radius)] = v.pass ? "pass" : "fail";
  out << dump_json({{"command", "pw-report"}, {"r_hat", rep.type.r_hat}, {"verdicts", verdicts}});
  return 0;
}

/// b_m(t) at t = -l - 1/2 for the given l (default: a strip of real and
/// complex samples), one record per K-type.
inline int cmd_intertwiner_dump(const RunConfig& cfg, std::ostream& out = std::cout) {
  std::vector<cplx> ts;
  if (cfg.ells.empty()) {
    for (int k = -6; k <= 6; ++k) {
      for (double im : {0.0, 0.75}) ts.emplace_back(0.5 * k, im);
    }
  } else {
    for (const auto& ell : cfg.ells) ts.push_back(-ell - 0.5);
  }
  const std::vector<int> ms = cfg.ms.empty() ? std::vector<int>{0, 1, 2, 3} : cfg.ms;
  Json doc = Json::array();
  for (int m : ms) {
    const auto s = sample_intertwiner(m, ts);
    Json singular = Json::array();
    for (const auto& t : s.singular) singular.push_back(Json::array({t.real(), t.imag()}));
    doc.push_back({{"m", m}, {"samples", to_json(s)}, {"singular_t", std::move(singular)}});
  }
  if (cfg.output.empty()) {
    out << dump_json(doc);
  } else {
    write_text_file(cfg.output, dump_json(doc));
  }
  return 0;
}

/// Runs the acceptance suite and the module invariants; exit 0 iff all pass.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out = std::cout) {
  std::vector<CheckResult> results;
  for (const auto& list : {acceptance_checks(), module_checks()}) {
    for (const auto& c : list) {
      results.push_back(run_check(c, cfg.seed));
      const auto& r = results.back();
      out << fmt::format("{:<4}  {:<13} {:<40} {}\n", r.pass ? "PASS" : "FAIL", r.module, r.name, r.detail)
          << std::flush;
    }
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
  out << fmt::format("{} of {} checks passed (seed {})\n", results.size() - failed, results.size(), cfg.seed);
  if (!cfg.output.empty()) {
    Json doc = Json::array();
    for (const auto& r : results) {
      doc.push_back({{"module", r.module}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    write_text_file(cfg.output, dump_json({{"seed", cfg.seed}, {"checks", std::move(doc)}}));
  }
  if (failed > 0) {
    const auto first = std::find_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
    std::cerr << Json{{"error", "verification"}, {"check", first->name}, {"message", first->detail}}.dump()
              << '\n';
    return 1;
  }
  return 0;
}

inline int run_command(const RunConfig& cfg, std::ostream& out = std::cout) {
  cfg.validate();
  std::optional<ThreadCapGuard> guard;
  if (cfg.sequential) guard.emplace(1);
  switch (cfg.command) {
    case Command::Analyze: return cmd_analyze(cfg, out);
    case Command::Synthesize: return cmd_synthesize(cfg, out);
    case Command::Extend: return cmd_extend(cfg, out);
    case Command::PwReport: return cmd_pw_report(cfg, out);
    case Command::IntertwinerDump: return cmd_intertwiner_dump(cfg, out);
    case Command::Verify: return cmd_verify(cfg, out);
  }
  return 0;
}

}  // namespace crown
