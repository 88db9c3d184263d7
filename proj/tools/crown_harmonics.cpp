// crown_harmonics: batch front end for the kernel transform, its extension,
// the Paley-Wiener report and the verification suite.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "crown/cli.hpp"

namespace {

using crown::ErrorKind;

// "TxP", e.g. 128x16.
void parse_grid(const std::string& s, crown::RunConfig& cfg) {
  const auto x = s.find('x');
  crown::require(x != std::string::npos, ErrorKind::InvalidArgument, "--grid expects TxP, got '" + s + "'");
  try {
    cfg.n_theta = std::stoi(s.substr(0, x));
    cfg.n_phi = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    crown::fail(ErrorKind::InvalidArgument, "--grid expects TxP, got '" + s + "'");
  }
  crown::require(*cfg.n_theta > 0 && *cfg.n_phi > 0, ErrorKind::InvalidArgument, "--grid dimensions must be positive");
}

// "re" or "re,im".
crown::cplx parse_ell(const std::string& s) {
  try {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    crown::fail(ErrorKind::InvalidArgument, "--ell expects re or re,im, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis on the sphere through the complexified Poisson kernel"};
  app.require_subcommand(1);

  crown::RunConfig cfg;
  std::string grid;
  std::vector<std::string> ells;
  std::vector<std::string> calib;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "GridFunction, BumpSpec or CoefficientTable JSON");
    sub->add_option("--output", cfg.output, "output file");
    sub->add_option("--lmax", cfg.lmax, "truncation degree");
    sub->add_option("--grid", grid, "sampling grid TxP");
    sub->add_option("--calib", calib, "calibration override key=value (repeatable)");
    sub->add_flag("--sequential", cfg.sequential, "single-threaded, bit-reproducible execution");
  };

  struct Sub {
    const char* name;
    const char* help;
    crown::Command command;
  };
  const Sub subs[] = {
      {"analyze", "kernel coefficients c(l, m) of a function", crown::Command::Analyze},
      {"synthesize", "Sherman partial sum from a table or an extension", crown::Command::Synthesize},
      {"extend", "holomorphic extension at complex l", crown::Command::Extend},
      {"pw-report", "Paley-Wiener membership report", crown::Command::PwReport},
      {"intertwiner-dump", "sampled intertwining scalars b_m(t)", crown::Command::IntertwinerDump},
      {"verify", "run the acceptance suite and module invariants", crown::Command::Verify},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    sub->callback([&cfg, c = s.command] { cfg.command = c; });
    if (s.command == crown::Command::PwReport) {
      sub->add_option("--radii", cfg.radii, "candidate radii r1,r2,...")->delimiter(',');
      sub->add_option("--line-tmax", cfg.line_tmax, "end of the sampled line Re l = -1/2");
      sub->add_option("--csv", cfg.csv, "type curve (t, log|phi|) as CSV");
    }
    if (s.command == crown::Command::Extend || s.command == crown::Command::IntertwinerDump) {
      sub->add_option("--ell", ells, "spectral parameter re or re,im (repeatable)");
      sub->add_option("--m", cfg.ms, "K-types m1,m2,...")->delimiter(',');
    }
    if (s.command == crown::Command::Verify) sub->add_option("--seed", cfg.seed, "seed for randomized suites");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << crown::error_json(ErrorKind::InvalidArgument, e.what()) << '\n';
    return 2;
  }

  try {
    if (!grid.empty()) parse_grid(grid, cfg);
    for (const auto& e : ells) cfg.ells.push_back(parse_ell(e));
    for (const auto& c : calib) {
      crown::Calibration probe;
      probe.set_from_string(c);  // validates key and number
      const auto eq = c.find('=');
      cfg.calibration[c.substr(0, eq)] = std::stod(c.substr(eq + 1));
    }
    return crown::run_command(cfg);
  } catch (const crown::Error& e) {
    std::cerr << crown::error_json(e.kind(), e.what()) << '\n';
    return crown::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << crown::error_json(ErrorKind::Numerical, e.what()) << '\n';
    return 4;
  }
}
