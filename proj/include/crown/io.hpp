#pragma once

// JSON files for grid functions, coefficient tables, bump specifications and
// reports. Doubles are written with 17 significant digits, so every value
// survives a write/read cycle bit for bit.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crown/error.hpp"
#include "crown/intertwining.hpp"
#include "crown/paley_wiener.hpp"
#include "crown/sphere.hpp"
#include "crown/test_function.hpp"
#include "crown/transform.hpp"

namespace crown {

using Json = nlohmann::json;

namespace detail {

inline void write_number(std::ostream& out, double v) {
  if (!std::isfinite(v)) {
    out << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

inline void write_json(std::ostream& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
  const std::string pad_end = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write_json(out, it.value(), indent, depth + 1);
      }
      out << nl << pad_end << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out << (flat ? ", " : ",");
        if (!flat) out << nl << pad;
        first = false;
        write_json(out, e, indent, depth + 1);
      }
      if (!flat) out << nl << pad_end;
      out << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

}  // namespace detail

inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream out;
  detail::write_json(out, j, indent, 0);
  out << '\n';
  return out.str();
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::InvalidArgument, "cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::Schema, "malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::InvalidArgument, "cannot write output file '" + path + "'");
  out << text;
  require(static_cast<bool>(out), ErrorKind::InvalidArgument, "write failed for '" + path + "'");
}

namespace detail {

template <typename T>
T field(const Json& j, const char* key, const char* what) {
  require(j.is_object() && j.contains(key), ErrorKind::Schema,
          std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    fail(ErrorKind::Schema, std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

inline Json complex_pair(cplx v) { return Json::array({v.real(), v.imag()}); }

}  // namespace detail

// ---------------------------------------------------------------------------
// GridFunction: {"n_theta", "n_phi", "cap"?, "values": [[re, im], ...]} theta-major.

inline Json to_json(const GridFunction& f) {
  Json vals = Json::array();
  for (const auto& v : f.values) vals.push_back(detail::complex_pair(v));
  Json j{{"n_theta", f.grid.n_theta()}, {"n_phi", f.grid.n_phi()}};
  if (!f.grid.full()) j["cap"] = f.grid.cap();
  j["values"] = std::move(vals);
  return j;
}

inline GridFunction grid_function_from_json(const Json& j) {
  const int nt = detail::field<int>(j, "n_theta", "GridFunction");
  const int np = detail::field<int>(j, "n_phi", "GridFunction");
  require(nt >= 1 && np >= 1, ErrorKind::Schema, "GridFunction: dimensions must be positive");
  const double cap = j.contains("cap") ? detail::field<double>(j, "cap", "GridFunction") : kPi;
  require(cap > 0.0 && cap <= kPi, ErrorKind::Schema, "GridFunction: cap must lie in (0, pi]");
  const Json& vals = j.at("values");
  require(vals.is_array(), ErrorKind::Schema, "GridFunction: 'values' must be an array");
  require(vals.size() == static_cast<std::size_t>(nt) * np, ErrorKind::Schema,
          "GridFunction: " + std::to_string(vals.size()) + " values for a " + std::to_string(nt) + "x" +
              std::to_string(np) + " grid");
  std::vector<cplx> v;
  v.reserve(vals.size());
  for (const auto& e : vals) {
    require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(), ErrorKind::Schema,
            "GridFunction: each value must be [re, im]");
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return GridFunction(SphereGrid(nt, np, cap), std::move(v));
}

// ---------------------------------------------------------------------------
// CoefficientTable: {"lmax", "entries": [{"l", "m", "re", "im"}, ...]} sorted by (l, m).

inline Json to_json(const CoefficientTable& t, bool omit_zero = true) {
  Json entries = Json::array();
  for (int l = 0; l <= t.lmax(); ++l) {
    for (int m = -t.lmax(); m <= t.lmax(); ++m) {
      const cplx v = t.at(l, m);
      if (omit_zero && v == 0.0) continue;
      entries.push_back({{"l", l}, {"m", m}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  return {{"lmax", t.lmax()}, {"entries", std::move(entries)}};
}

inline CoefficientTable table_from_json(const Json& j) {
  const int lmax = detail::field<int>(j, "lmax", "CoefficientTable");
  require(lmax >= 0, ErrorKind::Schema, "CoefficientTable: negative lmax");
  require(j.contains("entries") && j.at("entries").is_array(), ErrorKind::Schema,
          "CoefficientTable: 'entries' must be an array");
  CoefficientTable t(lmax);
  for (const auto& e : j.at("entries")) {
    const int l = detail::field<int>(e, "l", "CoefficientTable entry");
    const int m = detail::field<int>(e, "m", "CoefficientTable entry");
    require(t.contains(l, m), ErrorKind::Schema,
            "CoefficientTable: entry (" + std::to_string(l) + ", " + std::to_string(m) + ") out of range");
    t.at(l, m) = {detail::field<double>(e, "re", "CoefficientTable entry"),
                  detail::field<double>(e, "im", "CoefficientTable entry")};
  }
  return t;
}

// ---------------------------------------------------------------------------
// BumpSpec: {"radius", "profile": "smooth"|"cospow", "p", "m": int|null, "center": [theta, phi]}.

inline BumpSpec bump_spec_from_json(const Json& j) {
  BumpSpec s;
  s.radius = detail::field<double>(j, "radius", "BumpSpec");
  if (j.contains("profile")) {
    const auto name = detail::field<std::string>(j, "profile", "BumpSpec");
    require(name == "smooth" || name == "cospow", ErrorKind::Schema,
            "BumpSpec: profile must be 'smooth' or 'cospow'");
    s.profile = name == "smooth" ? Profile::Smooth : Profile::CosPow;
  }
  if (j.contains("p")) s.p = detail::field<int>(j, "p", "BumpSpec");
  if (j.contains("m") && !j.at("m").is_null()) s.ktype = detail::field<int>(j, "m", "BumpSpec");
  if (j.contains("center")) {
    const auto c = detail::field<std::vector<double>>(j, "center", "BumpSpec");
    require(c.size() == 2, ErrorKind::Schema, "BumpSpec: center must be [theta, phi]");
    s.center = {c[0], c[1]};
  }
  return s;
}

inline Json to_json(const BumpSpec& s) {
  Json j{{"radius", s.radius},
         {"profile", s.profile == Profile::Smooth ? "smooth" : "cospow"},
         {"p", s.p},
         {"center", Json::array({s.center.theta, s.center.phi})}};
  j["m"] = s.ktype ? Json(*s.ktype) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Reports.

inline Json to_json(const Calibration& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.entries()) j[k] = v;
  return j;
}

inline Json to_json(const PWReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"radius", v.radius},
                        {"verdict", v.pass ? "pass" : "fail"},
                        {"reasons", v.reasons},
                        {"decay_constants", v.decay_constants}});
  }
  Json decay = Json::object();
  for (std::size_t k = 0; k < r.decay_constants.size(); ++k) decay[std::to_string(k)] = r.decay_constants[k];
  Json singular = Json::array();
  for (const auto& s : r.weyl.singular) singular.push_back(detail::complex_pair(s));
  return {{"ktypes", r.ktypes},
          {"decay_constants", std::move(decay)},
          {"type_estimate",
           {{"r_hat", r.type.r_hat},
            {"interval", Json::array({r.type.lower, r.type.upper})},
            {"stderr", r.type.stderr_slope},
            {"r_alt", r.type.r_alt},
            {"t_ceiling", r.type.t_ceiling},
            {"zero_provider", r.type.zero}}},
          {"weyl_residual_max", r.weyl.max_residual},
          {"weyl_samples", {{"used", r.weyl.used}, {"skipped", r.weyl.skipped}, {"singular_t", singular}}},
          {"verdicts", std::move(verdicts)},
          {"samples_used", r.samples_used},
          {"calibration", to_json(r.calibration)}};
}

inline Json to_json(const IntertwinerScalar& s) {
  Json out = Json::array();
  for (const auto& [t, b] : s.samples) {
    out.push_back({{"m", s.m}, {"t_re", t.real()}, {"t_im", t.imag()}, {"b_re", b.real()}, {"b_im", b.imag()}});
  }
  return out;
}

}  // namespace crown
