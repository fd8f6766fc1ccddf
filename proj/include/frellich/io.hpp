#pragma once

// CSV and JSON serialization. Numbers are printed with %.15g so repeated
// runs produce identical bytes.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frellich/constants.hpp"
#include "frellich/errors.hpp"
#include "frellich/finsler.hpp"
#include "frellich/geometry.hpp"
#include "frellich/parser.hpp"
#include "frellich/verify.hpp"

namespace frellich {

using json = nlohmann::ordered_json;

inline std::string format_number(double v, int digits = 15) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// JSON cannot hold inf/nan; those become strings.
inline json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

// ---------------------------------------------------------------------------
// Norm tables

inline void write_table_csv(std::ostream& os, const norm_table& t) {
  os << "angle,fstar\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    os << format_number(t.angle(i)) << ',' << format_number(t.value(i)) << '\n';
}

inline json table_to_json(const norm_table& t) {
  json j;
  j["symbol"] = to_string(t.symbol());
  j["points"] = t.size();
  j["requested_points"] = t.grid().points;
  j["max_points"] = t.grid().max_points;
  j["tol"] = t.grid().tol;
  j["achieved_tol"] = t.achieved_tol();
  j["doublings"] = t.doublings();
  j["fstar"] = std::vector<double>(t.values().begin(), t.values().end());
  return j;
}

/// `angle,fstar,fstarstar,f` at `points` equally spaced angles.
inline void write_dual_csv(std::ostream& os, const norm_table& t, std::size_t points) {
  os << "angle,fstar,fstarstar,f\n";
  const finsler_norm& norm = t.norm();
  for (std::size_t i = 0; i < points; ++i) {
    const double a = two_pi * static_cast<double>(i) / static_cast<double>(points);
    os << format_number(a) << ',' << format_number(norm.dual_angle(a)) << ','
       << format_number(t.biconjugate_angle(a).value) << ',' << format_number(norm.F_angle(a)) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Constants and sweeps

inline json constants_to_json(const constants_report& r) {
  json j;
  j["m"] = r.m;
  j["lambda"] = r.lambda;
  j["Lambda"] = r.Lambda;
  j["c"] = r.c;
  j["mu"] = r.mu;
  j["M"] = r.M;
  j["s"] = r.s;
  j["A"] = to_string(r.A);
  j["A_value"] = to_double(r.A);
  j["finsler_bound"] = r.finsler_bound;
  j["comparison_bound"] = r.comparison;
  j["moment_error"] = r.moment_error;
  j["table_tol"] = r.table_tol;
  j["table_points"] = r.table_points;
  return j;
}

inline void write_constants_csv(std::ostream& os, const constants_report& r) {
  os << "m,lambda,Lambda,c,mu,M,s,A\n"
     << r.m << ',' << format_number(r.lambda) << ',' << format_number(r.Lambda) << ','
     << format_number(r.c) << ',' << format_number(r.mu) << ',' << format_number(r.M) << ','
     << format_number(r.s) << ',' << to_string(r.A) << '\n';
}

inline constexpr const char* sweep_csv_header = "beta,lambda,Lambda,c,mu,M,s";

/// Failed rows keep their β and leave the other fields empty.
inline void write_sweep_csv(std::ostream& os, const std::vector<sweep_row>& rows) {
  os << sweep_csv_header << '\n';
  for (const auto& r : rows) {
    os << format_number(r.beta);
    if (r.ok())
      for (double v : {r.lambda, r.Lambda, r.c, r.mu, r.M, r.s}) os << ',' << format_number(v);
    else
      os << ",,,,,,";
    os << '\n';
  }
}

inline json sweep_to_json(const std::vector<sweep_row>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    json j;
    j["beta"] = r.beta;
    if (r.ok()) {
      j["lambda"] = r.lambda;
      j["Lambda"] = r.Lambda;
      j["c"] = r.c;
      j["mu"] = r.mu;
      j["M"] = r.M;
      j["s"] = r.s;
    } else {
      j["error"] = r.error;
    }
    a.push_back(std::move(j));
  }
  return a;
}

inline std::vector<sweep_row> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != sweep_csv_header) throw parse_error("sweep csv: bad header", 0);
  std::vector<sweep_row> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 7) throw parse_error("sweep csv: expected 7 fields", lineno);
    sweep_row r;
    try {
      r.beta = std::stod(cells[0]);
      if (cells[1].empty()) {
        r.error = "missing";
      } else {
        double* f[] = {&r.lambda, &r.Lambda, &r.c, &r.mu, &r.M, &r.s};
        for (int k = 0; k < 6; ++k) *f[k] = std::stod(cells[static_cast<std::size_t>(k) + 1]);
      }
    } catch (const std::exception&) {
      throw parse_error("sweep csv: malformed number", lineno);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Domains

/// Parses `{ "faces": [ { "normal": [a, b], "offset": c }, ... ] }`; normals
/// need not be unit length.
inline convex_polytope polytope_from_json(const json& j) {
  if (!j.is_object() || !j.contains("faces") || !j["faces"].is_array())
    throw parse_error("polytope json: expected an object with a \"faces\" array", 0);
  std::vector<face> faces;
  std::size_t k = 0;
  for (const auto& f : j["faces"]) {
    if (!f.is_object() || !f.contains("normal") || !f.contains("offset") || !f["normal"].is_array() ||
        !f["offset"].is_number())
      throw parse_error("polytope json: face needs \"normal\" array and numeric \"offset\"", k);
    face out;
    for (const auto& v : f["normal"]) {
      if (!v.is_number()) throw parse_error("polytope json: non-numeric normal component", k);
      out.normal.push_back(v.get<double>());
    }
    out.offset = f["offset"].get<double>();
    faces.push_back(std::move(out));
    ++k;
  }
  return convex_polytope::from_raw_faces(std::move(faces));
}

inline convex_polytope read_polytope_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open polytope file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("polytope json: ") + e.what(), e.byte);
  }
  return polytope_from_json(j);
}

inline json polytope_to_json(const convex_polytope& p) {
  json faces = json::array();
  for (const auto& f : p.faces()) faces.push_back({{"normal", f.normal}, {"offset", f.offset}});
  return {{"faces", faces}};
}

inline json domain_to_json(const domain& d) {
  if (const auto* h = std::get_if<half_space>(&d)) return {{"halfspace", h->normal()}};
  return polytope_to_json(std::get<convex_polytope>(d));
}

// ---------------------------------------------------------------------------
// Reports

inline json report_to_json(const quotient_report& r) {
  json j;
  j["inequality"] = r.inequality;
  j["energy"] = to_string(r.energy);
  j["energy_value"] = r.energy_value;
  j["weighted_mass"] = r.weighted_mass;
  j["mass_error"] = r.mass_error;
  j["ratio"] = json_number(r.ratio);
  j["bound"] = r.bound;
  j["margin"] = json_number(r.margin);
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  if (r.inequality == "halfspace") {
    j["sharp_ratio"] = r.sharp_ratio;
  } else {
    j["comparison_bound"] = r.comparison_bound;
    j["beats_comparison"] = r.beats_comparison;
  }
  return j;
}

inline json duality_to_json(const duality_report& r) {
  json j;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["worst_slack"] = json_number(r.worst_slack);
  j["worst_xi"] = r.worst_xi;
  j["worst_omega"] = r.worst_omega;
  j["pass"] = r.pass;
  return j;
}

inline json sandwich_to_json(const sandwich_report& r) {
  json j;
  j["beta"] = r.beta;
  j["lower_factor"] = r.lower_factor;
  j["scale"] = r.scale;
  j["min_value"] = r.min_value;
  j["max_value"] = r.max_value;
  j["lower_margin"] = r.lower_margin;
  j["upper_margin"] = r.upper_margin;
  j["lower_ok"] = r.lower_ok;
  j["upper_ok"] = r.upper_ok;
  j["pass"] = r.pass;
  return j;
}

}  // namespace frellich
