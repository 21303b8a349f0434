#pragma once

// JSON-lines tuple records and CSV output.
//
// A record is one JSON object per line:
//   {"entries": ["8192", "-8181", "-11"], "family": "...", "params": {...},
//    "structural_parts": ["..."], "mode": "certified", "universe": "U", "forbidden": ["3"]}
// Only "entries" is required. Every integer is a decimal string.

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nconj/constructions.hpp"
#include "nconj/quality.hpp"

namespace nconj {

using json = nlohmann::ordered_json;

struct TupleRecord {
  Tuple tuple;
  std::string family;
  json params = json::object();
  std::vector<Int> structural_parts;
  std::optional<std::string> mode;
  std::optional<Universe> universe;
};

namespace detail {

inline json int_array(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_decimal(x));
  return a;
}

inline json int_array(const std::set<Int>& v) { return int_array(std::vector<Int>(v.begin(), v.end())); }

inline std::vector<Int> parse_int_array(const json& j, std::size_t line, const char* field) {
  if (!j.is_array()) throw parse_error(line, std::string("\"") + field + "\" must be an array");
  std::vector<Int> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw parse_error(line, std::string("\"") + field + "\" elements must be decimal strings");
    try {
      out.push_back(parse_decimal(e.get<std::string>()));
    } catch (const domain_error& ex) {
      throw parse_error(line, ex.what());
    }
  }
  return out;
}

} // namespace detail

inline json params_to_json(const FamilyParams& params) {
  using detail::int_array;
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        json j = json::object();
        if constexpr (std::is_same_v<P, KonyaginParams>) {
          j["k"] = p.k;
        } else if constexpr (std::is_same_v<P, OddParams>) {
          j["n"] = p.n;
          j["forbidden"] = int_array(p.forbidden.elements());
          j["pell_index"] = p.pell_index;
          j["y_policy"] = to_string(p.y_policy);
          j["y"] = to_decimal(p.y);
          j["s"] = to_decimal(p.s);
          j["t"] = to_decimal(p.t);
          j["split_m"] = to_decimal(p.split_m);
          j["split_v_exceeds_q"] = p.split.v_exceeds_q();
        } else if constexpr (std::is_same_v<P, GeneralParams>) {
          j["n"] = p.n;
          j["forbidden"] = int_array(p.forbidden.elements());
          j["s_policy"] = to_string(p.s_policy);
          j["exponent_policy"] = to_string(p.exponent_policy);
          j["s"] = to_decimal(p.s);
          j["t"] = to_decimal(p.t);
          j["y"] = to_decimal(p.y);
          j["v"] = to_decimal(p.v);
          j["w"] = to_decimal(p.w);
          j["e"] = p.exponent;
          j["e_min"] = p.exponent_min;
          j["exponent_multiple"] = p.exponent_multiple;
          if (p.order_lcm != 0) j["order_lcm"] = to_decimal(p.order_lcm);
        } else if constexpr (std::is_same_v<P, NineFifthsParams>) {
          j["ell"] = to_decimal(p.ell);
          j["h"] = p.h;
        } else if constexpr (std::is_same_v<P, QuadrupleParams>) {
          j["h"] = p.h;
        } else if constexpr (std::is_same_v<P, GeometricParams>) {
          j["n"] = p.n;
          j["y"] = to_decimal(p.y);
        }
        return j;
      },
      params);
}

inline TupleRecord record_from_instance(const FamilyInstance& fi) {
  TupleRecord r;
  r.tuple = fi.tuple;
  r.family = fi.family;
  r.params = params_to_json(fi.params);
  r.structural_parts = fi.part_values();
  r.mode = to_string(fi.mode);
  r.universe = fi.target;
  return r;
}

inline json record_to_json(const TupleRecord& r) {
  json j = json::object();
  j["entries"] = detail::int_array(r.tuple.entries());
  if (!r.family.empty()) j["family"] = r.family;
  if (!r.params.empty()) j["params"] = r.params;
  if (!r.structural_parts.empty()) j["structural_parts"] = detail::int_array(r.structural_parts);
  if (r.mode) j["mode"] = *r.mode;
  if (r.universe) {
    j["universe"] = to_string(r.universe->tag);
    if (!r.universe->forbidden.empty()) j["forbidden"] = detail::int_array(r.universe->forbidden.elements());
  }
  return j;
}

inline std::string record_to_line(const TupleRecord& r) { return record_to_json(r).dump(); }

/// Parses one line; `line` is the 1-based line number used in diagnostics.
inline TupleRecord parse_record(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(line, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error(line, "record must be a JSON object");
  if (!j.contains("entries")) throw parse_error(line, "missing \"entries\"");
  TupleRecord r;
  try {
    r.tuple = Tuple(detail::parse_int_array(j["entries"], line, "entries"));
  } catch (const domain_error& e) {
    throw parse_error(line, e.what());
  }
  if (j.contains("family")) {
    if (!j["family"].is_string()) throw parse_error(line, "\"family\" must be a string");
    r.family = j["family"].get<std::string>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw parse_error(line, "\"params\" must be an object");
    r.params = j["params"];
  }
  if (j.contains("structural_parts"))
    r.structural_parts = detail::parse_int_array(j["structural_parts"], line, "structural_parts");
  for (const auto& p : r.structural_parts)
    if (p == 0) throw parse_error(line, "structural parts must be nonzero");
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw parse_error(line, "\"mode\" must be a string");
    r.mode = j["mode"].get<std::string>();
  }
  if (j.contains("universe")) {
    if (!j["universe"].is_string()) throw parse_error(line, "\"universe\" must be a string");
    try {
      Universe u;
      u.tag = parse_universe_tag(j["universe"].get<std::string>());
      if (j.contains("forbidden"))
        u.forbidden = ForbiddenSet(detail::parse_int_array(j["forbidden"], line, "forbidden"));
      r.universe = u;
    } catch (const domain_error& e) {
      throw parse_error(line, e.what());
    }
  }
  return r;
}

/// Reads every non-blank line; the first malformed line raises parse_error.
inline std::vector<TupleRecord> read_records(std::istream& in) {
  std::vector<TupleRecord> out;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_record(text, line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

/// Fixed six-decimal rendering used for every reported real.
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

} // namespace nconj
