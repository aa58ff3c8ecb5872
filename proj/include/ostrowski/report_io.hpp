#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"
#include "ostrowski/bounds.hpp"
#include "ostrowski/means.hpp"

namespace ostrowski {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace detail

inline Json to_json(const BoundReport& r) {
  Json j;
  j["p"] = r.p;
  j["mode"] = to_string(r.mode);
  j["deviation"] = r.deviation;
  j["classical"] = r.classical;
  j["halfmax"] = r.halfmax;
  j["refined"] = r.refined;
  j["piecewise_maxterm"] = detail::optional_json(r.piecewise_maxterm);
  j["additive_term"] = detail::optional_json(r.additive_term);
  j["S"] = detail::optional_json(r.value_sum);
  j["total_bound"] = r.total_bound;
  j["status"] = to_string(r.status);
  j["certified"] = r.certified;
  j["tightness_ratio"] = r.tightness_ratio;
  j["tightness_flagged"] = r.tightness_flagged;
  j["argmax_segment"] = detail::optional_json(r.argmax_segment);
  return j;
}

inline Json to_json(const InequalityCheck& c) {
  return Json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

inline Json to_json(const MeansReport& r) {
  Json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["A"] = r.A;
  j["G"] = r.G;
  j["H"] = r.H;
  j["L"] = r.L;
  j["ineq_i"] = to_json(r.ineq_i);
  j["ineq_ii"] = to_json(r.ineq_ii);
  j["ineq_iii"] = to_json(r.ineq_iii);
  return j;
}

inline constexpr const char* kSweepCsvHeader =
    "p,deviation,classical,halfmax,refined,total_bound,status,tightness_ratio";

/// 17 significant digits, enough to round-trip any binary64 value.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_row(const BoundReport& r) {
  std::string row;
  for (double v : {r.p, r.deviation, r.classical, r.halfmax, r.refined, r.total_bound}) {
    row += format_g17(v);
    row += ',';
  }
  row += to_string(r.status);
  row += ',';
  row += format_g17(r.tightness_ratio);
  return row;
}

inline void write_csv(std::ostream& os, std::span<const BoundReport> reports) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : reports) os << csv_row(r) << '\n';
}

}  // namespace ostrowski
