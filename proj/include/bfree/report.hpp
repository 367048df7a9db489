#pragma once

// Deterministic report emission. Exact rationals ship as numerator and
// denominator strings next to a fixed-precision decimal rendering; re-running
// a command with the same config and seed reproduces the "results" object
// byte for byte (the timing block sits outside it).

#include <json.hpp>

#include <chrono>
#include <string>

#include "bfree/bigint.hpp"
#include "bfree/cache.hpp"
#include "bfree/config.hpp"
#include "bfree/measure.hpp"

namespace bfree {

inline constexpr int kReportDecimalDigits = 12;

inline Json rational_json(const Rat& q, int digits = kReportDecimalDigits) {
  return Json{{"num", q.get_num().get_str()},
              {"den", q.get_den().get_str()},
              {"decimal", decimal_string(q, digits)},
              {"digits", digits}};
}

inline Json interval_json(const IntervalValue& v, int digits = kReportDecimalDigits) {
  return Json{{"value", rational_json(v.value, digits)},
              {"tail_halfwidth", rational_json(v.halfwidth, digits)},
              {"lower", decimal_string(v.value - v.halfwidth, digits)},
              {"upper", decimal_string(v.value + v.halfwidth, digits)}};
}

inline Json box_json(const Box& box) {
  return Json{{"lo", box.los()}, {"hi", box.his()}, {"points", box.point_count_exact().get_str()}};
}

class Report {
 public:
  Report(std::string command, const RunConfig& config)
      : start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["config_hash"] = config.hash_hex();
    doc_["seed"] = config.seed();
    doc_["results"] = Json::object();
  }

  Json& results() { return doc_["results"]; }

  // Full document including timing; "results" alone is the deterministic part.
  Json finish() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
    doc_["timing_ms"] = ms.count();
    return doc_;
  }

  void write(const std::string& path) { write_file_atomic(path, finish().dump(2) + "\n"); }

 private:
  Json doc_;
  std::chrono::steady_clock::time_point start_;
};

inline void write_csv_atomic(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  write_file_atomic(path, out);
}

}  // namespace bfree
