#pragma once

// JSON run reports. nlohmann::json objects keep keys sorted, so dumps are
// deterministic for identical content.

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "vec3.hpp"

namespace devsurf {

inline constexpr int kReportSchema = 1;

using Json = nlohmann::json;

inline Json to_json(const Vector3& v) { return Json::array({v.x, v.y, v.z}); }
inline Json to_json(const Interval& r) { return Json::array({r.lo, r.hi}); }

struct RunReport {
  explicit RunReport(std::string cmd) : command(std::move(cmd)) {}

  std::string command;
  Json inputs = Json::object();
  std::vector<std::string> outputs;
  Json metrics = Json::object();
  std::vector<std::string> warnings;

  Json to_json() const {
    return Json{{"schema", kReportSchema}, {"command", command}, {"inputs", inputs},
                {"outputs", outputs},      {"metrics", metrics}, {"warnings", warnings}};
  }
};

inline Json error_json(const std::string& command, const char* kind, const std::string& message) {
  return Json{{"schema", kReportSchema}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
}

/// 0 success, 1 usage or parse, 2 mathematical failure, 3 I/O.
inline int exit_code_for(const Error& e) {
  if (dynamic_cast<const InputError*>(&e)) return 1;
  if (dynamic_cast<const IoError*>(&e)) return 3;
  return 2;
}

}  // namespace devsurf
