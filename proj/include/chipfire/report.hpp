#pragma once

#include <string>

#include "json.hpp"

namespace chipfire {

/// Machine-readable CLI report. The payload keys sit at the top level next
/// to the fixed fields; `elapsed_ms` is the only field that varies between
/// identical runs.
struct RunReport {
  std::string command;
  std::string input_digest;
  nlohmann::json payload = nlohmann::json::object();
  double elapsed_ms = 0.0;
  bool limit_exceeded = false;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j = r.payload;
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  j["elapsed_ms"] = r.elapsed_ms;
  j["limit_exceeded"] = r.limit_exceeded;
  return j;
}

inline std::string emit(const RunReport& r) { return to_json(r).dump() + "\n"; }

inline RunReport parse_report(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  r.limit_exceeded = j.at("limit_exceeded").get<bool>();
  for (const char* key : {"command", "input_digest", "elapsed_ms", "limit_exceeded"}) j.erase(key);
  r.payload = std::move(j);
  return r;
}

/// The report without its timing field, for byte-level determinism checks.
inline std::string without_timing(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  j.erase("elapsed_ms");
  return j.dump();
}

}  // namespace chipfire
