#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dividekit/divide.hpp"

namespace dividekit {

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string details;
};

struct RunReport {
  std::string input_digest;
  std::vector<CheckRecord> records;
  bool overall = false;
  bool input_error = false;

  std::string to_json() const;
  std::string to_text() const;
};

struct PipelineOptions {
  std::optional<std::pair<int, Sign>> anchor;
  bool tamper_s = false;  // fault injection for the failure path
};

// validate -> regions/signs -> mu -> diagram -> depths -> matrices ->
// good paths -> arcsets -> adapted -> telescoping -> linear orders ->
// exceptional -> surface cross-checks.
RunReport run_pipeline(const std::string& divide_json, const PipelineOptions& opts = {});

}  // namespace dividekit
