#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace billiards {

using Json = nlohmann::ordered_json;

/// One named verification with its verdict and whatever witness data explains it.
struct Check {
  std::string name;
  bool passed = false;
  Json witness = Json::object();
};

/// Ordered list of checks produced by a verification routine.
struct Report {
  std::string title;
  std::vector<Check> checks;
  Json notes = Json::object();

  Check& add(std::string name, bool passed, Json witness = Json::object());
  bool passed() const noexcept;
  const Check* find(const std::string& name) const noexcept;
  Json to_json() const;
};

}  // namespace billiards
