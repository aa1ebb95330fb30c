#include "billiards/report.hpp"

#include <algorithm>

namespace billiards {

Check& Report::add(std::string name, bool passed, Json witness) {
  checks.push_back({std::move(name), passed, std::move(witness)});
  return checks.back();
}

bool Report::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* Report::find(const std::string& name) const noexcept {
  for (const Check& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Json Report::to_json() const {
  Json j;
  j["title"] = title;
  j["passed"] = passed();
  Json arr = Json::array();
  for (const Check& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  j["checks"] = std::move(arr);
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace billiards
