#include "billiards/geometry/curve_io.hpp"

#include "billiards/error.hpp"
#include "billiards/io.hpp"

namespace billiards {

Json curve_to_json(const PlaneCurve& c) {
  Json mono = Json::array();
  for (const Monomial& m : c.monomials())
    mono.push_back({{"i", m.i}, {"j", m.j}, {"k", m.k}, {"re", m.c.real()}, {"im", m.c.imag()}});
  return {{"degree", c.degree()}, {"monomials", std::move(mono)}};
}

PlaneCurve curve_from_json(const Json& j) {
  try {
    const int d = j.at("degree").get<int>();
    std::vector<Monomial> mono;
    for (const Json& m : j.at("monomials")) {
      mono.push_back({m.at("i").get<int>(), m.at("j").get<int>(), m.at("k").get<int>(),
                      {m.at("re").get<double>(), m.value("im", 0.0)}});
    }
    return PlaneCurve(d, std::move(mono));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed curve document: ") + e.what());
  }
}

PlaneCurve read_curve_file(const std::string& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
  return curve_from_json(j);
}

void write_curve_file(const std::string& path, const PlaneCurve& c) {
  write_file_atomic(path, curve_to_json(c).dump(2) + "\n");
}

}  // namespace billiards
