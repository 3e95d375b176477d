#include "belyi/function_spec.hpp"

#include <json.hpp>

#include <charconv>

#include "belyi/maps.hpp"

namespace belyi {
namespace {

using nlohmann::json;

std::vector<cplx> read_coeffs(const json& j, const char* key) {
  if (!j.is_array()) throw SpecError(std::string("'") + key + "' must be an array of [re, im] pairs");
  std::vector<cplx> out;
  for (const json& c : j) {
    if (c.is_number()) {
      out.emplace_back(c.get<double>(), 0.0);
      continue;
    }
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      throw SpecError(std::string("'") + key + "' entries must be [re, im] pairs");
    out.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return out;
}

json write_coeffs(const std::vector<cplx>& c) {
  json out = json::array();
  for (cplx z : c) out.push_back({z.real(), z.imag()});
  return out;
}

int parse_int(const std::string& s, const std::string& name) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw SpecError("bad integer in builtin '" + name + "'");
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t k = s.find(':', start);
    parts.push_back(s.substr(start, k - start));
    if (k == std::string::npos) return parts;
    start = k + 1;
  }
}

}  // namespace

FunctionSpec parse_function_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("function spec must be a JSON object");
  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw SpecError("'builtin' must be a string");
    FunctionSpec s = builtin_spec(j["builtin"].get<std::string>());
    if (j.contains("label") && j["label"].is_string()) s.label = j["label"].get<std::string>();
    return s;
  }
  if (!j.contains("num")) throw SpecError("function spec needs 'num' or 'builtin'");
  FunctionSpec s;
  s.num = read_coeffs(j["num"], "num");
  s.den = j.contains("den") ? read_coeffs(j["den"], "den") : std::vector<cplx>{1.0};
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw SpecError("'label' must be a string");
    s.label = j["label"].get<std::string>();
  }
  if (s.num.empty()) throw SpecError("'num' is empty");
  to_ratfunc(s);
  return s;
}

std::string serialize(const FunctionSpec& spec) {
  json j;
  j["num"] = write_coeffs(spec.num);
  j["den"] = write_coeffs(spec.den);
  if (!spec.label.empty()) j["label"] = spec.label;
  return j.dump();
}

FunctionSpec builtin_spec(const std::string& name) {
  const std::vector<std::string> p = split(name);
  if (p.size() < 2 || p.size() > 3) throw SpecError("unknown builtin '" + name + "'");
  const int n = parse_int(p[1], name);
  const int sign = p.size() == 3 ? parse_int(p[2], name) : 1;
  if (n < 1 || (sign != 1 && sign != -1)) throw SpecError("bad parameters in builtin '" + name + "'");
  if (p[0] == "chebyshev") return to_spec(chebyshev(n, sign), name);
  if (p[0] == "circle") return to_spec(circle_belyi(n, sign), name);
  if (p.size() == 2 && p[0] == "power") return to_spec(RatFunc::polynomial(ComplexPoly::monomial(n)), name);
  if (p.size() == 2 && p[0] == "twisted-circle") return to_spec(twisted_circle_belyi(circle_belyi(1), n), name);
  throw SpecError("unknown builtin '" + name + "'");
}

std::vector<std::string> builtin_corpus() {
  std::vector<std::string> out;
  for (int n = 1; n <= 6; ++n)
    for (const char* s : {"", ":-1"}) out.push_back("chebyshev:" + std::to_string(n) + s);
  for (int n = 1; n <= 3; ++n)
    for (const char* s : {"", ":-1"}) out.push_back("circle:" + std::to_string(n) + s);
  out.push_back("twisted-circle:2");
  return out;
}

RatFunc to_ratfunc(const FunctionSpec& spec) {
  if (spec.num.empty()) throw SpecError("'num' is empty");
  if (spec.den.empty()) throw SpecError("'den' is empty");
  const ComplexPoly den(spec.den);
  if (den.is_zero()) throw SpecError("'den' is identically zero");
  return RatFunc(ComplexPoly(spec.num), den);
}

FunctionSpec to_spec(const RatFunc& f, std::string label) {
  return {f.num().coeffs(), f.den().coeffs(), std::move(label)};
}

}  // namespace belyi
