#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "expr.hpp"

namespace chardep {

enum class ValidityKind { divides, not_divides, all_fields };
enum class InequalityClass { a, b, theorem_i, theorem_ii, ingleton, custom };
enum class NablaMode { chain, interval };

/// Which characteristics an inequality is claimed for.
struct Validity {
  ValidityKind kind = ValidityKind::all_fields;
  std::int64_t t = 0;

  bool holds_for(std::uint32_t p) const {
    switch (kind) {
      case ValidityKind::divides: return t % p == 0;
      case ValidityKind::not_divides: return t % p != 0;
      case ValidityKind::all_fields: return true;
    }
    return true;
  }
  friend bool operator==(const Validity&, const Validity&) = default;
};

struct FamilyDescriptor {
  std::int64_t n = 0;  // variable count
  std::int64_t t = 0;
  std::int64_t M = 0;  // n - t - 2 for the example families
  InequalityClass cls = InequalityClass::custom;
  std::optional<NablaMode> nabla;
  friend bool operator==(const FamilyDescriptor&, const FamilyDescriptor&) = default;
};

struct TaggedInequality {
  RankExpr expr;
  Validity validity;
  FamilyDescriptor family;
  VarSet variables;  // ordered; may list variables absent from expr
  friend bool operator==(const TaggedInequality&, const TaggedInequality&) = default;
};

inline std::string to_string(ValidityKind k) {
  switch (k) {
    case ValidityKind::divides: return "divides";
    case ValidityKind::not_divides: return "not_divides";
    case ValidityKind::all_fields: return "all_fields";
  }
  return "all_fields";
}

inline std::string to_string(InequalityClass c) {
  switch (c) {
    case InequalityClass::a: return "a";
    case InequalityClass::b: return "b";
    case InequalityClass::theorem_i: return "theorem_i";
    case InequalityClass::theorem_ii: return "theorem_ii";
    case InequalityClass::ingleton: return "ingleton";
    case InequalityClass::custom: return "custom";
  }
  return "custom";
}

inline std::string to_string(NablaMode m) { return m == NablaMode::chain ? "chain" : "interval"; }

inline std::string describe(const Validity& v) {
  switch (v.kind) {
    case ValidityKind::divides: return "char(F) divides " + std::to_string(v.t);
    case ValidityKind::not_divides: return "char(F) does not divide " + std::to_string(v.t);
    case ValidityKind::all_fields: return "all fields";
  }
  return "";
}

namespace detail {

using nlohmann::json;

inline json integer_to_json(const Integer& v) {
  if (v >= Integer(std::numeric_limits<std::int64_t>::min()) && v <= Integer(std::numeric_limits<std::int64_t>::max()))
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(where, "expected an integer");
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where, std::string("missing key '") + key + "'");
  return *it;
}

inline std::vector<std::string> names_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of variable names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw ParseError(where + "/" + std::to_string(i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

template <typename Enum, std::size_t N>
Enum enum_from_json(const json& j, const std::string& where, const std::array<Enum, N>& values) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  const auto s = j.get<std::string>();
  for (auto v : values)
    if (to_string(v) == s) return v;
  throw ParseError(where, "unrecognised value '" + s + "'");
}

}  // namespace detail

inline nlohmann::json rational_to_json(const Rational& r) {
  return {{"num", detail::integer_to_json(numerator(r))}, {"den", detail::integer_to_json(denominator(r))}};
}

inline Rational rational_from_json(const nlohmann::json& j, const std::string& where) {
  const auto num = detail::integer_from_json(detail::require(j, "num", where), where + "/num");
  const auto den = detail::integer_from_json(detail::require(j, "den", where), where + "/den");
  if (den <= 0) throw ParseError(where + "/den", "denominator must be positive");
  return Rational(num, den);
}

/// {"variables": [...], "terms": [{"coeff": {"num","den"}, "vars": [...]}]}
inline nlohmann::json to_json(const RankExpr& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [vars, c] : e.terms()) terms.push_back({{"coeff", rational_to_json(c)}, {"vars", vars}});
  return {{"variables", e.variables()}, {"terms", std::move(terms)}};
}

inline RankExpr expr_from_json(const nlohmann::json& j) {
  const auto& terms = detail::require(j, "terms", "");
  if (!terms.is_array()) throw ParseError("/terms", "expected an array");
  RankExpr e;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "/terms/" + std::to_string(i);
    const auto c = rational_from_json(detail::require(terms[i], "coeff", where), where + "/coeff");
    auto vars = detail::names_from_json(detail::require(terms[i], "vars", where), where + "/vars");
    e.add_term(std::move(vars), c);
  }
  return e;
}

inline nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("byte " + std::to_string(err.byte), err.what());
  }
}

inline RankExpr from_json(const std::string& text) { return expr_from_json(parse_json_text(text)); }

inline nlohmann::json to_json(const TaggedInequality& q) {
  auto j = to_json(q.expr);
  j["variables"] = q.variables.empty() ? q.expr.variables() : q.variables;
  j["validity"] = {{"kind", to_string(q.validity.kind)}, {"t", q.validity.t}};
  nlohmann::json fam = {{"n", q.family.n}, {"t", q.family.t}, {"M", q.family.M}, {"class", to_string(q.family.cls)}};
  if (q.family.nabla) fam["nabla"] = to_string(*q.family.nabla);
  j["family"] = std::move(fam);
  return j;
}

inline TaggedInequality tagged_from_json(const nlohmann::json& j) {
  TaggedInequality q;
  q.expr = expr_from_json(j);
  if (j.contains("variables")) q.variables = detail::names_from_json(j["variables"], "/variables");
  for (const auto& v : q.expr.variables())
    if (std::find(q.variables.begin(), q.variables.end(), v) == q.variables.end()) q.variables.push_back(v);
  if (j.contains("validity")) {
    const auto& v = j["validity"];
    q.validity.kind = detail::enum_from_json(
        detail::require(v, "kind", "/validity"), "/validity/kind",
        std::array{ValidityKind::divides, ValidityKind::not_divides, ValidityKind::all_fields});
    if (v.contains("t")) q.validity.t = detail::integer_from_json(v["t"], "/validity/t").convert_to<std::int64_t>();
    if (q.validity.kind != ValidityKind::all_fields && q.validity.t < 2)
      throw ParseError("/validity/t", "t must be at least 2");
  }
  if (j.contains("family")) {
    const auto& f = j["family"];
    if (!f.is_object()) throw ParseError("/family", "expected an object");
    auto get = [&](const char* key) -> std::int64_t {
      return f.contains(key) ? detail::integer_from_json(f[key], std::string("/family/") + key).convert_to<std::int64_t>()
                             : 0;
    };
    q.family.n = get("n");
    q.family.t = get("t");
    q.family.M = get("M");
    if (f.contains("class"))
      q.family.cls = detail::enum_from_json(
          f["class"], "/family/class",
          std::array{InequalityClass::a, InequalityClass::b, InequalityClass::theorem_i, InequalityClass::theorem_ii,
                     InequalityClass::ingleton, InequalityClass::custom});
    if (f.contains("nabla"))
      q.family.nabla =
          detail::enum_from_json(f["nabla"], "/family/nabla", std::array{NablaMode::chain, NablaMode::interval});
  }
  return q;
}

/// Multi-line human-readable rendering of a tagged inequality.
inline std::string to_text(const TaggedInequality& q) {
  std::string out = "class " + to_string(q.family.cls);
  if (q.family.n) out += "  n=" + std::to_string(q.family.n);
  if (q.family.t) out += "  t=" + std::to_string(q.family.t);
  if (q.family.M) out += "  M=" + std::to_string(q.family.M);
  if (q.family.nabla) out += "  nabla=" + to_string(*q.family.nabla);
  out += "\nvalid over: " + describe(q.validity) + "\nvariables:";
  for (const auto& v : q.variables) out += " " + v;
  out += "\n" + to_text(q.expr) + " >= 0\n";
  return out;
}

}  // namespace chardep
