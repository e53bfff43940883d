#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "subspace.hpp"

namespace chardep {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline std::string to_string(const Rational& r) { return r.str(); }

/// Orders names so that numeric runs compare by value: A2 < A10 < B1 < C.
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      auto na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

struct NameLess {
  bool operator()(const std::string& a, const std::string& b) const { return natural_less(a, b); }
};

using VarSet = std::vector<std::string>;

inline VarSet canonical_varset(VarSet vars) {
  std::sort(vars.begin(), vars.end(), NameLess{});
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

inline VarSet varset_union(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return canonical_varset(std::move(out));
}

/// Smaller varsets first, then lexicographic under natural name order.
struct VarSetLess {
  bool operator()(const VarSet& a, const VarSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), NameLess{});
  }
};

/// Linear combination of joint entropies, read as the inequality
/// "sum coeff * H(varset) >= 0". Canonical at all times: no zero
/// coefficients, no empty varsets, varsets sorted and deduplicated.
class RankExpr {
 public:
  using TermMap = std::map<VarSet, Rational, VarSetLess>;

  RankExpr() = default;

  RankExpr& add_term(VarSet vars, const Rational& coeff) {
    vars = canonical_varset(std::move(vars));
    if (vars.empty() || coeff == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(std::move(vars), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const VarSet& vars) const {
    auto it = terms_.find(canonical_varset(vars));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  VarSet variables() const {
    VarSet out;
    for (const auto& [vars, c] : terms_) out.insert(out.end(), vars.begin(), vars.end());
    return canonical_varset(std::move(out));
  }

  RankExpr& operator+=(const RankExpr& other) {
    for (const auto& [vars, c] : other.terms_) add_term(vars, c);
    return *this;
  }
  RankExpr& operator-=(const RankExpr& other) {
    for (const auto& [vars, c] : other.terms_) add_term(vars, -c);
    return *this;
  }
  RankExpr& operator*=(const Rational& r) {
    if (r == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [vars, c] : terms_) c *= r;
    return *this;
  }

  friend RankExpr operator+(RankExpr a, const RankExpr& b) { return a += b; }
  friend RankExpr operator-(RankExpr a, const RankExpr& b) { return a -= b; }
  friend RankExpr operator*(const Rational& r, RankExpr e) { return e *= r; }
  friend RankExpr operator*(std::int64_t k, RankExpr e) { return e *= Rational(k); }
  friend RankExpr operator-(RankExpr e) { return e *= Rational(-1); }
  friend bool operator==(const RankExpr& a, const RankExpr& b) { return a.terms_ == b.terms_; }

 private:
  TermMap terms_;
};

// Builders. Each expands into joint-entropy terms with coefficients +-1.

inline RankExpr h(const VarSet& s) { return RankExpr{}.add_term(s, 1); }

/// H(S|T) = H(S u T) - H(T)
inline RankExpr cond_h(const VarSet& s, const VarSet& t) {
  return RankExpr{}.add_term(varset_union(s, t), 1).add_term(t, -1);
}

/// I(S;T) = H(S) + H(T) - H(S u T)
inline RankExpr mi(const VarSet& s, const VarSet& t) {
  return RankExpr{}.add_term(s, 1).add_term(t, 1).add_term(varset_union(s, t), -1);
}

/// I(S;T|U) = H(S u U) + H(T u U) - H(S u T u U) - H(U)
inline RankExpr cmi(const VarSet& s, const VarSet& t, const VarSet& u) {
  return RankExpr{}
      .add_term(varset_union(s, u), 1)
      .add_term(varset_union(t, u), 1)
      .add_term(varset_union(varset_union(s, t), u), -1)
      .add_term(u, -1);
}

inline RankExpr add(const RankExpr& a, const RankExpr& b) { return a + b; }
inline RankExpr scale(const RankExpr& e, const Rational& r) { return r * e; }
inline RankExpr negate(const RankExpr& e) { return -e; }

/// Exact value of the expression on an assignment.
inline Rational evaluate(const RankExpr& e, const Assignment& a) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<const Subspace*> vars;
  for (const auto& name : e.variables()) {
    index.emplace(name, vars.size());
    vars.push_back(&a.at(name));
  }
  Rational total = 0;
  if (vars.size() > 64) {
    for (const auto& [vs, c] : e.terms()) total += c * Rational(static_cast<long long>(joint_entropy(a, vs)));
    return total;
  }
  EntropyTable table(a.field(), a.ambient_dim(), std::move(vars));
  for (const auto& [vs, c] : e.terms()) {
    std::uint64_t mask = 0;
    for (const auto& name : vs) mask |= std::uint64_t{1} << index.at(name);
    total += c * Rational(static_cast<long long>(table(mask)));
  }
  return total;
}

/// An expression lowered for repeated evaluation: variables are indexed,
/// varsets become bitmasks and coefficients are scaled to integers over a
/// common denominator.
class CompiledExpr {
 public:
  explicit CompiledExpr(const RankExpr& e) : variables_(e.variables()) {
    if (variables_.size() > 64) throw ParamOutOfRange("expressions with more than 64 variables are not supported");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < variables_.size(); ++i) index.emplace(variables_[i], i);
    Integer lcm = 1;
    for (const auto& [vs, c] : e.terms()) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    denominator_ = lcm;
    fits_ = lcm <= Integer(std::numeric_limits<std::int64_t>::max());
    for (const auto& [vs, c] : e.terms()) {
      std::uint64_t mask = 0;
      for (const auto& name : vs) mask |= std::uint64_t{1} << index.at(name);
      Integer scaled = numerator(c) * (lcm / denominator(c));
      // Ranks are at most 64, so |coeff| < 2^50 keeps every partial sum in range.
      if (boost::multiprecision::abs(scaled) >= (Integer(1) << 50)) fits_ = false;
      masks_.push_back(mask);
      big_coeffs_.push_back(scaled);
      coeffs_.push_back(fits_ ? static_cast<std::int64_t>(scaled) : 0);
    }
  }

  const VarSet& variables() const noexcept { return variables_; }
  std::size_t term_count() const noexcept { return masks_.size(); }
  const Integer& denominator_scale() const noexcept { return denominator_; }
  bool fast() const noexcept { return fits_; }

  /// Value times the common denominator. Only valid when fast().
  std::int64_t evaluate_scaled(EntropyTable& table) const {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < masks_.size(); ++i) total += coeffs_[i] * static_cast<std::int64_t>(table(masks_[i]));
    return total;
  }

  Rational to_value(std::int64_t scaled) const { return Rational(Integer(scaled), denominator_); }

  Rational evaluate(EntropyTable& table) const {
    if (fits_) return to_value(evaluate_scaled(table));
    Integer total = 0;
    for (std::size_t i = 0; i < masks_.size(); ++i) total += big_coeffs_[i] * static_cast<long long>(table(masks_[i]));
    return Rational(total, denominator_);
  }

 private:
  VarSet variables_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::int64_t> coeffs_;
  std::vector<Integer> big_coeffs_;
  Integer denominator_ = 1;
  bool fits_ = true;
};

/// "+ H(A) + H(B) - H(A,B)"; coefficients other than 1 are printed before H.
inline std::string to_text(const RankExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [vars, c] : e.terms()) {
    if (!out.empty()) out += ' ';
    out += c < 0 ? "- " : "+ ";
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (mag != 1) out += mag.str() + ' ';
    out += "H(";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) out += ',';
      out += vars[i];
    }
    out += ')';
  }
  return out;
}

}  // namespace chardep
