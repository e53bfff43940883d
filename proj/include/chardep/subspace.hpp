#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace chardep {

/// A subspace of GF(p)^d, held as its reduced row echelon basis with no zero
/// rows. The zero space O has a 0-row basis and keeps its ambient dimension.
class Subspace {
 public:
  static Subspace zero(PrimeField field, std::size_t ambient_dim) {
    return Subspace(MatrixGF(field, 0, ambient_dim));
  }

  static Subspace whole(PrimeField field, std::size_t ambient_dim) {
    return Subspace(MatrixGF::identity(field, ambient_dim));
  }

  /// Row space of an arbitrary matrix.
  static Subspace row_space(const MatrixGF& m) {
    auto r = rref(m);
    MatrixGF basis(m.field(), 0, m.cols());
    for (std::size_t i = 0; i < r.rank; ++i) basis.append_row(r.reduced.row(i));
    return Subspace(std::move(basis));
  }

  const PrimeField& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return basis_.rows() == 0; }
  const MatrixGF& basis() const noexcept { return basis_; }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(MatrixGF basis) : basis_(std::move(basis)) {}

  MatrixGF basis_;
};

/// Span of coordinate vectors in GF(p)^d; the empty list spans O.
inline Subspace subspace_span(const std::vector<std::vector<std::int64_t>>& vectors, PrimeField field,
                              std::size_t d) {
  MatrixGF m(field, vectors.size(), d);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != d)
      throw DimensionMismatch("vector of length " + std::to_string(vectors[r].size()) + " in GF(p)^" +
                              std::to_string(d));
    for (std::size_t c = 0; c < d; ++c) m.set(r, c, vectors[r][c]);
  }
  return Subspace::row_space(m);
}

/// Reusable kernel for dim(A_1 + ... + A_k).
class JointRank {
 public:
  JointRank(PrimeField field, std::size_t d) : basis_(field, d) {}

  std::size_t operator()(std::span<const Subspace* const> parts) {
    const Subspace* largest = nullptr;
    for (const auto* s : parts)
      if (!largest || s->dim() > largest->dim()) largest = s;
    if (!largest || largest->is_zero()) return 0;
    basis_.adopt_rref(largest->basis());
    for (const auto* s : parts) {
      if (s == largest) continue;
      for (std::size_t r = 0; r < s->dim() && !basis_.full(); ++r) basis_.insert(s->basis().row(r));
      if (basis_.full()) break;
    }
    return basis_.rank();
  }

 private:
  EchelonBasis basis_;
};

/// Named subspaces of one common ambient space: a tuple of linear random
/// variables.
class Assignment {
 public:
  Assignment(PrimeField field, std::size_t ambient_dim) : field_(field), ambient_dim_(ambient_dim) {}

  void set(const std::string& name, Subspace s) {
    if (!(s.field() == field_) || s.ambient_dim() != ambient_dim_)
      throw DimensionMismatch("variable '" + name + "' lives in a different ambient space");
    vars_.insert_or_assign(name, std::move(s));
  }

  const Subspace& at(const std::string& name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) throw UnknownVariable(name);
    return it->second;
  }
  bool contains(const std::string& name) const { return vars_.count(name) != 0; }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::map<std::string, Subspace>& vars() const noexcept { return vars_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  PrimeField field_;
  std::size_t ambient_dim_;
  std::map<std::string, Subspace> vars_;
};

/// H(vars) = dim of the sum of the named subspaces; H() = 0.
inline std::size_t joint_entropy(const Assignment& a, const std::vector<std::string>& varset) {
  std::vector<const Subspace*> parts;
  parts.reserve(varset.size());
  for (const auto& name : varset) parts.push_back(&a.at(name));
  JointRank jr(a.field(), a.ambient_dim());
  return jr(parts);
}

namespace detail {
inline std::vector<std::string> set_union(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}
}  // namespace detail

inline long long mutual_info(const Assignment& a, const std::vector<std::string>& s,
                             const std::vector<std::string>& t) {
  const auto hs = static_cast<long long>(joint_entropy(a, s));
  const auto ht = static_cast<long long>(joint_entropy(a, t));
  const auto hst = static_cast<long long>(joint_entropy(a, detail::set_union(s, t)));
  return hs + ht - hst;
}

inline long long cond_entropy(const Assignment& a, const std::vector<std::string>& s,
                              const std::vector<std::string>& t) {
  return static_cast<long long>(joint_entropy(a, detail::set_union(s, t))) -
         static_cast<long long>(joint_entropy(a, t));
}

inline long long cond_mutual_info(const Assignment& a, const std::vector<std::string>& s,
                                  const std::vector<std::string>& t, const std::vector<std::string>& u) {
  const auto su = detail::set_union(s, u);
  const auto tu = detail::set_union(t, u);
  const auto stu = detail::set_union(su, t);
  return static_cast<long long>(joint_entropy(a, su)) + static_cast<long long>(joint_entropy(a, tu)) -
         static_cast<long long>(joint_entropy(a, stu)) - static_cast<long long>(joint_entropy(a, u));
}

/// Joint entropies of subsets of an indexed variable list, memoized by
/// bitmask for the lifetime of one evaluation. Supports up to 64 variables.
class EntropyTable {
 public:
  EntropyTable(PrimeField field, std::size_t d, std::vector<const Subspace*> vars)
      : vars_(std::move(vars)), kernel_(field, d) {}

  std::size_t operator()(std::uint64_t mask) {
    if (mask == 0) return 0;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    parts_.clear();
    for (std::uint64_t m = mask; m; m &= m - 1) parts_.push_back(vars_[static_cast<std::size_t>(std::countr_zero(m))]);
    const auto h = kernel_(parts_);
    memo_.emplace(mask, h);
    return h;
  }

  void reset(std::vector<const Subspace*> vars) {
    vars_ = std::move(vars);
    memo_.clear();
  }

 private:
  std::vector<const Subspace*> vars_;
  JointRank kernel_;
  std::vector<const Subspace*> parts_;
  std::unordered_map<std::uint64_t, std::size_t> memo_;
};

}  // namespace chardep
