#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace chardep {

/// Dense row-major matrix over GF(p). Entries are always reduced.
class MatrixGF {
 public:
  MatrixGF(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  MatrixGF(PrimeField field, std::size_t rows, std::size_t cols, std::span<const std::int64_t> values)
      : MatrixGF(field, rows, cols) {
    if (values.size() != rows * cols)
      throw DimensionMismatch("matrix expects " + std::to_string(rows * cols) + " entries, got " +
                              std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) data_[i] = field_.reduce(values[i]);
  }

  static MatrixGF from_rows(PrimeField field, std::size_t cols,
                            std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    MatrixGF m(field, rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != cols) throw DimensionMismatch("ragged row in matrix literal");
      std::size_t c = 0;
      for (auto v : row) m.set(r, c++, v);
      ++r;
    }
    return m;
  }

  static MatrixGF identity(PrimeField field, std::size_t k) {
    MatrixGF m(field, k, k);
    for (std::size_t i = 0; i < k; ++i) m.data_[i * k + i] = 1;
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }

  std::span<const Residue> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> entries() const noexcept { return data_; }

  void append_row(std::span<const Residue> values) {
    if (values.size() != cols_) throw DimensionMismatch("row width does not match matrix");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  bool row_is_zero(std::size_t r) const noexcept {
    auto v = row(r);
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
  }

  MatrixGF transpose() const {
    MatrixGF t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
    return t;
  }

  friend bool operator==(const MatrixGF&, const MatrixGF&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

struct RrefResult {
  MatrixGF reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank;
};

/// Gauss-Jordan elimination. Leading entries are 1 and pivot columns are
/// cleared above and below; zero rows are kept at the bottom.
inline RrefResult rref(MatrixGF m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pr = lead_row;
    while (pr < m.rows() && m(pr, c) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead_row) {
      auto a = m.row(pr);
      auto b = m.row(lead_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto lead = m.row(lead_row);
    const Residue inv = f.inv(lead[c]);
    for (auto& x : lead) x = f.mul(x, inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row) continue;
      auto target = m.row(r);
      const Residue factor = target[c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) target[j] = f.sub(target[j], f.mul(factor, lead[j]));
    }
    pivots.push_back(c);
    ++lead_row;
  }
  const std::size_t r = pivots.size();
  return {std::move(m), std::move(pivots), r};
}

namespace detail {

// Rank over GF(2) with each row packed into one word; needs cols <= 64.
inline std::size_t rank_gf2_packed(const MatrixGF& m) {
  std::array<std::uint64_t, 64> basis{};
  std::size_t rank = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t v = 0;
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c]) v |= std::uint64_t{1} << c;
    while (v) {
      const int b = std::countr_zero(v);
      if (!basis[b]) {
        basis[b] = v;
        ++rank;
        break;
      }
      v ^= basis[b];
    }
  }
  return rank;
}

}  // namespace detail

inline std::size_t rank_generic(const MatrixGF& m) { return rref(m).rank; }

inline std::size_t rank(const MatrixGF& m) {
  if (m.field().p() == 2 && m.cols() <= 64) return detail::rank_gf2_packed(m);
  return rank_generic(m);
}

/// Determinant mod p, by elimination tracking row swaps.
inline Residue det_mod(MatrixGF m) {
  if (!m.is_square())
    throw NonSquare("determinant of a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  const auto& f = m.field();
  const std::size_t k = m.rows();
  Residue det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pr = c;
    while (pr < k && m(pr, c) == 0) ++pr;
    if (pr == k) return 0;
    if (pr != c) {
      auto a = m.row(pr);
      auto b = m.row(c);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      det = f.neg(det);
    }
    auto lead = m.row(c);
    det = f.mul(det, lead[c]);
    const Residue inv = f.inv(lead[c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      auto target = m.row(r);
      const Residue factor = f.mul(target[c], inv);
      if (factor == 0) continue;
      for (std::size_t j = c; j < k; ++j) target[j] = f.sub(target[j], f.mul(factor, lead[j]));
    }
  }
  return det;
}

/// Vertical concatenation. `cols` fixes the width for an empty input list.
inline MatrixGF stack_rows(PrimeField field, std::size_t cols, std::span<const MatrixGF> parts) {
  MatrixGF out(field, 0, cols);
  for (const auto& part : parts) {
    if (!(part.field() == field)) throw DimensionMismatch("stack_rows: matrices over different fields");
    if (part.cols() != cols)
      throw DimensionMismatch("stack_rows: width " + std::to_string(part.cols()) + " != " + std::to_string(cols));
    for (std::size_t r = 0; r < part.rows(); ++r) out.append_row(part.row(r));
  }
  return out;
}

/// Incremental row-space builder: insert vectors one at a time and track the
/// rank. Pivot rows are indexed by their leading column. Over GF(2) with
/// dim <= 64 the packed path is used; both paths give identical ranks.
class EchelonBasis {
 public:
  EchelonBasis(PrimeField field, std::size_t dim)
      : field_(field),
        dim_(dim),
        packed_(field.p() == 2 && dim <= 64),
        rows_(packed_ ? 0 : dim * dim, 0),
        has_pivot_(packed_ ? 0 : dim, 0),
        scratch_(packed_ ? 0 : dim, 0) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rank_; }
  bool full() const noexcept { return rank_ == dim_; }
  bool packed() const noexcept { return packed_; }

  void clear() noexcept {
    rank_ = 0;
    if (packed_)
      bits_.fill(0);
    else
      std::fill(has_pivot_.begin(), has_pivot_.end(), 0);
  }

  /// Returns true when `v` was independent of what is already stored.
  bool insert(std::span<const Residue> v) {
    if (full()) return false;
    if (packed_) return insert_bits(pack(v));
    std::copy(v.begin(), v.end(), scratch_.begin());
    for (std::size_t c = 0; c < dim_; ++c) {
      const Residue x = scratch_[c];
      if (x == 0) continue;
      Residue* pivot_row = rows_.data() + c * dim_;
      if (has_pivot_[c]) {
        for (std::size_t j = c; j < dim_; ++j) scratch_[j] = field_.sub(scratch_[j], field_.mul(x, pivot_row[j]));
        continue;
      }
      const Residue inv = field_.inv(x);
      for (std::size_t j = 0; j < c; ++j) pivot_row[j] = 0;
      for (std::size_t j = c; j < dim_; ++j) pivot_row[j] = field_.mul(scratch_[j], inv);
      has_pivot_[c] = 1;
      ++rank_;
      return true;
    }
    return false;
  }

  /// Loads rows that are already in reduced echelon form into an empty
  /// basis without re-eliminating them.
  void adopt_rref(const MatrixGF& basis) {
    clear();
    for (std::size_t r = 0; r < basis.rows(); ++r) {
      auto v = basis.row(r);
      std::size_t c = 0;
      while (c < dim_ && v[c] == 0) ++c;
      if (c == dim_) continue;
      if (packed_) {
        bits_[c] = pack(v);
      } else {
        std::copy(v.begin(), v.end(), rows_.begin() + static_cast<std::ptrdiff_t>(c * dim_));
        has_pivot_[c] = 1;
      }
      ++rank_;
    }
  }

  bool insert_bits(std::uint64_t v) noexcept {
    while (v) {
      const int b = std::countr_zero(v);
      if (!bits_[b]) {
        bits_[b] = v;
        ++rank_;
        return true;
      }
      v ^= bits_[b];
    }
    return false;
  }

  static std::uint64_t pack(std::span<const Residue> v) noexcept {
    std::uint64_t out = 0;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c] & 1u) out |= std::uint64_t{1} << c;
    return out;
  }

 private:
  PrimeField field_;
  std::size_t dim_;
  bool packed_;
  std::size_t rank_ = 0;
  std::vector<Residue> rows_;
  std::vector<unsigned char> has_pivot_;
  std::vector<Residue> scratch_;
  std::array<std::uint64_t, 64> bits_{};
};

}  // namespace chardep
