#include <gtest/gtest.h>

#include <random>

#include "chardep/matrix.hpp"
#include "oracles.hpp"

using namespace chardep;

namespace {

MatrixGF j_minus_i(PrimeField f, std::size_t k) {
  MatrixGF m(f, k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) m.set(r, c, r == c ? 0 : 1);
  return m;
}

MatrixGF random_matrix(PrimeField f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  MatrixGF m(f, rows, cols);
  std::uniform_int_distribution<std::int64_t> dist(0, f.p() - 1);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dist(rng));
  return m;
}

}  // namespace

TEST(PrimeField, RejectsComposites) {
  EXPECT_THROW(PrimeField(1), NotPrime);
  EXPECT_THROW(PrimeField(4), NotPrime);
  EXPECT_THROW(PrimeField(91), NotPrime);
  EXPECT_NO_THROW(PrimeField(97));
}

TEST(PrimeField, InverseAndReduce) {
  const PrimeField f(13);
  for (Residue a = 1; a < 13; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.reduce(-1), 12u);
  EXPECT_EQ(f.reduce(27), 1u);
}

TEST(Rref, Identity) {
  const auto r = rref(MatrixGF::identity(PrimeField(2), 3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.pivot_cols, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, ZeroMatrix) {
  const auto r = rref(MatrixGF(PrimeField(5), 2, 4));
  EXPECT_EQ(r.rank, 0u);
  EXPECT_TRUE(r.pivot_cols.empty());
}

TEST(Rref, JMinusIOverGF2) { EXPECT_EQ(rref(j_minus_i(PrimeField(2), 3)).rank, 2u); }

TEST(Rref, IsReducedEchelonForm) {
  std::mt19937_64 rng(7);
  const PrimeField f(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = rref(random_matrix(f, 5, 6, rng));
    for (std::size_t i = 0; i < r.rank; ++i) {
      const auto pc = r.pivot_cols[i];
      EXPECT_EQ(r.reduced(i, pc), 1u);
      for (std::size_t k = 0; k < r.reduced.rows(); ++k)
        if (k != i) EXPECT_EQ(r.reduced(k, pc), 0u);
      for (std::size_t c = 0; c < pc; ++c) EXPECT_EQ(r.reduced(i, c), 0u);
    }
    for (std::size_t i = r.rank; i < r.reduced.rows(); ++i) EXPECT_TRUE(r.reduced.row_is_zero(i));
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(j_minus_i(PrimeField(3), 4)), 3u);
  EXPECT_EQ(rank(j_minus_i(PrimeField(2), 4)), 4u);
  EXPECT_EQ(rank(MatrixGF::from_rows(PrimeField(7), 1, {{0}})), 0u);
}

TEST(Rank, MatchesSpanOracle) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const auto m = random_matrix(f, 3, 4, rng);
      std::vector<oracle::Vec> gens;
      for (std::size_t r = 0; r < m.rows(); ++r) gens.emplace_back(m.row(r).begin(), m.row(r).end());
      EXPECT_EQ(rank(m), oracle::dimension(gens, p, 4));
    }
  }
}

TEST(Det, Examples) {
  EXPECT_EQ(det_mod(MatrixGF::identity(PrimeField(5), 2)), 1u);
  EXPECT_EQ(det_mod(j_minus_i(PrimeField(5), 3)), 2u);
  EXPECT_EQ(det_mod(j_minus_i(PrimeField(2), 5)), 0u);
  EXPECT_THROW(det_mod(MatrixGF(PrimeField(5), 2, 3)), NonSquare);
}

TEST(Det, ClosedFormForJMinusI) {
  for (std::int64_t p : {2, 3, 5, 7, 11, 13})
    for (std::size_t k = 2; k <= 12; ++k)
      EXPECT_EQ(det_mod(j_minus_i(PrimeField(p), k)), oracle::mod(oracle::det_j_minus_i(k), p)) << "k=" << k;
}

TEST(StackRows, Shapes) {
  const PrimeField f(2);
  std::vector<MatrixGF> parts{MatrixGF(f, 1, 3), MatrixGF(f, 2, 3)};
  EXPECT_EQ(stack_rows(f, 3, parts).rows(), 3u);
  EXPECT_EQ(stack_rows(f, 4, {}).rows(), 0u);
  EXPECT_EQ(stack_rows(f, 4, {}).cols(), 4u);
  std::vector<MatrixGF> bad{MatrixGF(f, 1, 3), MatrixGF(f, 1, 2)};
  EXPECT_THROW(stack_rows(f, 3, bad), DimensionMismatch);
}

TEST(StackRows, TwoIndependentLines) {
  const PrimeField f(2);
  std::vector<MatrixGF> parts{MatrixGF::from_rows(f, 3, {{1, 0, 0}}), MatrixGF::from_rows(f, 3, {{1, 1, 0}})};
  EXPECT_EQ(rank(stack_rows(f, 3, parts)), 2u);
}

TEST(MatrixGF, RejectsWrongEntryCount) {
  const std::vector<std::int64_t> v{1, 2, 3};
  EXPECT_THROW(MatrixGF(PrimeField(3), 2, 2, v), DimensionMismatch);
}

TEST(RankProperties, TransposeInvariant) {
  std::mt19937_64 rng(1);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<std::size_t> sz(1, 9);
      const auto m = random_matrix(f, sz(rng), sz(rng), rng);
      EXPECT_EQ(rank(m), rank(m.transpose()));
    }
  }
}

TEST(RankProperties, Subadditive) {
  std::mt19937_64 rng(2);
  for (std::uint32_t p : {2u, 3u, 11u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<MatrixGF> parts{random_matrix(f, 3, 6, rng), random_matrix(f, 4, 6, rng)};
      EXPECT_LE(rank(stack_rows(f, 6, parts)), rank(parts[0]) + rank(parts[1]));
    }
  }
}

TEST(RankProperties, DetNonzeroIffFullRank) {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 300; ++trial) {
      const auto m = random_matrix(f, 4, 4, rng);
      EXPECT_EQ(det_mod(m) != 0, rank(m) == 4);
    }
  }
}

TEST(RankProperties, JMinusIRankRule) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u})
    for (std::size_t k = 2; k <= 12; ++k) {
      const std::size_t expected = (k - 1) % p == 0 ? k - 1 : k;
      EXPECT_EQ(rank(j_minus_i(PrimeField(p), k)), expected) << "p=" << p << " k=" << k;
    }
}

TEST(RankProperties, PackedPathAgreesWithGeneric) {
  std::mt19937_64 rng(4);
  const PrimeField f(2);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> rows(0, 70), cols(1, 64);
    const auto m = random_matrix(f, rows(rng), cols(rng), rng);
    EXPECT_EQ(detail::rank_gf2_packed(m), rank_generic(m));
  }
}

TEST(EchelonBasis, IncrementalRankMatchesBatch) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 5u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = random_matrix(f, 8, 7, rng);
      EchelonBasis eb(f, 7);
      for (std::size_t r = 0; r < m.rows(); ++r) eb.insert(m.row(r));
      EXPECT_EQ(eb.rank(), rank(m));
    }
  }
}
