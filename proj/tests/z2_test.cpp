#include <gtest/gtest.h>

#include <queue>
#include <random>
#include <set>

#include "eventri/z2.hpp"

using namespace eventri;
using namespace eventri::z2;

namespace {

BinaryMatrix from_bits(int n, unsigned long bits) {
  BinaryMatrix m(n, n);
  for (int i = 0; i < n * n; ++i) m.set(i / n, i % n, (bits >> i) & 1);
  return m;
}

unsigned long to_bits(const BinaryMatrix& m) {
  unsigned long bits = 0;
  for (int i = 0; i < m.rows() * m.cols(); ++i) bits |= static_cast<unsigned long>(m.get(i / m.cols(), i % m.cols())) << i;
  return bits;
}

/// Breadth-first search over all matrices reachable by single row/column additions and swaps.
bool even_sums_reachable(const BinaryMatrix& start) {
  const int n = start.rows();
  std::set<unsigned long> seen{to_bits(start)};
  std::queue<unsigned long> todo;
  todo.push(to_bits(start));
  while (!todo.empty()) {
    const auto m = from_bits(n, todo.front());
    todo.pop();
    if (m.all_sums_even()) return true;
    for (auto kind : {OpKind::AddRow, OpKind::AddCol, OpKind::SwapRow, OpKind::SwapCol})
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          auto next = m;
          next.apply({kind, a, b});
          if (seen.insert(to_bits(next)).second) todo.push(to_bits(next));
        }
  }
  return false;
}

BinaryMatrix random_singular(std::mt19937& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  while (true) {
    BinaryMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.set(i, j, coin(rng));
    if (m.rank() < n) return m;
  }
}

BinaryMatrix random_symmetric_singular(std::mt19937& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  while (true) {
    BinaryMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const int v = coin(rng);
        m.set(i, j, v);
        m.set(j, i, v);
      }
    if (m.rank() < n) return m;
  }
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

}  // namespace

TEST(ParityNormalize, AlreadyEvenIsUnchanged) {
  const BinaryMatrix zero(3, 3);
  const auto r = parity_normalize(zero);
  EXPECT_EQ(r.matrix, zero);
  EXPECT_TRUE(r.ops.empty());
  const auto ones = BinaryMatrix::from_rows({{1, 1}, {1, 1}});
  const auto s = parity_normalize(ones);
  EXPECT_EQ(s.matrix, ones);
  EXPECT_TRUE(s.ops.empty());
}

TEST(ParityNormalize, ThreeByThreeAgreesWithReachability) {
  for (unsigned long bits = 0; bits < (1ul << 9); ++bits) {
    const auto m = from_bits(3, bits);
    if (m.rank() == 3) {
      EXPECT_EQ(kind_of([&] { parity_normalize(m); }), ErrorKind::NonsingularInput);
      EXPECT_FALSE(even_sums_reachable(m)) << bits;
      continue;
    }
    EXPECT_TRUE(even_sums_reachable(m));
    const auto r = parity_normalize(m);
    EXPECT_TRUE(r.matrix.all_sums_even());
    EXPECT_EQ(replay(m, r.ops), r.matrix);
  }
}

TEST(ParityNormalize, RandomSingular) {
  std::mt19937 rng(5);
  for (int n : {2, 5, 8, 12}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto m = random_singular(rng, n);
      const auto r = parity_normalize(m);
      EXPECT_TRUE(r.matrix.all_sums_even());
      EXPECT_EQ(replay(m, r.ops), r.matrix);
      EXPECT_EQ(r.left * m * r.right, r.matrix);
      EXPECT_EQ(r.left.rank(), n);
      EXPECT_EQ(r.right.rank(), n);
      EXPECT_EQ(r.matrix.rank(), m.rank());
    }
  }
}

TEST(ParityNormalize, Errors) {
  EXPECT_EQ(kind_of([] { parity_normalize(BinaryMatrix(2, 3)); }), ErrorKind::NonSquare);
  EXPECT_EQ(kind_of([] { parity_normalize(BinaryMatrix::identity(4)); }), ErrorKind::NonsingularInput);
}

TEST(SymmetricParityNormalize, FixtureMatrix) {
  const auto a = BinaryMatrix::from_rows({{0, 1, 0, 0, 1}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 1}, {0, 0, 1, 0, 0}, {1, 0, 1, 0, 0}});
  ASSERT_LT(a.rank(), 5);
  const auto r = symmetric_parity_normalize(a);
  EXPECT_TRUE(r.matrix.all_sums_even());
  EXPECT_TRUE(r.matrix.symmetric());
  EXPECT_EQ(r.right, r.left.transpose());
  EXPECT_EQ(r.left * a * r.right, r.matrix);
  EXPECT_EQ(replay(a, r.ops), r.matrix);
}

TEST(SymmetricParityNormalize, RandomSymmetric) {
  std::mt19937 rng(9);
  for (int n = 2; n <= 14; ++n)
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_symmetric_singular(rng, n);
      const auto r = symmetric_parity_normalize(a);
      EXPECT_TRUE(r.matrix.all_sums_even());
      EXPECT_EQ(r.left.rank(), n);
      EXPECT_EQ(r.right, r.left.transpose());
      EXPECT_EQ(r.left * a * r.right, r.matrix);
      for (int i = 0; i < n; ++i) EXPECT_EQ(r.matrix.get(i, i), 0);
    }
}

TEST(SymmetricParityNormalize, Errors) {
  EXPECT_EQ(kind_of([] { symmetric_parity_normalize(BinaryMatrix(2, 3)); }), ErrorKind::NonSquare);
  EXPECT_EQ(kind_of([] { symmetric_parity_normalize(BinaryMatrix::from_rows({{0, 1}, {0, 0}})); }), ErrorKind::NotSymmetric);
  EXPECT_EQ(kind_of([] { symmetric_parity_normalize(BinaryMatrix::from_rows({{1, 0}, {0, 0}})); }), ErrorKind::NonzeroDiagonal);
  EXPECT_EQ(kind_of([] { symmetric_parity_normalize(BinaryMatrix::from_rows({{0, 1}, {1, 0}})); }), ErrorKind::NonsingularInput);
}

TEST(SymmetricParityNormalize, SingularityIsNecessary) {
  // a zero-diagonal symmetric matrix congruent to one with even row sums has the all-ones
  // vector, pulled back, in its kernel; exhaustively no nonsingular one reaches even sums
  for (int n = 1; n <= 3; ++n)
    for (unsigned long bits = 0; bits < (1ul << (n * n)); ++bits) {
      const auto m = from_bits(n, bits);
      if (!m.symmetric() || m.rank() < n) continue;
      bool diag_zero = true;
      for (int i = 0; i < n; ++i) diag_zero = diag_zero && !m.get(i, i);
      if (!diag_zero) continue;
      EXPECT_FALSE(even_sums_reachable(m));
    }
}

TEST(MatrixJson, ReadsAndReduces) {
  const auto in = matrix_from_json(nlohmann::json::parse(R"({"rows": 2, "cols": 2, "entries": [[0, 3], [-1, 0]]})"));
  EXPECT_TRUE(in.reduced);
  EXPECT_EQ(in.matrix, BinaryMatrix::from_rows({{0, 1}, {1, 0}}));
  EXPECT_EQ(kind_of([] { matrix_from_json(nlohmann::json::parse(R"({"rows": 2, "cols": 2, "entries": [[0]]})")); }),
            ErrorKind::Syntax);
  EXPECT_EQ(to_json(in.matrix)["entries"], nlohmann::json::parse("[[0,1],[1,0]]"));
  EXPECT_EQ(to_json(std::vector<Op>{{OpKind::AddRow, 0, 1}})[0]["kind"], "addrow");
}
