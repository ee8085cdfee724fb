#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eventri/error.hpp"

namespace eventri::z2 {

enum class OpKind { AddRow, AddCol, SwapRow, SwapCol };

inline std::string to_string(OpKind k) {
  switch (k) {
    case OpKind::AddRow: return "addrow";
    case OpKind::AddCol: return "addcol";
    case OpKind::SwapRow: return "swaprow";
    case OpKind::SwapCol: return "swapcol";
  }
  return "?";
}

/// addrow/addcol add line `from` into line `to`; swaps exchange the two lines.
struct Op {
  OpKind kind;
  int from;
  int to;
  friend bool operator==(const Op&, const Op&) = default;
};

class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows) * cols, 0) {}

  static BinaryMatrix identity(int n) {
    BinaryMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows.front().size()) : 0;
    BinaryMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw Error(ErrorKind::Syntax, "ragged matrix rows");
      for (int j = 0; j < c; ++j) m.set(i, j, ((rows[i][j] % 2) + 2) % 2);
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int get(int r, int c) const { return bits_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, int v) { bits_[static_cast<std::size_t>(r) * cols_ + c] = static_cast<std::uint8_t>(v & 1); }

  void apply(const Op& op) {
    switch (op.kind) {
      case OpKind::AddRow:
        for (int c = 0; c < cols_; ++c) set(op.to, c, get(op.to, c) ^ get(op.from, c));
        break;
      case OpKind::AddCol:
        for (int r = 0; r < rows_; ++r) set(r, op.to, get(r, op.to) ^ get(r, op.from));
        break;
      case OpKind::SwapRow:
        for (int c = 0; c < cols_; ++c) {
          const int t = get(op.from, c);
          set(op.from, c, get(op.to, c));
          set(op.to, c, t);
        }
        break;
      case OpKind::SwapCol:
        for (int r = 0; r < rows_; ++r) {
          const int t = get(r, op.from);
          set(r, op.from, get(r, op.to));
          set(r, op.to, t);
        }
        break;
    }
  }

  int row_sum(int r) const {
    int s = 0;
    for (int c = 0; c < cols_; ++c) s ^= get(r, c);
    return s;
  }

  int col_sum(int c) const {
    int s = 0;
    for (int r = 0; r < rows_; ++r) s ^= get(r, c);
    return s;
  }

  bool all_sums_even() const {
    for (int r = 0; r < rows_; ++r)
      if (row_sum(r)) return false;
    for (int c = 0; c < cols_; ++c)
      if (col_sum(c)) return false;
    return true;
  }

  bool symmetric() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < r; ++c)
        if (get(r, c) != get(c, r)) return false;
    return true;
  }

  BinaryMatrix transpose() const {
    BinaryMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.set(c, r, get(r, c));
    return t;
  }

  BinaryMatrix operator*(const BinaryMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorKind::PreconditionViolation, "matrix shapes do not match");
    BinaryMatrix out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
      for (int k = 0; k < cols_; ++k)
        if (get(r, k))
          for (int c = 0; c < o.cols_; ++c) out.set(r, c, out.get(r, c) ^ o.get(k, c));
    return out;
  }

  int rank() const {
    BinaryMatrix m = *this;
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
      int pivot = -1;
      for (int r = rank; r < rows_; ++r)
        if (m.get(r, c)) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != rank) m.apply({OpKind::SwapRow, pivot, rank});
      for (int r = 0; r < rows_; ++r)
        if (r != rank && m.get(r, c)) m.apply({OpKind::AddRow, rank, r});
      ++rank;
    }
    return rank;
  }

  std::vector<std::vector<int>> to_rows() const {
    std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out[r][c] = get(r, c);
    return out;
  }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline BinaryMatrix replay(BinaryMatrix m, const std::vector<Op>& ops) {
  for (const auto& op : ops) m.apply(op);
  return m;
}

struct NormalizeResult {
  BinaryMatrix matrix;
  std::vector<Op> ops;
  BinaryMatrix left;   // output = left * input * right
  BinaryMatrix right;  // for the symmetric variant right == left^T
};

namespace detail {

/// Applies operations to the working matrix while tracking the left and right transforms.
struct Tracker {
  BinaryMatrix m, left, right;
  std::vector<Op> ops;

  explicit Tracker(const BinaryMatrix& a) : m(a), left(BinaryMatrix::identity(a.rows())), right(BinaryMatrix::identity(a.cols())) {}

  void apply(const Op& op) {
    m.apply(op);
    ops.push_back(op);
    if (op.kind == OpKind::AddRow || op.kind == OpKind::SwapRow) {
      left.apply(op);
    } else {
      right.apply(op);
    }
  }

  /// Congruence: the row operation followed by the matching column operation.
  void add_sym(int from, int to) {
    apply({OpKind::AddRow, from, to});
    apply({OpKind::AddCol, from, to});
  }

  void swap_sym(int a, int b) {
    if (a == b) return;
    apply({OpKind::SwapRow, a, b});
    apply({OpKind::SwapCol, a, b});
  }

  NormalizeResult result() && { return {std::move(m), std::move(ops), std::move(left), std::move(right)}; }
};

}  // namespace detail

/// Row and column operations turning a singular square matrix into one whose row and column
/// sums are all even. Matrices that already qualify are returned unchanged.
inline NormalizeResult parity_normalize(const BinaryMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::NonSquare, std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  const int n = a.rows();
  detail::Tracker t(a);
  if (a.all_sums_even()) return std::move(t).result();
  if (a.rank() == n) throw Error(ErrorKind::NonsingularInput, "matrix has full rank over Z2");
  // diagonalise: identity block of size rank in the top-left corner
  int r = 0;
  while (true) {
    int pr = -1, pc = -1;
    for (int i = r; i < n && pr < 0; ++i)
      for (int j = r; j < n; ++j)
        if (t.m.get(i, j)) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    if (pr != r) t.apply({OpKind::SwapRow, pr, r});
    if (pc != r) t.apply({OpKind::SwapCol, pc, r});
    for (int i = 0; i < n; ++i)
      if (i != r && t.m.get(i, r)) t.apply({OpKind::AddRow, r, i});
    for (int j = 0; j < n; ++j)
      if (j != r && t.m.get(r, j)) t.apply({OpKind::AddCol, r, j});
    ++r;
  }
  const int last = n - 1;
  // rows and columns past the rank are zero, so only the first r need adding
  for (int i = 0; i < r; ++i) t.apply({OpKind::AddRow, i, last});
  for (int j = 0; j < r; ++j) t.apply({OpKind::AddCol, j, last});
  if (!t.m.all_sums_even()) throw Error(ErrorKind::InternalError, "parity normalisation left an odd sum");
  return std::move(t).result();
}

struct Block {
  int first;
  int size;
};

/// Maximal runs of a tridiagonal symmetric matrix joined by super-diagonal ones.
inline std::vector<Block> tridiagonal_blocks(const BinaryMatrix& m) {
  std::vector<Block> blocks;
  const int n = m.rows();
  for (int i = 0; i < n;) {
    int j = i;
    while (j + 1 < n && m.get(j, j + 1)) ++j;
    blocks.push_back({i, j - i + 1});
    i = j + 1;
  }
  return blocks;
}

/// Congruence P A P^T of a singular symmetric zero-diagonal matrix with all row sums even.
/// The matrix is first brought to tridiagonal form, whose blocks are paths; the blocks are then
/// combined so that the all-ones vector pulled back through P lies in the kernel.
inline NormalizeResult symmetric_parity_normalize(const BinaryMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::NonSquare, std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  if (!a.symmetric()) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  const int n = a.rows();
  for (int i = 0; i < n; ++i)
    if (a.get(i, i)) throw Error(ErrorKind::NonzeroDiagonal, "diagonal entry " + std::to_string(i) + " is 1");
  if (a.rank() == n) throw Error(ErrorKind::NonsingularInput, "matrix has full rank over Z2");
  detail::Tracker t(a);
  if (a.all_sums_even()) return std::move(t).result();

  for (int c = 0; c + 2 < n; ++c) {
    int j = -1;
    for (int k = c + 1; k < n; ++k)
      if (t.m.get(c, k)) {
        j = k;
        break;
      }
    if (j < 0) continue;
    t.swap_sym(j, c + 1);
    for (int k = c + 2; k < n; ++k)
      if (t.m.get(c, k)) t.add_sym(c + 1, k);
  }
  for (int i = 0; i < n; ++i) {
    int ones = 0;
    for (int j = 0; j < n; ++j) ones += t.m.get(i, j);
    if (ones > 2 || [&] {
          for (int j = 0; j < n; ++j)
            if (std::abs(i - j) > 1 && t.m.get(i, j)) return true;
          return false;
        }())
      throw Error(ErrorKind::InternalError, "tridiagonal form has a row with more than two ones");
  }

  const auto blocks = tridiagonal_blocks(t.m);
  std::vector<int> zero_blocks, odd_blocks, pair_blocks, even_blocks;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    const int size = blocks[b].size;
    if (size == 1) zero_blocks.push_back(b);
    else if (size == 2) pair_blocks.push_back(b);
    else if (size % 2 == 1) odd_blocks.push_back(b);
    else even_blocks.push_back(b);
  }
  auto nearest_odd = [&](int b) {
    int best = odd_blocks.front();
    for (int o : odd_blocks)
      if (std::abs(o - b) < std::abs(best - b)) best = o;
    return blocks[best];
  };
  // 2x2 blocks become part of a 3-path with a zero block
  for (int b : pair_blocks) {
    const int x = blocks[b].first;
    if (!zero_blocks.empty()) {
      const int z = blocks[zero_blocks.front()].first;
      t.add_sym(x, z);
      t.add_sym(x + 1, z);
    } else {
      const Block big = nearest_odd(b);
      t.add_sym(x, big.first);
      t.add_sym(x + 1, big.first + big.size - 1);
    }
  }
  for (int b : even_blocks) {
    const int target = zero_blocks.empty() ? nearest_odd(b).first : blocks[zero_blocks.front()].first;
    for (int x = blocks[b].first; x < blocks[b].first + blocks[b].size; ++x) t.add_sym(x, target);
  }
  for (int b : odd_blocks) {
    const Block& blk = blocks[b];
    for (int p = 1; p < blk.size; p += 2) t.add_sym(blk.first + p, blk.first);
  }
  if (!t.m.all_sums_even()) throw Error(ErrorKind::InternalError, "symmetric normalisation left an odd row sum");
  return std::move(t).result();
}

struct MatrixInput {
  BinaryMatrix matrix;
  bool reduced = false;  // some entry was outside {0, 1} and was reduced mod 2
};

/// Reads {"rows", "cols", "entries"} with integer entries.
inline MatrixInput matrix_from_json(const nlohmann::json& doc) {
  try {
    const int rows = doc.at("rows").get<int>();
    const int cols = doc.at("cols").get<int>();
    const auto entries = doc.at("entries").get<std::vector<std::vector<long long>>>();
    if (static_cast<int>(entries.size()) != rows) throw Error(ErrorKind::Syntax, "\"entries\" must have " + std::to_string(rows) + " rows");
    MatrixInput in{BinaryMatrix(rows, cols), false};
    for (int r = 0; r < rows; ++r) {
      if (static_cast<int>(entries[r].size()) != cols)
        throw Error(ErrorKind::Syntax, "row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
      for (int c = 0; c < cols; ++c) {
        const long long v = entries[r][c];
        if (v != 0 && v != 1) in.reduced = true;
        in.matrix.set(r, c, static_cast<int>(((v % 2) + 2) % 2));
      }
    }
    return in;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, e.what());
  }
}

inline nlohmann::json to_json(const BinaryMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.to_rows()}};
}

inline nlohmann::json to_json(const std::vector<Op>& ops) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& op : ops) out.push_back({{"kind", to_string(op.kind)}, {"from", op.from}, {"to", op.to}});
  return out;
}

}  // namespace eventri::z2
