#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Linear algebra over the two-element field.
namespace hfcone::f2 {

// Sparse vector: strictly increasing list of nonzero coordinates.
using SparseVec = std::vector<int>;

// acc += v (symmetric difference of supports).
void add_into(SparseVec& acc, const SparseVec& v);

// Sorts and cancels repeated coordinates in pairs.
SparseVec normalize(std::vector<int> coords);

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec> columns;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

  SparseVec apply(const SparseVec& v) const;
  std::size_t nonzeros() const;
};

SparseMatrix compose(const SparseMatrix& outer, const SparseMatrix& inner);
SparseMatrix sum(const SparseMatrix& a, const SparseMatrix& b);
bool is_zero(const SparseMatrix& m);

// Dense bit matrix, row-major, 64 columns per word.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  static BitMatrix identity(int n);
  static BitMatrix from_columns(int rows, const std::vector<SparseVec>& columns);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const {
    return (data_[word(r, c)] >> (c & 63)) & 1U;
  }
  void set(int r, int c, bool value);
  void flip(int r, int c) { data_[word(r, c)] ^= std::uint64_t{1} << (c & 63); }

  BitMatrix operator*(const BitMatrix& rhs) const;
  bool operator==(const BitMatrix& rhs) const = default;

  int rank() const;
  bool is_zero() const;
  std::vector<int> column(int c) const;
  // Basis of the null space, one sparse vector per free column.
  std::vector<SparseVec> nullspace() const;

 private:
  std::size_t word(int r, int c) const {
    return static_cast<std::size_t>(r) * stride_ + static_cast<std::size_t>(c >> 6);
  }
  void xor_rows(int dst, int src);

  int rows_ = 0;
  int cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

// Rank of a list of sparse vectors (by elimination on a copy).
int rank_of(std::vector<SparseVec> vectors);

}  // namespace hfcone::f2
