#include "hfcone/f2.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace hfcone::f2 {

void add_into(SparseVec& acc, const SparseVec& v) {
  if (v.empty()) return;
  SparseVec out;
  out.reserve(acc.size() + v.size());
  auto a = acc.begin();
  auto b = v.begin();
  while (a != acc.end() && b != v.end()) {
    if (*a < *b) {
      out.push_back(*a++);
    } else if (*b < *a) {
      out.push_back(*b++);
    } else {
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, acc.end());
  out.insert(out.end(), b, v.end());
  acc.swap(out);
}

SparseVec normalize(std::vector<int> coords) {
  std::sort(coords.begin(), coords.end());
  SparseVec out;
  out.reserve(coords.size());
  for (std::size_t k = 0; k < coords.size();) {
    std::size_t run = k;
    while (run < coords.size() && coords[run] == coords[k]) ++run;
    if ((run - k) % 2 == 1) out.push_back(coords[k]);
    k = run;
  }
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  std::vector<int> acc;
  for (int c : v) acc.insert(acc.end(), columns[c].begin(), columns[c].end());
  return normalize(std::move(acc));
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns) n += col.size();
  return n;
}

SparseMatrix compose(const SparseMatrix& outer, const SparseMatrix& inner) {
  if (outer.cols != inner.rows) throw std::invalid_argument("compose: shape mismatch");
  SparseMatrix out(outer.rows, inner.cols);
  for (int c = 0; c < inner.cols; ++c) out.columns[c] = outer.apply(inner.columns[c]);
  return out;
}

SparseMatrix sum(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("sum: shape mismatch");
  SparseMatrix out = a;
  for (int c = 0; c < a.cols; ++c) add_into(out.columns[c], b.columns[c]);
  return out;
}

bool is_zero(const SparseMatrix& m) {
  return std::all_of(m.columns.begin(), m.columns.end(), [](const SparseVec& c) { return c.empty(); });
}

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      stride_(static_cast<std::size_t>((cols + 63) / 64)),
      data_(static_cast<std::size_t>(rows) * stride_, 0) {}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int k = 0; k < n; ++k) m.set(k, k, true);
  return m;
}

BitMatrix BitMatrix::from_columns(int rows, const std::vector<SparseVec>& columns) {
  BitMatrix m(rows, static_cast<int>(columns.size()));
  for (int c = 0; c < m.cols(); ++c)
    for (int r : columns[c]) m.flip(r, c);
  return m;
}

void BitMatrix::set(int r, int c, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  if (value)
    data_[word(r, c)] |= bit;
  else
    data_[word(r, c)] &= ~bit;
}

void BitMatrix::xor_rows(int dst, int src) {
  std::uint64_t* d = &data_[static_cast<std::size_t>(dst) * stride_];
  const std::uint64_t* s = &data_[static_cast<std::size_t>(src) * stride_];
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

BitMatrix BitMatrix::operator*(const BitMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("BitMatrix: shape mismatch");
  BitMatrix out(rows_, rhs.cols_);
  for (int r = 0; r < rows_; ++r) {
    std::uint64_t* o = &out.data_[static_cast<std::size_t>(r) * out.stride_];
    for (int k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      const std::uint64_t* s = &rhs.data_[static_cast<std::size_t>(k) * rhs.stride_];
      for (std::size_t w = 0; w < out.stride_; ++w) o[w] ^= s[w];
    }
  }
  return out;
}

int BitMatrix::rank() const {
  BitMatrix m = *this;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows_; ++r)
      if (m.get(r, c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) {
      m.xor_rows(rank, pivot);
    }
    for (int r = rank + 1; r < rows_; ++r)
      if (m.get(r, c)) m.xor_rows(r, rank);
    ++rank;
  }
  return rank;
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<int> BitMatrix::column(int c) const {
  std::vector<int> out;
  for (int r = 0; r < rows_; ++r)
    if (get(r, c)) out.push_back(r);
  return out;
}

std::vector<SparseVec> BitMatrix::nullspace() const {
  BitMatrix m = *this;
  std::vector<int> pivot_cols;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows_; ++r)
      if (m.get(r, c)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) m.xor_rows(rank, pivot);
    for (int r = 0; r < rows_; ++r)
      if (r != rank && m.get(r, c)) m.xor_rows(r, rank);
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (int c : pivot_cols) is_pivot[c] = true;
  std::vector<SparseVec> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v = {free};
    for (int r = 0; r < rank; ++r)
      if (m.get(r, free)) v.push_back(pivot_cols[r]);
    basis.push_back(normalize(std::move(v)));
  }
  return basis;
}

int rank_of(std::vector<SparseVec> vectors) {
  std::unordered_map<int, std::size_t> pivot_of;
  int rank = 0;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    SparseVec& v = vectors[k];
    while (!v.empty()) {
      auto it = pivot_of.find(v.back());
      if (it == pivot_of.end()) break;
      add_into(v, vectors[it->second]);
    }
    if (!v.empty()) {
      pivot_of.emplace(v.back(), k);
      ++rank;
    }
  }
  return rank;
}

}  // namespace hfcone::f2
