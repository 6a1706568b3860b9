#include "hfcone/homalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hfcone {

using f2::BitMatrix;
using f2::SparseMatrix;
using f2::SparseVec;

namespace {

int lower_mod(int degree, int by, int modulus) {
  if (modulus == 0) return degree - by;
  return ((degree - by) % modulus + modulus) % modulus;
}

// Global indices grouped by degree, plus the inverse map.
struct Layout {
  std::map<int, std::vector<int>> by_degree;
  std::vector<int> local;

  explicit Layout(const FiniteComplex& x) : local(static_cast<std::size_t>(x.dim())) {
    for (int g = 0; g < x.dim(); ++g) {
      auto& list = by_degree[x.grading[g]];
      local[g] = static_cast<int>(list.size());
      list.push_back(g);
    }
  }

  const std::vector<int>* find(int degree) const {
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? nullptr : &it->second;
  }

  SparseVec to_local(const SparseVec& global) const {
    SparseVec out;
    out.reserve(global.size());
    for (int g : global) out.push_back(local[g]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

SparseVec to_global(const std::vector<int>& basis, const SparseVec& local) {
  SparseVec out;
  out.reserve(local.size());
  for (int k : local) out.push_back(basis[k]);
  return out;
}

// Adds v to the echelon set after reducing it; returns false if it reduced to zero.
bool insert_reduced(DegreeHomology& h, SparseVec v, int owner) {
  while (!v.empty()) {
    const int p = h.pivot_row[v.back()];
    if (p < 0) break;
    f2::add_into(v, h.echelon[p]);
  }
  if (v.empty()) return false;
  h.pivot_row[v.back()] = static_cast<int>(h.echelon.size());
  h.echelon.push_back(std::move(v));
  h.owner.push_back(owner);
  return true;
}

DegreeHomology degree_homology(const FiniteComplex& x, const Layout& layout, int d) {
  DegreeHomology h;
  h.degree = d;
  h.basis = *layout.find(d);
  const int n = static_cast<int>(h.basis.size());
  h.pivot_row.assign(static_cast<std::size_t>(n), -1);

  // Boundaries landing in degree d.
  const int above = x.grading_modulus == 0 ? d + 1 : lower_mod(d, -1, x.grading_modulus);
  if (const auto* src = layout.find(above)) {
    for (int g : *src) insert_reduced(h, layout.to_local(x.boundary.columns[g]), -1);
  }

  // Cycles in degree d: reduce the boundary columns while tracking combinations.
  std::vector<SparseVec> reduced;
  std::vector<SparseVec> combo;
  std::unordered_map<int, int> low_owner;
  std::vector<SparseVec> cycles;
  for (int k = 0; k < n; ++k) {
    SparseVec col = layout.to_local(x.boundary.columns[h.basis[k]]);
    SparseVec v = {k};
    while (!col.empty()) {
      auto it = low_owner.find(col.back());
      if (it == low_owner.end()) break;
      f2::add_into(col, reduced[it->second]);
      f2::add_into(v, combo[it->second]);
    }
    if (col.empty()) {
      cycles.push_back(std::move(v));
    } else {
      low_owner.emplace(col.back(), static_cast<int>(reduced.size()));
      reduced.push_back(std::move(col));
      combo.push_back(std::move(v));
    }
  }

  for (auto& z : cycles) {
    const int owner = static_cast<int>(h.representatives.size());
    if (insert_reduced(h, std::move(z), owner)) h.representatives.push_back(h.echelon.back());
  }
  return h;
}

// Assembles the (bottom, length) multiset from ranks of U powers. rank(c, m) is
// the rank of U^m out of degree c; it must vanish on absent degrees.
GradedModule assemble(const std::map<int, int>& dims, int modulus, const std::function<int(int, int)>& rank) {
  GradedModule out;
  int total = 0;
  int top = 0;
  for (const auto& [d, k] : dims) {
    total += k;
    top = std::max(top, d);
  }
  for (const auto& [b, dim_b] : dims) {
    if (dim_b == 0) continue;
    const int max_len = modulus == 0 ? (top - b) / 2 + 1 : total;
    for (int len = 1; len <= max_len; ++len) {
      const int t = lower_mod(b, -2 * (len - 1), modulus);
      const int t2 = lower_mod(t, -2, modulus);
      const int mult = rank(t, len - 1) - rank(t, len) - rank(t2, len) + rank(t2, len + 1);
      for (int k = 0; k < mult; ++k) out.pieces.push_back({Rational(b), len});
    }
  }
  out.canonicalize();
  return out;
}

}  // namespace

int FiniteComplex::lower(int degree, int by) const { return lower_mod(degree, by, grading_modulus); }

std::vector<std::string> complex_defects(const FiniteComplex& x) {
  std::vector<std::string> defects;
  const int n = x.dim();
  if (x.boundary.rows != n || x.boundary.cols != n || x.u_action.rows != n || x.u_action.cols != n) {
    defects.push_back("matrix shape mismatch");
    return defects;
  }
  if (!f2::is_zero(f2::compose(x.boundary, x.boundary))) defects.push_back("boundary squared is nonzero");
  for (int c = 0; c < n; ++c) {
    for (int r : x.boundary.columns[c])
      if (x.grading[r] != x.lower(x.grading[c], 1)) {
        defects.push_back("boundary does not drop grading by 1");
        c = n;
        break;
      }
  }
  for (int c = 0; c < n; ++c) {
    for (int r : x.u_action.columns[c])
      if (x.grading[r] != x.lower(x.grading[c], 2)) {
        defects.push_back("U does not drop grading by 2");
        c = n;
        break;
      }
  }
  if (f2::compose(x.u_action, x.boundary).columns != f2::compose(x.boundary, x.u_action).columns)
    defects.push_back("U does not commute with the boundary");
  return defects;
}

std::vector<std::string> chain_map_defects(const ChainMap& f) {
  std::vector<std::string> defects;
  const FiniteComplex& s = *f.source;
  const FiniteComplex& t = *f.target;
  if (f.matrix.cols != s.dim() || f.matrix.rows != t.dim()) {
    defects.push_back("matrix shape mismatch");
    return defects;
  }
  if (f2::compose(f.matrix, s.boundary).columns != f2::compose(t.boundary, f.matrix).columns)
    defects.push_back("does not commute with boundaries");
  if (f2::compose(f.matrix, s.u_action).columns != f2::compose(t.u_action, f.matrix).columns)
    defects.push_back("not U-equivariant");
  for (int c = 0; c < s.dim(); ++c) {
    for (int r : f.matrix.columns[c])
      if (t.grading[r] != t.lower(s.grading[c], -f.degree)) {
        defects.push_back("not homogeneous of degree " + std::to_string(f.degree));
        return defects;
      }
  }
  return defects;
}

bool operator<(const Piece& a, const Piece& b) {
  if (a.bottom != b.bottom) return a.bottom < b.bottom;
  if (a.is_tower() != b.is_tower()) return !a.is_tower();
  return a.length.value_or(0) < b.length.value_or(0);
}

void GradedModule::canonicalize() { std::sort(pieces.begin(), pieces.end()); }

GradedModule GradedModule::shifted(const Rational& by) const {
  GradedModule out = *this;
  for (auto& p : out.pieces) p.bottom += by;
  return out;
}

std::vector<Rational> GradedModule::tower_bottoms() const {
  std::vector<Rational> out;
  for (const auto& p : pieces)
    if (p.is_tower()) out.push_back(p.bottom);
  std::sort(out.begin(), out.end());
  return out;
}

GradedModule GradedModule::reduced_part() const {
  GradedModule out;
  for (const auto& p : pieces)
    if (!p.is_tower()) out.pieces.push_back(p);
  out.canonicalize();
  return out;
}

int GradedModule::total_finite_dim() const {
  int n = 0;
  for (const auto& p : pieces) n += p.length.value_or(0);
  return n;
}

bool GradedModule::operator==(const GradedModule& other) const {
  GradedModule a = *this;
  GradedModule b = other;
  a.canonicalize();
  b.canonicalize();
  return a.pieces == b.pieces;
}

std::vector<int> DegreeHomology::coordinates(SparseVec cycle) const {
  std::vector<int> coords;
  while (!cycle.empty()) {
    const int p = pivot_row[cycle.back()];
    if (p < 0) throw std::logic_error("vector is not a cycle of this degree");
    if (owner[p] >= 0) coords.push_back(owner[p]);
    f2::add_into(cycle, echelon[p]);
  }
  return f2::normalize(std::move(coords));
}

int Homology::dim(int degree) const {
  auto it = degrees.find(degree);
  return it == degrees.end() ? 0 : static_cast<int>(it->second.representatives.size());
}

int Homology::total_dim() const {
  int n = 0;
  for (const auto& [d, h] : degrees) n += static_cast<int>(h.representatives.size());
  return n;
}

int Homology::lower(int degree) const { return lower_mod(degree, 2, modulus); }

std::optional<int> Homology::min_degree() const {
  for (const auto& [d, h] : degrees)
    if (!h.representatives.empty()) return d;
  return std::nullopt;
}

std::vector<int> Homology::coordinates(int degree, const SparseVec& global_cycle) const {
  auto it = degrees.find(degree);
  if (it == degrees.end()) {
    if (global_cycle.empty()) return {};
    throw std::logic_error("no basis in degree " + std::to_string(degree));
  }
  const auto& basis = it->second.basis;
  SparseVec local;
  local.reserve(global_cycle.size());
  for (int g : global_cycle) {
    auto pos = std::lower_bound(basis.begin(), basis.end(), g);
    if (pos == basis.end() || *pos != g) throw std::logic_error("element not in degree " + std::to_string(degree));
    local.push_back(static_cast<int>(pos - basis.begin()));
  }
  return it->second.coordinates(std::move(local));
}

Homology homology(const FiniteComplex& x, Execution policy) {
  const Layout layout(x);
  std::vector<int> degrees;
  for (const auto& [d, list] : layout.by_degree) degrees.push_back(d);
  const int count = static_cast<int>(degrees.size());

  std::vector<DegreeHomology> parts(static_cast<std::size_t>(count));
  const bool parallel = policy == Execution::parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 0; k < count; ++k) parts[k] = degree_homology(x, layout, degrees[k]);

  Homology h;
  h.modulus = x.grading_modulus;
  for (auto& part : parts) h.degrees.emplace(part.degree, std::move(part));

  std::vector<BitMatrix> u_blocks(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 0; k < count; ++k) {
    const DegreeHomology& src = h.degrees.at(degrees[k]);
    const int t = h.lower(degrees[k]);
    const int rows = h.dim(t);
    BitMatrix m(rows, static_cast<int>(src.representatives.size()));
    if (rows > 0) {
      for (int c = 0; c < m.cols(); ++c) {
        const SparseVec image = x.u_action.apply(to_global(src.basis, src.representatives[c]));
        for (int r : h.coordinates(t, image)) m.flip(r, c);
      }
    }
    u_blocks[k] = std::move(m);
  }
  for (int k = 0; k < count; ++k) h.u_maps.emplace(degrees[k], std::move(u_blocks[k]));
  return h;
}

GradedModule decompose(const Homology& h, std::optional<int> max_degree) {
  std::map<int, int> dims;
  for (const auto& [d, part] : h.degrees) {
    if (part.representatives.empty()) continue;
    if (h.modulus == 0 && max_degree && d > *max_degree) continue;
    dims[d] = static_cast<int>(part.representatives.size());
  }
  std::map<std::pair<int, int>, int> memo;
  std::function<int(int, int)> rank = [&](int c, int m) -> int {
    if (!dims.count(c)) return 0;
    if (m == 0) return dims.at(c);
    auto key = std::make_pair(c, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // Walk the chain once and memoize every power from c.
    BitMatrix acc = BitMatrix::identity(dims.at(c));
    int d = c;
    int result = 0;
    for (int p = 1; p <= m; ++p) {
      const int next = h.lower(d);
      if (!dims.count(next)) {
        for (int q = p; q <= m; ++q) memo[{c, q}] = 0;
        break;
      }
      acc = h.u_maps.at(d) * acc;
      d = next;
      const int r = acc.rank();
      memo[{c, p}] = r;
      if (r == 0) {
        for (int q = p + 1; q <= m; ++q) memo[{c, q}] = 0;
        break;
      }
    }
    result = memo.at(key);
    return result;
  };
  return assemble(dims, h.modulus, rank);
}

GradedModule reference_decompose(const FiniteComplex& x, std::optional<int> max_degree) {
  const Layout layout(x);
  const int modulus = x.grading_modulus;
  auto local_matrix = [&](int from, int to_degree) {
    const auto* src = layout.find(from);
    const auto* dst = layout.find(to_degree);
    std::vector<SparseVec> cols;
    if (src)
      for (int g : *src) cols.push_back(dst ? layout.to_local(x.boundary.columns[g]) : SparseVec{});
    return BitMatrix::from_columns(dst ? static_cast<int>(dst->size()) : 0, cols);
  };

  std::map<int, std::vector<SparseVec>> cycles;      // global vectors
  std::map<int, std::vector<SparseVec>> boundaries;  // global vectors
  std::map<int, int> dims;
  for (const auto& [d, basis] : layout.by_degree) {
    if (modulus == 0 && max_degree && d > *max_degree) continue;
    const BitMatrix del = local_matrix(d, lower_mod(d, 1, modulus));
    for (const auto& z : del.nullspace()) cycles[d].push_back(to_global(basis, z));
    const int above = lower_mod(d, -1, modulus);
    if (const auto* src = layout.find(above))
      for (int g : *src)
        if (!x.boundary.columns[g].empty()) boundaries[d].push_back(x.boundary.columns[g]);
    const int dim = static_cast<int>(cycles[d].size()) - f2::rank_of(boundaries[d]);
    if (dim > 0) dims[d] = dim;
  }

  auto rank = [&](int c, int m) -> int {
    if (!dims.count(c)) return 0;
    std::vector<SparseVec> images = cycles[c];
    int d = c;
    for (int p = 0; p < m; ++p) {
      for (auto& v : images) v = x.u_action.apply(v);
      d = lower_mod(d, 2, modulus);
    }
    if (!dims.count(d) && m > 0) return 0;
    std::vector<SparseVec> all = boundaries[d];
    const int base = f2::rank_of(all);
    all.insert(all.end(), images.begin(), images.end());
    return f2::rank_of(all) - base;
  };
  return assemble(dims, modulus, rank);
}

FiniteComplex mapping_cone(const ChainMap& f) {
  if (!f.source || !f.target) throw std::invalid_argument("mapping_cone: missing complex");
  const FiniteComplex& a = *f.source;
  const FiniteComplex& b = *f.target;
  if (a.grading_modulus != b.grading_modulus) throw std::invalid_argument("mapping_cone: grading groups differ");
  if (!chain_map_defects(f).empty()) throw std::invalid_argument("mapping_cone: " + chain_map_defects(f).front());

  const int p = a.dim();
  const int q = b.dim();
  FiniteComplex cone;
  cone.grading_modulus = a.grading_modulus;
  cone.boundary = SparseMatrix(p + q, p + q);
  cone.u_action = SparseMatrix(p + q, p + q);
  auto shift = [p](const SparseVec& v) {
    SparseVec out = v;
    for (int& k : out) k += p;
    return out;
  };
  for (int c = 0; c < p; ++c) {
    cone.grading.push_back(a.grading[c]);
    SparseVec col = a.boundary.columns[c];
    const SparseVec image = shift(f.matrix.columns[c]);
    col.insert(col.end(), image.begin(), image.end());
    cone.boundary.columns[c] = col;
    cone.u_action.columns[c] = a.u_action.columns[c];
  }
  for (int c = 0; c < q; ++c) {
    cone.grading.push_back(lower_mod(b.grading[c], -(-1 - f.degree), cone.grading_modulus));
    cone.boundary.columns[p + c] = shift(b.boundary.columns[c]);
    cone.u_action.columns[p + c] = shift(b.u_action.columns[c]);
  }
  const int blocks_a = static_cast<int>(a.block_names.size());
  cone.labels = a.labels;
  for (BasisLabel l : b.labels) {
    l.block += blocks_a;
    cone.labels.push_back(l);
  }
  cone.block_names = a.block_names;
  cone.block_names.insert(cone.block_names.end(), b.block_names.begin(), b.block_names.end());
  return cone;
}

int InducedMap::rank() const {
  int r = 0;
  for (const auto& [d, m] : blocks) r += m.rank();
  return r;
}

InducedMap induced_on_homology(const ChainMap& f) {
  InducedMap out;
  out.source = homology(*f.source);
  out.target = homology(*f.target);
  out.degree = f.degree;
  for (const auto& [d, part] : out.source.degrees) {
    const int e = f.target->lower(d, -f.degree);
    BitMatrix m(out.target.dim(e), static_cast<int>(part.representatives.size()));
    for (int c = 0; c < m.cols(); ++c) {
      const SparseVec image = f.matrix.apply(to_global(part.basis, part.representatives[c]));
      if (m.rows() == 0) continue;
      for (int r : out.target.coordinates(e, image)) m.flip(r, c);
    }
    out.blocks.emplace(d, std::move(m));
  }
  return out;
}

GradedModule image_decompose(const InducedMap& f) {
  // Image blocks keyed by target degree.
  std::map<int, BitMatrix> spans;
  std::map<int, int> dims;
  for (const auto& [d, block] : f.blocks) {
    const int r = block.rank();
    if (r == 0) continue;
    const int e = lower_mod(d, -f.degree, f.target.modulus);
    spans.emplace(e, block);
    dims[e] = r;
  }
  auto rank = [&](int c, int m) -> int {
    if (!dims.count(c)) return 0;
    BitMatrix acc = spans.at(c);
    int d = c;
    for (int p = 0; p < m; ++p) {
      const int next = f.target.lower(d);
      if (f.target.dim(next) == 0) return 0;
      acc = f.target.u_maps.at(d) * acc;
      d = next;
    }
    return acc.rank();
  };
  return assemble(dims, f.target.modulus, rank);
}

bool is_quasi_iso(const ChainMap& f) {
  const InducedMap m = induced_on_homology(f);
  if (m.source.total_dim() != m.target.total_dim()) return false;
  for (const auto& [d, block] : m.blocks) {
    if (block.rows() != block.cols() || block.rank() != block.cols()) return false;
  }
  return true;
}

ChainMap identity_map(std::shared_ptr<const FiniteComplex> x) {
  ChainMap f;
  f.source = x;
  f.target = x;
  f.matrix = SparseMatrix(x->dim(), x->dim());
  for (int c = 0; c < x->dim(); ++c) f.matrix.columns[c] = {c};
  f.degree = 0;
  return f;
}

}  // namespace hfcone
