#include "hfcone/regions.hpp"

#include <algorithm>

#include "hfcone/stabilize.hpp"

namespace hfcone {

using f2::SparseMatrix;

namespace {

int index_in(int generator, int m, int delta) { return generator * (delta + 1) + m; }

std::vector<int> offsets_A(const KnotComplex& c, int s) {
  std::vector<int> out;
  for (int g = 0; g < c.size(); ++g) out.push_back(std::max(0, c.alexander(g) - s));
  return out;
}

}  // namespace

FiniteComplex quotient_region(const KnotComplex& c, const std::vector<int>& offsets, int delta,
                              const std::string& block_name) {
  if (delta < 0) throw std::invalid_argument("truncation level must be non-negative");
  const int per = delta + 1;
  const int n = c.size() * per;
  FiniteComplex x;
  x.grading.resize(static_cast<std::size_t>(n));
  x.labels.resize(static_cast<std::size_t>(n));
  x.boundary = SparseMatrix(n, n);
  x.u_action = SparseMatrix(n, n);
  x.block_names = {block_name};

  for (int g = 0; g < c.size(); ++g) {
    for (int m = 0; m <= delta; ++m) {
      const int col = index_in(g, m, delta);
      const long long i = m - offsets[g];
      x.grading[col] = c.maslov(g) + 2 * static_cast<int>(i);
      x.labels[col] = {0, g, i};
      std::vector<int> targets;
      for (const Arrow& a : c.arrows_from()[g]) {
        const long long mt = i - a.u_power + offsets[a.to];
        if (mt >= 0 && mt <= delta) targets.push_back(index_in(a.to, static_cast<int>(mt), delta));
      }
      x.boundary.columns[col] = f2::normalize(std::move(targets));
      if (m > 0) x.u_action.columns[col] = {index_in(g, m - 1, delta)};
    }
  }
  return x;
}

FiniteComplex region_A(const KnotComplex& c, int s, int delta) {
  return quotient_region(c, offsets_A(c, s), delta, "A" + std::to_string(s));
}

FiniteComplex region_B(const KnotComplex& c, int delta) {
  return quotient_region(c, std::vector<int>(static_cast<std::size_t>(c.size()), 0), delta, "B");
}

FiniteComplex region_j(const KnotComplex& c, int delta) {
  std::vector<int> offsets;
  for (int g = 0; g < c.size(); ++g) offsets.push_back(c.alexander(g));
  return quotient_region(c, offsets, delta, "J");
}

SparseMatrix v_matrix(const KnotComplex& c, int s, int delta) {
  const auto off = offsets_A(c, s);
  const int n = c.size() * (delta + 1);
  SparseMatrix m(n, n);
  for (int g = 0; g < c.size(); ++g)
    for (int k = 0; k <= delta; ++k) {
      const int i = k - off[g];
      if (i >= 0) m.columns[index_in(g, k, delta)] = {index_in(g, i, delta)};
    }
  return m;
}

SparseMatrix h_matrix(const KnotComplex& c, int s, int delta) {
  if (!c.has_flip()) throw ValidationError("flip required for h_s");
  const auto off = offsets_A(c, s);
  const int n = c.size() * (delta + 1);
  SparseMatrix m(n, n);
  for (int g = 0; g < c.size(); ++g)
    for (int k = 0; k <= delta; ++k) {
      const int j = k - off[g] + c.alexander(g);
      if (j < s) continue;
      std::vector<int> targets;
      for (const Arrow& f : c.flips_from()[g]) targets.push_back(index_in(f.to, j - s, delta));
      m.columns[index_in(g, k, delta)] = f2::normalize(std::move(targets));
    }
  return m;
}

ChainMap v_map(const KnotComplex& c, int s, int delta) {
  return {std::make_shared<const FiniteComplex>(region_A(c, s, delta)),
          std::make_shared<const FiniteComplex>(region_B(c, delta)), v_matrix(c, s, delta), 0};
}

ChainMap h_map(const KnotComplex& c, int s, int delta) {
  return {std::make_shared<const FiniteComplex>(region_A(c, s, delta)),
          std::make_shared<const FiniteComplex>(region_B(c, delta)), h_matrix(c, s, delta), -2 * s};
}

bool check_flip_quasi_iso(const KnotComplex& c, int delta) {
  if (!c.has_flip()) return false;
  const int n = c.size() * (delta + 1);
  SparseMatrix m(n, n);
  for (int g = 0; g < c.size(); ++g)
    for (int k = 0; k <= delta; ++k) {
      std::vector<int> targets;
      for (const Arrow& f : c.flips_from()[g]) targets.push_back(index_in(f.to, k, delta));
      m.columns[index_in(g, k, delta)] = f2::normalize(std::move(targets));
    }
  const ChainMap f{std::make_shared<const FiniteComplex>(region_j(c, delta)),
                   std::make_shared<const FiniteComplex>(region_B(c, delta)), std::move(m), 0};
  if (!chain_map_defects(f).empty()) return false;
  return is_quasi_iso(f);
}

GradedModule large_surgery_homology(const KnotComplex& c, int s) {
  const int delta0 = std::max(4, 2 * c.max_abs_alexander() + (c.max_maslov() - c.min_maslov()) + 2);
  const StableModule stable =
      stabilize([&](int delta) { return truncated_module(region_A(c, s, delta), delta); }, delta0);
  return stable.module;
}

}  // namespace hfcone
