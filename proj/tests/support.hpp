#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <doctest.h>

#include "hfcone/homalg.hpp"

namespace hfcone::testing {

struct PieceSpec {
  Rational bottom;
  int length = 0;  // 0 for a tower
  int count = 1;
};

inline GradedModule module_of(const std::vector<PieceSpec>& specs) {
  GradedModule m;
  for (const auto& s : specs)
    for (int k = 0; k < s.count; ++k) {
      Piece p{s.bottom, std::nullopt};
      if (s.length > 0) p.length = s.length;
      m.pieces.push_back(p);
    }
  m.canonicalize();
  return m;
}

inline std::string show(const GradedModule& m) {
  std::string out = "{";
  for (const auto& p : m.pieces)
    out += " (" + to_string(p.bottom) + "," + (p.length ? std::to_string(*p.length) : std::string("inf")) + ")";
  return out + " }";
}

inline std::vector<Rational> rationals(std::initializer_list<Rational> xs) { return {xs}; }

// Exponent k with f = U^k, for a map between two cyclic modules of the same
// length L: the only U-maps are multiples of U^k, of rank L - k.
inline int u_power(const InducedMap& f) {
  const int len = f.source.total_dim();
  REQUIRE(len == f.target.total_dim());
  REQUIRE(decompose(f.source).pieces.size() == 1);
  REQUIRE(decompose(f.target).pieces.size() == 1);
  return len - f.rank();
}

// Direct sum of truncated towers: entries (bottom degree, length).
inline FiniteComplex tower_sum(const std::vector<std::pair<int, int>>& towers) {
  FiniteComplex x;
  for (const auto& [bottom, len] : towers)
    for (int t = 0; t < len; ++t) x.grading.push_back(bottom + 2 * t);
  const int dim = x.dim();
  x.boundary = f2::SparseMatrix(dim, dim);
  x.u_action = f2::SparseMatrix(dim, dim);
  int offset = 0;
  for (const auto& [bottom, len] : towers) {
    for (int t = 1; t < len; ++t) x.u_action.columns[offset + t] = {offset + t - 1};
    offset += len;
  }
  x.labels.assign(static_cast<std::size_t>(dim), BasisLabel{});
  x.block_names = {"T"};
  return x;
}

struct RandomTowers {
  std::vector<std::pair<int, int>> towers;
  FiniteComplex complex;
};

inline RandomTowers random_towers(std::mt19937& rng, int max_count = 4) {
  std::uniform_int_distribution<int> count(1, max_count), bottom(-4, 4), len(1, 4);
  RandomTowers r;
  const int k = count(rng);
  for (int j = 0; j < k; ++j) r.towers.push_back({bottom(rng), len(rng)});
  r.complex = tower_sum(r.towers);
  return r;
}

// Random U-equivariant map of the given degree between two tower sums.
inline ChainMap random_tower_map(std::mt19937& rng, const RandomTowers& src, const RandomTowers& tgt, int degree) {
  ChainMap f;
  f.source = std::make_shared<FiniteComplex>(src.complex);
  f.target = std::make_shared<FiniteComplex>(tgt.complex);
  f.degree = degree;
  f.matrix = f2::SparseMatrix(tgt.complex.dim(), src.complex.dim());
  std::bernoulli_distribution coin(0.6);
  int so = 0;
  for (const auto& [sb, sl] : src.towers) {
    int to = 0;
    for (const auto& [tb, tl] : tgt.towers) {
      const int top_target = sb + 2 * (sl - 1) + degree - tb;
      // The top of the source goes to level m; U-equivariance needs m < sl.
      const int m = top_target / 2;
      if (top_target % 2 == 0 && top_target >= 0 && m < std::min(sl, tl) && coin(rng)) {
        for (int t = 0; t < sl; ++t) {
          const int image = m - (sl - 1 - t);
          if (image >= 0) f2::add_into(f.matrix.columns[so + t], {to + image});
        }
      }
      to += tl;
    }
    so += sl;
  }
  return f;
}

// Relabels the basis by a random permutation (boundary, U and gradings move along).
inline FiniteComplex permuted(const FiniteComplex& x, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(x.dim()));
  for (int k = 0; k < x.dim(); ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  FiniteComplex y = x;
  auto move = [&](const f2::SparseMatrix& m) {
    f2::SparseMatrix out(m.rows, m.cols);
    for (int c = 0; c < m.cols; ++c) {
      std::vector<int> col;
      for (int r : m.columns[c]) col.push_back(perm[r]);
      out.columns[perm[c]] = f2::normalize(col);
    }
    return out;
  };
  y.boundary = move(x.boundary);
  y.u_action = move(x.u_action);
  for (int k = 0; k < x.dim(); ++k) {
    y.grading[perm[k]] = x.grading[k];
    y.labels[perm[k]] = x.labels[k];
  }
  return y;
}

}  // namespace hfcone::testing

namespace hfcone::testing {

// For a map between truncated towers of length delta+1 (above the bottom of
// the source): the number of bottom degrees sent to zero, after checking the
// remaining degrees map isomorphically. This is k for multiplication by U^k.
inline int tower_exponent(const InducedMap& f, int delta) {
  const auto bottom = f.source.min_degree();
  REQUIRE(bottom.has_value());
  int k = 0;
  bool seen_nonzero = false;
  for (int t = 0; t <= delta; ++t) {
    const int x = *bottom + 2 * t;
    REQUIRE(f.source.dim(x) == 1);
    const auto it = f.blocks.find(x);
    const int rank = it == f.blocks.end() ? 0 : it->second.rank();
    if (rank == 0) {
      CHECK_FALSE(seen_nonzero);
      ++k;
    } else {
      seen_nonzero = true;
    }
  }
  return k;
}

}  // namespace hfcone::testing
