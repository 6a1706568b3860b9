#include <random>

#include <doctest.h>

#include "hfcone/homalg.hpp"
#include "support.hpp"

using namespace hfcone;
using hfcone::testing::module_of;
using hfcone::testing::show;

namespace {

std::shared_ptr<const FiniteComplex> share(FiniteComplex x) { return std::make_shared<const FiniteComplex>(std::move(x)); }

// Multiplication by U^k on the single truncated tower of length len.
ChainMap u_power_map(int len, int k) {
  auto t = share(testing::tower_sum({{0, len}}));
  ChainMap f{t, t, f2::SparseMatrix(len, len), -2 * k};
  for (int c = k; c < len; ++c) f.matrix.columns[c] = {c - k};
  return f;
}

}  // namespace

TEST_CASE("zero differential: homology is the whole space") {
  FiniteComplex x = testing::tower_sum({{0, 1}, {1, 1}, {1, 1}});
  const Homology h = homology(x);
  CHECK(h.total_dim() == 3);
  CHECK(h.dim(1) == 2);
  CHECK(h.min_degree() == 0);
  CHECK(decompose(h) == module_of({{0, 1}, {1, 1, 2}}));
}

TEST_CASE("truncated tower decomposes as one cyclic piece") {
  const FiniteComplex x = testing::tower_sum({{-2, 4}});
  CHECK(complex_defects(x).empty());
  CHECK(decompose(homology(x)) == module_of({{-2, 4}}));
  CHECK(decompose(homology(x), 2) == module_of({{-2, 3}}));
  CHECK(reference_decompose(x) == module_of({{-2, 4}}));
}

TEST_CASE("mapping cone examples") {
  // Cone of the identity is acyclic.
  auto t = share(testing::tower_sum({{0, 3}, {1, 2}}));
  const FiniteComplex id_cone = mapping_cone(identity_map(t));
  CHECK(complex_defects(id_cone).empty());
  CHECK(homology(id_cone).total_dim() == 0);

  // Cone of U on a length-3 tower: ker at the bottom, coker at the top.
  const FiniteComplex u_cone = mapping_cone(u_power_map(3, 1));
  CHECK(complex_defects(u_cone).empty());
  CHECK(decompose(homology(u_cone)) == module_of({{0, 1}, {5, 1}}));

  // Cone of the zero map is the shifted direct sum.
  ChainMap zero{t, t, f2::SparseMatrix(5, 5), 0};
  CHECK(decompose(homology(mapping_cone(zero))) == module_of({{0, 3}, {1, 2}, {-1, 3}, {0, 2}}));
}

TEST_CASE("defects are reported") {
  FiniteComplex x = testing::tower_sum({{0, 2}});
  x.boundary.columns[1] = {0};
  CHECK_FALSE(complex_defects(x).empty());  // degree 2 -> 0 is a drop by 2

  FiniteComplex y;
  y.grading = {2, 1, 0};
  y.boundary = f2::SparseMatrix(3, 3);
  y.boundary.columns[0] = {1};
  y.boundary.columns[1] = {2};
  y.u_action = f2::SparseMatrix(3, 3);
  y.labels.assign(3, BasisLabel{});
  y.block_names = {"Y"};
  const auto defects = complex_defects(y);
  REQUIRE_FALSE(defects.empty());
  CHECK(defects.front() == "boundary squared is nonzero");

  auto t = share(testing::tower_sum({{0, 2}}));
  ChainMap wrong{t, t, f2::SparseMatrix(2, 2), 0};
  wrong.matrix.columns[1] = {0};  // degree 2 -> 0 but declared degree 0
  CHECK_FALSE(chain_map_defects(wrong).empty());
  CHECK_THROWS_AS(mapping_cone(wrong), std::invalid_argument);
}

TEST_CASE("induced maps on towers") {
  for (int len = 1; len <= 6; ++len)
    for (int k = 0; k <= len; ++k) {
      const InducedMap m = induced_on_homology(u_power_map(len, k));
      CHECK(testing::u_power(m) == k);
      CHECK(m.rank() == len - k);
      if (k < len) CHECK(image_decompose(m) == module_of({{0, len - k}}));
      CHECK(is_quasi_iso(u_power_map(len, k)) == (k == 0));
    }
}

TEST_CASE("homology coordinates ignore boundaries") {
  // a -> b + c with all in neighbouring degrees; H_0 = span{b} = span{c}.
  FiniteComplex x;
  x.grading = {1, 0, 0};
  x.boundary = f2::SparseMatrix(3, 3);
  x.boundary.columns[0] = {1, 2};
  x.u_action = f2::SparseMatrix(3, 3);
  x.labels.assign(3, BasisLabel{});
  x.block_names = {"X"};
  const Homology h = homology(x);
  REQUIRE(h.dim(0) == 1);
  CHECK(h.dim(1) == 0);
  CHECK(h.coordinates(0, {1}) == h.coordinates(0, {2}));
  CHECK(h.coordinates(0, {1, 2}).empty());
}

TEST_CASE("cyclic gradings") {
  FiniteComplex x = testing::tower_sum({{0, 3}, {1, 1}});
  x.grading_modulus = 2;
  for (auto& g : x.grading) g = ((g % 2) + 2) % 2;
  CHECK(complex_defects(x).empty());
  const Homology h = homology(x);
  CHECK(h.modulus == 2);
  CHECK(h.dim(0) == 3);
  CHECK(decompose(h) == module_of({{0, 3}, {1, 1}}));
  CHECK(reference_decompose(x) == module_of({{0, 3}, {1, 1}}));
}

TEST_CASE("serial, parallel and dense reference agree on random cones") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto src = testing::random_towers(rng);
    const auto tgt = testing::random_towers(rng);
    const int degree = std::uniform_int_distribution<int>(-3, 3)(rng);
    const ChainMap f = testing::random_tower_map(rng, src, tgt, degree);
    REQUIRE(chain_map_defects(f).empty());
    const FiniteComplex cone = mapping_cone(f);
    REQUIRE(complex_defects(cone).empty());

    const GradedModule serial = decompose(homology(cone, Execution::serial));
    const GradedModule parallel = decompose(homology(cone, Execution::parallel));
    const GradedModule dense = reference_decompose(cone);
    CHECK_MESSAGE(serial == parallel, show(serial), " vs ", show(parallel));
    CHECK_MESSAGE(serial == dense, show(serial), " vs ", show(dense));
    CHECK(serial.total_finite_dim() == homology(cone).total_dim());

    const FiniteComplex shuffled = testing::permuted(cone, rng);
    CHECK(complex_defects(shuffled).empty());
    CHECK(decompose(homology(shuffled)) == serial);
  }
}

TEST_CASE("long exact sequence ranks for cones") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const auto src = testing::random_towers(rng);
    const auto tgt = testing::random_towers(rng);
    const int degree = 2 * std::uniform_int_distribution<int>(-2, 1)(rng);
    const ChainMap f = testing::random_tower_map(rng, src, tgt, degree);
    const InducedMap m = induced_on_homology(f);
    const Homology hc = homology(mapping_cone(f));
    auto rank_at = [&](int d) {
      auto it = m.blocks.find(d);
      return it == m.blocks.end() ? 0 : it->second.rank();
    };
    for (int d = -12; d <= 12; ++d) {
      // Cone degree d: kernel from source degree d, cokernel in target degree d + 1 + degree.
      const int kernel = m.source.dim(d) - rank_at(d);
      const int cokernel = m.target.dim(d + 1 + degree) - rank_at(d + 1);
      CHECK(hc.dim(d) == kernel + cokernel);
    }
  }
}

TEST_CASE("graded module helpers") {
  GradedModule m = module_of({{Rational(1, 2), 0}, {0, 2}, {-1, 1, 2}});
  CHECK(m.tower_bottoms() == std::vector<Rational>{Rational(1, 2)});
  CHECK(m.reduced_part() == module_of({{0, 2}, {-1, 1, 2}}));
  CHECK(m.total_finite_dim() == 4);
  CHECK(m.shifted(Rational(1, 2)) == module_of({{1, 0}, {Rational(1, 2), 2}, {Rational(-1, 2), 1, 2}}));
}

TEST_CASE("quasi-isomorphism checks") {
  auto t = share(testing::tower_sum({{0, 2}}));
  CHECK(is_quasi_iso(identity_map(t)));
  auto acyclic = share(mapping_cone(identity_map(t)));
  ChainMap zero{acyclic, acyclic, f2::SparseMatrix(acyclic->dim(), acyclic->dim()), 0};
  CHECK(is_quasi_iso(zero));
  CHECK(homology(mapping_cone(zero)).total_dim() == 0);
}
