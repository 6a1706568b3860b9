#include "hfcone/stabilize.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

namespace hfcone {

namespace {

struct LabelHash {
  std::size_t operator()(const std::tuple<int, int, long long>& t) const {
    const auto [b, g, p] = t;
    std::size_t h = std::hash<long long>()(p);
    h ^= std::hash<int>()(g) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>()(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

GradedModule truncated_module(const FiniteComplex& x, int delta, Execution policy) {
  if (x.grading_modulus != 0) throw std::invalid_argument("truncated_module needs integer gradings");
  const Homology h = homology(x, policy);
  const auto lowest = h.min_degree();
  if (!lowest) return {};
  return decompose(h, *lowest + 2 * delta);
}

GradedModule truncated_module_image(const FiniteComplex& small, const FiniteComplex& big) {
  std::unordered_map<std::tuple<int, int, long long>, int, LabelHash> where;
  for (int k = 0; k < big.dim(); ++k) where.emplace(std::make_tuple(big.labels[k].block, big.labels[k].generator, big.labels[k].power), k);
  f2::SparseMatrix inclusion(big.dim(), small.dim());
  for (int k = 0; k < small.dim(); ++k) {
    const auto& l = small.labels[k];
    auto it = where.find({l.block, l.generator, l.power});
    if (it == where.end()) throw std::invalid_argument("truncation levels do not nest");
    inclusion.columns[k] = {it->second};
  }
  const ChainMap f{std::make_shared<const FiniteComplex>(small), std::make_shared<const FiniteComplex>(big),
                   std::move(inclusion), 0};
  return image_decompose(induced_on_homology(f));
}

std::optional<GradedModule> classify(const GradedModule& at, const GradedModule& next) {
  std::map<Rational, std::vector<int>> a;
  std::map<Rational, std::vector<int>> b;
  for (const auto& p : at.pieces) a[p.bottom].push_back(p.length.value_or(0));
  for (const auto& p : next.pieces) b[p.bottom].push_back(p.length.value_or(0));

  GradedModule out;
  std::vector<Rational> bottoms;
  for (const auto& [k, v] : a) bottoms.push_back(k);
  for (const auto& [k, v] : b) bottoms.push_back(k);
  std::sort(bottoms.begin(), bottoms.end());
  bottoms.erase(std::unique(bottoms.begin(), bottoms.end()), bottoms.end());

  for (const Rational& bottom : bottoms) {
    std::vector<int> la = a[bottom];
    std::vector<int> lb = b[bottom];
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    std::vector<int> common;
    std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(common));
    std::vector<int> only_a;
    std::vector<int> only_b;
    std::set_difference(la.begin(), la.end(), common.begin(), common.end(), std::back_inserter(only_a));
    std::set_difference(lb.begin(), lb.end(), common.begin(), common.end(), std::back_inserter(only_b));
    if (only_a.size() != only_b.size()) return std::nullopt;
    for (std::size_t k = 0; k < only_a.size(); ++k)
      if (only_b[k] != only_a[k] + 1) return std::nullopt;
    for (int len : common) out.pieces.push_back({bottom, len});
    for (std::size_t k = 0; k < only_a.size(); ++k) out.pieces.push_back({bottom, std::nullopt});
  }
  out.canonicalize();
  return out;
}

StableModule classify_at(const TruncatedBuilder& builder, int delta) {
  auto c = classify(builder(delta), builder(delta + 1));
  if (!c) throw StabilizationError("truncation levels " + std::to_string(delta) + " and " +
                                   std::to_string(delta + 1) + " are inconsistent");
  return {std::move(*c), delta};
}

StableModule stabilize(const TruncatedBuilder& builder, int delta0, int max_doublings) {
  std::optional<StableModule> previous;
  int delta = std::max(delta0, 1);
  for (int round = 0; round <= max_doublings; ++round, delta *= 2) {
    auto c = classify(builder(delta), builder(delta + 1));
    if (!c) {
      previous.reset();
      continue;
    }
    if (previous && previous->module == *c) return *previous;
    previous = StableModule{std::move(*c), delta};
  }
  throw StabilizationError("no stabilization up to truncation level " + std::to_string(delta / 2));
}

}  // namespace hfcone
