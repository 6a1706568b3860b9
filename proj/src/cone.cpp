#include "hfcone/cone.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>

#include "hfcone/gradings.hpp"
#include "hfcone/regions.hpp"

namespace hfcone {

using f2::SparseMatrix;
using f2::SparseVec;

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void check_truncation(int delta, int width) {
  if (delta < 0) throw std::invalid_argument("truncation level must be non-negative");
  if (width < 1) throw std::invalid_argument("window width must be positive");
}

}  // namespace

int truncation_width(const KnotComplex& c, int n) { return std::max(c.max_abs_alexander(), 1) + std::abs(n); }

int b_shift(int n, long long s) {
  if (n == 0) throw std::invalid_argument("grading shifts need n != 0");
  if (n > 0) {
    const long long sigma = residue(s, n);
    const long long l = floor_div(s - sigma, n);
    return static_cast<int>(2 * l * sigma + n * l * (l - 1) - 1);
  }
  const long long m = -static_cast<long long>(n);
  const long long sigma = residue(-s, n);
  const long long l = floor_div(-s - sigma, m);
  return static_cast<int>(-2 * l * sigma - m * l * (l - 1));
}

int a_shift(int n, long long s) { return b_shift(n, s) + 1; }

std::vector<int> window_a(int n, int i, int width) {
  std::vector<int> out;
  for (int s = -width; s <= width; ++s)
    if (residue(s, n) == residue(i, n)) out.push_back(s);
  return out;
}

std::vector<int> window_b(int n, int i, int width) {
  std::vector<int> out;
  for (int s = -width + n; s <= width; ++s)
    if (residue(s, n) == residue(i, n)) out.push_back(s);
  return out;
}

SurgeryCone build_cone(const KnotComplex& c, int n, int i, int delta, int width) {
  if (n == 0) throw std::invalid_argument("build_cone needs n != 0; use zero_surgery_cone");
  if (!c.has_flip()) throw ValidationError("flip required");
  check_truncation(delta, width);
  const auto as = window_a(n, i, width);
  const auto bs = window_b(n, i, width);
  if (as.empty() || bs.empty()) throw WindowError("surgery window is empty");

  SurgeryCone out;
  out.n = n;
  out.i = residue(i, n);
  out.delta = delta;
  out.width = width;
  const int per = c.size() * (delta + 1);
  std::map<int, int> b_offset;
  int offset = 0;
  for (int s : as) {
    out.blocks.push_back({'A', s, offset, per});
    offset += per;
  }
  for (int s : bs) {
    b_offset[s] = offset;
    out.blocks.push_back({'B', s, offset, per});
    offset += per;
  }

  FiniteComplex& x = out.complex;
  x.boundary = SparseMatrix(offset, offset);
  x.u_action = SparseMatrix(offset, offset);
  x.grading.resize(static_cast<std::size_t>(offset));
  x.labels.resize(static_cast<std::size_t>(offset));

  auto place = [](const SparseVec& v, int at) {
    SparseVec out = v;
    for (int& k : out) k += at;
    return out;
  };

  const FiniteComplex b = region_B(c, delta);
  for (std::size_t k = 0; k < out.blocks.size(); ++k) {
    const ConeBlock& blk = out.blocks[k];
    x.block_names.push_back(std::string(1, blk.kind) + std::to_string(blk.s));
    const bool is_a = blk.kind == 'A';
    const FiniteComplex local = is_a ? region_A(c, blk.s, delta) : b;
    const int shift = is_a ? a_shift(n, blk.s) : b_shift(n, blk.s);
    SparseMatrix v;
    SparseMatrix h;
    if (is_a) {
      v = v_matrix(c, blk.s, delta);
      h = h_matrix(c, blk.s, delta);
    }
    const auto v_to = b_offset.find(blk.s);
    const auto h_to = b_offset.find(blk.s + n);
    for (int e = 0; e < per; ++e) {
      const int g = blk.offset + e;
      x.grading[g] = local.grading[e] + shift;
      x.labels[g] = {static_cast<int>(k), local.labels[e].generator, local.labels[e].power};
      SparseVec col = place(local.boundary.columns[e], blk.offset);
      if (is_a && v_to != b_offset.end())
        for (int r : v.columns[e]) col.push_back(r + v_to->second);
      if (is_a && h_to != b_offset.end())
        for (int r : h.columns[e]) col.push_back(r + h_to->second);
      x.boundary.columns[g] = f2::normalize(std::move(col));
      x.u_action.columns[g] = place(local.u_action.columns[e], blk.offset);
    }
  }
  return out;
}

int initial_delta(const KnotComplex& c, int n, int width) {
  return std::max(4, width + std::abs(n) + c.max_abs_alexander() + (c.max_maslov() - c.min_maslov()) + 2);
}

SurgeryResult surgery_homology(const KnotComplex& c, int n, long long i, const SurgeryOptions& opts) {
  if (n == 0) return zero_surgery_homology(c, i, opts);
  const int r = residue(i, n);
  const int width = opts.width.value_or(truncation_width(c, n));
  const TruncatedBuilder builder = [&](int delta) {
    return truncated_module(build_cone(c, n, r, delta, width).complex, delta);
  };
  const StableModule stable =
      opts.delta ? classify_at(builder, *opts.delta) : stabilize(builder, initial_delta(c, n, width));

  const GradedModule absolute = stable.module.shifted(d_lens(n, r));
  SurgeryResult out;
  out.n = n;
  out.i = r;
  out.towers = absolute.tower_bottoms();
  out.reduced = absolute.reduced_part();
  out.delta_used = stable.delta;
  out.width_used = width;
  return out;
}

std::vector<SurgeryResult> surgery_homology_all(const KnotComplex& c, int n, const SurgeryOptions& opts) {
  if (n == 0) throw std::invalid_argument("zero surgery has infinitely many classes");
  const int count = std::abs(n);
  std::vector<SurgeryResult> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < count; ++r) {
    try {
      out[r] = surgery_homology(c, n, r, opts);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

FiniteComplex zero_surgery_cone(const KnotComplex& c, long long i, int delta) {
  if (!c.has_flip()) throw ValidationError("flip required");
  const int modulus = static_cast<int>(2 * std::llabs(i));
  auto graded = [&](FiniteComplex x, const std::string& name) {
    x.grading_modulus = modulus;
    if (modulus != 0)
      for (int& g : x.grading) g = ((g % modulus) + modulus) % modulus;
    x.block_names = {name};
    return std::make_shared<const FiniteComplex>(std::move(x));
  };
  const int s = static_cast<int>(i);
  ChainMap f;
  f.source = graded(region_A(c, s, delta), "A" + std::to_string(s));
  f.target = graded(region_B(c, delta), "B");
  f.matrix = f2::sum(v_matrix(c, s, delta), h_matrix(c, s, delta));
  f.degree = 0;
  return mapping_cone(f);
}

SurgeryResult zero_surgery_homology(const KnotComplex& c, long long i, const SurgeryOptions& opts) {
  const bool torsion = i == 0;
  const TruncatedBuilder builder = [&](int delta) {
    if (torsion) return truncated_module(zero_surgery_cone(c, i, delta), delta);
    return truncated_module_image(zero_surgery_cone(c, i, delta), zero_surgery_cone(c, i, 2 * delta + 1));
  };
  const int delta0 = std::max(
      4, c.max_abs_alexander() + static_cast<int>(std::llabs(i)) + (c.max_maslov() - c.min_maslov()) + 2);
  const StableModule stable = opts.delta ? classify_at(builder, *opts.delta) : stabilize(builder, delta0);

  GradedModule module = stable.module;
  if (!module.pieces.empty()) {
    Rational lowest = module.pieces.front().bottom;
    for (const auto& p : module.pieces) lowest = std::min(lowest, p.bottom);
    module = module.shifted(-lowest);
  }
  SurgeryResult out;
  out.n = 0;
  out.i = i;
  out.towers = module.tower_bottoms();
  out.reduced = module.reduced_part();
  out.delta_used = stable.delta;
  out.width_used = 0;
  out.grading_modulus = static_cast<int>(2 * std::llabs(i));
  return out;
}

std::map<int, std::vector<Rational>> d_invariants(const KnotComplex& c, int n, const SurgeryOptions& opts) {
  std::map<int, std::vector<Rational>> out;
  for (const auto& r : surgery_homology_all(c, n, opts)) out[static_cast<int>(r.i)] = r.towers;
  return out;
}

CobordismMap cobordism_map(const KnotComplex& c, int n, int s, const SurgeryOptions& opts) {
  if (n == 0) throw std::invalid_argument("cobordism maps need n != 0");
  const int r = residue(s, n);
  const int width = opts.width.value_or(truncation_width(c, n));
  const auto bs = window_b(n, r, width);
  if (std::find(bs.begin(), bs.end(), s) == bs.end())
    throw WindowError("s = " + std::to_string(s) + " is outside the window [" + std::to_string(-width + n) + ", " +
                      std::to_string(width) + "]");
  const int delta = opts.delta ? *opts.delta : surgery_homology(c, n, r, opts).delta_used;

  SurgeryCone cone = build_cone(c, n, r, delta, width);
  const auto blk = std::find_if(cone.blocks.begin(), cone.blocks.end(),
                                [&](const ConeBlock& b) { return b.kind == 'B' && b.s == s; });
  ChainMap inclusion;
  inclusion.source = std::make_shared<const FiniteComplex>(region_B(c, delta));
  inclusion.target = std::make_shared<const FiniteComplex>(std::move(cone.complex));
  inclusion.matrix = SparseMatrix(inclusion.target->dim(), inclusion.source->dim());
  for (int k = 0; k < blk->size; ++k) inclusion.matrix.columns[k] = {blk->offset + k};
  inclusion.degree = b_shift(n, s);

  CobordismMap out;
  out.n = n;
  out.s = s;
  out.i = r;
  out.delta = delta;
  out.width = width;
  out.degree = Rational(inclusion.degree) + d_lens(n, r);
  out.map = induced_on_homology(inclusion);
  return out;
}

}  // namespace hfcone
