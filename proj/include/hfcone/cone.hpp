#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hfcone/homalg.hpp"
#include "hfcone/knotcx.hpp"
#include "hfcone/stabilize.hpp"

// The truncated surgery mapping cone and its homology.
namespace hfcone {

class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// b = max(max|A|, 1) + |n|.
int truncation_width(const KnotComplex& c, int n);

// Cone-grading shifts of the summands B_s and A_s (n != 0).
int b_shift(int n, long long s);
int a_shift(int n, long long s);

// Alexander values s of the A and B summands in the window for class i.
std::vector<int> window_a(int n, int i, int width);
std::vector<int> window_b(int n, int i, int width);

struct ConeBlock {
  char kind = 'A';  // 'A' or 'B'
  int s = 0;
  int offset = 0;  // first basis index
  int size = 0;
};

struct SurgeryCone {
  FiniteComplex complex;
  std::vector<ConeBlock> blocks;
  int n = 0;
  int i = 0;
  int delta = 0;
  int width = 0;
};

// Cone of D_{n,i} on the window, graded by cone grading (absolute minus d(n,i)).
SurgeryCone build_cone(const KnotComplex& c, int n, int i, int delta, int width);

struct SurgeryOptions {
  std::optional<int> delta;  // fixed truncation level; stabilize when empty
  std::optional<int> width;  // window width; truncation_width when empty
};

struct SurgeryResult {
  int n = 0;
  long long i = 0;
  std::vector<Rational> towers;
  GradedModule reduced;
  int delta_used = 0;
  int width_used = 0;
  // Nonzero for zero-surgery classes i != 0, whose gradings are residues.
  int grading_modulus = 0;

  bool operator==(const SurgeryResult&) const = default;
};

// Default starting level of the delta ladder.
int initial_delta(const KnotComplex& c, int n, int width);

// HF+ of n-surgery in class i (any integer; reduced mod |n|), absolute gradings.
SurgeryResult surgery_homology(const KnotComplex& c, int n, long long i, const SurgeryOptions& opts = {});

// All classes i = 0..|n|-1, sectors computed concurrently.
std::vector<SurgeryResult> surgery_homology_all(const KnotComplex& c, int n, const SurgeryOptions& opts = {});

// Zero surgery: cone of v_i + h_i, relative gradings with the lowest class at 0.
FiniteComplex zero_surgery_cone(const KnotComplex& c, long long i, int delta);
SurgeryResult zero_surgery_homology(const KnotComplex& c, long long i, const SurgeryOptions& opts = {});

// Tower bottoms per class.
std::map<int, std::vector<Rational>> d_invariants(const KnotComplex& c, int n, const SurgeryOptions& opts = {});

struct CobordismMap {
  int n = 0;
  int s = 0;
  int i = 0;
  int delta = 0;
  int width = 0;
  // Absolute degree of the map from the internal grading of B to HF+ of the surgery.
  Rational degree;
  InducedMap map;
};

// Map induced on homology by the inclusion of B_s into the truncated cone.
CobordismMap cobordism_map(const KnotComplex& c, int n, int s, const SurgeryOptions& opts = {});

}  // namespace hfcone
