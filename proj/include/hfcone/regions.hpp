#pragma once

#include <memory>

#include "hfcone/homalg.hpp"
#include "hfcone/knotcx.hpp"

// Truncated quotient complexes C{S} and the maps v_s, h_s.
namespace hfcone {

// Quotient complex on {[g,i] : i + offset(g) in [0, delta]}; offsets[g] is the
// amount by which the region's defining coordinate exceeds i on generator g.
FiniteComplex quotient_region(const KnotComplex& c, const std::vector<int>& offsets, int delta,
                              const std::string& block_name);

// A_s = C{max(i, j - s) >= 0}, truncated to max(i, j - s) <= delta.
FiniteComplex region_A(const KnotComplex& c, int s, int delta);
// B = C{i >= 0}, truncated to i <= delta.
FiniteComplex region_B(const KnotComplex& c, int delta);
// C{j >= 0}, truncated to j <= delta.
FiniteComplex region_j(const KnotComplex& c, int delta);

// Matrices of v_s and h_s with respect to region_A(c, s, delta) and region_B(c, delta).
f2::SparseMatrix v_matrix(const KnotComplex& c, int s, int delta);
f2::SparseMatrix h_matrix(const KnotComplex& c, int s, int delta);

ChainMap v_map(const KnotComplex& c, int s, int delta);
// Internal degree -2s. Throws ValidationError when the flip is missing.
ChainMap h_map(const KnotComplex& c, int s, int delta);

// Quasi-isomorphism check of the flip C{j >= 0} -> C{i >= 0} at truncation delta.
bool check_flip_quasi_iso(const KnotComplex& c, int delta);

// Stabilized homology of A_s: towers plus reduced pieces, internal grading.
GradedModule large_surgery_homology(const KnotComplex& c, int s);

}  // namespace hfcone
