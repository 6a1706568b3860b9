#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hfcone/f2.hpp"
#include "hfcone/gradings.hpp"

// Finite homological algebra over F2 with a nilpotent U action.
namespace hfcone {

// Which summand a basis element came from, for dumps and block lookups.
struct BasisLabel {
  int block = 0;
  int generator = 0;
  long long power = 0;  // the i-coordinate of [g, i]
};

struct FiniteComplex {
  std::vector<int> grading;
  f2::SparseMatrix boundary;
  f2::SparseMatrix u_action;
  // 0 for Z-graded; otherwise gradings are residues modulo this value.
  int grading_modulus = 0;
  std::vector<BasisLabel> labels;
  std::vector<std::string> block_names;

  int dim() const { return static_cast<int>(grading.size()); }
  int lower(int degree, int by) const;
};

// Failed invariants (d^2 = 0, degrees, U commutation); empty when valid.
std::vector<std::string> complex_defects(const FiniteComplex& x);

struct ChainMap {
  std::shared_ptr<const FiniteComplex> source;
  std::shared_ptr<const FiniteComplex> target;
  f2::SparseMatrix matrix;  // columns indexed by source basis
  int degree = 0;
};

std::vector<std::string> chain_map_defects(const ChainMap& f);

struct Piece {
  Rational bottom;
  std::optional<int> length;  // empty for a tower

  bool is_tower() const { return !length.has_value(); }
  bool operator==(const Piece&) const = default;
};

bool operator<(const Piece& a, const Piece& b);

struct GradedModule {
  std::vector<Piece> pieces;

  void canonicalize();
  GradedModule shifted(const Rational& by) const;
  std::vector<Rational> tower_bottoms() const;
  GradedModule reduced_part() const;
  int total_finite_dim() const;
  bool operator==(const GradedModule& other) const;
};

// Homology in one degree, with enough echelon data to express cycles in the
// chosen basis of representatives.
struct DegreeHomology {
  int degree = 0;
  std::vector<int> basis;                     // global indices of this degree
  std::vector<f2::SparseVec> representatives;  // in local indices

  // Coordinates of a local cycle in the representative basis.
  std::vector<int> coordinates(f2::SparseVec cycle) const;

  // Echelon vectors keyed by their largest coordinate; owner >= 0 marks a
  // representative, -1 a boundary.
  std::vector<f2::SparseVec> echelon;
  std::vector<int> owner;
  std::vector<int> pivot_row;  // local row -> echelon index or -1
};

struct Homology {
  int modulus = 0;
  std::map<int, DegreeHomology> degrees;
  // U on homology: from degree d to lower(d), rows index the target basis.
  std::map<int, f2::BitMatrix> u_maps;

  int dim(int degree) const;
  int total_dim() const;
  int lower(int degree) const;
  std::optional<int> min_degree() const;
  // Global-index cycle to homology coordinates in the given degree.
  std::vector<int> coordinates(int degree, const f2::SparseVec& global_cycle) const;
};

enum class Execution { serial, parallel };

Homology homology(const FiniteComplex& x, Execution policy = Execution::parallel);

// Cyclic decomposition of the U-module; degrees above max_degree are ignored.
GradedModule decompose(const Homology& h, std::optional<int> max_degree = std::nullopt);

// Independent dense computation of the decomposition, for testing.
GradedModule reference_decompose(const FiniteComplex& x, std::optional<int> max_degree = std::nullopt);

FiniteComplex mapping_cone(const ChainMap& f);

struct InducedMap {
  Homology source;
  Homology target;
  int degree = 0;
  // Keyed by source degree; rows index target representatives.
  std::map<int, f2::BitMatrix> blocks;

  int rank() const;
};

InducedMap induced_on_homology(const ChainMap& f);
// Decomposition of the image of an induced map, a U-submodule of the target.
GradedModule image_decompose(const InducedMap& f);
bool is_quasi_iso(const ChainMap& f);

ChainMap identity_map(std::shared_ptr<const FiniteComplex> x);

}  // namespace hfcone
