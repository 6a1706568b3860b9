#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

// Finite presentations of CFK-infinity over F2[U].
namespace hfcone {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Generator {
  std::string id;
  int alexander = 0;
  int maslov = 0;

  bool operator==(const Generator&) const = default;
};

// d(from) contains U^u_power * to.
struct DifferentialEntry {
  std::string from;
  std::string to;
  int u_power = 0;

  bool operator==(const DifferentialEntry&) const = default;
};

// flip(from) contains U^{-A(from)} * to.
struct FlipEntry {
  std::string from;
  std::string to;

  bool operator==(const FlipEntry&) const = default;
};

// Index-resolved arrow; for flips u_power is unused.
struct Arrow {
  int from = 0;
  int to = 0;
  int u_power = 0;
};

class KnotComplex {
 public:
  KnotComplex() = default;
  // Throws ValidationError on duplicate or unknown generator ids.
  KnotComplex(std::string name, std::vector<Generator> generators,
              std::vector<DifferentialEntry> differential, std::vector<FlipEntry> flip);

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<DifferentialEntry>& differential() const { return differential_; }
  const std::vector<FlipEntry>& flip() const { return flip_; }

  int size() const { return static_cast<int>(generators_.size()); }
  int alexander(int g) const { return generators_[g].alexander; }
  int maslov(int g) const { return generators_[g].maslov; }
  int index_of(std::string_view id) const;

  // Arrows grouped by source generator.
  const std::vector<std::vector<Arrow>>& arrows_from() const { return arrows_from_; }
  const std::vector<std::vector<Arrow>>& flips_from() const { return flips_from_; }
  bool has_flip() const { return !flip_.empty(); }

  int max_abs_alexander() const;
  int min_maslov() const;
  int max_maslov() const;

  bool operator==(const KnotComplex& other) const;

 private:
  std::string name_;
  std::vector<Generator> generators_;
  std::vector<DifferentialEntry> differential_;
  std::vector<FlipEntry> flip_;
  std::vector<std::vector<Arrow>> arrows_from_;
  std::vector<std::vector<Arrow>> flips_from_;
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Checks the grading, d^2 = 0 and flip invariants. The flip quasi-isomorphism
// condition needs homology and lives in regions (check_flip_quasi_iso).
ValidationReport validate(const KnotComplex& c);

// Parses a complex document and validates it; throws ParseError on malformed
// input and ValidationError naming the first violated invariant.
KnotComplex parse_complex(std::string_view text);
KnotComplex complex_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const KnotComplex& c);
std::string serialize(const KnotComplex& c);

KnotComplex builtin_unknot();
KnotComplex builtin_t34();
KnotComplex builtin_staircase(const std::vector<int>& steps);
KnotComplex builtin_borromean(int genus);

// Resolves "unknot", "t34", "staircase:1,2,2,1", "borromean:G".
KnotComplex builtin_by_name(std::string_view name);

// True when b is a renaming of a preserving gradings, differential and flip.
bool isomorphic_by_order(const KnotComplex& a, const KnotComplex& b);

}  // namespace hfcone
