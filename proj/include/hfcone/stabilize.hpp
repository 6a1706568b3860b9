#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "hfcone/homalg.hpp"

// Recovering HF+-type modules from their delta-truncations.
namespace hfcone {

class StabilizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated homology of x (a U^{delta+1}-kernel model) with the spurious
// copies above the lowest degree + 2 delta discarded. Z-graded only.
GradedModule truncated_module(const FiniteComplex& x, int delta, Execution policy = Execution::parallel);

// Image of H(small) in H(big) under an inclusion matched by basis labels.
// Works for any grading group; big must be truncated deep enough.
GradedModule truncated_module_image(const FiniteComplex& small, const FiniteComplex& big);

// Pieces that grow by one between the two levels become towers; the rest
// must agree. Returns nothing when the two levels are inconsistent.
std::optional<GradedModule> classify(const GradedModule& at, const GradedModule& next);

struct StableModule {
  GradedModule module;  // towers and reduced pieces
  int delta = 0;
};

using TruncatedBuilder = std::function<GradedModule(int delta)>;

// Doubles delta from delta0 until two successive levels classify alike.
StableModule stabilize(const TruncatedBuilder& builder, int delta0, int max_doublings = 10);

// Single-level classification at a caller-chosen delta (no agreement check).
StableModule classify_at(const TruncatedBuilder& builder, int delta);

}  // namespace hfcone
