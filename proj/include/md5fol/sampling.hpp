#pragma once

#include <string>

#include "md5fol/orbit.hpp"
#include "md5fol/rng.hpp"

namespace md5fol {

/// Ideal-part slots forced to exact zero when sampling. Used to steer
/// samples onto the degenerate strata of the piecewise equivalence maps.
struct StratumPin {
  bool beta = false;
  bool gamma = false;
  bool delta = false;
  bool sigma = false;

  bool any() const { return beta || gamma || delta || sigma; }
  bool all() const { return beta && gamma && delta && sigma; }

  /// e.g. "beta=0,gamma=0"
  std::string label() const;
};

/// Random admissible parameters for the family: lambda-type values drawn
/// from +-[0.1, 5] keeping a 0.05 margin from 1 (and from each other where
/// distinctness is required), phi from [0.1, pi-0.1], mu from [0.1, 5].
/// The family-14 lambda is exactly 0 for one draw in eight.
FamilyParams sample_params(FamilyId id, Rng& rng);

/// Random covector off the fixed-point locus. Real coordinates are uniform
/// in [-10, 10]; complex pairs (families 11..14) are drawn in a log-box
/// around modulus 1 sized so that every principal-branch logarithm taken by
/// the equivalence maps stays clear of the cut. Pinned slots are exact
/// zeros; resamples until the ideal part has norm >= 1e-3. The pin must
/// leave at least one slot free.
Covector sample_generic_point(const FamilyDescriptor& d, Rng& rng,
                              const StratumPin& pin = {});

struct FlowDraw {
  double x = 0.0;
  double a = 0.0;
};

/// Chart coordinates for flowing F along its leaf: x uniform in [-10, 10];
/// |a| <= 1.5 for families 1..10. For families 11..14 the a-window is
/// narrowed per sample so that along the whole arc the principal arguments
/// of the complex slots and of their images under the equivalence map and
/// its inverse stay in (-pi, pi) with margin 0.3.
FlowDraw sample_flow(const FamilyDescriptor& d, const Covector& F, Rng& rng);

}  // namespace md5fol
