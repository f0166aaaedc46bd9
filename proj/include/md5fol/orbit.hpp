#pragma once

#include "md5fol/catalog.hpp"

namespace md5fol {

struct ToleranceConfig {
  double rank_tol = 1e-9;        // singular-value cutoff, relative
  double residual_tol = 1e-8;    // tangency residual bound
  double membership_tol = 1e-6;  // leaf-membership residual bound

  /// Throws std::invalid_argument unless every entry is positive.
  void validate() const;
};

/// Dimension of the coadjoint orbit through F: the rank of the Kirillov
/// form, cross-checked against the closed-form criterion (0 exactly when
/// the ideal part vanishes within rank_tol per coordinate, else 2). Throws
/// InternalInconsistency when the two disagree.
int orbit_dimension(const FamilyDescriptor& d, const Covector& F,
                    const ToleranceConfig& tol);

/// Point of the orbit chart through F at chart coordinates (x, a): the
/// first coordinate is x, the ideal part is the time-a coadjoint flow of
/// F's ideal part. Fixed points give a map that is constant in a. The map
/// returns F's ideal part bit-for-bit at a = 0.
Covector orbit_param(const FamilyDescriptor& d, const Covector& F, double x,
                     double a);

/// Smallest witnessed per-coordinate deviation of G from the leaf through
/// F. The flow parameter is recovered analytically from a coordinate of F
/// chosen by zero pattern; deviations are relative where F's coordinate is
/// nonzero and absolute where the chart is identically zero. Returns
/// infinity when no admissible parameter exists (sign flip, zero-pattern
/// mismatch). For a fixed point F the leaf is {F} and G is compared
/// directly. Throws DegenerateBase when F is generic but no coordinate
/// pins the parameter.
double membership_residual(const FamilyDescriptor& d, const Covector& F,
                           const Covector& G, const ToleranceConfig& tol);

/// membership_residual compared against membership_tol.
bool leaf_membership(const FamilyDescriptor& d, const Covector& F,
                     const Covector& G, const ToleranceConfig& tol);

/// Distance of the finite-difference chart tangent plane at (x, a) from
/// the span of the coadjoint generators at the chart point, normalized by
/// the tangent vector norms. Step 1e-6 * max(1, |coordinate|). Requires a
/// generic base point.
double tangent_residual(const FamilyDescriptor& d, const Covector& F, double x,
                        double a);

/// Classical RK4 integration of F'(t) = Y_u(F(t)) from 0 to T with the
/// given number of steps (>= 1).
Covector numeric_flow(const FamilyDescriptor& d, const Covector& F,
                      const AlgebraElement& u, double T, int steps);

}  // namespace md5fol
