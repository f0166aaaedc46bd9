#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "md5fol/orbit.hpp"
#include "md5fol/sampling.hpp"

namespace md5fol {

/// Topological type of the orbit foliation on the generic stratum V.
/// Foliations of type F1 are given by submersions onto the fibers of a
/// trivial bundle over the 3-sphere; their leaf space is Hausdorff and the
/// associated Connes C*-algebra is C(S^3) (x) K(H). Types F2 and F3 are
/// given by locally free R^2-actions with non-Hausdorff leaf space.
enum class TopologicalType { F1, F2, F3 };

std::string to_string(TopologicalType t);

/// A foliated generic stratum: the family whose 2-dimensional coadjoint
/// orbits are the leaves.
struct FoliationDescriptor {
  FamilyDescriptor family;
};

/// Exact test: the ideal part of F has a nonzero coordinate.
bool in_generic_stratum(const FamilyDescriptor& d, const Covector& F);

/// Families 1..10 -> F1, 11..13 -> F2, 14 -> F3.
TopologicalType topological_type(FamilyId id);

/// Reference foliation of the type: G5_4_5 for F1, G5_4_12 with
/// (lambda, phi) = (1, pi/2) for F2, G5_4_14 with (lambda, mu, phi) =
/// (0, 1, pi/2) for F3.
FoliationDescriptor canonical_target(TopologicalType t);

/// True when d itself is the canonical reference of its type (exact
/// parameter comparison).
bool is_canonical_descriptor(const FamilyDescriptor& d);

/// Leaf-preserving homeomorphism of the generic stratum onto the stratum
/// of the canonical target of the family's type (the identity on the
/// canonical descriptors themselves). Piecewise: signed power maps,
/// logarithmic shears and principal-branch complex powers, with 0 -> 0 on
/// every degenerate slot.
Covector equivalence_map(const FamilyDescriptor& d, const Covector& P);

/// Inverse of equivalence_map, branch by branch.
Covector equivalence_map_inverse(const FamilyDescriptor& d, const Covector& P);

/// Unit vector in R^4; the factory normalizes and rejects zero input, and
/// the constructor-checked invariant is |norm - 1| <= 1e-12.
struct SpherePoint {
  Vec4 v;

  static SpherePoint normalized(const Vec4& raw);
  double distance(const SpherePoint& other) const { return (v - other.v).norm(); }
};

/// Base-point map of the fibration of the generic stratum of G5_4_5 over
/// the 3-sphere: the normalized ideal part. Throws std::invalid_argument
/// on the fixed-point locus.
SpherePoint fibration_p45(const Covector& F);

/// R^2-action on the generic stratum of G5_4_12(1, pi/2):
/// (r, a) . (x, w, t, s) = (x + r, w e^{-ia}, t e^a, s e^a) with
/// w = beta + i gamma.
Covector action_rho_412(double r, double a, const Covector& P);

/// R^2-action on the generic stratum of G5_4_14(0, 1, pi/2):
/// (r, a) . (x, w, u) = (x + r, w e^{-ia}, u e^{-ia}) with
/// w = beta + i gamma, u = delta + i sigma.
Covector action_rho_414(double r, double a, const Covector& P);

struct Counterexample {
  std::string input;
  double residual = 0.0;
};

struct PropertyReport {
  std::string suite;
  std::string subject;
  long n_samples = 0;
  long n_pass = 0;
  double max_residual = 0.0;
  std::vector<Counterexample> counterexamples;

  bool pass() const { return n_samples > 0 && n_pass == n_samples; }
  void record(bool ok, double residual, const std::string& input);
  void merge(const PropertyReport& other);
};

/// Samples leaves of d, pushes base point and flowed point through
/// equivalence_map, and checks that both land on one leaf of the canonical
/// target (membership residual <= membership_tol). Every counterexample is
/// kept in the report.
PropertyReport check_leaf_to_leaf(const FamilyDescriptor& d,
                                  std::uint64_t seed, int n_samples,
                                  const ToleranceConfig& tol,
                                  const StratumPin& pin = {});

}  // namespace md5fol
