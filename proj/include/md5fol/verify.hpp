#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "md5fol/foliation.hpp"

namespace md5fol {

enum class ReportFormat { text, json };

struct RunConfig {
  std::uint64_t seed = 42;
  int n_samples = 1000;
  ToleranceConfig tolerances;
  ReportFormat format = ReportFormat::text;

  /// Throws std::invalid_argument unless n_samples >= 1 and the tolerances
  /// validate.
  void validate() const;
};

/// Orbit dimension is 0 or 2, matching the closed-form locus test, over
/// param_draws random parameter draws with n_points covectors each (every
/// tenth point exactly on the fixed-point locus).
PropertyReport run_md_rank_suite(FamilyId id, std::uint64_t seed,
                                 int param_draws, int n_points,
                                 const ToleranceConfig& tol);

/// tangent_residual < residual_tol at random chart points of random leaves.
PropertyReport run_tangency_suite(FamilyId id, std::uint64_t seed,
                                  int param_draws, int n_points,
                                  const ToleranceConfig& tol);

/// RK4 endpoints of the X1 coadjoint flow over T in [-1, 1] lie on the
/// closed-form leaf of the start point within membership_tol.
PropertyReport run_flow_oracle_suite(FamilyId id, std::uint64_t seed,
                                     int param_draws, int n_points, int steps,
                                     const ToleranceConfig& tol);

/// equivalence_map composed with its inverse returns the input within
/// roundtrip_tol relative per coordinate: inverse-after-map on each stratum
/// sample, map-after-inverse on the sample's image. Replays exactly the
/// sample streams of run_leaf_to_leaf_suites (same parameter draws, same
/// base and flowed points, same pinned sub-suites).
std::vector<PropertyReport> run_round_trip_suites(FamilyId id,
                                                  std::uint64_t seed,
                                                  int param_draws, int n_points,
                                                  double roundtrip_tol,
                                                  const ToleranceConfig& tol);

/// Main leaf-to-leaf suite over random parameter draws plus one pinned
/// sub-suite per degenerate stratum of the family's equivalence map.
std::vector<PropertyReport> run_leaf_to_leaf_suites(FamilyId id,
                                                    std::uint64_t seed,
                                                    int param_draws,
                                                    int n_points,
                                                    const ToleranceConfig& tol);

/// Leaves of G5_4_5 coincide with fibration_p45 fibers: same leaf -> same
/// base point (within fibration_tol), same fiber -> same leaf, distinct
/// base points -> distinct leaves.
PropertyReport run_fibration_suite(std::uint64_t seed, int n_points,
                                   double fibration_tol,
                                   const ToleranceConfig& tol);

/// Orbits of the R^2-action on the canonical descriptor of the family
/// (G5_4_12 or G5_4_14) coincide with the leaves, both directions: action
/// points stay on the leaf, and chart points are reached by analytically
/// solved action parameters.
PropertyReport run_action_suite(FamilyId which, std::uint64_t seed,
                                int n_points, const ToleranceConfig& tol);

struct VerifyOutcome {
  std::vector<PropertyReport> reports;

  bool all_pass() const;
  int failures() const;
};

/// Runs every suite for the scoped families (all when scope is empty) at
/// the configured sample volume.
VerifyOutcome run_verification(const std::optional<FamilyId>& scope,
                               const RunConfig& cfg);

/// Renders one line per suite plus the machine-readable trailer
/// "RESULT: PASS|FAIL suites=<n> failures=<m>". The json format wraps the
/// same data in a document followed by the trailer line.
void render_report(const VerifyOutcome& outcome,
                   const std::optional<FamilyId>& scope, const RunConfig& cfg,
                   std::ostream& out);

}  // namespace md5fol
