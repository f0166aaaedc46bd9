#include "md5fol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

namespace md5fol {

namespace {

using Cplx = std::complex<double>;

// Stream tags keeping every suite's sample stream independent.
enum : std::uint64_t {
  kTagParams = 1,
  kTagMdRank = 2,
  kTagTangency = 3,
  kTagFlow = 4,
  kTagRoundTrip = 5,
  kTagLeaf = 6,
  kTagLeafPin = 7,
  kTagFibration = 8,
  kTagAction = 9,
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_res(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fmt_point(const Covector& F) {
  std::string out = "(";
  for (int i = 0; i < kDim; ++i) {
    if (i) out += ",";
    out += fmt(F.coords(i));
  }
  return out + ")";
}

FamilyDescriptor draw_descriptor(FamilyId id, std::uint64_t seed,
                                 std::uint64_t suite_tag, int draw) {
  Rng rng(derive_key(seed, {kTagParams, suite_tag,
                            static_cast<std::uint64_t>(family_index(id)),
                            static_cast<std::uint64_t>(draw)}));
  return validate_params(id, sample_params(id, rng));
}

Rng sample_rng(std::uint64_t seed, std::uint64_t suite_tag, FamilyId id,
               int draw, int sample) {
  return Rng(derive_key(seed, {suite_tag,
                               static_cast<std::uint64_t>(family_index(id)),
                               static_cast<std::uint64_t>(draw),
                               static_cast<std::uint64_t>(sample)}));
}

int per_draw(int n_points, int draws) { return (n_points + draws - 1) / draws; }

// Degenerate strata of the family's equivalence map, as sampling pins.
std::vector<StratumPin> pin_list(FamilyId id) {
  const auto pin = [](bool b, bool g, bool dl, bool sg) {
    StratumPin p;
    p.beta = b;
    p.gamma = g;
    p.delta = dl;
    p.sigma = sg;
    return p;
  };
  switch (family_index(id)) {
    case 0:  // powers on the first three slots
      return {pin(1, 0, 0, 0), pin(0, 1, 0, 0), pin(0, 0, 1, 0)};
    case 1:
    case 2:
      return {pin(1, 0, 0, 0), pin(0, 1, 0, 0)};
    case 3:
      return {pin(1, 0, 0, 0)};
    case 4:  // identity map, nothing to pin
      return {};
    case 5:  // shear on the last slot switches at delta = 0
    case 6:
      return {pin(1, 0, 0, 0), pin(0, 1, 0, 0), pin(0, 0, 1, 0)};
    case 7:  // composite second slot switches at beta = 0
      return {pin(1, 0, 0, 0), pin(0, 1, 0, 0), pin(0, 0, 1, 0),
              pin(1, 0, 1, 0)};
    case 8:
      return {pin(1, 0, 0, 0), pin(0, 1, 0, 0), pin(0, 0, 1, 0),
              pin(0, 1, 1, 0)};
    case 9:  // branch chain beta, then gamma, then delta
      return {pin(1, 0, 0, 0), pin(0, 1, 0, 0), pin(0, 0, 1, 0),
              pin(1, 1, 0, 0), pin(1, 1, 1, 0)};
    case 10:
    case 11:
      return {pin(1, 1, 0, 0), pin(0, 0, 1, 0), pin(0, 0, 0, 1),
              pin(0, 0, 1, 1)};
    case 12:  // shear-power composite switches at delta = 0
      return {pin(1, 1, 0, 0), pin(0, 0, 1, 0), pin(0, 0, 0, 1)};
    case 13:
      return {pin(1, 1, 0, 0), pin(0, 0, 1, 1)};
  }
  return {};
}

}  // namespace

void RunConfig::validate() const {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  tolerances.validate();
}

PropertyReport run_md_rank_suite(FamilyId id, std::uint64_t seed,
                                 int param_draws, int n_points,
                                 const ToleranceConfig& tol) {
  PropertyReport rep;
  rep.suite = "md-rank";
  rep.subject = to_string(id);
  for (int dr = 0; dr < param_draws; ++dr) {
    const FamilyDescriptor d = draw_descriptor(id, seed, kTagMdRank, dr);
    for (int i = 0; i < n_points; ++i) {
      Rng rng = sample_rng(seed, kTagMdRank, id, dr, i);
      const bool on_locus = i % 10 == 9;  // exact fixed points now and then
      Covector F;
      F.coords(0) = rng.uniform(-10.0, 10.0);
      if (!on_locus)
        for (int k = 1; k < kDim; ++k) F.coords(k) = rng.uniform(-10.0, 10.0);
      bool ok = false;
      std::string why;
      try {
        const int dim = orbit_dimension(d, F, tol);
        const int expect = on_locus ? 0 : 2;
        ok = dim == expect;
        if (!ok)
          why = describe(d) + " F=" + fmt_point(F) + " dim=" +
                std::to_string(dim) + " expected=" + std::to_string(expect);
      } catch (const InternalInconsistency& e) {
        why = e.what() + std::string(" F=") + fmt_point(F);
      }
      rep.record(ok, ok ? 0.0 : 1.0, why);
    }
  }
  return rep;
}

PropertyReport run_tangency_suite(FamilyId id, std::uint64_t seed,
                                  int param_draws, int n_points,
                                  const ToleranceConfig& tol) {
  PropertyReport rep;
  rep.suite = "tangency";
  rep.subject = to_string(id);
  const int per = per_draw(n_points, param_draws);
  for (int dr = 0; dr < param_draws; ++dr) {
    const FamilyDescriptor d = draw_descriptor(id, seed, kTagTangency, dr);
    for (int i = 0; i < per; ++i) {
      Rng rng = sample_rng(seed, kTagTangency, id, dr, i);
      const Covector F = sample_generic_point(d, rng);
      const double x = rng.uniform(-10.0, 10.0);
      const double a = rng.uniform(-1.5, 1.5);
      const double r = tangent_residual(d, F, x, a);
      rep.record(r < tol.residual_tol, r,
                 r < tol.residual_tol
                     ? std::string()
                     : describe(d) + " F=" + fmt_point(F) + " x=" + fmt(x) +
                           " a=" + fmt(a));
    }
  }
  return rep;
}

PropertyReport run_flow_oracle_suite(FamilyId id, std::uint64_t seed,
                                     int param_draws, int n_points, int steps,
                                     const ToleranceConfig& tol) {
  PropertyReport rep;
  rep.suite = "flow-oracle";
  rep.subject = to_string(id);
  const int per = per_draw(n_points, param_draws);
  for (int dr = 0; dr < param_draws; ++dr) {
    const FamilyDescriptor d = draw_descriptor(id, seed, kTagFlow, dr);
    for (int i = 0; i < per; ++i) {
      Rng rng = sample_rng(seed, kTagFlow, id, dr, i);
      const Covector F = sample_generic_point(d, rng);
      const double T = rng.uniform(-1.0, 1.0);
      const Covector end =
          numeric_flow(d, F, AlgebraElement::basis(0), T, steps);
      const double r = membership_residual(d, F, end, tol);
      rep.record(r <= tol.membership_tol, r,
                 r <= tol.membership_tol
                     ? std::string()
                     : describe(d) + " F=" + fmt_point(F) + " T=" + fmt(T));
    }
  }
  return rep;
}

namespace {

// Both composition orders, each evaluated where its input naturally lives:
// inverse-after-map on the stratum sample, map-after-inverse on its image.
// Feeding raw stratum points to the inverse map instead would push them
// through power maps at the wrong scale and drown small coordinates in the
// rounding noise of the logarithmic shears.
double round_trip_residual(const FamilyDescriptor& d, const Covector& Q) {
  const Covector image = equivalence_map(d, Q);
  const Covector there = equivalence_map_inverse(d, image);
  const Covector back = equivalence_map(d, equivalence_map_inverse(d, image));
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i) {
    const double dq = std::max(1.0, std::abs(Q.coords(i)));
    const double di = std::max(1.0, std::abs(image.coords(i)));
    worst = std::max(worst, std::abs(there.coords(i) - Q.coords(i)) / dq);
    worst = std::max(worst, std::abs(back.coords(i) - image.coords(i)) / di);
  }
  return worst;
}

// One report-worth of leaf sampling: the main stream or one pinned
// sub-stream. The leaf-to-leaf and round-trip suites both walk these, so
// they see byte-identical draws.
struct LeafGroup {
  std::string subject;
  StratumPin pin;
  std::vector<std::pair<FamilyDescriptor, std::uint64_t>> draws;
  int per = 0;
};

std::vector<LeafGroup> leaf_groups(FamilyId id, std::uint64_t seed,
                                   int param_draws, int n_points) {
  const auto fam = static_cast<std::uint64_t>(family_index(id));
  std::vector<LeafGroup> groups;
  LeafGroup main;
  main.subject = to_string(id);
  main.per = per_draw(n_points, param_draws);
  for (int dr = 0; dr < param_draws; ++dr)
    main.draws.emplace_back(
        draw_descriptor(id, seed, kTagLeaf, dr),
        derive_key(seed, {kTagLeaf, fam, static_cast<std::uint64_t>(dr)}));
  groups.push_back(std::move(main));

  const int pin_draws = 5;
  const int pin_per = per_draw(std::max(50, n_points / 10), pin_draws);
  int pin_no = 0;
  for (const StratumPin& pin : pin_list(id)) {
    LeafGroup g;
    g.subject = to_string(id) + "[" + pin.label() + "]";
    g.pin = pin;
    g.per = pin_per;
    for (int dr = 0; dr < pin_draws; ++dr)
      g.draws.emplace_back(
          draw_descriptor(id, seed, kTagLeafPin + 16 * pin_no, dr),
          derive_key(seed, {kTagLeafPin, fam,
                            static_cast<std::uint64_t>(pin_no),
                            static_cast<std::uint64_t>(dr)}));
    groups.push_back(std::move(g));
    ++pin_no;
  }
  return groups;
}

}  // namespace

std::vector<PropertyReport> run_round_trip_suites(FamilyId id,
                                                  std::uint64_t seed,
                                                  int param_draws, int n_points,
                                                  double roundtrip_tol,
                                                  const ToleranceConfig& tol) {
  tol.validate();
  std::vector<PropertyReport> out;
  for (const LeafGroup& g : leaf_groups(id, seed, param_draws, n_points)) {
    PropertyReport rep;
    rep.suite = "round-trip";
    rep.subject = g.subject;
    for (const auto& [d, key] : g.draws) {
      for (int i = 0; i < g.per; ++i) {
        // same derivation as check_leaf_to_leaf, so the points coincide
        Rng rng(derive_key(key, {static_cast<std::uint64_t>(i)}));
        const Covector F = sample_generic_point(d, rng, g.pin);
        const FlowDraw fl = sample_flow(d, F, rng);
        const Covector P = orbit_param(d, F, fl.x, fl.a);
        const double r =
            std::max(round_trip_residual(d, F), round_trip_residual(d, P));
        rep.record(r <= roundtrip_tol, r,
                   r <= roundtrip_tol
                       ? std::string()
                       : describe(d) + " F=" + fmt_point(F) + " x=" +
                             fmt(fl.x) + " a=" + fmt(fl.a));
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<PropertyReport> run_leaf_to_leaf_suites(FamilyId id,
                                                    std::uint64_t seed,
                                                    int param_draws,
                                                    int n_points,
                                                    const ToleranceConfig& tol) {
  std::vector<PropertyReport> out;
  for (const LeafGroup& g : leaf_groups(id, seed, param_draws, n_points)) {
    PropertyReport rep;
    rep.suite = "leaf-to-leaf";
    rep.subject = g.subject;
    for (const auto& [d, key] : g.draws)
      rep.merge(check_leaf_to_leaf(d, key, g.per, tol, g.pin));
    out.push_back(std::move(rep));
  }
  return out;
}

PropertyReport run_fibration_suite(std::uint64_t seed, int n_points,
                                   double fibration_tol,
                                   const ToleranceConfig& tol) {
  const FamilyDescriptor d5 =
      validate_params(FamilyId::G5_4_5, FamilyParams::none());
  PropertyReport rep;
  rep.suite = "fibration";
  rep.subject = "G5_4_5";
  for (int i = 0; i < n_points; ++i) {
    Rng rng = sample_rng(seed, kTagFibration, FamilyId::G5_4_5, 0, i);
    const Covector F = sample_generic_point(d5, rng);
    // same leaf -> same base point
    const Covector G =
        orbit_param(d5, F, rng.uniform(-10.0, 10.0), rng.uniform(-1.5, 1.5));
    const double fiber_gap = fibration_p45(F).distance(fibration_p45(G));
    // same fiber -> same leaf (positive scaling of the ideal part)
    Covector H;
    H.coords(0) = rng.uniform(-10.0, 10.0);
    H.coords.tail<4>() = F.ideal_part() * std::exp(rng.uniform(-2.0, 2.0));
    const double mem = membership_residual(d5, F, H, tol);
    // distinct base points -> distinct leaves
    Covector K;
    do {
      K = sample_generic_point(d5, rng);
    } while (fibration_p45(K).distance(fibration_p45(F)) < 1e-3);
    const bool foreign_off_leaf = !leaf_membership(d5, F, K, tol);

    const bool ok = fiber_gap <= fibration_tol && mem <= tol.membership_tol &&
                    foreign_off_leaf;
    const double r = std::max(fiber_gap, mem);
    rep.record(ok, r,
               ok ? std::string()
                  : "F=" + fmt_point(F) + " fiber_gap=" + fmt_res(fiber_gap) +
                        " membership=" + fmt_res(mem) +
                        (foreign_off_leaf ? "" : " foreign point joined leaf"));
  }
  return rep;
}

PropertyReport run_action_suite(FamilyId which, std::uint64_t seed,
                                int n_points, const ToleranceConfig& tol) {
  if (which != FamilyId::G5_4_12 && which != FamilyId::G5_4_14)
    throw std::invalid_argument("run_action_suite: family has no R^2-action");
  const bool is12 = which == FamilyId::G5_4_12;
  const FamilyDescriptor d =
      canonical_target(is12 ? TopologicalType::F2 : TopologicalType::F3).family;
  PropertyReport rep;
  rep.suite = is12 ? "action-rho-412" : "action-rho-414";
  rep.subject = std::string(is12 ? "G5_4_12" : "G5_4_14") + "-canonical";
  const auto act = [is12](double r, double a, const Covector& P) {
    return is12 ? action_rho_412(r, a, P) : action_rho_414(r, a, P);
  };
  for (int i = 0; i < n_points; ++i) {
    Rng rng = sample_rng(seed, kTagAction, which, 0, i);
    const Covector P = sample_generic_point(d, rng);

    // action orbits stay inside the leaf
    const Covector Q = act(rng.uniform(-10.0, 10.0), rng.uniform(-3.0, 3.0), P);
    const double into_leaf = membership_residual(d, P, Q, tol);

    // leaf points are reached by analytically solved action parameters
    const Covector O =
        orbit_param(d, P, rng.uniform(-10.0, 10.0), rng.uniform(-3.0, 3.0));
    const double rr = O.alpha() - P.alpha();
    double aa;
    if (is12 && P.delta() != 0.0)
      aa = std::log(O.delta() / P.delta());
    else if (is12 && P.sigma() != 0.0)
      aa = std::log(O.sigma() / P.sigma());
    else {
      const bool use_w = P.beta() != 0.0 || P.gamma() != 0.0;
      const Cplx from = use_w ? Cplx(P.beta(), P.gamma())
                              : Cplx(P.delta(), P.sigma());
      const Cplx to = use_w ? Cplx(O.beta(), O.gamma())
                            : Cplx(O.delta(), O.sigma());
      aa = -std::arg(to / from);
    }
    const Covector R = act(rr, aa, P);
    double onto_leaf = 0.0;
    for (int k = 0; k < kDim; ++k)
      onto_leaf = std::max(onto_leaf,
                           std::abs(R.coords(k) - O.coords(k)) /
                               std::max(1.0, std::abs(O.coords(k))));

    const double r = std::max(into_leaf, onto_leaf);
    rep.record(r <= tol.membership_tol, r,
               r <= tol.membership_tol
                   ? std::string()
                   : "P=" + fmt_point(P) + " into=" + fmt_res(into_leaf) +
                         " onto=" + fmt_res(onto_leaf));
  }
  return rep;
}

bool VerifyOutcome::all_pass() const {
  for (const PropertyReport& r : reports)
    if (!r.pass()) return false;
  return !reports.empty();
}

int VerifyOutcome::failures() const {
  int n = 0;
  for (const PropertyReport& r : reports)
    if (!r.pass()) ++n;
  return n;
}

VerifyOutcome run_verification(const std::optional<FamilyId>& scope,
                               const RunConfig& cfg) {
  cfg.validate();
  const ToleranceConfig& tol = cfg.tolerances;
  std::vector<FamilyId> families;
  if (scope)
    families.push_back(*scope);
  else
    families.assign(kAllFamilies.begin(), kAllFamilies.end());

  VerifyOutcome out;
  const int n = cfg.n_samples;
  for (FamilyId id : families) {
    out.reports.push_back(run_md_rank_suite(id, cfg.seed, 100, n, tol));
    out.reports.push_back(run_tangency_suite(id, cfg.seed, 20, n, tol));
    out.reports.push_back(run_flow_oracle_suite(
        id, cfg.seed, 10, std::max(100, n / 5), 2000, tol));
    for (PropertyReport& r :
         run_round_trip_suites(id, cfg.seed, 25, n, 1e-9, tol))
      out.reports.push_back(std::move(r));
    for (PropertyReport& r : run_leaf_to_leaf_suites(id, cfg.seed, 25, n, tol))
      out.reports.push_back(std::move(r));
    if (id == FamilyId::G5_4_5)
      out.reports.push_back(run_fibration_suite(cfg.seed, n, 1e-9, tol));
    if (id == FamilyId::G5_4_12 || id == FamilyId::G5_4_14)
      out.reports.push_back(run_action_suite(id, cfg.seed, n, tol));
  }
  return out;
}

void render_report(const VerifyOutcome& outcome,
                   const std::optional<FamilyId>& scope, const RunConfig& cfg,
                   std::ostream& out) {
  const std::string scope_name = scope ? to_string(*scope) : "all";
  char line[256];
  const auto trailer = [&outcome, &line] {
    std::snprintf(line, sizeof line, "RESULT: %s suites=%zu failures=%d",
                  outcome.all_pass() ? "PASS" : "FAIL", outcome.reports.size(),
                  outcome.failures());
    return std::string(line);
  };
  if (cfg.format == ReportFormat::json) {
    nlohmann::ordered_json doc;
    doc["scope"] = scope_name;
    doc["seed"] = cfg.seed;
    doc["n_samples"] = cfg.n_samples;
    doc["tolerances"] = {{"rank_tol", cfg.tolerances.rank_tol},
                         {"residual_tol", cfg.tolerances.residual_tol},
                         {"membership_tol", cfg.tolerances.membership_tol}};
    doc["suites"] = nlohmann::ordered_json::array();
    for (const PropertyReport& r : outcome.reports) {
      nlohmann::ordered_json s;
      s["suite"] = r.suite;
      s["subject"] = r.subject;
      s["samples"] = r.n_samples;
      s["pass"] = r.n_pass;
      s["max_residual"] = fmt_res(r.max_residual);
      s["ok"] = r.pass();
      s["counterexamples"] = nlohmann::ordered_json::array();
      for (const Counterexample& ce : r.counterexamples)
        s["counterexamples"].push_back(
            {{"input", ce.input}, {"residual", fmt_res(ce.residual)}});
      doc["suites"].push_back(std::move(s));
    }
    doc["result"] = {{"pass", outcome.all_pass()},
                     {"suites", outcome.reports.size()},
                     {"failures", outcome.failures()}};
    out << doc.dump(2) << "\n";
    out << trailer() << "\n";
    return;
  }
  std::snprintf(line, sizeof line,
                "md5fol verification scope=%s seed=%llu n_samples=%d "
                "rank_tol=%g residual_tol=%g membership_tol=%g",
                scope_name.c_str(),
                static_cast<unsigned long long>(cfg.seed), cfg.n_samples,
                cfg.tolerances.rank_tol, cfg.tolerances.residual_tol,
                cfg.tolerances.membership_tol);
  out << line << "\n";
  for (const PropertyReport& r : outcome.reports) {
    std::snprintf(line, sizeof line, "SUITE %-14s %-28s samples=%-7ld pass=%-7ld max_residual=%s %s",
                  r.suite.c_str(), r.subject.c_str(), r.n_samples, r.n_pass,
                  fmt_res(r.max_residual).c_str(), r.pass() ? "PASS" : "FAIL");
    out << line << "\n";
    for (const Counterexample& ce : r.counterexamples)
      out << "  CE residual=" << fmt_res(ce.residual) << " " << ce.input
          << "\n";
  }
  out << trailer() << "\n";
}

}  // namespace md5fol
