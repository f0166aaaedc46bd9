#include "md5fol/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/SVD>

namespace md5fol {

namespace {

using Cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rates below kRateEps cannot pin the flow parameter; complex-modulus
// recovery below kModulusSoft is dominated by a real slot when one exists.
constexpr double kRateEps = 1e-8;
constexpr double kModulusSoft = 1e-3;
// Candidate branch offsets tried by argument-based recovery.
constexpr int kArgSearch = 64;

bool generic(const Covector& F) {
  return (F.ideal_part().array() != 0.0).any();
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(rank_tol > 0.0)) throw std::invalid_argument("rank_tol must be positive");
  if (!(residual_tol > 0.0))
    throw std::invalid_argument("residual_tol must be positive");
  if (!(membership_tol > 0.0))
    throw std::invalid_argument("membership_tol must be positive");
}

int orbit_dimension(const FamilyDescriptor& d, const Covector& F,
                    const ToleranceConfig& tol) {
  tol.validate();
  const StructureConstants c = build_algebra(d);
  const int rank = rank_skew(kirillov_form(c, F), tol.rank_tol);
  const bool off_locus = F.ideal_part().cwiseAbs().maxCoeff() > tol.rank_tol;
  const int closed_form = off_locus ? 2 : 0;
  if (rank != closed_form)
    throw InternalInconsistency("orbit_dimension: Kirillov rank " +
                                std::to_string(rank) +
                                " disagrees with locus criterion " +
                                std::to_string(closed_form) + " for " +
                                describe(d));
  return rank;
}

Covector orbit_param(const FamilyDescriptor& d, const Covector& F, double x,
                     double a) {
  const FamilyParams& p = d.params();
  const double beta = F.beta(), gamma = F.gamma(), delta = F.delta(),
               sigma = F.sigma();
  const auto E = [a](double rate) { return std::exp(a * rate); };
  switch (d.id()) {
    case FamilyId::G5_4_1:
      return Covector::of(x, beta * E(*p.lambda1), gamma * E(*p.lambda2),
                          delta * E(*p.lambda3), sigma * E(1.0));
    case FamilyId::G5_4_2:
      return Covector::of(x, beta * E(*p.lambda1), gamma * E(*p.lambda2),
                          delta * E(1.0), sigma * E(1.0));
    case FamilyId::G5_4_3:
      return Covector::of(x, beta * E(*p.lambda), gamma * E(*p.lambda),
                          delta * E(1.0), sigma * E(1.0));
    case FamilyId::G5_4_4:
      return Covector::of(x, beta * E(*p.lambda), gamma * E(1.0),
                          delta * E(1.0), sigma * E(1.0));
    case FamilyId::G5_4_5: {
      const double ea = E(1.0);
      return Covector::of(x, beta * ea, gamma * ea, delta * ea, sigma * ea);
    }
    case FamilyId::G5_4_6: {
      const double ea = E(1.0);
      return Covector::of(x, beta * E(*p.lambda1), gamma * E(*p.lambda2),
                          delta * ea, (delta * a + sigma) * ea);
    }
    case FamilyId::G5_4_7: {
      const double ea = E(1.0);
      return Covector::of(x, beta * E(*p.lambda), gamma * E(*p.lambda),
                          delta * ea, (delta * a + sigma) * ea);
    }
    case FamilyId::G5_4_8: {
      const double el = E(*p.lambda);
      const double ea = E(1.0);
      return Covector::of(x, beta * el, (beta * a + gamma) * el, delta * ea,
                          (delta * a + sigma) * ea);
    }
    case FamilyId::G5_4_9: {
      const double el = E(*p.lambda);
      const double ea = E(1.0);
      return Covector::of(x, beta * el, gamma * ea, (gamma * a + delta) * ea,
                          (gamma * a * a / 2 + delta * a + sigma) * ea);
    }
    case FamilyId::G5_4_10: {
      const double ea = E(1.0);
      return Covector::of(
          x, beta * ea, (beta * a + gamma) * ea,
          (beta * a * a / 2 + gamma * a + delta) * ea,
          (beta * a * a * a / 6 + gamma * a * a / 2 + delta * a + sigma) * ea);
    }
    case FamilyId::G5_4_11: {
      const Cplx w = Cplx(beta, gamma) * std::exp(a * std::exp(Cplx(0.0, -*p.phi)));
      return Covector::of(x, w.real(), w.imag(), delta * E(*p.lambda1),
                          sigma * E(*p.lambda2));
    }
    case FamilyId::G5_4_12: {
      const Cplx w = Cplx(beta, gamma) * std::exp(a * std::exp(Cplx(0.0, -*p.phi)));
      return Covector::of(x, w.real(), w.imag(), delta * E(*p.lambda),
                          sigma * E(*p.lambda));
    }
    case FamilyId::G5_4_13: {
      const Cplx w = Cplx(beta, gamma) * std::exp(a * std::exp(Cplx(0.0, -*p.phi)));
      const double el = E(*p.lambda);
      return Covector::of(x, w.real(), w.imag(), delta * el,
                          (delta * a + sigma) * el);
    }
    case FamilyId::G5_4_14: {
      const Cplx w = Cplx(beta, gamma) * std::exp(a * std::exp(Cplx(0.0, -*p.phi)));
      const Cplx u = Cplx(delta, sigma) * std::exp(a * Cplx(*p.lambda, -*p.mu));
      return Covector::of(x, w.real(), w.imag(), u.real(), u.imag());
    }
  }
  throw InternalInconsistency("orbit_param: unhandled family");
}

namespace {

// Recovery probes: coordinates of the chart that evolve as a pure
// exponential of the flow parameter when F's zero pattern makes the
// polynomial terms drop out.
struct RealProbe {
  int slot;     // 1..4
  double rate;  // chart value is F[slot] * exp(rate * a)
};

struct CplxProbe {
  int slot;         // first slot of the pair (1 or 3)
  double mod_rate;  // modulus evolves as exp(mod_rate * a)
  double arg_rate;  // argument advances by -arg_rate * a
};

void collect_probes(const FamilyDescriptor& d, const Covector& F,
                    std::vector<RealProbe>& real_probes,
                    std::vector<CplxProbe>& cplx_probes) {
  const FamilyParams& p = d.params();
  const double beta = F.beta(), gamma = F.gamma(), delta = F.delta(),
               sigma = F.sigma();
  const auto real_probe = [&](bool usable, int slot, double rate) {
    if (usable && F.coords(slot) != 0.0) real_probes.push_back({slot, rate});
  };
  const auto cplx_probe = [&](bool usable, int slot, double mod_rate,
                              double arg_rate) {
    if (usable && (F.coords(slot) != 0.0 || F.coords(slot + 1) != 0.0))
      cplx_probes.push_back({slot, mod_rate, arg_rate});
  };
  switch (d.id()) {
    case FamilyId::G5_4_1:
      real_probe(true, 1, *p.lambda1);
      real_probe(true, 2, *p.lambda2);
      real_probe(true, 3, *p.lambda3);
      real_probe(true, 4, 1.0);
      break;
    case FamilyId::G5_4_2:
      real_probe(true, 1, *p.lambda1);
      real_probe(true, 2, *p.lambda2);
      real_probe(true, 3, 1.0);
      real_probe(true, 4, 1.0);
      break;
    case FamilyId::G5_4_3:
      real_probe(true, 1, *p.lambda);
      real_probe(true, 2, *p.lambda);
      real_probe(true, 3, 1.0);
      real_probe(true, 4, 1.0);
      break;
    case FamilyId::G5_4_4:
      real_probe(true, 1, *p.lambda);
      real_probe(true, 2, 1.0);
      real_probe(true, 3, 1.0);
      real_probe(true, 4, 1.0);
      break;
    case FamilyId::G5_4_5:
      for (int slot = 1; slot <= 4; ++slot) real_probe(true, slot, 1.0);
      break;
    case FamilyId::G5_4_6:
      real_probe(true, 1, *p.lambda1);
      real_probe(true, 2, *p.lambda2);
      real_probe(true, 3, 1.0);
      real_probe(delta == 0.0, 4, 1.0);
      break;
    case FamilyId::G5_4_7:
      real_probe(true, 1, *p.lambda);
      real_probe(true, 2, *p.lambda);
      real_probe(true, 3, 1.0);
      real_probe(delta == 0.0, 4, 1.0);
      break;
    case FamilyId::G5_4_8:
      real_probe(true, 1, *p.lambda);
      real_probe(beta == 0.0, 2, *p.lambda);
      real_probe(true, 3, 1.0);
      real_probe(delta == 0.0, 4, 1.0);
      break;
    case FamilyId::G5_4_9:
      real_probe(true, 1, *p.lambda);
      real_probe(true, 2, 1.0);
      real_probe(gamma == 0.0, 3, 1.0);
      real_probe(gamma == 0.0 && delta == 0.0, 4, 1.0);
      break;
    case FamilyId::G5_4_10:
      real_probe(true, 1, 1.0);
      real_probe(beta == 0.0, 2, 1.0);
      real_probe(beta == 0.0 && gamma == 0.0, 3, 1.0);
      real_probe(beta == 0.0 && gamma == 0.0 && delta == 0.0, 4, 1.0);
      break;
    case FamilyId::G5_4_11:
      cplx_probe(true, 1, std::cos(*p.phi), std::sin(*p.phi));
      real_probe(true, 3, *p.lambda1);
      real_probe(true, 4, *p.lambda2);
      break;
    case FamilyId::G5_4_12:
      cplx_probe(true, 1, std::cos(*p.phi), std::sin(*p.phi));
      real_probe(true, 3, *p.lambda);
      real_probe(true, 4, *p.lambda);
      break;
    case FamilyId::G5_4_13:
      cplx_probe(true, 1, std::cos(*p.phi), std::sin(*p.phi));
      real_probe(true, 3, *p.lambda);
      real_probe(delta == 0.0, 4, *p.lambda);
      break;
    case FamilyId::G5_4_14:
      cplx_probe(true, 1, std::cos(*p.phi), std::sin(*p.phi));
      cplx_probe(true, 3, *p.lambda, *p.mu);
      break;
  }
}

// Worst per-coordinate deviation of G from the chart point at parameter a.
// Relative where F's coordinate is nonzero, absolute where the chart is
// identically zero; the first coordinate matches by construction.
double compare_to_chart(const FamilyDescriptor& d, const Covector& F,
                        const Covector& G, double a) {
  const Covector model = orbit_param(d, F, G.alpha(), a);
  double worst = 0.0;
  for (int i = 1; i < kDim; ++i) {
    const double denom =
        (F.coords(i) != 0.0)
            ? std::max({std::abs(model.coords(i)), std::abs(G.coords(i)), 1e-300})
            : 1.0;
    double dev = std::abs(G.coords(i) - model.coords(i)) / denom;
    if (std::isnan(dev)) dev = kInf;  // chart value overflowed
    worst = std::max(worst, dev);
  }
  return worst;
}

double fixed_point_residual(const Covector& F, const Covector& G) {
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i) {
    const double denom =
        (F.coords(i) != 0.0)
            ? std::max({std::abs(F.coords(i)), std::abs(G.coords(i)), 1e-300})
            : 1.0;
    worst = std::max(worst, std::abs(G.coords(i) - F.coords(i)) / denom);
  }
  return worst;
}

}  // namespace

double membership_residual(const FamilyDescriptor& d, const Covector& F,
                           const Covector& G, const ToleranceConfig& tol) {
  tol.validate();
  if (!generic(F)) return fixed_point_residual(F, G);

  std::vector<RealProbe> real_probes;
  std::vector<CplxProbe> cplx_probes;
  collect_probes(d, F, real_probes, cplx_probes);

  const RealProbe* real_pick = nullptr;
  for (const RealProbe& pr : real_probes)
    if (std::abs(pr.rate) >= kRateEps) {
      real_pick = &pr;
      break;
    }
  const CplxProbe* mod_pick = nullptr;
  for (const CplxProbe& pc : cplx_probes)  // best-conditioned modulus wins
    if (std::abs(pc.mod_rate) >= kRateEps &&
        (!mod_pick || std::abs(pc.mod_rate) > std::abs(mod_pick->mod_rate)))
      mod_pick = &pc;

  // Slot order decides, except that a poorly conditioned complex modulus
  // yields to any real probe.
  if (mod_pick && real_pick && mod_pick->slot < real_pick->slot &&
      std::abs(mod_pick->mod_rate) < kModulusSoft)
    mod_pick = nullptr;
  if (mod_pick && real_pick && real_pick->slot < mod_pick->slot)
    mod_pick = nullptr;

  if (mod_pick) {
    const double mf = std::hypot(F.coords(mod_pick->slot), F.coords(mod_pick->slot + 1));
    const double mg = std::hypot(G.coords(mod_pick->slot), G.coords(mod_pick->slot + 1));
    if (mg == 0.0) return kInf;
    return compare_to_chart(d, F, G, std::log(mg / mf) / mod_pick->mod_rate);
  }
  if (real_pick) {
    const double ratio = G.coords(real_pick->slot) / F.coords(real_pick->slot);
    if (!(ratio > 0.0)) return kInf;  // the slot never changes sign or vanishes
    return compare_to_chart(d, F, G, std::log(ratio) / real_pick->rate);
  }

  // Both (near-)rotation slots: recover the parameter from an argument
  // advance, trying the branch offsets in turn.
  for (const CplxProbe& pc : cplx_probes) {
    if (std::abs(pc.arg_rate) < kRateEps) continue;
    const Cplx wf(F.coords(pc.slot), F.coords(pc.slot + 1));
    const Cplx wg(G.coords(pc.slot), G.coords(pc.slot + 1));
    if (wf == 0.0) continue;
    if (wg == 0.0) return kInf;
    const double theta = std::arg(wg / wf);  // equals -a * arg_rate mod 2*pi
    const double two_pi = 6.28318530717958647692;
    double best = kInf;
    for (int k = -kArgSearch; k <= kArgSearch; ++k) {
      const double a = -(theta + two_pi * k) / pc.arg_rate;
      best = std::min(best, compare_to_chart(d, F, G, a));
      if (best < tol.membership_tol / 100.0) break;
    }
    return best;
  }

  throw DegenerateBase("membership_residual: no coordinate of " + describe(d) +
                       " base point pins the flow parameter");
}

bool leaf_membership(const FamilyDescriptor& d, const Covector& F,
                     const Covector& G, const ToleranceConfig& tol) {
  return membership_residual(d, F, G, tol) <= tol.membership_tol;
}

double tangent_residual(const FamilyDescriptor& d, const Covector& F, double x,
                        double a) {
  if (!generic(F))
    throw std::invalid_argument(
        "tangent_residual: base covector is a fixed point");
  const double ha = 1e-6 * std::max(1.0, std::abs(a));
  const double hx = 1e-6 * std::max(1.0, std::abs(x));
  const Vec5 v = (orbit_param(d, F, x, a + ha).coords -
                  orbit_param(d, F, x, a - ha).coords) /
                 (2.0 * ha);
  const Vec5 w = (orbit_param(d, F, x + hx, a).coords -
                  orbit_param(d, F, x - hx, a).coords) /
                 (2.0 * hx);
  const Covector P = orbit_param(d, F, x, a);
  const StructureConstants c = build_algebra(d);
  Mat5 gen;
  for (int i = 0; i < kDim; ++i) gen.col(i) = coad_field(c, i, P).coords;
  Eigen::JacobiSVD<Mat5> svd(gen, Eigen::ComputeFullU);
  const Vec5& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < kDim; ++i)
    if (sv(i) > 1e-12 * sv(0)) ++rank;
  const auto basis = svd.matrixU().leftCols(rank);
  const auto out_of_span = [&basis](const Vec5& t) {
    return (t - basis * (basis.transpose() * t)).norm();
  };
  return (out_of_span(v) + out_of_span(w)) / (v.norm() + w.norm());
}

Covector numeric_flow(const FamilyDescriptor& d, const Covector& F,
                      const AlgebraElement& u, double T, int steps) {
  if (steps < 1) throw std::invalid_argument("numeric_flow: steps must be >= 1");
  const StructureConstants c = build_algebra(d);
  // The coadjoint field of u is linear in F: F' = A F with
  // A(j,k) = sum_i u_i c(j,i,k).
  Mat5 A = Mat5::Zero();
  for (int j = 0; j < kDim; ++j)
    for (int k = 0; k < kDim; ++k) {
      double v = 0.0;
      for (int i = 0; i < kDim; ++i) v += u.coords(i) * c(j, i, k);
      A(j, k) = v;
    }
  Vec5 f = F.coords;
  const double h = T / steps;
  for (int s = 0; s < steps; ++s) {
    const Vec5 k1 = A * f;
    const Vec5 k2 = A * (f + 0.5 * h * k1);
    const Vec5 k3 = A * (f + 0.5 * h * k2);
    const Vec5 k4 = A * (f + h * k3);
    f += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  Covector out;
  out.coords = f;
  return out;
}

}  // namespace md5fol
