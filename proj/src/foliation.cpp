#include "md5fol/foliation.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

namespace md5fol {

namespace {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// sign(v) |v|^e with the continuity convention 0 -> 0 (also for negative
// exponents, where the literal power would blow up).
double signed_pow(double v, double e) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), e), v);
}

// exp(m Log v) on the principal branch, 0 -> 0.
Cplx cplx_pow(Cplx v, Cplx m) {
  if (v == 0.0) return 0.0;
  return std::exp(m * std::log(v));
}

double log_abs(double v) { return std::log(std::abs(v)); }

// s - t log|t| straightens the t-driven drift of the last slot; identity
// on the t = 0 stratum.
double unshear(double s, double t) { return t == 0.0 ? s : s - t * log_abs(t); }
double reshear(double s, double t) { return t == 0.0 ? s : s + t * log_abs(t); }

Cplx w_slot(const Covector& P) { return {P.beta(), P.gamma()}; }
Cplx u_slot(const Covector& P) { return {P.delta(), P.sigma()}; }

Covector from_slots(double x, Cplx w, double t, double s) {
  return Covector::of(x, w.real(), w.imag(), t, s);
}

Covector from_slots(double x, Cplx w, Cplx u) {
  return Covector::of(x, w.real(), w.imag(), u.real(), u.imag());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Covector& F) {
  std::string out = "(";
  for (int i = 0; i < kDim; ++i) {
    if (i) out += ",";
    out += fmt(F.coords(i));
  }
  return out + ")";
}

}  // namespace

std::string to_string(TopologicalType t) {
  switch (t) {
    case TopologicalType::F1: return "F1";
    case TopologicalType::F2: return "F2";
    case TopologicalType::F3: return "F3";
  }
  return "?";
}

bool in_generic_stratum(const FamilyDescriptor&, const Covector& F) {
  return (F.ideal_part().array() != 0.0).any();
}

TopologicalType topological_type(FamilyId id) {
  const int idx = family_index(id);
  if (idx <= 9) return TopologicalType::F1;
  if (idx <= 12) return TopologicalType::F2;
  return TopologicalType::F3;
}

FoliationDescriptor canonical_target(TopologicalType t) {
  switch (t) {
    case TopologicalType::F1:
      return {validate_params(FamilyId::G5_4_5, FamilyParams::none())};
    case TopologicalType::F2:
      return {validate_params(FamilyId::G5_4_12,
                              FamilyParams::of_lambda_phi(1.0, kPi / 2))};
    case TopologicalType::F3:
      return {validate_params(FamilyId::G5_4_14,
                              FamilyParams::of_lambda_mu_phi(0.0, 1.0, kPi / 2))};
  }
  throw InternalInconsistency("canonical_target: unhandled type");
}

bool is_canonical_descriptor(const FamilyDescriptor& d) {
  const FamilyParams& p = d.params();
  switch (d.id()) {
    case FamilyId::G5_4_5:
      return true;
    case FamilyId::G5_4_12:
      return *p.lambda == 1.0 && *p.phi == kPi / 2;
    case FamilyId::G5_4_14:
      return *p.lambda == 0.0 && *p.mu == 1.0 && *p.phi == kPi / 2;
    default:
      return false;
  }
}

Covector equivalence_map(const FamilyDescriptor& d, const Covector& P) {
  if (is_canonical_descriptor(d)) return P;
  const FamilyParams& p = d.params();
  const double x = P.alpha(), beta = P.beta(), gamma = P.gamma(),
               delta = P.delta(), sigma = P.sigma();
  switch (d.id()) {
    case FamilyId::G5_4_1:
      return Covector::of(x, signed_pow(beta, 1 / *p.lambda1),
                          signed_pow(gamma, 1 / *p.lambda2),
                          signed_pow(delta, 1 / *p.lambda3), sigma);
    case FamilyId::G5_4_2:
      return Covector::of(x, signed_pow(beta, 1 / *p.lambda1),
                          signed_pow(gamma, 1 / *p.lambda2), delta, sigma);
    case FamilyId::G5_4_3:
      return Covector::of(x, signed_pow(beta, 1 / *p.lambda),
                          signed_pow(gamma, 1 / *p.lambda), delta, sigma);
    case FamilyId::G5_4_4:
      return Covector::of(x, signed_pow(beta, 1 / *p.lambda), gamma, delta,
                          sigma);
    case FamilyId::G5_4_5:
      return P;
    case FamilyId::G5_4_6:
      return Covector::of(x, signed_pow(beta, 1 / *p.lambda1),
                          signed_pow(gamma, 1 / *p.lambda2), delta,
                          unshear(sigma, delta));
    case FamilyId::G5_4_7:
      return Covector::of(x, signed_pow(beta, 1 / *p.lambda),
                          signed_pow(gamma, 1 / *p.lambda), delta,
                          unshear(sigma, delta));
    case FamilyId::G5_4_8: {
      // The second slot drifts by beta log|beta| / lambda along leaves;
      // subtract it before taking the power.
      const double l = *p.lambda;
      const double g0 =
          beta != 0.0 ? gamma - beta * log_abs(beta) / l : gamma;
      return Covector::of(x, signed_pow(beta, 1 / l), signed_pow(g0, 1 / l),
                          delta, unshear(sigma, delta));
    }
    case FamilyId::G5_4_9: {
      const double l = *p.lambda;
      const double t0 = gamma != 0.0 ? delta - gamma * log_abs(gamma) : delta;
      double s0;
      if (gamma != 0.0)
        s0 = t0 != 0.0
                 ? sigma - 0.5 * delta * log_abs(gamma) - 0.5 * t0 * log_abs(t0)
                 : sigma - 0.5 * delta * log_abs(gamma);
      else
        s0 = unshear(sigma, delta);
      return Covector::of(x, signed_pow(beta, 1 / l), gamma, t0, s0);
    }
    case FamilyId::G5_4_10: {
      double z0, t0, s0;
      if (beta != 0.0) {
        const double lb = log_abs(beta);
        z0 = gamma - beta * lb;
        t0 = z0 != 0.0
                 ? delta - 0.5 * gamma * lb - 0.5 * z0 * log_abs(z0)
                 : delta - 0.5 * gamma * lb;
        s0 = sigma - delta * lb + 0.5 * gamma * lb * lb -
             beta * lb * lb * lb / 6.0;
      } else if (gamma != 0.0) {
        z0 = gamma;
        t0 = delta - gamma * log_abs(gamma);
        s0 = t0 != 0.0
                 ? sigma - 0.5 * delta * log_abs(gamma) - 0.5 * t0 * log_abs(t0)
                 : sigma - 0.5 * delta * log_abs(gamma);
      } else {
        z0 = gamma;
        t0 = delta;
        s0 = unshear(sigma, delta);
      }
      return Covector::of(x, beta, z0, t0, s0);
    }
    case FamilyId::G5_4_11:
      return from_slots(
          x, cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), -std::cos(*p.phi))),
          signed_pow(delta, 1 / *p.lambda1), signed_pow(sigma, 1 / *p.lambda2));
    case FamilyId::G5_4_12:
      return from_slots(
          x, cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), -std::cos(*p.phi))),
          signed_pow(delta, 1 / *p.lambda), signed_pow(sigma, 1 / *p.lambda));
    case FamilyId::G5_4_13: {
      const double l = *p.lambda;
      const Cplx w =
          cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), -std::cos(*p.phi)));
      if (delta != 0.0)
        return from_slots(x, w, signed_pow(delta, 1 / l),
                          signed_pow(sigma - delta * log_abs(delta) / l, 1 / l));
      return from_slots(x, w, 0.0, signed_pow(sigma, 1 / l));
    }
    case FamilyId::G5_4_14: {
      const double l = *p.lambda, mu = *p.mu;
      const Cplx w =
          cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), -std::cos(*p.phi)));
      const Cplx m = l != 0.0 ? Cplx(mu, -l) / (l * l + mu * mu)
                              : Cplx(1.0 / mu, 0.0);
      return from_slots(x, w, cplx_pow(u_slot(P), m));
    }
  }
  throw InternalInconsistency("equivalence_map: unhandled family");
}

Covector equivalence_map_inverse(const FamilyDescriptor& d, const Covector& P) {
  if (is_canonical_descriptor(d)) return P;
  const FamilyParams& p = d.params();
  const double x = P.alpha(), beta = P.beta(), gamma = P.gamma(),
               delta = P.delta(), sigma = P.sigma();
  switch (d.id()) {
    case FamilyId::G5_4_1:
      return Covector::of(x, signed_pow(beta, *p.lambda1),
                          signed_pow(gamma, *p.lambda2),
                          signed_pow(delta, *p.lambda3), sigma);
    case FamilyId::G5_4_2:
      return Covector::of(x, signed_pow(beta, *p.lambda1),
                          signed_pow(gamma, *p.lambda2), delta, sigma);
    case FamilyId::G5_4_3:
      return Covector::of(x, signed_pow(beta, *p.lambda),
                          signed_pow(gamma, *p.lambda), delta, sigma);
    case FamilyId::G5_4_4:
      return Covector::of(x, signed_pow(beta, *p.lambda), gamma, delta, sigma);
    case FamilyId::G5_4_5:
      return P;
    case FamilyId::G5_4_6:
      return Covector::of(x, signed_pow(beta, *p.lambda1),
                          signed_pow(gamma, *p.lambda2), delta,
                          reshear(sigma, delta));
    case FamilyId::G5_4_7:
      return Covector::of(x, signed_pow(beta, *p.lambda),
                          signed_pow(gamma, *p.lambda), delta,
                          reshear(sigma, delta));
    case FamilyId::G5_4_8: {
      const double l = *p.lambda;
      const double y = signed_pow(beta, l);
      const double g0 = signed_pow(gamma, l);
      const double z = y != 0.0 ? g0 + y * log_abs(y) / l : g0;
      return Covector::of(x, y, z, delta, reshear(sigma, delta));
    }
    case FamilyId::G5_4_9: {
      const double y = signed_pow(beta, *p.lambda);
      const double z = gamma;
      const double t = z != 0.0 ? delta + z * log_abs(z) : delta;
      double s;
      if (z != 0.0)
        s = delta != 0.0
                ? sigma + 0.5 * t * log_abs(z) + 0.5 * delta * log_abs(delta)
                : sigma + 0.5 * t * log_abs(z);
      else
        s = reshear(sigma, t);
      return Covector::of(x, y, z, t, s);
    }
    case FamilyId::G5_4_10: {
      const double y = beta;
      double z, t, s;
      if (y != 0.0) {
        const double lb = log_abs(y);
        z = gamma + y * lb;
        t = gamma != 0.0
                ? delta + 0.5 * z * lb + 0.5 * gamma * log_abs(gamma)
                : delta + 0.5 * z * lb;
        s = sigma + t * lb - 0.5 * z * lb * lb + y * lb * lb * lb / 6.0;
      } else if (gamma != 0.0) {
        z = gamma;
        t = delta + z * log_abs(z);
        s = delta != 0.0
                ? sigma + 0.5 * t * log_abs(z) + 0.5 * delta * log_abs(delta)
                : sigma + 0.5 * t * log_abs(z);
      } else {
        z = gamma;
        t = delta;
        s = reshear(sigma, t);
      }
      return Covector::of(x, y, z, t, s);
    }
    case FamilyId::G5_4_11:
      return from_slots(
          x, cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), std::cos(*p.phi))),
          signed_pow(delta, *p.lambda1), signed_pow(sigma, *p.lambda2));
    case FamilyId::G5_4_12:
      return from_slots(
          x, cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), std::cos(*p.phi))),
          signed_pow(delta, *p.lambda), signed_pow(sigma, *p.lambda));
    case FamilyId::G5_4_13: {
      const double l = *p.lambda;
      const Cplx w =
          cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), std::cos(*p.phi)));
      if (delta != 0.0) {
        const double t = signed_pow(delta, l);
        const double s = signed_pow(sigma, l) + t * log_abs(t) / l;
        return from_slots(x, w, t, s);
      }
      return from_slots(x, w, 0.0, signed_pow(sigma, l));
    }
    case FamilyId::G5_4_14: {
      const Cplx w =
          cplx_pow(w_slot(P), Cplx(std::sin(*p.phi), std::cos(*p.phi)));
      // inverse of (mu - i lambda)/(lambda^2 + mu^2), also valid at
      // lambda = 0 where the forward exponent is 1/mu
      const Cplx m(*p.mu, *p.lambda);
      return from_slots(x, w, cplx_pow(u_slot(P), m));
    }
  }
  throw InternalInconsistency("equivalence_map_inverse: unhandled family");
}

SpherePoint SpherePoint::normalized(const Vec4& raw) {
  const double n = raw.norm();
  if (n == 0.0)
    throw std::invalid_argument("SpherePoint: cannot normalize zero vector");
  SpherePoint s{raw / n};
  if (std::abs(s.v.norm() - 1.0) > 1e-12)
    throw InternalInconsistency("SpherePoint: normalization failed");
  return s;
}

SpherePoint fibration_p45(const Covector& F) {
  const Vec4 f = F.ideal_part();
  if ((f.array() == 0.0).all())
    throw std::invalid_argument(
        "fibration_p45: point lies on the fixed-point locus");
  return SpherePoint::normalized(f);
}

Covector action_rho_412(double r, double a, const Covector& P) {
  const Cplx w = w_slot(P) * std::exp(Cplx(0.0, -a));
  const double ea = std::exp(a);
  return Covector::of(P.alpha() + r, w.real(), w.imag(), P.delta() * ea,
                      P.sigma() * ea);
}

Covector action_rho_414(double r, double a, const Covector& P) {
  const Cplx rot = std::exp(Cplx(0.0, -a));
  const Cplx w = w_slot(P) * rot;
  const Cplx u = u_slot(P) * rot;
  return Covector::of(P.alpha() + r, w.real(), w.imag(), u.real(), u.imag());
}

void PropertyReport::record(bool ok, double residual, const std::string& input) {
  ++n_samples;
  if (ok)
    ++n_pass;
  else
    counterexamples.push_back({input, residual});
  if (residual > max_residual || std::isnan(residual)) max_residual = residual;
}

void PropertyReport::merge(const PropertyReport& other) {
  n_samples += other.n_samples;
  n_pass += other.n_pass;
  max_residual = std::max(max_residual, other.max_residual);
  counterexamples.insert(counterexamples.end(), other.counterexamples.begin(),
                         other.counterexamples.end());
}

PropertyReport check_leaf_to_leaf(const FamilyDescriptor& d, std::uint64_t seed,
                                  int n_samples, const ToleranceConfig& tol,
                                  const StratumPin& pin) {
  if (n_samples < 1)
    throw std::invalid_argument("check_leaf_to_leaf: n_samples must be >= 1");
  tol.validate();
  const FamilyDescriptor target =
      canonical_target(topological_type(d.id())).family;
  PropertyReport rep;
  rep.suite = "leaf-to-leaf";
  rep.subject = describe(d) + (pin.any() ? "[" + pin.label() + "]" : "");
  for (int i = 0; i < n_samples; ++i) {
    Rng rng(derive_key(seed, {static_cast<std::uint64_t>(i)}));
    const Covector F = sample_generic_point(d, rng, pin);
    const FlowDraw fl = sample_flow(d, F, rng);
    const Covector P = orbit_param(d, F, fl.x, fl.a);
    const double r = membership_residual(target, equivalence_map(d, F),
                                         equivalence_map(d, P), tol);
    rep.record(r <= tol.membership_tol, r,
               r <= tol.membership_tol
                   ? std::string()
                   : describe(d) + " F=" + fmt(F) + " x=" + fmt(fl.x) +
                         " a=" + fmt(fl.a));
  }
  return rep;
}

}  // namespace md5fol
