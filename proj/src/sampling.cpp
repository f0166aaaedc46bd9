#include "md5fol/sampling.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace md5fol {

namespace {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kCoordRange = 10.0;
constexpr double kMinIdealNorm = 1e-3;

// Geometry of the principal-branch safety region. Complex slots are drawn
// in a log-box |arg| <= kThetaBox, |log modulus| <= kLogModBox (scaled per
// family), and the flow window keeps every principal argument met by the
// equivalence maps at distance kBranchMargin from the cut.
constexpr double kThetaBox = 1.5;
constexpr double kLogModBox = 1.0;
constexpr double kBranchMargin = 0.3;
constexpr double kFlowWindowReal = 1.5;
constexpr double kFlowWindowCplx = 0.25;

double pick_lambda(Rng& rng) {
  for (;;) {
    const double v = rng.signed_uniform(0.1, 5.0);
    if (std::abs(v - 1.0) >= 0.05) return v;
  }
}

// Complex value with log modulus and argument uniform in the scaled box.
Cplx log_box(Rng& rng, double scale) {
  const double lm = rng.uniform(-kLogModBox, kLogModBox) * scale;
  const double th = rng.uniform(-kThetaBox, kThetaBox) * scale;
  return std::polar(std::exp(lm), th);
}

// Scale keeping |Log slot| * max(|exponent|, |inverse exponent|) below the
// safety cap, where the exponents have moduli sqrt(l^2+m^2) and its
// reciprocal (1 for the rotation slot).
double u_box_scale(double lambda, double mu) {
  const double cap = 0.95 * (kPi - kBranchMargin - kFlowWindowCplx);
  const double box_radius = std::hypot(kThetaBox, kLogModBox);
  const double s = std::hypot(lambda, mu);
  return std::min(1.0, cap / (box_radius * std::max(s, 1.0 / s)));
}

}  // namespace

std::string StratumPin::label() const {
  std::string out;
  const auto add = [&out](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ",";
    out += std::string(name) + "=0";
  };
  add(beta, "beta");
  add(gamma, "gamma");
  add(delta, "delta");
  add(sigma, "sigma");
  return out;
}

FamilyParams sample_params(FamilyId id, Rng& rng) {
  FamilyParams p;
  const auto distinct_pair = [&rng](std::optional<double>& a,
                                    std::optional<double>& b) {
    do {
      a = pick_lambda(rng);
      b = pick_lambda(rng);
    } while (std::abs(*a - *b) < 0.05);
  };
  switch (id) {
    case FamilyId::G5_4_1:
      do {
        p.lambda1 = pick_lambda(rng);
        p.lambda2 = pick_lambda(rng);
        p.lambda3 = pick_lambda(rng);
      } while (std::abs(*p.lambda1 - *p.lambda2) < 0.05 ||
               std::abs(*p.lambda1 - *p.lambda3) < 0.05 ||
               std::abs(*p.lambda2 - *p.lambda3) < 0.05);
      break;
    case FamilyId::G5_4_2:
    case FamilyId::G5_4_6:
      distinct_pair(p.lambda1, p.lambda2);
      break;
    case FamilyId::G5_4_3:
    case FamilyId::G5_4_4:
    case FamilyId::G5_4_7:
    case FamilyId::G5_4_8:
    case FamilyId::G5_4_9:
      p.lambda = pick_lambda(rng);
      break;
    case FamilyId::G5_4_5:
    case FamilyId::G5_4_10:
      break;
    case FamilyId::G5_4_11:
      distinct_pair(p.lambda1, p.lambda2);
      p.phi = rng.uniform(0.1, kPi - 0.1);
      break;
    case FamilyId::G5_4_12:
    case FamilyId::G5_4_13:
      p.lambda = pick_lambda(rng);
      p.phi = rng.uniform(0.1, kPi - 0.1);
      break;
    case FamilyId::G5_4_14:
      p.lambda = rng.chance(0.125) ? 0.0 : pick_lambda(rng);
      p.mu = rng.uniform(0.1, 5.0);
      p.phi = rng.uniform(0.1, kPi - 0.1);
      break;
  }
  return p;
}

Covector sample_generic_point(const FamilyDescriptor& d, Rng& rng,
                              const StratumPin& pin) {
  if (pin.all())
    throw std::invalid_argument(
        "sample_generic_point: pin covers the whole ideal part");
  const int idx = family_index(d.id());
  const bool cplx_w = idx >= 10;   // families 11..14: (beta, gamma) is one slot
  const bool cplx_u = idx == 13;   // family 14: (delta, sigma) too
  for (;;) {
    Covector F;
    F.coords(0) = rng.uniform(-kCoordRange, kCoordRange);
    if (cplx_w) {
      if (!(pin.beta || pin.gamma)) {
        const Cplx w = log_box(rng, 1.0);
        F.coords(1) = w.real();
        F.coords(2) = w.imag();
      }
    } else {
      if (!pin.beta) F.coords(1) = rng.uniform(-kCoordRange, kCoordRange);
      if (!pin.gamma) F.coords(2) = rng.uniform(-kCoordRange, kCoordRange);
    }
    if (cplx_u) {
      if (!(pin.delta || pin.sigma)) {
        const FamilyParams& p = d.params();
        const Cplx u = log_box(rng, u_box_scale(*p.lambda, *p.mu));
        F.coords(3) = u.real();
        F.coords(4) = u.imag();
      }
    } else {
      if (!pin.delta) F.coords(3) = rng.uniform(-kCoordRange, kCoordRange);
      if (!pin.sigma) F.coords(4) = rng.uniform(-kCoordRange, kCoordRange);
    }
    if (F.ideal_part().norm() >= kMinIdealNorm) return F;
  }
}

FlowDraw sample_flow(const FamilyDescriptor& d, const Covector& F, Rng& rng) {
  FlowDraw fl;
  fl.x = rng.uniform(-kCoordRange, kCoordRange);
  const int idx = family_index(d.id());
  if (idx < 10) {
    fl.a = rng.uniform(-kFlowWindowReal, kFlowWindowReal);
    return fl;
  }
  const FamilyParams& p = d.params();
  const double phi = *p.phi;
  const double threshold = kPi - kBranchMargin;
  double amax = kFlowWindowCplx;
  // offset: principal-branch quantity at a = 0; rate: its drift along the
  // flow. Keeps |offset + a * rate| < threshold.
  const auto constrain = [&amax, threshold](double offset, double rate) {
    const double room = threshold - std::abs(offset);
    if (room <= 0.0) {
      amax = 0.0;
      return;
    }
    amax = std::min(amax, room / std::max(std::abs(rate), 1e-12));
  };
  const Cplx w(F.beta(), F.gamma());
  if (w != 0.0) {
    const Cplx lw = std::log(w);
    constrain(lw.imag(), std::sin(phi));  // the slot's own argument
    // exponents applied by the equivalence map and by its inverse
    constrain((lw * Cplx(std::sin(phi), -std::cos(phi))).imag(), 1.0);
    constrain((lw * Cplx(std::sin(phi), std::cos(phi))).imag(),
              std::cos(2.0 * phi));
  }
  if (d.id() == FamilyId::G5_4_14) {
    const Cplx u(F.delta(), F.sigma());
    if (u != 0.0) {
      const double lambda = *p.lambda, mu = *p.mu;
      const Cplx lu = std::log(u);
      const double s2 = lambda * lambda + mu * mu;
      constrain(lu.imag(), mu);
      constrain((lu * Cplx(mu, -lambda)).imag() / s2, 1.0);
      constrain((lu * Cplx(mu, lambda)).imag(), lambda * lambda - mu * mu);
    }
  }
  fl.a = rng.uniform(-amax, amax);
  return fl;
}

}  // namespace md5fol
