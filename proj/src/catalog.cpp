#include "md5fol/catalog.hpp"

#include <cmath>
#include <cstdio>

namespace md5fol {

namespace {

void require(bool ok, const std::string& constraint) {
  if (!ok) throw ConstraintViolation(constraint);
}

double need(const std::optional<double>& slot, const char* name) {
  if (!slot) throw ConstraintViolation(std::string("missing parameter ") + name);
  if (!std::isfinite(*slot))
    throw ConstraintViolation(std::string("parameter not finite: ") + name);
  return *slot;
}

void forbid(const std::optional<double>& slot, const char* name) {
  if (slot) throw ConstraintViolation(std::string("unexpected parameter ") + name);
}

// lambda-type slots must avoid 0 and 1 in most families.
void require_not_0_1(double v, const char* name) {
  require(v != 0.0, std::string(name) + " == 0");
  require(v != 1.0, std::string(name) + " == 1");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(FamilyId id) {
  static const char* names[] = {
      "G5_4_1", "G5_4_2",  "G5_4_3",  "G5_4_4",  "G5_4_5",  "G5_4_6",  "G5_4_7",
      "G5_4_8", "G5_4_9",  "G5_4_10", "G5_4_11", "G5_4_12", "G5_4_13", "G5_4_14",
  };
  return names[family_index(id)];
}

std::optional<FamilyId> parse_family(std::string_view name) {
  for (FamilyId id : kAllFamilies)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

int family_index(FamilyId id) { return static_cast<int>(id); }

FamilyParams FamilyParams::of_lambda(double l) {
  FamilyParams p;
  p.lambda = l;
  return p;
}

FamilyParams FamilyParams::of_lambda12(double l1, double l2) {
  FamilyParams p;
  p.lambda1 = l1;
  p.lambda2 = l2;
  return p;
}

FamilyParams FamilyParams::of_lambda123(double l1, double l2, double l3) {
  FamilyParams p = of_lambda12(l1, l2);
  p.lambda3 = l3;
  return p;
}

FamilyParams FamilyParams::of_lambda_phi(double l, double phi) {
  FamilyParams p = of_lambda(l);
  p.phi = phi;
  return p;
}

FamilyParams FamilyParams::of_lambda12_phi(double l1, double l2, double phi) {
  FamilyParams p = of_lambda12(l1, l2);
  p.phi = phi;
  return p;
}

FamilyParams FamilyParams::of_lambda_mu_phi(double l, double mu, double phi) {
  FamilyParams p = of_lambda(l);
  p.mu = mu;
  p.phi = phi;
  return p;
}

FamilyDescriptor validate_params(FamilyId id, const FamilyParams& p) {
  const double pi = 3.14159265358979323846;
  switch (id) {
    case FamilyId::G5_4_1: {
      const double l1 = need(p.lambda1, "lambda1");
      const double l2 = need(p.lambda2, "lambda2");
      const double l3 = need(p.lambda3, "lambda3");
      forbid(p.lambda, "lambda");
      forbid(p.mu, "mu");
      forbid(p.phi, "phi");
      require_not_0_1(l1, "lambda1");
      require_not_0_1(l2, "lambda2");
      require_not_0_1(l3, "lambda3");
      require(l1 != l2, "lambda1 == lambda2");
      require(l1 != l3, "lambda1 == lambda3");
      require(l2 != l3, "lambda2 == lambda3");
      break;
    }
    case FamilyId::G5_4_2:
    case FamilyId::G5_4_6: {
      const double l1 = need(p.lambda1, "lambda1");
      const double l2 = need(p.lambda2, "lambda2");
      forbid(p.lambda3, "lambda3");
      forbid(p.lambda, "lambda");
      forbid(p.mu, "mu");
      forbid(p.phi, "phi");
      require_not_0_1(l1, "lambda1");
      require_not_0_1(l2, "lambda2");
      require(l1 != l2, "lambda1 == lambda2");
      break;
    }
    case FamilyId::G5_4_3:
    case FamilyId::G5_4_4:
    case FamilyId::G5_4_7:
    case FamilyId::G5_4_8:
    case FamilyId::G5_4_9: {
      const double l = need(p.lambda, "lambda");
      forbid(p.lambda1, "lambda1");
      forbid(p.lambda2, "lambda2");
      forbid(p.lambda3, "lambda3");
      forbid(p.mu, "mu");
      forbid(p.phi, "phi");
      require_not_0_1(l, "lambda");
      break;
    }
    case FamilyId::G5_4_5:
    case FamilyId::G5_4_10: {
      forbid(p.lambda1, "lambda1");
      forbid(p.lambda2, "lambda2");
      forbid(p.lambda3, "lambda3");
      forbid(p.lambda, "lambda");
      forbid(p.mu, "mu");
      forbid(p.phi, "phi");
      break;
    }
    case FamilyId::G5_4_11: {
      const double l1 = need(p.lambda1, "lambda1");
      const double l2 = need(p.lambda2, "lambda2");
      const double phi = need(p.phi, "phi");
      forbid(p.lambda3, "lambda3");
      forbid(p.lambda, "lambda");
      forbid(p.mu, "mu");
      require(l1 != 0.0, "lambda1 == 0");
      require(l2 != 0.0, "lambda2 == 0");
      require(l1 != l2, "lambda1 == lambda2");
      require(phi > 0.0 && phi < pi, "phi not in (0,pi)");
      break;
    }
    case FamilyId::G5_4_12:
    case FamilyId::G5_4_13: {
      const double l = need(p.lambda, "lambda");
      const double phi = need(p.phi, "phi");
      forbid(p.lambda1, "lambda1");
      forbid(p.lambda2, "lambda2");
      forbid(p.lambda3, "lambda3");
      forbid(p.mu, "mu");
      require(l != 0.0, "lambda == 0");
      require(phi > 0.0 && phi < pi, "phi not in (0,pi)");
      break;
    }
    case FamilyId::G5_4_14: {
      need(p.lambda, "lambda");  // any real value
      const double mu = need(p.mu, "mu");
      const double phi = need(p.phi, "phi");
      forbid(p.lambda1, "lambda1");
      forbid(p.lambda2, "lambda2");
      forbid(p.lambda3, "lambda3");
      require(mu > 0.0, "mu <= 0");
      require(phi > 0.0 && phi < pi, "phi not in (0,pi)");
      break;
    }
  }
  return FamilyDescriptor(id, p);
}

Mat4 adx1_matrix(const FamilyDescriptor& d) {
  const FamilyParams& p = d.params();
  Mat4 m = Mat4::Zero();
  const auto rot = [&m](double phi) {
    m(0, 0) = std::cos(phi);
    m(0, 1) = -std::sin(phi);
    m(1, 0) = std::sin(phi);
    m(1, 1) = std::cos(phi);
  };
  switch (d.id()) {
    case FamilyId::G5_4_1:
      m.diagonal() << *p.lambda1, *p.lambda2, *p.lambda3, 1.0;
      break;
    case FamilyId::G5_4_2:
      m.diagonal() << *p.lambda1, *p.lambda2, 1.0, 1.0;
      break;
    case FamilyId::G5_4_3:
      m.diagonal() << *p.lambda, *p.lambda, 1.0, 1.0;
      break;
    case FamilyId::G5_4_4:
      m.diagonal() << *p.lambda, 1.0, 1.0, 1.0;
      break;
    case FamilyId::G5_4_5:
      m = Mat4::Identity();
      break;
    case FamilyId::G5_4_6:
      m.diagonal() << *p.lambda1, *p.lambda2, 1.0, 1.0;
      m(2, 3) = 1.0;
      break;
    case FamilyId::G5_4_7:
      m.diagonal() << *p.lambda, *p.lambda, 1.0, 1.0;
      m(2, 3) = 1.0;
      break;
    case FamilyId::G5_4_8:
      m.diagonal() << *p.lambda, *p.lambda, 1.0, 1.0;
      m(0, 1) = 1.0;
      m(2, 3) = 1.0;
      break;
    case FamilyId::G5_4_9:
      m.diagonal() << *p.lambda, 1.0, 1.0, 1.0;
      m(1, 2) = 1.0;
      m(2, 3) = 1.0;
      break;
    case FamilyId::G5_4_10:
      m = Mat4::Identity();
      m(0, 1) = 1.0;
      m(1, 2) = 1.0;
      m(2, 3) = 1.0;
      break;
    case FamilyId::G5_4_11:
      rot(*p.phi);
      m(2, 2) = *p.lambda1;
      m(3, 3) = *p.lambda2;
      break;
    case FamilyId::G5_4_12:
      rot(*p.phi);
      m(2, 2) = *p.lambda;
      m(3, 3) = *p.lambda;
      break;
    case FamilyId::G5_4_13:
      rot(*p.phi);
      m(2, 2) = *p.lambda;
      m(3, 3) = *p.lambda;
      m(2, 3) = 1.0;
      break;
    case FamilyId::G5_4_14:
      rot(*p.phi);
      m(2, 2) = *p.lambda;
      m(3, 3) = *p.lambda;
      m(2, 3) = -*p.mu;
      m(3, 2) = *p.mu;
      break;
  }
  return m;
}

StructureConstants build_algebra(const FamilyDescriptor& d) {
  const Mat4 m = adx1_matrix(d);
  StructureConstants c;
  // [X1, X_{1+j}] = sum_i m(i,j) X_{1+i}; the derived ideal is commutative,
  // so every other bracket is zero.
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i)
      if (m(i, j) != 0.0) c.set(0, 1 + j, 1 + i, m(i, j));
  return c;
}

std::string describe(const FamilyDescriptor& d) {
  const FamilyParams& p = d.params();
  std::string out = to_string(d.id());
  std::string args;
  const auto add = [&args](const char* name, const std::optional<double>& v) {
    if (!v) return;
    if (!args.empty()) args += ",";
    args += std::string(name) + "=" + fmt(*v);
  };
  add("lambda1", p.lambda1);
  add("lambda2", p.lambda2);
  add("lambda3", p.lambda3);
  add("lambda", p.lambda);
  add("mu", p.mu);
  add("phi", p.phi);
  if (!args.empty()) out += "(" + args + ")";
  return out;
}

}  // namespace md5fol
