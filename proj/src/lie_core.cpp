#include "md5fol/lie_core.hpp"

#include <cassert>
#include <stdexcept>

#include <Eigen/SVD>

namespace md5fol {

AlgebraElement AlgebraElement::basis(int i) {
  if (i < 0 || i >= kDim) throw std::out_of_range("basis index must be in 0..4");
  AlgebraElement e;
  e.coords(i) = 1.0;
  return e;
}

Covector Covector::of(double alpha, double beta, double gamma, double delta,
                      double sigma) {
  Covector f;
  f.coords << alpha, beta, gamma, delta, sigma;
  return f;
}

void StructureConstants::set(int i, int j, int k, double v) {
  assert(i >= 0 && i < kDim && j >= 0 && j < kDim && k >= 0 && k < kDim);
  assert(i != j || v == 0.0);  // [X_i, X_i] = 0
  c_[i][j][k] = v;
  c_[j][i][k] = -v;
}

AlgebraElement bracket(const StructureConstants& c, const AlgebraElement& u,
                       const AlgebraElement& v) {
  AlgebraElement out;
  for (int i = 0; i < kDim; ++i) {
    if (u.coords(i) == 0.0) continue;
    for (int j = 0; j < kDim; ++j) {
      const double uv = u.coords(i) * v.coords(j);
      if (uv == 0.0) continue;
      for (int k = 0; k < kDim; ++k) out.coords(k) += uv * c(i, j, k);
    }
  }
  return out;
}

Mat5 kirillov_form(const StructureConstants& c, const Covector& F) {
  Mat5 b = Mat5::Zero();
  for (int i = 0; i < kDim; ++i) {
    for (int j = i + 1; j < kDim; ++j) {
      double v = 0.0;
      for (int k = 0; k < kDim; ++k) v += c(i, j, k) * F.coords(k);
      b(i, j) = v;
      b(j, i) = -v;
    }
  }
  return b;
}

SkewRank rank_skew_detail(const Mat5& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("rank_skew: tol must be positive");
  Eigen::JacobiSVD<Mat5> svd(m);
  const Vec5& sv = svd.singularValues();
  const double smax = sv(0);
  const double cutoff = tol * (smax > 0.0 ? smax : 1.0);
  int count = 0;
  for (int i = 0; i < kDim; ++i)
    if (sv(i) > cutoff) ++count;
  SkewRank r;
  // A singular value of a real skew matrix has even multiplicity, so an
  // odd count means the cutoff split a pair; round down and flag it.
  r.odd_count_adjusted = (count % 2) != 0;
  r.rank = count - (count % 2);
  return r;
}

int rank_skew(const Mat5& m, double tol) { return rank_skew_detail(m, tol).rank; }

Covector coad_field(const StructureConstants& c, int gen, const Covector& F) {
  if (gen < 0 || gen >= kDim)
    throw std::out_of_range("coad_field: basis index must be in 0..4");
  Covector y;
  for (int j = 0; j < kDim; ++j) {
    double v = 0.0;
    for (int k = 0; k < kDim; ++k) v += c(j, gen, k) * F.coords(k);
    y.coords(j) = v;
  }
  return y;
}

bool verify_jacobi(const StructureConstants& c) {
  constexpr double kTol = 1e-12;
  for (int i = 0; i < kDim; ++i) {
    const AlgebraElement xi = AlgebraElement::basis(i);
    for (int j = 0; j < kDim; ++j) {
      const AlgebraElement xj = AlgebraElement::basis(j);
      for (int k = 0; k < kDim; ++k) {
        const AlgebraElement xk = AlgebraElement::basis(k);
        const Vec5 sum = bracket(c, xi, bracket(c, xj, xk)).coords +
                         bracket(c, xj, bracket(c, xk, xi)).coords +
                         bracket(c, xk, bracket(c, xi, xj)).coords;
        if (sum.lpNorm<Eigen::Infinity>() > kTol) return false;
      }
    }
  }
  return true;
}

}  // namespace md5fol
