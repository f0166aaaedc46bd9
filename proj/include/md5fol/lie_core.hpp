#pragma once

#include <Eigen/Dense>

#include "md5fol/errors.hpp"

namespace md5fol {

inline constexpr int kDim = 5;

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Element of the algebra in the ordered basis (X1..X5).
struct AlgebraElement {
  Vec5 coords = Vec5::Zero();

  /// X_{i+1} for i in 0..4; throws std::out_of_range otherwise.
  static AlgebraElement basis(int i);
};

/// Point of the dual space with coordinates (alpha, beta, gamma, delta,
/// sigma) in the dual basis.
struct Covector {
  Vec5 coords = Vec5::Zero();

  static Covector of(double alpha, double beta, double gamma, double delta,
                     double sigma);

  double alpha() const { return coords(0); }
  double beta() const { return coords(1); }
  double gamma() const { return coords(2); }
  double delta() const { return coords(3); }
  double sigma() const { return coords(4); }

  /// Restriction to the derived ideal: the last four coordinates. The
  /// covector is a fixed point of the coadjoint action exactly when this
  /// vanishes.
  Vec4 ideal_part() const { return coords.tail<4>(); }
};

/// Bracket table [X_i, X_j] = sum_k c(i,j,k) X_k of a 5-dimensional real
/// algebra. set() maintains antisymmetry in (i,j); the Jacobi identity is a
/// separate check (verify_jacobi).
class StructureConstants {
 public:
  double operator()(int i, int j, int k) const { return c_[i][j][k]; }

  /// Writes c(i,j,k) = v together with c(j,i,k) = -v.
  void set(int i, int j, int k, double v);

 private:
  double c_[kDim][kDim][kDim] = {};
};

AlgebraElement bracket(const StructureConstants& c, const AlgebraElement& u,
                       const AlgebraElement& v);

/// Skew form B(i,j) = <F, [X_i, X_j]>. Each entry is computed once and
/// negated into the mirror slot, so the result is skew bit-for-bit.
Mat5 kirillov_form(const StructureConstants& c, const Covector& F);

struct SkewRank {
  int rank = 0;  // even by construction
  bool odd_count_adjusted = false;  // raw singular-value count was odd
};

/// Rank of a skew matrix: number of singular values above tol times the
/// largest one (above tol itself for the zero matrix), rounded down to the
/// nearest even integer. tol must be positive.
SkewRank rank_skew_detail(const Mat5& m, double tol);
int rank_skew(const Mat5& m, double tol);

/// Generator Y_gen of the coadjoint action at F, fixed by the pairing
/// <Y_gen(F), X_j> = <F, [X_j, X_gen]>. gen is a basis index in 0..4.
Covector coad_field(const StructureConstants& c, int gen, const Covector& F);

/// True when every cyclic bracket sum over basis triples vanishes within
/// 1e-12 in each coordinate.
bool verify_jacobi(const StructureConstants& c);

}  // namespace md5fol
