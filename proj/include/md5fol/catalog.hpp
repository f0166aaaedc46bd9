#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "md5fol/lie_core.hpp"

namespace md5fol {

/// The fourteen indecomposable families with 4-dimensional commutative
/// derived ideal. Each family is a 5-dimensional solvable algebra
/// determined by the action of X1 on span(X2..X5).
enum class FamilyId {
  G5_4_1,
  G5_4_2,
  G5_4_3,
  G5_4_4,
  G5_4_5,
  G5_4_6,
  G5_4_7,
  G5_4_8,
  G5_4_9,
  G5_4_10,
  G5_4_11,
  G5_4_12,
  G5_4_13,
  G5_4_14,
};

inline constexpr std::array<FamilyId, 14> kAllFamilies = {
    FamilyId::G5_4_1,  FamilyId::G5_4_2,  FamilyId::G5_4_3,  FamilyId::G5_4_4,
    FamilyId::G5_4_5,  FamilyId::G5_4_6,  FamilyId::G5_4_7,  FamilyId::G5_4_8,
    FamilyId::G5_4_9,  FamilyId::G5_4_10, FamilyId::G5_4_11, FamilyId::G5_4_12,
    FamilyId::G5_4_13, FamilyId::G5_4_14,
};

std::string to_string(FamilyId id);
std::optional<FamilyId> parse_family(std::string_view name);

/// Position of the family in kAllFamilies (0..13).
int family_index(FamilyId id);

/// Parameter slots. A family accepts exactly the slots it uses; extra or
/// missing slots are rejected by validate_params.
struct FamilyParams {
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> lambda3;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> phi;

  static FamilyParams none() { return {}; }
  static FamilyParams of_lambda(double l);
  static FamilyParams of_lambda12(double l1, double l2);
  static FamilyParams of_lambda123(double l1, double l2, double l3);
  static FamilyParams of_lambda_phi(double l, double phi);
  static FamilyParams of_lambda12_phi(double l1, double l2, double phi);
  static FamilyParams of_lambda_mu_phi(double l, double mu, double phi);
};

/// A family together with admissible parameters. Instances exist only
/// through validate_params, so holding one certifies the constraints.
class FamilyDescriptor {
 public:
  FamilyId id() const { return id_; }
  const FamilyParams& params() const { return params_; }

 private:
  friend FamilyDescriptor validate_params(FamilyId, const FamilyParams&);
  FamilyDescriptor(FamilyId id, const FamilyParams& params)
      : id_(id), params_(params) {}

  FamilyId id_;
  FamilyParams params_;
};

/// Checks the parameter constraints of the family (exact comparisons) and
/// returns a descriptor; throws ConstraintViolation naming the violated
/// constraint otherwise.
FamilyDescriptor validate_params(FamilyId id, const FamilyParams& params);

/// The matrix M of ad_{X1} restricted to the derived ideal, acting on
/// coordinate columns: [X1, X_{1+j}] = sum_i M(i,j) X_{1+i}.
Mat4 adx1_matrix(const FamilyDescriptor& d);

/// Full bracket table: c(1,1+j,1+i) = M(i,j) in 1-based labels, all
/// brackets inside the derived ideal zero, antisymmetric completion.
StructureConstants build_algebra(const FamilyDescriptor& d);

/// Human-readable tag such as "G5_4_8(lambda=2)".
std::string describe(const FamilyDescriptor& d);

}  // namespace md5fol
