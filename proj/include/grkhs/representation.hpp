#pragma once

#include <memory>
#include <vector>

#include "grkhs/groupoid.hpp"
#include "grkhs/types.hpp"

namespace grkhs {

/// One finite-dimensional Hilbert space per base point, realized as C^n
/// with the standard Hermitian form. The completed direct sum over all base
/// points is the plain concatenation of fiber coordinates.
struct HilbertFamily {
  std::vector<int> dims;

  int dim(int base) const { return dims[base]; }
  int total_dimension() const;
  /// Offset of each fiber block inside the concatenated space.
  std::vector<int> offsets() const;
};

/// Assignment x -> v(x) in H_x; values[x] has length dims[x].
struct VectorField {
  std::vector<Vector> values;
};

enum class HaarSide { left, right };

/// Fiberwise positive weights: lambda^x on the out-fibers for a left system,
/// lambda_x on the in-fibers for a right system. Stored per arrow.
struct HaarSystem {
  HaarSide side = HaarSide::left;
  std::vector<double> weights;
};

/// Per-arrow complex matrix of shape n_{r(gamma)} x n_{s(gamma)} acting
/// between the fiber spaces. Construction checks shapes only; unitarity and
/// the homomorphism law are checked by validate_representation.
class UnitaryRepresentation {
public:
  UnitaryRepresentation(GroupoidPtr groupoid, HilbertFamily spaces,
                        std::vector<Matrix> matrices);

  const GroupoidPtr& groupoid() const { return groupoid_; }
  const HilbertFamily& spaces() const { return spaces_; }
  int dim(int base) const { return spaces_.dims[base]; }
  const Matrix& matrix(int arrow) const { return matrices_[arrow]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

private:
  GroupoidPtr groupoid_;
  HilbertFamily spaces_;
  std::vector<Matrix> matrices_;
};

/// Entrywise check of unitarity, the homomorphism law on all composable
/// pairs, and the derived unit/inverse identities. Violations carry the
/// offending arrows and the max deviation.
ValidationReport validate_representation(const UnitaryRepresentation& rep,
                                         double tol = defaults::representation_tol);

/// Checks that the field is conformal with the family (one vector per base
/// point, each of the fiber dimension).
void check_field_shapes(const HilbertFamily& spaces, const VectorField& field);

UnitaryRepresentation trivial_representation(GroupoidPtr groupoid, int n);

/// Weight 1 on every arrow; invariant because fiberwise translation is a
/// bijection.
HaarSystem counting_haar(const FiniteGroupoid& groupoid, HaarSide side);

/// Finite invariance equalities: lambda^{r(g)}(g chi) = lambda^{s(g)}(chi)
/// for a left system, lambda_{s(g)}(chi g) = lambda_{r(g)}(chi) for a right
/// one. Missing or nonpositive weights throw StructuralError.
ValidationReport validate_haar(const FiniteGroupoid& groupoid, const HaarSystem& haar,
                               double tol = defaults::haar_tol);

/// H_x = functions on the out-fiber of x in sqrt(weight)-rescaled
/// coordinates; the arrow gamma acts by chi -> f(inv(gamma) chi).
UnitaryRepresentation left_regular_representation(GroupoidPtr groupoid,
                                                  const HaarSystem& haar);

/// Mirror of the left regular representation on in-fibers, acting by
/// chi -> f(chi gamma).
UnitaryRepresentation right_regular_representation(GroupoidPtr groupoid,
                                                   const HaarSystem& haar);

/// Dimensions add per base point; matrices are block-diagonal in the
/// declared order.
UnitaryRepresentation direct_sum(const std::vector<UnitaryRepresentation>& reps);

/// Dimensions multiply per base point; matrices are Kronecker products in
/// the declared factor order.
UnitaryRepresentation tensor_product(const std::vector<UnitaryRepresentation>& reps);

/// Concatenation of fields matching direct_sum / tensor_product layouts.
VectorField direct_sum_fields(const std::vector<VectorField>& fields);
VectorField tensor_product_fields(const std::vector<VectorField>& fields);

/// Glue per-component representations over a groupoid built by
/// disjoint_union (components in the same order).
UnitaryRepresentation glue_representations(GroupoidPtr union_groupoid,
                                           const std::vector<UnitaryRepresentation>& parts);
VectorField glue_vector_fields(const FiniteGroupoid& union_groupoid,
                               const std::vector<VectorField>& parts);

}  // namespace grkhs
