#pragma once

#include <memory>
#include <vector>

#include "grkhs/representation.hpp"
#include "grkhs/types.hpp"

namespace grkhs {

/// Complex kernel on the arrows of a groupoid, stored dense over the
/// canonical arrow order: values()(chi, gamma) = K(chi, gamma). A kernel
/// compatible with the groupoid is Hermitian and vanishes across distinct
/// range fibers; construction checks the shape only, so perturbed or
/// hand-edited kernels can be represented and then rejected by the checks.
class GroupoidKernel {
public:
  GroupoidKernel(GroupoidPtr groupoid, Matrix values);

  const GroupoidPtr& groupoid() const { return groupoid_; }
  const Matrix& values() const { return values_; }
  Complex operator()(int chi, int gamma) const { return values_(chi, gamma); }
  int size() const { return static_cast<int>(values_.rows()); }

  /// K_gamma = K(., gamma), the gamma-th generator of H(K).
  Vector generator(int gamma) const { return values_.col(gamma); }
  /// Restriction K^x of the kernel to the out-fiber of x.
  Matrix fiber_block(int base) const;
  const std::vector<std::vector<int>>& fiber_arrows() const {
    return groupoid_->arrows_by_range();
  }

private:
  GroupoidPtr groupoid_;
  Matrix values_;
};

/// The feature map F(gamma) = U(gamma) v(s(gamma)) embedded into the
/// concatenated space: column gamma vanishes outside the r(gamma) block.
struct FeatureMap {
  HilbertFamily spaces;
  std::vector<int> offsets;
  Matrix columns;  // total_dimension x arrow_count

  /// The nonzero block of column gamma, as a fiber vector of H_{r(gamma)}.
  Vector fiber_feature(const FiniteGroupoid& g, int gamma) const {
    return columns.col(gamma).segment(offsets[g.range(gamma)], spaces.dims[g.range(gamma)]);
  }
};

FeatureMap feature_map(const UnitaryRepresentation& rep, const VectorField& field);

/// K(chi, gamma) = <F(gamma), F(chi)> within a common range fiber, zero
/// across fibers.
GroupoidKernel kernel_from_representation(const UnitaryRepresentation& rep,
                                          const VectorField& field);

struct SpectralReport {
  bool passed = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double hermiticity_deviation = 0.0;
  double threshold = 0.0;
};

/// Hermiticity is checked first and a deviation beyond tol is rejected
/// (thrown), not repaired. Pass iff the minimum eigenvalue is at least
/// -tol * max(1, spectral radius).
SpectralReport check_positive_definite(const Matrix& kernel_matrix,
                                       double tol = defaults::psd_tol);
SpectralReport check_positive_definite(const GroupoidKernel& kernel,
                                       double tol = defaults::psd_tol);

struct InvarianceReport {
  bool passed = false;
  double max_deviation = 0.0;
  int witness_chi = -1;    // worst pair, -1 when no deviation found
  int witness_gamma = -1;
  std::string detail;
};

/// Translation invariance of a groupoid kernel: within each range fiber
/// K(chi, gamma) = K(inv(gamma) chi, e(r(inv(gamma) chi))), and all
/// cross-fiber entries vanish. On a one-point base this is exactly the
/// group identity K(h, g) = K(inv(g) h, e).
InvarianceReport check_invariance(const GroupoidKernel& kernel,
                                  double tol = defaults::invariance_tol);

/// Convolution kernel on a finite group: K(h, g) = (f * f~)(inv(g) h) with
/// f~(g) = conj(f(inv(g))), taken with the scaled counting Haar measure.
/// f is indexed by the canonical arrow order.
GroupoidKernel convolution_kernel(GroupoidPtr group, const Vector& f, double weight = 1.0);

/// Kernel k(gamma) conj(k(chi)) within range fibers from a multiplicative
/// unit-modulus map k on arrows. Non-multiplicative or non-unimodular maps
/// are rejected with a witness.
GroupoidKernel character_kernel(GroupoidPtr groupoid, const Vector& k, double tol = 1e-12);

/// One summand alpha * K^(.m) of a positive combination; the power is the
/// entrywise (Schur) power.
struct WeightedKernel {
  double coefficient = 1.0;
  GroupoidKernel kernel;
  int power = 1;
};

/// Entrywise sum of Schur powers with positive coefficients; preserves
/// positive definiteness and translation invariance of the inputs.
GroupoidKernel kernel_combination(const std::vector<WeightedKernel>& terms);

/// Entrywise (Schur) product; matches the kernel of the tensor-product
/// representation with the tensor field.
GroupoidKernel kernel_product(const std::vector<GroupoidKernel>& kernels);

}  // namespace grkhs
