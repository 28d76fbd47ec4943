#pragma once

#include <vector>

#include "grkhs/kernel.hpp"
#include "grkhs/representation.hpp"
#include "grkhs/types.hpp"

namespace grkhs {

/// Unitary representation rebuilt from a translation-invariant kernel: the
/// fiber spaces are H(K^x) in orthonormal coordinates (dimension = fiber
/// rank) and each arrow maps generator coordinates of K_chi to those of
/// K_{gamma chi}. The retrieval field v(x) = coords of K_{e(x)} reproduces
/// the kernel through the forward construction.
struct ReconstructedRepresentation {
  UnitaryRepresentation representation;
  VectorField retrieval_field;
  /// Per base point x: matrix of shape fiber_rank(x) x |out-fiber of x|,
  /// column i = orthonormal coordinates of the generator at the i-th arrow
  /// of the fiber.
  std::vector<Matrix> fiber_coordinates;
  std::vector<int> fiber_ranks;
  /// Max least-squares residual over all per-arrow solves; certifies that
  /// the generator action is well defined on dependent generators.
  double max_residual = 0.0;

  /// Coordinates of K_{gamma chi}; chi must lie in the out-fiber of
  /// s(gamma).
  Vector generator_image(int gamma, int chi) const;
};

/// Requires positive definiteness and translation invariance (rejected with
/// the corresponding witness otherwise). tol also bounds the admissible
/// well-definedness residual, relative to the kernel's spectral radius.
ReconstructedRepresentation reconstruct(const GroupoidKernel& kernel,
                                        double tol = defaults::reconstruction_tol);

struct RoundTripReport {
  bool passed = false;
  double max_deviation = 0.0;
};

/// reconstruct, then rebuild the kernel from the reconstructed
/// representation with the retrieval field and compare entrywise.
RoundTripReport round_trip(const GroupoidKernel& kernel,
                           double tol = defaults::reconstruction_tol);

/// Group specialization: the carrier must have a single base point and the
/// kernel must satisfy K(h, g) = K(inv(g) h, e) (rejected with witness
/// (g, h) otherwise). Delegates to reconstruct.
ReconstructedRepresentation group_reconstruct(const GroupoidKernel& kernel,
                                              double tol = defaults::reconstruction_tol);

}  // namespace grkhs
