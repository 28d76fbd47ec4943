#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grkhs/kernel.hpp"
#include "grkhs/types.hpp"

namespace grkhs {

/// Element of H(K) as a coefficient vector over the generators {K_gamma}.
/// Coefficients are non-unique when the generators are dependent; equality
/// of functions means pointwise agreement of evaluations.
struct RkhsFunction {
  Vector coefficients;

  static RkhsFunction generator(int gamma, int generator_count) {
    RkhsFunction f{Vector::Zero(generator_count)};
    f.coefficients(gamma) = 1.0;
    return f;
  }
};

struct ParsevalReport {
  bool passed = false;
  double max_deviation = 0.0;
  int witness_chi = -1;
  int witness_gamma = -1;
};

struct FiberDecompositionReport {
  bool passed = false;
  double max_cross_fiber = 0.0;
  int rank = 0;
  std::vector<int> fiber_ranks;
};

/// The span of the kernel sections {K_gamma} with the inner product induced
/// by the kernel matrix, together with its eigendecomposition: numerical
/// rank, an orthonormal basis in generator coordinates, and the per-fiber
/// ranks of the range-fiber blocks. Finite index set, so the completion is
/// the span itself.
class RkhsModel {
public:
  /// Runs check_positive_definite first and rejects failures. Eigenvalues
  /// at or below rank_tol * (max eigenvalue) count as zero.
  static RkhsModel build(const GroupoidKernel& kernel,
                         double rank_tol = defaults::rank_tol,
                         double psd_tol = defaults::psd_tol);
  /// Plain positive definite matrix; one fiber spanning all indices.
  static RkhsModel build(const Matrix& kernel_matrix,
                         double rank_tol = defaults::rank_tol,
                         double psd_tol = defaults::psd_tol);

  int generator_count() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  int rank() const { return rank_; }
  const std::vector<int>& fiber_ranks() const { return fiber_ranks_; }
  /// Columns are orthonormal elements of H(K) in generator coefficients;
  /// onb()^dag * gram() * onb() = identity of size rank().
  const Matrix& onb() const { return onb_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const std::vector<std::vector<int>>& fiber_indices() const { return fiber_indices_; }

  Complex evaluate(const RkhsFunction& f, int arrow) const;
  Vector evaluate_all(const RkhsFunction& f) const;
  /// Kernel pairing of coefficient vectors, anti-linear in the second
  /// argument.
  Complex inner_product(const RkhsFunction& f, const RkhsFunction& g) const;
  double norm(const RkhsFunction& f) const;

  /// Least-squares coefficients for a prescribed value vector, via the
  /// eigendecomposition pseudo-inverse with the rank cutoff.
  RkhsFunction coefficients_from_values(const Vector& values) const;

  /// Pointwise reproducing identity f(chi) = <f, K_chi> on every arrow.
  /// Evaluation runs along Gram rows while the pairing is taken as the
  /// conjugate of <K_chi, f> along columns, so a corrupted (non-Hermitian)
  /// entry fails with the offending arrow as witness.
  ValidationReport reproducing_check(const RkhsFunction& f, double tol) const;

  /// Papadakis criterion: sum_j phi_j(chi) conj(phi_j(gamma)) = K(chi, gamma)
  /// over all index pairs.
  ParsevalReport parseval_check(const std::vector<RkhsFunction>& frame, double tol) const;

  /// Orthonormal basis functions as RkhsFunction coefficients.
  std::vector<RkhsFunction> onb_functions() const;

  /// Cross-fiber Gram entries vanish and the global rank splits as the sum
  /// of fiber ranks.
  FiberDecompositionReport fiber_decomposition_check(double tol) const;

private:
  RkhsModel() = default;
  static RkhsModel build_impl(Matrix gram, std::vector<std::vector<int>> fiber_indices,
                              double rank_tol, double psd_tol);

  Matrix gram_;
  std::vector<std::vector<int>> fiber_indices_;
  RealVector eigenvalues_;   // ascending
  Matrix eigenvectors_;
  int rank_ = 0;
  double cutoff_ = 0.0;
  Matrix onb_;
  std::vector<int> fiber_ranks_;
};

/// The contraction T: H -> H(K), (Tw)(gamma) = <w, F(gamma)>, returned as
/// the value vector together with its least-squares coefficients and norm
/// in the model. w lives in the concatenated space of the representation.
struct EmbeddedFunction {
  Vector values;
  RkhsFunction function;
  double rkhs_norm = 0.0;
};

/// Row-vs-column form of the reproducing identity on an arbitrary Gram
/// matrix; an algebraic identity exactly when the matrix is Hermitian.
ValidationReport reproducing_check_on(const Matrix& gram, const RkhsFunction& f, double tol);

EmbeddedFunction embedding_T(const UnitaryRepresentation& rep, const VectorField& field,
                             const Vector& w, const RkhsModel& model);

/// The isometry S: H(K) -> H with S(K_gamma) = F(gamma): maps coefficient
/// vectors to sum_i c_i F(gamma_i). Well defined on equivalent coefficient
/// vectors because null(gram) = null(feature columns).
Vector embedding_S(const FeatureMap& features, const RkhsFunction& f);

}  // namespace grkhs
