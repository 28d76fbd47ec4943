#include "grkhs/rkhs.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace grkhs {

RkhsModel RkhsModel::build(const GroupoidKernel& kernel, double rank_tol, double psd_tol) {
  return build_impl(kernel.values(), kernel.fiber_arrows(), rank_tol, psd_tol);
}

RkhsModel RkhsModel::build(const Matrix& kernel_matrix, double rank_tol, double psd_tol) {
  std::vector<int> all(kernel_matrix.rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return build_impl(kernel_matrix, {std::move(all)}, rank_tol, psd_tol);
}

RkhsModel RkhsModel::build_impl(Matrix gram, std::vector<std::vector<int>> fiber_indices,
                                double rank_tol, double psd_tol) {
  SpectralReport psd = check_positive_definite(gram, psd_tol);
  if (!psd.passed)
    throw ArgumentError("build_rkhs: kernel is not positive semidefinite (min eigenvalue " +
                        std::to_string(psd.min_eigenvalue) + ")");

  RkhsModel model;
  model.gram_ = std::move(gram);
  model.fiber_indices_ = std::move(fiber_indices);

  const int n = model.generator_count();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(model.gram_);  // eigenvalues ascending
  model.eigenvalues_ = solver.eigenvalues();
  model.eigenvectors_ = solver.eigenvectors();

  const double max_eig = n > 0 ? model.eigenvalues_(n - 1) : 0.0;
  model.cutoff_ = rank_tol * std::max(0.0, max_eig);
  model.rank_ = 0;
  for (int j = 0; j < n; ++j)
    if (model.eigenvalues_(j) > model.cutoff_) ++model.rank_;

  // ONB in generator coefficients: kept eigenvectors scaled by 1/sqrt(eig),
  // ordered by descending eigenvalue.
  model.onb_ = Matrix::Zero(n, model.rank_);
  for (int j = 0; j < model.rank_; ++j) {
    int src = n - 1 - j;
    model.onb_.col(j) = model.eigenvectors_.col(src) / std::sqrt(model.eigenvalues_(src));
  }

  // Fiber ranks with the same absolute cutoff, so rank = sum of fiber ranks
  // whenever the cross-fiber entries vanish.
  model.fiber_ranks_.assign(model.fiber_indices_.size(), 0);
  for (std::size_t x = 0; x < model.fiber_indices_.size(); ++x) {
    const auto& idx = model.fiber_indices_[x];
    if (idx.empty()) continue;
    Matrix block(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = model.gram_(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Matrix> fiber_solver(block, Eigen::EigenvaluesOnly);
    for (Eigen::Index j = 0; j < fiber_solver.eigenvalues().size(); ++j)
      if (fiber_solver.eigenvalues()(j) > model.cutoff_) ++model.fiber_ranks_[x];
  }
  return model;
}

Complex RkhsModel::evaluate(const RkhsFunction& f, int arrow) const {
  if (f.coefficients.size() != gram_.rows())
    throw StructuralError("evaluate: coefficient length does not match generator count");
  if (arrow < 0 || arrow >= gram_.rows())
    throw LookupError("evaluate: arrow index out of range");
  return gram_.row(arrow) * f.coefficients;
}

Vector RkhsModel::evaluate_all(const RkhsFunction& f) const {
  if (f.coefficients.size() != gram_.rows())
    throw StructuralError("evaluate: coefficient length does not match generator count");
  return gram_ * f.coefficients;
}

Complex RkhsModel::inner_product(const RkhsFunction& f, const RkhsFunction& g) const {
  if (f.coefficients.size() != gram_.rows() || g.coefficients.size() != gram_.rows())
    throw StructuralError("inner_product: coefficient length does not match generator count");
  return g.coefficients.adjoint() * gram_ * f.coefficients;
}

double RkhsModel::norm(const RkhsFunction& f) const {
  double sq = inner_product(f, f).real();
  return std::sqrt(std::max(0.0, sq));
}

RkhsFunction RkhsModel::coefficients_from_values(const Vector& values) const {
  if (values.size() != gram_.rows())
    throw StructuralError("coefficients_from_values: wrong value vector length");
  const int n = generator_count();
  Vector coeffs = Vector::Zero(n);
  // pseudo-inverse over the kept eigenpairs
  for (int j = n - rank_; j < n; ++j) {
    Complex proj = eigenvectors_.col(j).dot(values);
    coeffs += eigenvectors_.col(j) * (proj / eigenvalues_(j));
  }
  return RkhsFunction{std::move(coeffs)};
}

ValidationReport RkhsModel::reproducing_check(const RkhsFunction& f, double tol) const {
  return reproducing_check_on(gram_, f, tol);
}

ValidationReport reproducing_check_on(const Matrix& gram, const RkhsFunction& f, double tol) {
  if (f.coefficients.size() != gram.rows())
    throw StructuralError("reproducing_check: coefficient length does not match generator count");
  ValidationReport report;
  Vector values = gram * f.coefficients;  // f(chi) = sum_i c_i K(chi, gamma_i)
  for (Eigen::Index chi = 0; chi < gram.rows(); ++chi) {
    // <f, K_chi> = conj(<K_chi, f>) pairs the conjugated column
    Complex pairing = std::conj(Complex(f.coefficients.adjoint() * gram.col(chi)));
    double dev = std::abs(values(chi) - pairing);
    if (dev > tol)
      report.violations.push_back(
          {"reproducing-property", "arrow index " + std::to_string(chi), dev});
  }
  return report;
}

ParsevalReport RkhsModel::parseval_check(const std::vector<RkhsFunction>& frame,
                                         double tol) const {
  const int n = generator_count();
  Matrix evaluations(n, static_cast<Eigen::Index>(frame.size()));
  for (std::size_t j = 0; j < frame.size(); ++j)
    evaluations.col(static_cast<Eigen::Index>(j)) = evaluate_all(frame[j]);

  ParsevalReport report;
  report.passed = true;
  for (int chi = 0; chi < n; ++chi)
    for (int gamma = 0; gamma < n; ++gamma) {
      Complex sum = 0.0;
      for (Eigen::Index j = 0; j < evaluations.cols(); ++j)
        sum += evaluations(chi, j) * std::conj(evaluations(gamma, j));
      double dev = std::abs(sum - gram_(chi, gamma));
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.witness_chi = chi;
        report.witness_gamma = gamma;
      }
      if (dev > tol) report.passed = false;
    }
  return report;
}

std::vector<RkhsFunction> RkhsModel::onb_functions() const {
  std::vector<RkhsFunction> basis;
  basis.reserve(rank_);
  for (int j = 0; j < rank_; ++j) basis.push_back(RkhsFunction{onb_.col(j)});
  return basis;
}

FiberDecompositionReport RkhsModel::fiber_decomposition_check(double tol) const {
  FiberDecompositionReport report;
  report.rank = rank_;
  report.fiber_ranks = fiber_ranks_;

  std::vector<int> fiber_of(generator_count(), -1);
  for (std::size_t x = 0; x < fiber_indices_.size(); ++x)
    for (int i : fiber_indices_[x]) fiber_of[i] = static_cast<int>(x);
  for (int i = 0; i < generator_count(); ++i)
    for (int j = 0; j < generator_count(); ++j)
      if (fiber_of[i] != fiber_of[j])
        report.max_cross_fiber = std::max(report.max_cross_fiber, std::abs(gram_(i, j)));

  int sum = 0;
  for (int r : fiber_ranks_) sum += r;
  report.passed = report.max_cross_fiber <= tol && sum == rank_;
  return report;
}

EmbeddedFunction embedding_T(const UnitaryRepresentation& rep, const VectorField& field,
                             const Vector& w, const RkhsModel& model) {
  FeatureMap features = feature_map(rep, field);
  if (w.size() != features.columns.rows())
    throw StructuralError("embedding_T: w has length " + std::to_string(w.size()) +
                          ", expected " + std::to_string(features.columns.rows()));
  if (features.columns.cols() != model.generator_count())
    throw StructuralError("embedding_T: model does not match the representation");

  EmbeddedFunction out;
  out.values = features.columns.adjoint() * w;  // (Tw)(gamma) = <w, F(gamma)>
  out.function = model.coefficients_from_values(out.values);
  out.rkhs_norm = model.norm(out.function);
  return out;
}

Vector embedding_S(const FeatureMap& features, const RkhsFunction& f) {
  if (f.coefficients.size() != features.columns.cols())
    throw StructuralError("embedding_S: coefficient length does not match feature columns");
  return features.columns * f.coefficients;
}

}  // namespace grkhs
