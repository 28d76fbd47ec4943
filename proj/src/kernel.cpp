#include "grkhs/kernel.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace grkhs {

GroupoidKernel::GroupoidKernel(GroupoidPtr groupoid, Matrix values)
    : groupoid_(std::move(groupoid)), values_(std::move(values)) {
  if (!groupoid_) throw ArgumentError("kernel: null groupoid");
  if (values_.rows() != groupoid_->arrow_count() || values_.cols() != groupoid_->arrow_count())
    throw StructuralError("kernel: matrix must be " + std::to_string(groupoid_->arrow_count()) +
                          "x" + std::to_string(groupoid_->arrow_count()) + ", got " +
                          std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()));
}

Matrix GroupoidKernel::fiber_block(int base) const {
  const auto& idx = groupoid_->arrows_by_range()[base];
  Matrix block(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = values_(idx[i], idx[j]);
  return block;
}

FeatureMap feature_map(const UnitaryRepresentation& rep, const VectorField& field) {
  check_field_shapes(rep.spaces(), field);
  const FiniteGroupoid& g = *rep.groupoid();

  FeatureMap map;
  map.spaces = rep.spaces();
  map.offsets = rep.spaces().offsets();
  map.columns = Matrix::Zero(rep.spaces().total_dimension(), g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    Vector f = rep.matrix(a) * field.values[g.source(a)];
    map.columns.col(a).segment(map.offsets[g.range(a)], f.size()) = f;
  }
  return map;
}

GroupoidKernel kernel_from_representation(const UnitaryRepresentation& rep,
                                          const VectorField& field) {
  check_field_shapes(rep.spaces(), field);
  const FiniteGroupoid& g = *rep.groupoid();

  std::vector<Vector> features(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a)
    features[a] = rep.matrix(a) * field.values[g.source(a)];

  Matrix values = Matrix::Zero(g.arrow_count(), g.arrow_count());
  for (const auto& fiber : g.arrows_by_range())
    for (int chi : fiber)
      for (int gamma : fiber) values(chi, gamma) = inner(features[gamma], features[chi]);
  return GroupoidKernel(rep.groupoid(), std::move(values));
}

SpectralReport check_positive_definite(const Matrix& kernel_matrix, double tol) {
  if (kernel_matrix.rows() != kernel_matrix.cols())
    throw StructuralError("check_positive_definite: matrix is not square");

  SpectralReport report;
  report.hermiticity_deviation =
      kernel_matrix.size() == 0
          ? 0.0
          : (kernel_matrix - kernel_matrix.adjoint()).cwiseAbs().maxCoeff();
  if (report.hermiticity_deviation > tol)
    throw ArgumentError("check_positive_definite: matrix is not Hermitian (deviation " +
                        std::to_string(report.hermiticity_deviation) + ")");
  if (kernel_matrix.size() == 0) {
    report.passed = true;
    return report;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(kernel_matrix, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.max_eigenvalue = solver.eigenvalues().maxCoeff();
  double radius = solver.eigenvalues().cwiseAbs().maxCoeff();
  report.threshold = -tol * std::max(1.0, radius);
  report.passed = report.min_eigenvalue >= report.threshold;
  return report;
}

SpectralReport check_positive_definite(const GroupoidKernel& kernel, double tol) {
  return check_positive_definite(kernel.values(), tol);
}

InvarianceReport check_invariance(const GroupoidKernel& kernel, double tol) {
  const FiniteGroupoid& g = *kernel.groupoid();
  InvarianceReport report;
  report.passed = true;

  auto record = [&](int chi, int gamma, double dev, const char* what) {
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.witness_chi = chi;
      report.witness_gamma = gamma;
      report.detail = std::string(what) + " at ('" + g.arrow_name(chi) + "','" +
                      g.arrow_name(gamma) + "')";
    }
    if (dev > tol) report.passed = false;
  };

  for (int chi = 0; chi < g.arrow_count(); ++chi) {
    for (int gamma = 0; gamma < g.arrow_count(); ++gamma) {
      if (g.range(chi) != g.range(gamma)) {
        record(chi, gamma, std::abs(kernel(chi, gamma)), "cross-fiber entry");
        continue;
      }
      int shifted = g.compose(g.inverse(gamma), chi);
      int unit = g.unit(g.range(shifted));
      double dev = std::abs(kernel(chi, gamma) - kernel(shifted, unit));
      record(chi, gamma, dev, "translation invariance");
    }
  }
  return report;
}

GroupoidKernel convolution_kernel(GroupoidPtr group, const Vector& f, double weight) {
  const FiniteGroupoid& g = *group;
  if (!g.is_group())
    throw ArgumentError("convolution_kernel: groupoid has " + std::to_string(g.base_count()) +
                        " base points, a group (one base point) is required");
  if (f.size() != g.arrow_count())
    throw StructuralError("convolution_kernel: f must assign a value to every element");
  if (!(weight > 0.0)) throw ArgumentError("convolution_kernel: weight must be positive");

  const int n = g.arrow_count();
  // f~(g) = conj(f(inv(g))); autocorrelation (f * f~) evaluated on all of G
  Vector autocorr = Vector::Zero(n);
  for (int x = 0; x < n; ++x) {
    Complex sum = 0.0;
    for (int tau = 0; tau < n; ++tau) {
      int arg = g.compose(g.inverse(tau), x);  // tau^{-1} x
      sum += f(tau) * std::conj(f(g.inverse(arg)));
    }
    autocorr(x) = sum * weight;
  }

  Matrix values(n, n);
  for (int h = 0; h < n; ++h)
    for (int gg = 0; gg < n; ++gg) values(h, gg) = autocorr(g.compose(g.inverse(gg), h));
  return GroupoidKernel(std::move(group), std::move(values));
}

GroupoidKernel character_kernel(GroupoidPtr groupoid, const Vector& k, double tol) {
  const FiniteGroupoid& g = *groupoid;
  if (k.size() != g.arrow_count())
    throw StructuralError("character_kernel: k must assign a value to every arrow");

  for (int a = 0; a < g.arrow_count(); ++a)
    if (std::abs(std::abs(k(a)) - 1.0) > tol)
      throw ArgumentError("character_kernel: |k| != 1 at arrow '" + g.arrow_name(a) +
                          "' (modulus " + std::to_string(std::abs(k(a))) + ")");
  for (int g1 = 0; g1 < g.arrow_count(); ++g1)
    for (int g2 = 0; g2 < g.arrow_count(); ++g2)
      if (auto p = g.try_compose(g1, g2))
        if (std::abs(k(*p) - k(g1) * k(g2)) > tol)
          throw ArgumentError("character_kernel: k is not multiplicative on ('" +
                              g.arrow_name(g1) + "','" + g.arrow_name(g2) + "')");

  Matrix values = Matrix::Zero(g.arrow_count(), g.arrow_count());
  for (const auto& fiber : g.arrows_by_range())
    for (int chi : fiber)
      for (int gamma : fiber) values(chi, gamma) = k(gamma) * std::conj(k(chi));
  return GroupoidKernel(std::move(groupoid), std::move(values));
}

GroupoidKernel kernel_combination(const std::vector<WeightedKernel>& terms) {
  if (terms.empty()) throw ArgumentError("kernel_combination: empty term list");
  const GroupoidPtr& g = terms.front().kernel.groupoid();
  for (const auto& t : terms) {
    if (t.kernel.groupoid() != g)
      throw ArgumentError("kernel_combination: kernels over different groupoids");
    if (!(t.coefficient > 0.0))
      throw ArgumentError("kernel_combination: coefficients must be positive");
    if (t.power < 1) throw ArgumentError("kernel_combination: powers must be >= 1");
  }

  Matrix values = Matrix::Zero(g->arrow_count(), g->arrow_count());
  for (const auto& t : terms) {
    Matrix powered = t.kernel.values();
    for (int p = 1; p < t.power; ++p)
      powered = powered.cwiseProduct(t.kernel.values());
    values += t.coefficient * powered;
  }
  return GroupoidKernel(g, std::move(values));
}

GroupoidKernel kernel_product(const std::vector<GroupoidKernel>& kernels) {
  if (kernels.empty()) throw ArgumentError("kernel_product: empty kernel list");
  const GroupoidPtr& g = kernels.front().groupoid();
  Matrix values = kernels.front().values();
  for (std::size_t i = 1; i < kernels.size(); ++i) {
    if (kernels[i].groupoid() != g)
      throw ArgumentError("kernel_product: kernels over different groupoids");
    values = values.cwiseProduct(kernels[i].values());
  }
  return GroupoidKernel(g, std::move(values));
}

}  // namespace grkhs
