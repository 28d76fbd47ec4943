#include "grkhs/reconstruction.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "grkhs/rkhs.hpp"

namespace grkhs {

Vector ReconstructedRepresentation::generator_image(int gamma, int chi) const {
  const FiniteGroupoid& g = *representation.groupoid();
  int target = g.compose(gamma, chi);  // throws when chi is not in the source fiber
  int base = g.range(target);
  const auto& fiber = g.arrows_by_range()[base];
  for (std::size_t i = 0; i < fiber.size(); ++i)
    if (fiber[i] == target) return fiber_coordinates[base].col(static_cast<Eigen::Index>(i));
  throw Error("generator_image: product arrow missing from its range fiber");
}

ReconstructedRepresentation reconstruct(const GroupoidKernel& kernel, double tol) {
  const FiniteGroupoid& g = *kernel.groupoid();

  SpectralReport psd = check_positive_definite(kernel, defaults::psd_tol);
  if (!psd.passed)
    throw ArgumentError("reconstruct: kernel is not positive semidefinite (min eigenvalue " +
                        std::to_string(psd.min_eigenvalue) + ")");
  InvarianceReport inv = check_invariance(kernel, defaults::invariance_tol);
  if (!inv.passed)
    throw ArgumentError("reconstruct: kernel is not translation invariant: " + inv.detail +
                        " (deviation " + std::to_string(inv.max_deviation) + ")");

  const double global_radius = std::max(std::abs(psd.max_eigenvalue), 1.0);
  const double rank_cutoff = defaults::rank_tol * std::max(0.0, psd.max_eigenvalue);

  // Per-fiber eigendecomposition: orthonormal coordinates for H(K^x) and
  // the generator coordinate matrix C_x with column i = coords of K_chi_i.
  const int bases = g.base_count();
  std::vector<Matrix> coords(bases);
  std::vector<int> ranks(bases, 0);
  std::vector<int> pos_in_fiber(g.arrow_count(), -1);
  for (int x = 0; x < bases; ++x) {
    const auto& fiber = g.arrows_by_range()[x];
    for (std::size_t i = 0; i < fiber.size(); ++i)
      pos_in_fiber[fiber[i]] = static_cast<int>(i);

    // every out-fiber holds at least its unit arrow, so the block is nonempty
    Matrix block = kernel.fiber_block(x);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    int rank = 0;
    for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j)
      if (solver.eigenvalues()(j) > rank_cutoff) ++rank;
    ranks[x] = rank;

    Matrix onb(block.rows(), rank);  // generator coefficients of the fiber ONB
    for (int j = 0; j < rank; ++j) {
      Eigen::Index src = solver.eigenvalues().size() - 1 - j;
      onb.col(j) = solver.eigenvectors().col(src) / std::sqrt(solver.eigenvalues()(src));
    }
    coords[x] = onb.adjoint() * block;  // rank x |fiber|
  }

  // Solve U(gamma) C_{s(gamma)} = C_target per arrow. The normal matrix
  // C C^dag equals the diagonal of kept eigenvalues, so the least-squares
  // solution is available in closed form.
  std::vector<Matrix> mats(g.arrow_count());
  double max_residual = 0.0;
  for (int a = 0; a < g.arrow_count(); ++a) {
    const int sx = g.source(a), rx = g.range(a);
    const auto& source_fiber = g.arrows_by_range()[sx];
    const Matrix& source_coords = coords[sx];

    Matrix target(ranks[rx], source_fiber.size());
    for (std::size_t i = 0; i < source_fiber.size(); ++i) {
      int image = g.compose(a, source_fiber[i]);
      target.col(static_cast<Eigen::Index>(i)) = coords[rx].col(pos_in_fiber[image]);
    }

    Matrix m = Matrix::Zero(ranks[rx], ranks[sx]);
    if (ranks[sx] > 0) {
      Matrix normal = source_coords * source_coords.adjoint();  // diagonal of eigenvalues
      m = target * source_coords.adjoint() * normal.inverse();
    }
    Matrix gap = m * source_coords - target;
    if (gap.size() > 0)
      max_residual = std::max(max_residual, gap.cwiseAbs().maxCoeff());
    mats[a] = std::move(m);
  }
  if (max_residual > tol * global_radius)
    throw ArgumentError("reconstruct: generator action is not well defined (residual " +
                        std::to_string(max_residual) + ")");

  VectorField retrieval;
  retrieval.values.resize(bases);
  for (int x = 0; x < bases; ++x)
    retrieval.values[x] = coords[x].col(pos_in_fiber[g.unit(x)]);

  ReconstructedRepresentation out{
      UnitaryRepresentation(kernel.groupoid(), HilbertFamily{ranks}, std::move(mats)),
      std::move(retrieval), std::move(coords), std::move(ranks), max_residual};
  return out;
}

RoundTripReport round_trip(const GroupoidKernel& kernel, double tol) {
  ReconstructedRepresentation rec = reconstruct(kernel, tol);
  GroupoidKernel rebuilt = kernel_from_representation(rec.representation, rec.retrieval_field);

  RoundTripReport report;
  report.max_deviation = (rebuilt.values() - kernel.values()).cwiseAbs().maxCoeff();
  report.passed = report.max_deviation <= tol;
  return report;
}

ReconstructedRepresentation group_reconstruct(const GroupoidKernel& kernel, double tol) {
  const FiniteGroupoid& g = *kernel.groupoid();
  if (!g.is_group())
    throw ArgumentError("group_reconstruct: carrier has " + std::to_string(g.base_count()) +
                        " base points, a group is required");

  const int e = g.unit(0);
  for (int gg = 0; gg < g.arrow_count(); ++gg)
    for (int h = 0; h < g.arrow_count(); ++h) {
      double dev = std::abs(kernel(h, gg) - kernel(g.compose(g.inverse(gg), h), e));
      if (dev > defaults::invariance_tol)
        throw ArgumentError("group_reconstruct: K(h,g) = K(inv(g)h,e) fails at (g='" +
                            g.arrow_name(gg) + "', h='" + g.arrow_name(h) + "'), deviation " +
                            std::to_string(dev));
    }
  return reconstruct(kernel, tol);
}

}  // namespace grkhs
