#include "grkhs/representation.hpp"

#include <cmath>
#include <numeric>

namespace grkhs {

namespace {

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kronecker(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

void check_same_groupoid(const std::vector<UnitaryRepresentation>& reps,
                         const char* what) {
  if (reps.empty()) throw ArgumentError(std::string(what) + ": empty representation list");
  for (const auto& r : reps)
    if (r.groupoid() != reps.front().groupoid())
      throw ArgumentError(std::string(what) + ": representations over different groupoids");
}

}  // namespace

int HilbertFamily::total_dimension() const {
  return std::accumulate(dims.begin(), dims.end(), 0);
}

std::vector<int> HilbertFamily::offsets() const {
  std::vector<int> off(dims.size(), 0);
  for (std::size_t i = 1; i < dims.size(); ++i) off[i] = off[i - 1] + dims[i - 1];
  return off;
}

UnitaryRepresentation::UnitaryRepresentation(GroupoidPtr groupoid, HilbertFamily spaces,
                                             std::vector<Matrix> matrices)
    : groupoid_(std::move(groupoid)),
      spaces_(std::move(spaces)),
      matrices_(std::move(matrices)) {
  if (!groupoid_) throw ArgumentError("representation: null groupoid");
  if (static_cast<int>(spaces_.dims.size()) != groupoid_->base_count())
    throw StructuralError("representation: dimension list does not match base points");
  for (int d : spaces_.dims)
    if (d < 0) throw StructuralError("representation: negative fiber dimension");
  if (static_cast<int>(matrices_.size()) != groupoid_->arrow_count())
    throw StructuralError("representation: matrix list does not match arrows");
  for (int a = 0; a < groupoid_->arrow_count(); ++a) {
    const Matrix& m = matrices_[a];
    if (m.rows() != spaces_.dims[groupoid_->range(a)] ||
        m.cols() != spaces_.dims[groupoid_->source(a)])
      throw StructuralError("representation: matrix for arrow '" +
                            groupoid_->arrow_name(a) + "' has shape " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            ", expected " + std::to_string(spaces_.dims[groupoid_->range(a)]) +
                            "x" + std::to_string(spaces_.dims[groupoid_->source(a)]));
  }
}

ValidationReport validate_representation(const UnitaryRepresentation& rep, double tol) {
  ValidationReport report;
  const FiniteGroupoid& g = *rep.groupoid();
  auto add = [&](std::string rule, std::string witness, double dev) {
    report.violations.push_back({std::move(rule), std::move(witness), dev});
  };
  auto max_abs = [](const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); };

  for (int a = 0; a < g.arrow_count(); ++a) {
    const Matrix& u = rep.matrix(a);
    const int ns = rep.dim(g.source(a)), nr = rep.dim(g.range(a));
    double dev = std::max(
        max_abs(u.adjoint() * u - Matrix::Identity(ns, ns)),
        max_abs(u * u.adjoint() - Matrix::Identity(nr, nr)));
    if (dev > tol) add("unitarity", "arrow '" + g.arrow_name(a) + "'", dev);
  }
  for (int b = 0; b < g.base_count(); ++b) {
    const int n = rep.dim(b);
    double dev = max_abs(rep.matrix(g.unit(b)) - Matrix::Identity(n, n));
    if (dev > tol) add("unit", "base point '" + g.base_name(b) + "'", dev);
  }
  for (int a = 0; a < g.arrow_count(); ++a) {
    double dev = max_abs(rep.matrix(g.inverse(a)) - rep.matrix(a).adjoint());
    if (dev > tol) add("inverse", "arrow '" + g.arrow_name(a) + "'", dev);
  }
  for (int g1 = 0; g1 < g.arrow_count(); ++g1)
    for (int g2 = 0; g2 < g.arrow_count(); ++g2)
      if (auto p = g.try_compose(g1, g2)) {
        double dev = max_abs(rep.matrix(*p) - rep.matrix(g1) * rep.matrix(g2));
        if (dev > tol)
          add("homomorphism",
              "pair ('" + g.arrow_name(g1) + "','" + g.arrow_name(g2) + "')", dev);
      }
  return report;
}

void check_field_shapes(const HilbertFamily& spaces, const VectorField& field) {
  if (field.values.size() != spaces.dims.size())
    throw StructuralError("vector field: one value per base point required");
  for (std::size_t x = 0; x < spaces.dims.size(); ++x)
    if (static_cast<int>(field.values[x].size()) != spaces.dims[x])
      throw StructuralError("vector field: value at base point " + std::to_string(x) +
                            " has length " + std::to_string(field.values[x].size()) +
                            ", expected " + std::to_string(spaces.dims[x]));
}

UnitaryRepresentation trivial_representation(GroupoidPtr groupoid, int n) {
  if (n <= 0) throw ArgumentError("trivial_representation: dimension must be positive");
  HilbertFamily spaces{std::vector<int>(groupoid->base_count(), n)};
  std::vector<Matrix> mats(groupoid->arrow_count(), Matrix::Identity(n, n));
  return UnitaryRepresentation(std::move(groupoid), std::move(spaces), std::move(mats));
}

HaarSystem counting_haar(const FiniteGroupoid& groupoid, HaarSide side) {
  return HaarSystem{side, std::vector<double>(groupoid.arrow_count(), 1.0)};
}

ValidationReport validate_haar(const FiniteGroupoid& g, const HaarSystem& haar, double tol) {
  if (static_cast<int>(haar.weights.size()) != g.arrow_count())
    throw StructuralError("haar system: one weight per arrow required");
  for (double w : haar.weights)
    if (!(w > 0.0)) throw StructuralError("haar system: weights must be positive");

  ValidationReport report;
  for (int a = 0; a < g.arrow_count(); ++a) {
    if (haar.side == HaarSide::left) {
      // translation chi -> gamma chi maps the out-fiber of s(gamma) onto
      // the out-fiber of r(gamma)
      for (int chi : g.arrows_by_range()[g.source(a)]) {
        int translated = g.compose(a, chi);
        double dev = std::abs(haar.weights[translated] - haar.weights[chi]);
        if (dev > tol)
          report.violations.push_back(
              {"left-invariance",
               "gamma='" + g.arrow_name(a) + "', chi='" + g.arrow_name(chi) + "'", dev});
      }
    } else {
      for (int chi : g.fibers(g.range(a)).in_fiber) {
        int translated = g.compose(chi, a);
        double dev = std::abs(haar.weights[translated] - haar.weights[chi]);
        if (dev > tol)
          report.violations.push_back(
              {"right-invariance",
               "gamma='" + g.arrow_name(a) + "', chi='" + g.arrow_name(chi) + "'", dev});
      }
    }
  }
  return report;
}

UnitaryRepresentation left_regular_representation(GroupoidPtr groupoid,
                                                  const HaarSystem& haar) {
  const FiniteGroupoid& g = *groupoid;
  if (haar.side != HaarSide::left)
    throw ArgumentError("left_regular_representation: left Haar system required");
  if (ValidationReport r = validate_haar(g, haar); !r.passed())
    throw ArgumentError("left_regular_representation: invalid Haar system: " + r.summary());

  // H_x is indexed by the out-fiber of x; position of each arrow within it:
  std::vector<int> pos(g.arrow_count(), -1);
  HilbertFamily spaces;
  spaces.dims.resize(g.base_count());
  for (int b = 0; b < g.base_count(); ++b) {
    const auto& fiber = g.arrows_by_range()[b];
    spaces.dims[b] = static_cast<int>(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i) pos[fiber[i]] = static_cast<int>(i);
  }

  std::vector<Matrix> mats(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    const auto& dom = g.arrows_by_range()[g.source(a)];
    Matrix m = Matrix::Zero(spaces.dims[g.range(a)], spaces.dims[g.source(a)]);
    for (std::size_t col = 0; col < dom.size(); ++col) {
      int chi = g.compose(a, dom[col]);
      m(pos[chi], static_cast<Eigen::Index>(col)) =
          std::sqrt(haar.weights[chi] / haar.weights[dom[col]]);
    }
    mats[a] = std::move(m);
  }
  return UnitaryRepresentation(std::move(groupoid), std::move(spaces), std::move(mats));
}

UnitaryRepresentation right_regular_representation(GroupoidPtr groupoid,
                                                   const HaarSystem& haar) {
  const FiniteGroupoid& g = *groupoid;
  if (haar.side != HaarSide::right)
    throw ArgumentError("right_regular_representation: right Haar system required");
  if (ValidationReport r = validate_haar(g, haar); !r.passed())
    throw ArgumentError("right_regular_representation: invalid Haar system: " + r.summary());

  std::vector<std::vector<int>> in_fibers(g.base_count());
  std::vector<int> pos(g.arrow_count(), -1);
  for (int a = 0; a < g.arrow_count(); ++a) {
    pos[a] = static_cast<int>(in_fibers[g.source(a)].size());
    in_fibers[g.source(a)].push_back(a);
  }
  HilbertFamily spaces;
  spaces.dims.resize(g.base_count());
  for (int b = 0; b < g.base_count(); ++b)
    spaces.dims[b] = static_cast<int>(in_fibers[b].size());

  std::vector<Matrix> mats(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    // (U(gamma) f)(chi) = f(chi gamma) for chi in the in-fiber of r(gamma)
    const auto& target = in_fibers[g.range(a)];
    Matrix m = Matrix::Zero(spaces.dims[g.range(a)], spaces.dims[g.source(a)]);
    for (std::size_t row = 0; row < target.size(); ++row) {
      int xi = g.compose(target[row], a);
      m(static_cast<Eigen::Index>(row), pos[xi]) =
          std::sqrt(haar.weights[target[row]] / haar.weights[xi]);
    }
    mats[a] = std::move(m);
  }
  return UnitaryRepresentation(std::move(groupoid), std::move(spaces), std::move(mats));
}

UnitaryRepresentation direct_sum(const std::vector<UnitaryRepresentation>& reps) {
  check_same_groupoid(reps, "direct_sum");
  const FiniteGroupoid& g = *reps.front().groupoid();

  HilbertFamily spaces;
  spaces.dims.assign(g.base_count(), 0);
  for (const auto& r : reps)
    for (int b = 0; b < g.base_count(); ++b) spaces.dims[b] += r.dim(b);

  std::vector<Matrix> mats(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    Matrix m = Matrix::Zero(spaces.dims[g.range(a)], spaces.dims[g.source(a)]);
    int row = 0, col = 0;
    for (const auto& r : reps) {
      const Matrix& block = r.matrix(a);
      m.block(row, col, block.rows(), block.cols()) = block;
      row += static_cast<int>(block.rows());
      col += static_cast<int>(block.cols());
    }
    mats[a] = std::move(m);
  }
  return UnitaryRepresentation(reps.front().groupoid(), std::move(spaces), std::move(mats));
}

UnitaryRepresentation tensor_product(const std::vector<UnitaryRepresentation>& reps) {
  check_same_groupoid(reps, "tensor_product");
  const FiniteGroupoid& g = *reps.front().groupoid();

  HilbertFamily spaces;
  spaces.dims.assign(g.base_count(), 1);
  for (const auto& r : reps)
    for (int b = 0; b < g.base_count(); ++b) spaces.dims[b] *= r.dim(b);

  std::vector<Matrix> mats(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    Matrix m = reps.front().matrix(a);
    for (std::size_t j = 1; j < reps.size(); ++j) m = kronecker(m, reps[j].matrix(a));
    mats[a] = std::move(m);
  }
  return UnitaryRepresentation(reps.front().groupoid(), std::move(spaces), std::move(mats));
}

VectorField direct_sum_fields(const std::vector<VectorField>& fields) {
  if (fields.empty()) throw ArgumentError("direct_sum_fields: empty list");
  const std::size_t bases = fields.front().values.size();
  VectorField out;
  out.values.resize(bases);
  for (std::size_t x = 0; x < bases; ++x) {
    Eigen::Index total = 0;
    for (const auto& f : fields) total += f.values[x].size();
    Vector v(total);
    Eigen::Index at = 0;
    for (const auto& f : fields) {
      v.segment(at, f.values[x].size()) = f.values[x];
      at += f.values[x].size();
    }
    out.values[x] = std::move(v);
  }
  return out;
}

VectorField tensor_product_fields(const std::vector<VectorField>& fields) {
  if (fields.empty()) throw ArgumentError("tensor_product_fields: empty list");
  const std::size_t bases = fields.front().values.size();
  VectorField out;
  out.values.resize(bases);
  for (std::size_t x = 0; x < bases; ++x) {
    Vector v = fields.front().values[x];
    for (std::size_t j = 1; j < fields.size(); ++j) v = kronecker(v, fields[j].values[x]);
    out.values[x] = std::move(v);
  }
  return out;
}

UnitaryRepresentation glue_representations(GroupoidPtr union_groupoid,
                                           const std::vector<UnitaryRepresentation>& parts) {
  const FiniteGroupoid& g = *union_groupoid;
  HilbertFamily spaces;
  std::vector<Matrix> mats;
  int base_total = 0, arrow_total = 0;
  for (const auto& part : parts) {
    const FiniteGroupoid& pg = *part.groupoid();
    base_total += pg.base_count();
    arrow_total += pg.arrow_count();
    spaces.dims.insert(spaces.dims.end(), part.spaces().dims.begin(), part.spaces().dims.end());
    mats.insert(mats.end(), part.matrices().begin(), part.matrices().end());
  }
  if (base_total != g.base_count() || arrow_total != g.arrow_count())
    throw ArgumentError("glue_representations: components do not match the union groupoid");
  return UnitaryRepresentation(std::move(union_groupoid), std::move(spaces), std::move(mats));
}

VectorField glue_vector_fields(const FiniteGroupoid& union_groupoid,
                               const std::vector<VectorField>& parts) {
  VectorField out;
  for (const auto& part : parts)
    out.values.insert(out.values.end(), part.values.begin(), part.values.end());
  if (static_cast<int>(out.values.size()) != union_groupoid.base_count())
    throw ArgumentError("glue_vector_fields: components do not match the union groupoid");
  return out;
}

}  // namespace grkhs
