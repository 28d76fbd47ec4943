#pragma once

// Deterministic corpus shared by the unit and acceptance suites: the
// standard small groupoids, the one-dimensional qubit representation on the
// two-point pair groupoid, and a set of kernels covering every construction
// route.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "grkhs/groupoid.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/representation.hpp"

namespace corpus {

using namespace grkhs;

inline GroupoidPtr z_n(int n) {
  return std::make_shared<FiniteGroupoid>(group_to_groupoid(cyclic_group(n)));
}

inline GroupoidPtr pair_n(int n) {
  std::vector<std::string> points;
  for (int i = 0; i < n; ++i) points.push_back("p" + std::to_string(i));
  return std::make_shared<FiniteGroupoid>(pair_groupoid(points));
}

/// The four-arrow groupoid over {+,-}; the arrow order is
/// (e(+), a_inv, a, e(-)) with a = (-,+).
inline GroupoidPtr two_point_groupoid() {
  return std::make_shared<FiniteGroupoid>(pair_groupoid({"+", "-"}));
}

/// One-dimensional representation on the two-point pair groupoid:
/// U(a) = lambda with |lambda| = 1, U(a_inv) = conj(lambda), units = 1.
inline UnitaryRepresentation qubit_representation(GroupoidPtr g, Complex lambda) {
  std::vector<Matrix> mats(4, Matrix::Identity(1, 1));
  mats[g->arrow_index("(-,+)")](0, 0) = lambda;
  mats[g->arrow_index("(+,-)")](0, 0) = std::conj(lambda);
  return UnitaryRepresentation(std::move(g), HilbertFamily{{1, 1}}, std::move(mats));
}

inline VectorField qubit_field(Complex v_plus, Complex v_minus) {
  VectorField field;
  field.values.resize(2);
  field.values[0] = Vector::Constant(1, v_plus);
  field.values[1] = Vector::Constant(1, v_minus);
  return field;
}

/// Closed-form qubit kernel in the canonical arrow order
/// (e(+), a_inv, a, e(-)): the oracle the constructed kernel must match.
inline Matrix qubit_kernel_closed_form(Complex lambda, Complex v_plus, Complex v_minus) {
  Matrix k = Matrix::Zero(4, 4);
  Complex vp2 = v_plus * std::conj(v_plus);
  Complex vm2 = v_minus * std::conj(v_minus);
  Complex upper = std::conj(lambda) * v_minus * std::conj(v_plus);
  Complex lower = lambda * std::conj(v_minus) * v_plus;
  k(0, 0) = vp2;
  k(0, 1) = upper;
  k(1, 0) = lower;
  k(1, 1) = vm2;
  k(2, 2) = vp2;
  k(2, 3) = upper;
  k(3, 2) = lower;
  k(3, 3) = vm2;
  return k;
}

inline Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(dist(rng), dist(rng));
  return v;
}

inline Complex random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  double t = angle(rng);
  return {std::cos(t), std::sin(t)};
}

inline VectorField random_field(const FiniteGroupoid& g, const HilbertFamily& spaces,
                                std::mt19937_64& rng) {
  VectorField field;
  field.values.resize(g.base_count());
  for (int b = 0; b < g.base_count(); ++b) field.values[b] = random_vector(spaces.dims[b], rng);
  return field;
}

/// Unimodular multiplicative map on a pair groupoid: k(y,x) = u(y) conj(u(x)).
inline Vector pair_character(const FiniteGroupoid& g, const std::vector<Complex>& phases) {
  Vector k(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a)
    k(a) = phases[g.range(a)] * std::conj(phases[g.source(a)]);
  return k;
}

struct NamedKernel {
  std::string id;
  GroupoidKernel kernel;
};

/// A representation together with a vector field and the induced kernel.
struct RepresentationInstance {
  std::string id;
  UnitaryRepresentation representation;
  VectorField field;
  GroupoidKernel kernel;
};

inline RepresentationInstance make_instance(std::string id, UnitaryRepresentation rep,
                                            VectorField field) {
  GroupoidKernel kernel = kernel_from_representation(rep, field);
  return {std::move(id), std::move(rep), std::move(field), std::move(kernel)};
}

/// Deterministic representation-built instances across the corpus groupoids.
inline std::vector<RepresentationInstance> representation_instances() {
  std::vector<RepresentationInstance> out;
  std::mt19937_64 rng(20240811u);

  out.push_back(make_instance("qubit", qubit_representation(two_point_groupoid(), Complex(0, 1)),
                              qubit_field({1, 0}, {2, 0})));
  {
    GroupoidPtr g = z_n(3);
    auto rep = left_regular_representation(g, counting_haar(*g, HaarSide::left));
    VectorField field = random_field(*g, rep.spaces(), rng);
    out.push_back(make_instance("z3-left-regular", std::move(rep), std::move(field)));
  }
  {
    GroupoidPtr g = pair_n(3);
    auto rep = trivial_representation(g, 2);
    VectorField field = random_field(*g, rep.spaces(), rng);
    out.push_back(make_instance("pair3-trivial", std::move(rep), std::move(field)));
  }
  {
    GroupoidPtr g = pair_n(2);
    auto rep = right_regular_representation(g, counting_haar(*g, HaarSide::right));
    VectorField field = random_field(*g, rep.spaces(), rng);
    out.push_back(make_instance("pair2-right-regular", std::move(rep), std::move(field)));
  }
  {
    // disjoint union of Z2 and the two-point pair groupoid, glued
    FiniteGroupoid z2 = group_to_groupoid(cyclic_group(2));
    FiniteGroupoid p2 = pair_groupoid({"+", "-"});
    GroupoidPtr un = std::make_shared<FiniteGroupoid>(disjoint_union({z2, p2}));
    auto z2p = std::make_shared<FiniteGroupoid>(std::move(z2));
    auto p2p = std::make_shared<FiniteGroupoid>(std::move(p2));
    auto rep1 = left_regular_representation(z2p, counting_haar(*z2p, HaarSide::left));
    auto rep2 = qubit_representation(p2p, random_unimodular(rng));
    auto glued = glue_representations(un, {rep1, rep2});
    VectorField field = glue_vector_fields(
        *un, {random_field(*z2p, rep1.spaces(), rng), qubit_field({0, 1}, {1, 1})});
    out.push_back(make_instance("union-glued", std::move(glued), std::move(field)));
  }
  return out;
}

/// Every kernel construction route, deterministic contents.
inline std::vector<NamedKernel> standard_kernels() {
  std::vector<NamedKernel> out;
  std::mt19937_64 rng(4711u);

  for (auto& instance : representation_instances())
    out.push_back({instance.id, std::move(instance.kernel)});
  {
    GroupoidPtr g = z_n(4);
    out.push_back({"z4-convolution", convolution_kernel(g, random_vector(4, rng))});
  }
  {
    GroupoidPtr g = z_n(2);
    Vector f(2);
    f << Complex(1, 0), Complex(2, 0);
    out.push_back({"z2-convolution", convolution_kernel(g, f)});
  }
  {
    GroupoidPtr g = pair_n(3);
    std::vector<Complex> phases;
    for (int b = 0; b < 3; ++b) phases.push_back(random_unimodular(rng));
    GroupoidKernel character = character_kernel(g, pair_character(*g, phases));
    auto trivial = trivial_representation(g, 2);
    GroupoidKernel from_trivial =
        kernel_from_representation(trivial, random_field(*g, trivial.spaces(), rng));
    out.push_back({"pair3-character", character});
    out.push_back({"pair3-combination",
                   kernel_combination({{0.5, character, 2}, {1.5, from_trivial, 1}})});
    out.push_back({"pair3-product", kernel_product({character, from_trivial})});
  }
  return out;
}

/// Random mix of pair groupoids and cyclic groups glued by disjoint union,
/// with 1 to 3 components of carrier size at most 3.
inline GroupoidPtr random_composite_groupoid(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> component_count(1, 3);
  std::uniform_int_distribution<int> size(1, 3);
  std::uniform_int_distribution<int> kind(0, 1);
  std::vector<FiniteGroupoid> parts;
  int components = component_count(rng);
  for (int i = 0; i < components; ++i) {
    int n = size(rng);
    if (kind(rng) == 0) {
      parts.push_back(group_to_groupoid(cyclic_group(n)));
    } else {
      std::vector<std::string> points;
      for (int p = 0; p < n; ++p) points.push_back("q" + std::to_string(p));
      parts.push_back(pair_groupoid(points));
    }
  }
  return std::make_shared<FiniteGroupoid>(disjoint_union(parts));
}

/// Groupoids exercised by representation-level suites.
inline std::vector<std::pair<std::string, GroupoidPtr>> standard_groupoids() {
  return {
      {"z2", z_n(2)},          {"z3", z_n(3)},
      {"z4", z_n(4)},          {"pair2", two_point_groupoid()},
      {"pair3", pair_n(3)},
      {"union", std::make_shared<FiniteGroupoid>(disjoint_union(
                    {group_to_groupoid(cyclic_group(2)), pair_groupoid({"+", "-"})}))},
  };
}

}  // namespace corpus
