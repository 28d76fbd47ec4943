#pragma once

// Builders for the shipped example projects under data/. Values are
// integer-derived so regeneration is byte-identical on every platform.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "grkhs/groupoid.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/project_io.hpp"
#include "grkhs/representation.hpp"

namespace grkhs::corpus_files {

inline Complex det_value(int k) {
  // quarter-integer lattice values, nonzero, sign-alternating
  double re = ((k * 7919) % 17 - 8) / 4.0;
  double im = ((k * 104729) % 13 - 6) / 4.0;
  if (re == 0.0) re = 0.75;
  return {re, im};
}

inline Vector det_vector(int n, int salt) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = det_value(salt + 31 * i);
  return v;
}

inline VectorField det_field(const FiniteGroupoid& g, const HilbertFamily& spaces, int salt) {
  VectorField field;
  field.values.resize(g.base_count());
  for (int b = 0; b < g.base_count(); ++b)
    field.values[b] = det_vector(spaces.dims[b], salt + 101 * b);
  return field;
}

inline Project qubit_project() {
  Project p;
  auto g = std::make_shared<FiniteGroupoid>(pair_groupoid({"+", "-"}));
  p.groupoid = g;

  std::vector<Matrix> mats(4, Matrix::Identity(1, 1));
  mats[g->arrow_index("(-,+)")](0, 0) = Complex(0, 1);
  mats[g->arrow_index("(+,-)")](0, 0) = Complex(0, -1);
  UnitaryRepresentation rep(g, HilbertFamily{{1, 1}}, mats);
  p.representations.push_back({"qubit", rep});

  VectorField v;
  v.values = {Vector::Constant(1, Complex(1, 0)), Vector::Constant(1, Complex(2, 0))};
  p.vector_fields.push_back({"v", v});
  p.haar_systems.push_back({"counting-left", counting_haar(*g, HaarSide::left)});
  p.kernels.push_back({"qubit-kernel", kernel_from_representation(rep, v)});
  return p;
}

inline Project group_project(int order, int salt) {
  Project p;
  auto g = std::make_shared<FiniteGroupoid>(group_to_groupoid(cyclic_group(order)));
  p.groupoid = g;

  auto left = left_regular_representation(g, counting_haar(*g, HaarSide::left));
  p.representations.push_back({"left-regular", left});
  p.representations.push_back(
      {"right-regular", right_regular_representation(g, counting_haar(*g, HaarSide::right))});

  VectorField f;
  f.values = {det_vector(order, salt)};
  p.vector_fields.push_back({"f", f});
  p.haar_systems.push_back({"counting-left", counting_haar(*g, HaarSide::left)});
  p.kernels.push_back({"convolution", convolution_kernel(g, f.values[0])});
  p.kernels.push_back({"regular-kernel", kernel_from_representation(left, f)});
  return p;
}

inline Project pair3_project() {
  Project p;
  auto g = std::make_shared<FiniteGroupoid>(pair_groupoid({"p0", "p1", "p2"}));
  p.groupoid = g;

  // one-dimensional multiplicative map via unimodular base phases
  std::vector<Complex> phases{Complex(1, 0), Complex(0, 1), Complex(-1, 0)};
  std::vector<Matrix> mats(g->arrow_count());
  for (int a = 0; a < g->arrow_count(); ++a)
    mats[a] = Matrix::Constant(1, 1, phases[g->range(a)] * std::conj(phases[g->source(a)]));
  UnitaryRepresentation character_rep(g, HilbertFamily{{1, 1, 1}}, mats);
  p.representations.push_back({"character", character_rep});

  auto trivial = trivial_representation(g, 2);
  p.representations.push_back({"trivial2", trivial});

  VectorField v = det_field(*g, trivial.spaces(), 5);
  p.vector_fields.push_back({"v", v});

  Vector k(g->arrow_count());
  for (int a = 0; a < g->arrow_count(); ++a) k(a) = mats[a](0, 0);
  GroupoidKernel character = character_kernel(g, k);
  GroupoidKernel from_trivial = kernel_from_representation(trivial, v);
  p.kernels.push_back({"character-kernel", character});
  p.kernels.push_back({"trivial-kernel", from_trivial});
  p.kernels.push_back(
      {"combined-kernel", kernel_combination({{0.5, character, 2}, {1.5, from_trivial, 1}})});
  return p;
}

inline Project union_project() {
  Project p;
  FiniteGroupoid z2 = group_to_groupoid(cyclic_group(2));
  FiniteGroupoid p2 = pair_groupoid({"+", "-"});
  auto un = std::make_shared<FiniteGroupoid>(disjoint_union({z2, p2}));
  p.groupoid = un;

  auto z2p = std::make_shared<FiniteGroupoid>(std::move(z2));
  auto p2p = std::make_shared<FiniteGroupoid>(std::move(p2));
  auto rep1 = left_regular_representation(z2p, counting_haar(*z2p, HaarSide::left));
  std::vector<Matrix> mats(4, Matrix::Identity(1, 1));
  mats[p2p->arrow_index("(-,+)")](0, 0) = Complex(0, 1);
  mats[p2p->arrow_index("(+,-)")](0, 0) = Complex(0, -1);
  UnitaryRepresentation rep2(p2p, HilbertFamily{{1, 1}}, mats);

  auto glued = glue_representations(un, {rep1, rep2});
  p.representations.push_back({"glued", glued});

  VectorField f1;
  f1.values = {det_vector(2, 23)};
  VectorField f2;
  f2.values = {Vector::Constant(1, Complex(1, 0)), Vector::Constant(1, Complex(0, 1))};
  VectorField glued_field = glue_vector_fields(*un, {f1, f2});
  p.vector_fields.push_back({"v", glued_field});
  p.kernels.push_back({"glued-kernel", kernel_from_representation(glued, glued_field)});
  return p;
}

inline std::vector<std::pair<std::string, Project>> builtin_corpus() {
  return {
      {"qubit.json", qubit_project()},     {"z2.json", group_project(2, 11)},
      {"z3.json", group_project(3, 13)},   {"z4.json", group_project(4, 17)},
      {"pair3.json", pair3_project()},     {"union.json", union_project()},
  };
}

}  // namespace grkhs::corpus_files
