#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "grkhs/kernel.hpp"

using namespace grkhs;

namespace {
double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
}

TEST_CASE("qubit kernel matches the closed form") {
  auto g = corpus::two_point_groupoid();
  Complex lambda(0, 1), vp(1, 0), vm(2, 0);
  GroupoidKernel k = kernel_from_representation(corpus::qubit_representation(g, lambda),
                                                corpus::qubit_field(vp, vm));
  Matrix expected = corpus::qubit_kernel_closed_form(lambda, vp, vm);
  CHECK(max_abs(k.values() - expected) < 1e-15);

  // the numeric instance: K(a_inv, e(+)) = 2i and K(e(+), a_inv) = -2i
  int e_plus = g->arrow_index("(+,+)"), a_inv = g->arrow_index("(+,-)");
  CHECK(std::abs(k(a_inv, e_plus) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(k(e_plus, a_inv) - Complex(0, -2)) < 1e-15);
}

TEST_CASE("kernel values agree with the embedded feature Gram") {
  std::mt19937_64 rng(42);
  auto g = corpus::pair_n(3);
  auto rep = left_regular_representation(g, counting_haar(*g, HaarSide::left));
  VectorField field = corpus::random_field(*g, rep.spaces(), rng);
  GroupoidKernel k = kernel_from_representation(rep, field);
  FeatureMap features = feature_map(rep, field);
  Matrix gram = features.columns.adjoint() * features.columns;
  CHECK(max_abs(k.values() - gram) < 1e-12);
}

TEST_CASE("trivial-representation kernels are constant per fiber block") {
  // identity matrices leave the field value in place, so the per-fiber
  // constancy requires the same vector at every base point
  std::mt19937_64 rng(3);
  auto g = corpus::pair_n(3);
  auto rep = trivial_representation(g, 2);
  Vector h = corpus::random_vector(2, rng);
  VectorField field;
  field.values.assign(3, h);
  GroupoidKernel k = kernel_from_representation(rep, field);
  double norm_sq = h.squaredNorm();
  for (int x = 0; x < g->base_count(); ++x)
    for (int chi : g->arrows_by_range()[x])
      for (int gamma : g->arrows_by_range()[x])
        CHECK(std::abs(k(chi, gamma) - Complex(norm_sq)) < 1e-12);
}

TEST_CASE("positive definiteness check") {
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  SpectralReport bad = check_positive_definite(flip);
  CHECK_FALSE(bad.passed);
  CHECK(bad.min_eigenvalue == doctest::Approx(-1.0));

  Matrix skew(2, 2);
  skew << 1, Complex(0, 1), Complex(0, -0.5), 1;
  CHECK_THROWS_AS(check_positive_definite(skew), ArgumentError);

  auto g = corpus::two_point_groupoid();
  GroupoidKernel qubit = kernel_from_representation(
      corpus::qubit_representation(g, Complex(0, 1)), corpus::qubit_field({1, 0}, {2, 0}));
  SpectralReport ok = check_positive_definite(qubit);
  CHECK(ok.passed);
  CHECK(ok.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(ok.max_eigenvalue == doctest::Approx(5.0));  // |v+|^2 + |v-|^2 per fiber
}

TEST_CASE("every corpus kernel is PSD and translation invariant") {
  for (const auto& named : corpus::standard_kernels()) {
    const std::string& name = named.id;
    const GroupoidKernel& kernel = named.kernel;
    CAPTURE(name);
    CHECK(check_positive_definite(kernel, 1e-9).passed);
    InvarianceReport inv = check_invariance(kernel, 1e-12);
    CHECK(inv.passed);
  }
}

TEST_CASE("invariance check catches a perturbed entry with a real witness") {
  auto g = corpus::two_point_groupoid();
  GroupoidKernel k = kernel_from_representation(
      corpus::qubit_representation(g, Complex(0, 1)), corpus::qubit_field({1, 0}, {2, 0}));

  int alpha = g->arrow_index("(-,+)");
  Matrix perturbed = k.values();
  perturbed(alpha, alpha) += 1e-3;
  InvarianceReport report = check_invariance(GroupoidKernel(g, perturbed), 1e-12);
  CHECK_FALSE(report.passed);
  CHECK(report.max_deviation == doctest::Approx(1e-3));
  // the witness pair must itself violate the identity
  int chi = report.witness_chi, gamma = report.witness_gamma;
  REQUIRE(chi >= 0);
  REQUIRE(g->range(chi) == g->range(gamma));
  int shifted = g->compose(g->inverse(gamma), chi);
  CHECK(std::abs(perturbed(chi, gamma) - perturbed(shifted, g->unit(g->range(shifted)))) > 1e-12);
}

TEST_CASE("invariance check flags nonzero cross-fiber entries") {
  auto g = corpus::two_point_groupoid();
  Matrix values = Matrix::Zero(4, 4);
  values(0, 2) = 1e-3;  // e(+) row, a column: different range fibers
  InvarianceReport report = check_invariance(GroupoidKernel(g, values), 1e-12);
  CHECK_FALSE(report.passed);
  CHECK(report.detail.find("cross-fiber") != std::string::npos);
}

TEST_CASE("convolution kernel on Z3 with a delta is the identity") {
  auto g = corpus::z_n(3);
  Vector delta = Vector::Zero(3);
  delta(g->unit(0)) = 1.0;
  GroupoidKernel k = convolution_kernel(g, delta);
  CHECK(max_abs(k.values() - Matrix::Identity(3, 3)) < 1e-15);

  GroupoidKernel zero = convolution_kernel(g, Vector::Zero(3));
  CHECK(max_abs(zero.values()) == 0.0);

  CHECK_THROWS_AS(convolution_kernel(corpus::pair_n(2), Vector::Zero(4)), ArgumentError);
}

TEST_CASE("convolution kernel on Z2 matches the frozen direct sums") {
  auto g = corpus::z_n(2);
  Vector f(2);
  f << Complex(1, 0), Complex(2, 0);
  GroupoidKernel k = convolution_kernel(g, f);
  // direct summation: K(e,e) = 1*1 + 2*2 = 5, K(e,a) = 1*2 + 2*1 = 4
  CHECK(std::abs(k(0, 0) - Complex(5)) < 1e-15);
  CHECK(std::abs(k(1, 1) - Complex(5)) < 1e-15);
  CHECK(std::abs(k(0, 1) - Complex(4)) < 1e-15);
  CHECK(std::abs(k(1, 0) - Complex(4)) < 1e-15);
}

TEST_CASE("convolution kernel equals the shifted-function inner products") {
  // independent oracle: K(h,g) = sum_tau f(inv(g) tau) conj(f(inv(h) tau)) w
  std::mt19937_64 rng(99);
  for (int n : {2, 3, 4}) {
    auto g = corpus::z_n(n);
    Vector f = corpus::random_vector(n, rng);
    double weight = 0.5;
    GroupoidKernel k = convolution_kernel(g, f, weight);
    for (int h = 0; h < n; ++h)
      for (int gg = 0; gg < n; ++gg) {
        Complex expected = 0.0;
        for (int tau = 0; tau < n; ++tau)
          expected += f(g->compose(g->inverse(gg), tau)) *
                      std::conj(f(g->compose(g->inverse(h), tau)));
        expected *= weight;
        CHECK(std::abs(k(h, gg) - expected) < 1e-12);
      }
    // group translation identity K(h,g) = K(inv(g) h, e)
    int e = g->unit(0);
    for (int h = 0; h < n; ++h)
      for (int gg = 0; gg < n; ++gg)
        CHECK(std::abs(k(h, gg) - k(g->compose(g->inverse(gg), h), e)) < 1e-12);
  }
}

TEST_CASE("convolution kernel agrees with the regular-representation route") {
  // second route: the left regular representation with constant weight w and
  // the field holding the rescaled coordinates sqrt(w) f
  std::mt19937_64 rng(55);
  auto g = corpus::z_n(4);
  Vector f = corpus::random_vector(4, rng);
  double weight = 2.25;

  GroupoidKernel direct = convolution_kernel(g, f, weight);

  HaarSystem haar{HaarSide::left, std::vector<double>(4, weight)};
  auto rep = left_regular_representation(g, haar);
  VectorField field;
  field.values = {std::sqrt(weight) * f};
  GroupoidKernel via_rep = kernel_from_representation(rep, field);

  CHECK(max_abs(direct.values() - via_rep.values()) < 1e-12);
}

TEST_CASE("character kernels from unimodular multiplicative maps") {
  auto g2 = corpus::pair_n(2);
  GroupoidKernel ones = character_kernel(g2, Vector::Ones(4));
  for (int x = 0; x < 2; ++x)
    for (int chi : g2->arrows_by_range()[x])
      for (int gamma : g2->arrows_by_range()[x]) CHECK(ones(chi, gamma) == Complex(1));

  auto g = corpus::two_point_groupoid();
  Vector k = corpus::pair_character(*g, {Complex(1, 0), Complex(0, 1)});  // k(a) = i
  int alpha = g->arrow_index("(-,+)");
  CHECK(std::abs(k(alpha) - Complex(0, 1)) < 1e-15);
  GroupoidKernel ck = character_kernel(g, k);
  for (int x = 0; x < 2; ++x)
    for (int chi : g->arrows_by_range()[x])
      for (int gamma : g->arrows_by_range()[x])
        CHECK(std::abs(ck(chi, gamma) - k(gamma) * std::conj(k(chi))) < 1e-15);
  CHECK(check_invariance(ck).passed);

  // derived facts for accepted maps: k(e(x)) = 1 and k(inv) = conj(k)
  for (int b = 0; b < g->base_count(); ++b) CHECK(std::abs(k(g->unit(b)) - Complex(1)) < 1e-15);
  for (int a = 0; a < g->arrow_count(); ++a)
    CHECK(std::abs(k(g->inverse(a)) - std::conj(k(a))) < 1e-15);

  Vector too_big = k;
  too_big(alpha) = Complex(2, 0);
  CHECK_THROWS_AS(character_kernel(g, too_big), ArgumentError);

  Vector not_multiplicative = k;
  not_multiplicative(alpha) = Complex(0, -1);  // breaks k(a)k(a_inv) = 1... still unimodular
  not_multiplicative(g->arrow_index("(+,-)")) = Complex(0, -1);
  CHECK_THROWS_AS(character_kernel(g, not_multiplicative), ArgumentError);
}

TEST_CASE("kernel combinations: identity, Schur powers, positivity") {
  auto kernels = corpus::standard_kernels();
  const GroupoidKernel& k = kernels.front().kernel;  // qubit

  GroupoidKernel same = kernel_combination({{1.0, k, 1}});
  CHECK(max_abs(same.values() - k.values()) == 0.0);

  GroupoidKernel squared = kernel_combination({{1.0, k, 2}});
  CHECK(max_abs(squared.values() - k.values().cwiseProduct(k.values())) == 0.0);
  CHECK(check_positive_definite(squared).passed);
  CHECK(check_invariance(squared).passed);

  CHECK_THROWS_AS(kernel_combination({{-1.0, k, 1}}), ArgumentError);
  CHECK_THROWS_AS(kernel_combination({{1.0, k, 0}}), ArgumentError);
  auto other = corpus::z_n(2);
  GroupoidKernel foreign(other, Matrix::Identity(2, 2));
  CHECK_THROWS_AS(kernel_combination({{1.0, k, 1}, {1.0, foreign, 1}}), ArgumentError);
}

TEST_CASE("sum of kernels equals the kernel of the direct sum") {
  auto g = corpus::two_point_groupoid();
  Complex l1(0, 1), l2(std::sqrt(0.5), std::sqrt(0.5));
  auto r1 = corpus::qubit_representation(g, l1);
  auto r2 = corpus::qubit_representation(g, l2);
  VectorField v1 = corpus::qubit_field({1, 0}, {2, 0});
  VectorField v2 = corpus::qubit_field({0, 1}, {1, -1});

  GroupoidKernel k1 = kernel_from_representation(r1, v1);
  GroupoidKernel k2 = kernel_from_representation(r2, v2);
  GroupoidKernel combined = kernel_combination({{1.0, k1, 1}, {1.0, k2, 1}});

  GroupoidKernel direct =
      kernel_from_representation(direct_sum({r1, r2}), direct_sum_fields({v1, v2}));
  CHECK(max_abs(direct.values() - combined.values()) < 1e-12);
}

TEST_CASE("product of kernels equals the kernel of the tensor product") {
  auto g = corpus::two_point_groupoid();
  Complex l1(0, 1), l2(std::sqrt(0.5), std::sqrt(0.5));
  Complex vp(1, 0), vm(2, 0), wp(0.5, -1), wm(1, 1);
  auto r1 = corpus::qubit_representation(g, l1);
  auto r2 = corpus::qubit_representation(g, l2);
  VectorField v = corpus::qubit_field(vp, vm);
  VectorField w = corpus::qubit_field(wp, wm);

  GroupoidKernel k1 = kernel_from_representation(r1, v);
  GroupoidKernel k2 = kernel_from_representation(r2, w);
  GroupoidKernel hadamard = kernel_product({k1, k2});
  GroupoidKernel tensor =
      kernel_from_representation(tensor_product({r1, r2}), tensor_product_fields({v, w}));
  CHECK(max_abs(tensor.values() - hadamard.values()) < 1e-12);

  // the hand-computed entry at (a_inv, e(+)): l1 l2 conj(v-) v+ conj(w-) w+
  int a_inv = g->arrow_index("(+,-)"), e_plus = g->arrow_index("(+,+)");
  Complex expected = l1 * l2 * std::conj(vm) * vp * std::conj(wm) * wp;
  CHECK(std::abs(hadamard(a_inv, e_plus) - expected) < 1e-12);

  // neutral element and absorbing element
  GroupoidKernel ones = character_kernel(g, Vector::Ones(4));
  CHECK(max_abs(kernel_product({k1, ones}).values() - k1.values()) == 0.0);
  GroupoidKernel zero(g, Matrix::Zero(4, 4));
  CHECK(max_abs(kernel_product({k1, zero}).values()) == 0.0);
}

TEST_CASE("glued union kernel is the block assembly of component kernels") {
  FiniteGroupoid z2 = group_to_groupoid(cyclic_group(2));
  FiniteGroupoid p2 = pair_groupoid({"+", "-"});
  GroupoidPtr un = std::make_shared<FiniteGroupoid>(disjoint_union({z2, p2}));
  auto z2p = std::make_shared<FiniteGroupoid>(std::move(z2));
  auto p2p = std::make_shared<FiniteGroupoid>(std::move(p2));

  auto rep1 = left_regular_representation(z2p, counting_haar(*z2p, HaarSide::left));
  auto rep2 = corpus::qubit_representation(p2p, Complex(0, 1));
  VectorField f1;
  f1.values = {Vector::Ones(2)};
  VectorField f2 = corpus::qubit_field({1, 0}, {2, 0});

  GroupoidKernel k1 = kernel_from_representation(rep1, f1);
  GroupoidKernel k2 = kernel_from_representation(rep2, f2);
  GroupoidKernel glued = kernel_from_representation(glue_representations(un, {rep1, rep2}),
                                                    glue_vector_fields(*un, {f1, f2}));

  // component blocks appear bit-exactly, zero across components
  const int n1 = z2p->arrow_count();
  CHECK(glued.values().block(0, 0, n1, n1) == k1.values());
  CHECK(glued.values().block(n1, n1, 4, 4) == k2.values());
  CHECK(max_abs(glued.values().block(0, n1, n1, 4)) == 0.0);
  CHECK(max_abs(glued.values().block(n1, 0, 4, n1)) == 0.0);
}
