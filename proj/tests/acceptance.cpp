// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in the checks themselves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "grkhs/applications.hpp"
#include "grkhs/reconstruction.hpp"
#include "grkhs/rkhs.hpp"

using namespace grkhs;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool passed = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && passed) {
      passed = false;
      detail = what;
    }
  }
};

int g_failures = 0;

void run(int number, const std::string& name, const std::function<void(Criterion&)>& body) {
  Criterion c{number, name};
  auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  std::printf("[%2d] %s  %s (%.1f ms)%s%s\n", number, c.passed ? "PASS" : "FAIL", name.c_str(),
              ms, c.detail.empty() ? "" : " - ", c.detail.c_str());
  if (!c.passed) ++g_failures;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------

void criterion_closed_form(Criterion& c) {
  std::mt19937_64 rng(1);
  auto start = Clock::now();
  GroupoidPtr g = corpus::two_point_groupoid();
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Complex lambda = corpus::random_unimodular(rng);
    Complex vp = corpus::random_vector(1, rng)(0);
    Complex vm = corpus::random_vector(1, rng)(0);
    GroupoidKernel k = kernel_from_representation(corpus::qubit_representation(g, lambda),
                                                  corpus::qubit_field(vp, vm));
    worst = std::max(worst, max_abs(k.values() - corpus::qubit_kernel_closed_form(lambda, vp, vm)));
  }
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  c.require(worst <= 1e-12, "entry deviation " + std::to_string(worst));
  c.require(seconds < 1.0, "took " + std::to_string(seconds) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "20 draws, max entry deviation %.2e", worst);
  c.detail = buf;
}

void criterion_orthonormal_pair(Criterion& c) {
  std::mt19937_64 rng(2);
  GroupoidPtr g = corpus::two_point_groupoid();
  std::vector<std::pair<Complex, Complex>> draws;
  for (int trial = 0; trial < 10; ++trial)
    draws.emplace_back(corpus::random_vector(1, rng)(0), corpus::random_vector(1, rng)(0));
  draws.emplace_back(Complex(0, 0), Complex(1.5, -0.5));  // vanishing v+
  draws.emplace_back(Complex(-0.25, 2), Complex(0, 0));   // vanishing v-

  for (const auto& [vp, vm] : draws) {
    Complex lambda = corpus::random_unimodular(rng);
    GroupoidKernel kernel = kernel_from_representation(corpus::qubit_representation(g, lambda),
                                                       corpus::qubit_field(vp, vm));
    RkhsModel model = RkhsModel::build(kernel);
    c.require(model.rank() == 2, "rank " + std::to_string(model.rank()));
    c.require(model.fiber_ranks() == std::vector<int>{1, 1}, "fiber ranks not 1+1");
    c.require(model.fiber_decomposition_check(1e-12).passed, "fiber decomposition fails");

    Vector plus_values(4), minus_values(4);
    plus_values << std::conj(vp), lambda * std::conj(vm), 0, 0;
    minus_values << 0, 0, std::conj(lambda) * std::conj(vp), std::conj(vm);
    RkhsFunction phi_plus = model.coefficients_from_values(plus_values);
    RkhsFunction phi_minus = model.coefficients_from_values(minus_values);

    c.require(std::abs(model.inner_product(phi_plus, phi_plus) - Complex(1)) <= 1e-12, "<+,+> != 1");
    c.require(std::abs(model.inner_product(phi_minus, phi_minus) - Complex(1)) <= 1e-12, "<-,-> != 1");
    c.require(std::abs(model.inner_product(phi_plus, phi_minus)) <= 1e-12, "<+,-> != 0");
    c.require(std::abs(model.inner_product(phi_minus, phi_plus)) <= 1e-12, "<-,+> != 0");
  }
  c.detail = std::to_string(draws.size()) + " draws incl. vanishing components";
}

void criterion_psd_suite(Criterion& c) {
  for (const auto& [name, kernel] : corpus::standard_kernels()) {
    SpectralReport psd = check_positive_definite(kernel, 1e-9);
    c.require(psd.passed, name + ": min eigenvalue " + std::to_string(psd.min_eigenvalue));
  }
}

void criterion_invariance_suite(Criterion& c) {
  for (const auto& [name, kernel] : corpus::standard_kernels())
    c.require(check_invariance(kernel, 1e-12).passed, name + ": invariance fails");

  // a 1e-3 perturbation must be flagged with a witness that itself violates
  auto instance = corpus::representation_instances().front();  // qubit
  const FiniteGroupoid& g = *instance.kernel.groupoid();
  int alpha = g.arrow_index("(-,+)");
  Matrix perturbed = instance.kernel.values();
  perturbed(alpha, alpha) += 1e-3;
  InvarianceReport report = check_invariance(GroupoidKernel(instance.kernel.groupoid(), perturbed),
                                             1e-12);
  c.require(!report.passed, "perturbation missed");
  c.require(report.witness_chi >= 0, "no witness reported");
  if (report.witness_chi >= 0) {
    int chi = report.witness_chi, gamma = report.witness_gamma;
    c.require(g.range(chi) == g.range(gamma), "witness pair not in a common fiber");
    int shifted = g.compose(g.inverse(gamma), chi);
    double dev =
        std::abs(perturbed(chi, gamma) - perturbed(shifted, g.unit(g.range(shifted))));
    c.require(dev > 1e-12, "witness does not violate the identity");
  }
}

void criterion_round_trip(Criterion& c) {
  double worst = 0.0;
  for (const auto& [name, kernel] : corpus::standard_kernels()) {
    RoundTripReport rt = round_trip(kernel, 1e-9);
    worst = std::max(worst, rt.max_deviation);
    c.require(rt.passed, name + ": deviation " + std::to_string(rt.max_deviation));
  }

  // 100-arrow carrier within the time budget
  std::mt19937_64 rng(3);
  GroupoidPtr big = corpus::pair_n(10);
  auto rep = left_regular_representation(big, counting_haar(*big, HaarSide::left));
  GroupoidKernel kernel =
      kernel_from_representation(rep, corpus::random_field(*big, rep.spaces(), rng));
  auto start = Clock::now();
  RoundTripReport rt = round_trip(kernel, 1e-9);
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  c.require(rt.passed, "100-arrow deviation " + std::to_string(rt.max_deviation));
  c.require(seconds < 5.0, "100-arrow round trip took " + std::to_string(seconds) + " s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "corpus max dev %.2e; 100 arrows in %.2f s", worst, seconds);
  c.detail = buf;
}

void criterion_sum_product_identities(Criterion& c) {
  std::mt19937_64 rng(4);

  struct Pair {
    std::string name;
    UnitaryRepresentation a, b;
    VectorField va, vb;
  };
  std::vector<Pair> pairs;
  {
    GroupoidPtr g = corpus::two_point_groupoid();
    pairs.push_back({"qubit pair",
                     corpus::qubit_representation(g, corpus::random_unimodular(rng)),
                     corpus::qubit_representation(g, corpus::random_unimodular(rng)),
                     corpus::qubit_field({1, 0}, {2, 0}), corpus::qubit_field({0, 1}, {1, -1})});
  }
  {
    GroupoidPtr g = corpus::z_n(3);
    auto a = left_regular_representation(g, counting_haar(*g, HaarSide::left));
    auto b = trivial_representation(g, 2);
    VectorField va = corpus::random_field(*g, a.spaces(), rng);
    VectorField vb = corpus::random_field(*g, b.spaces(), rng);
    pairs.push_back({"z3 pair", std::move(a), std::move(b), std::move(va), std::move(vb)});
  }
  {
    GroupoidPtr g = corpus::pair_n(3);
    auto a = trivial_representation(g, 1);
    auto b = right_regular_representation(g, counting_haar(*g, HaarSide::right));
    VectorField va = corpus::random_field(*g, a.spaces(), rng);
    VectorField vb = corpus::random_field(*g, b.spaces(), rng);
    pairs.push_back({"pair3 pair", std::move(a), std::move(b), std::move(va), std::move(vb)});
  }

  for (const auto& p : pairs) {
    GroupoidKernel ka = kernel_from_representation(p.a, p.va);
    GroupoidKernel kb = kernel_from_representation(p.b, p.vb);
    GroupoidKernel sum =
        kernel_from_representation(direct_sum({p.a, p.b}), direct_sum_fields({p.va, p.vb}));
    GroupoidKernel prod = kernel_from_representation(tensor_product({p.a, p.b}),
                                                     tensor_product_fields({p.va, p.vb}));
    double sum_dev = max_abs(sum.values() - (ka.values() + kb.values()));
    double prod_dev = max_abs(prod.values() - ka.values().cwiseProduct(kb.values()));
    c.require(sum_dev <= 1e-12, p.name + ": sum identity deviation " + std::to_string(sum_dev));
    c.require(prod_dev <= 1e-12,
              p.name + ": product identity deviation " + std::to_string(prod_dev));
  }

  // block assembly across a disjoint union, exact
  FiniteGroupoid z2 = group_to_groupoid(cyclic_group(2));
  FiniteGroupoid p2 = pair_groupoid({"+", "-"});
  GroupoidPtr un = std::make_shared<FiniteGroupoid>(disjoint_union({z2, p2}));
  auto z2p = std::make_shared<FiniteGroupoid>(std::move(z2));
  auto p2p = std::make_shared<FiniteGroupoid>(std::move(p2));
  auto rep1 = left_regular_representation(z2p, counting_haar(*z2p, HaarSide::left));
  auto rep2 = corpus::qubit_representation(p2p, corpus::random_unimodular(rng));
  VectorField f1 = corpus::random_field(*z2p, rep1.spaces(), rng);
  VectorField f2 = corpus::qubit_field({1, 1}, {0, -2});
  GroupoidKernel k1 = kernel_from_representation(rep1, f1);
  GroupoidKernel k2 = kernel_from_representation(rep2, f2);
  GroupoidKernel glued = kernel_from_representation(glue_representations(un, {rep1, rep2}),
                                                    glue_vector_fields(*un, {f1, f2}));
  bool exact = glued.values().block(0, 0, 2, 2) == k1.values() &&
               glued.values().block(2, 2, 4, 4) == k2.values() &&
               max_abs(glued.values().block(0, 2, 2, 4)) == 0.0 &&
               max_abs(glued.values().block(2, 0, 4, 2)) == 0.0;
  c.require(exact, "union kernel is not the exact block assembly");
}

void criterion_reproducing_and_parseval(Criterion& c) {
  std::mt19937_64 rng(5);
  for (const auto& [name, kernel] : corpus::standard_kernels()) {
    RkhsModel model = RkhsModel::build(kernel);
    for (int trial = 0; trial < 100; ++trial) {
      RkhsFunction f{corpus::random_vector(model.generator_count(), rng)};
      c.require(model.reproducing_check(f, 1e-12).passed(), name + ": reproducing identity");
    }

    std::vector<RkhsFunction> basis = model.onb_functions();
    c.require(model.parseval_check(basis, 1e-9).passed, name + ": basis is not a frame");
    if (model.rank() >= 2) {
      for (std::size_t drop = 0; drop < basis.size(); ++drop) {
        std::vector<RkhsFunction> subset;
        for (std::size_t j = 0; j < basis.size(); ++j)
          if (j != drop) subset.push_back(basis[j]);
        c.require(!model.parseval_check(subset, 1e-9).passed,
                  name + ": proper subset still passes");
      }
    }
  }
}

void criterion_embedding_structure(Criterion& c) {
  std::mt19937_64 rng(6);
  for (const auto& instance : corpus::representation_instances()) {
    RkhsModel model = RkhsModel::build(instance.kernel);
    FeatureMap features = feature_map(instance.representation, instance.field);
    const int ambient = static_cast<int>(features.columns.rows());
    const int arrows = instance.kernel.size();

    for (int trial = 0; trial < 100; ++trial) {
      Vector w = corpus::random_vector(ambient, rng);
      EmbeddedFunction tw = embedding_T(instance.representation, instance.field, w, model);
      c.require(tw.rkhs_norm <= w.norm() * (1.0 + 1e-10) + 1e-10,
                instance.id + ": |Tw| > |w|");
    }
    for (int trial = 0; trial < 100; ++trial) {
      Vector w = features.columns * corpus::random_vector(arrows, rng);
      EmbeddedFunction tw = embedding_T(instance.representation, instance.field, w, model);
      c.require(std::abs(tw.rkhs_norm - w.norm()) <= 1e-12 * std::max(1.0, w.norm()),
                instance.id + ": T not isometric on the feature span");
    }
    for (int gamma = 0; gamma < arrows; ++gamma) {
      RkhsFunction coeffs = model.coefficients_from_values(instance.kernel.generator(gamma));
      Vector embedded = embedding_S(features, coeffs);
      c.require((embedded - features.columns.col(gamma)).cwiseAbs().maxCoeff() <= 1e-9,
                instance.id + ": S(K_gamma) != F(gamma)");
    }
  }
}

void criterion_convolution_oracle(Criterion& c) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int n : {2, 3, 4}) {
    GroupoidPtr g = corpus::z_n(n);
    for (int trial = 0; trial < 10; ++trial) {
      Vector f = corpus::random_vector(n, rng);
      GroupoidKernel k = convolution_kernel(g, f);
      for (int h = 0; h < n; ++h)
        for (int gg = 0; gg < n; ++gg) {
          Complex oracle = 0.0;
          for (int tau = 0; tau < n; ++tau)
            oracle += f(g->compose(g->inverse(gg), tau)) *
                      std::conj(f(g->compose(g->inverse(h), tau)));
          worst = std::max(worst, std::abs(k(h, gg) - oracle));
          // group translation identity
          double shift_dev =
              std::abs(k(h, gg) - k(g->compose(g->inverse(gg), h), g->unit(0)));
          c.require(shift_dev <= 1e-12, "translation identity violated on Z" + std::to_string(n));
        }
    }
  }
  c.require(worst <= 1e-12, "oracle deviation " + std::to_string(worst));
  char buf[64];
  std::snprintf(buf, sizeof buf, "30 random functions, max deviation %.2e", worst);
  c.detail = buf;
}

void criterion_regular_representations(Criterion& c) {
  for (const auto& [name, g] : corpus::standard_groupoids()) {
    auto left = left_regular_representation(g, counting_haar(*g, HaarSide::left));
    auto right = right_regular_representation(g, counting_haar(*g, HaarSide::right));
    c.require(validate_representation(left, 1e-12).passed(), name + ": left regular fails");
    c.require(validate_representation(right, 1e-12).passed(), name + ": right regular fails");
    for (const auto& rep : {left, right})
      for (int a = 0; a < g->arrow_count(); ++a) {
        const Matrix& m = rep.matrix(a);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          int ones = 0;
          for (Eigen::Index j = 0; j < m.cols(); ++j) {
            c.require(m(i, j) == Complex(0) || m(i, j) == Complex(1),
                      name + ": entry not 0/1");
            if (m(i, j) == Complex(1)) ++ones;
          }
          c.require(ones == 1, name + ": row is not a permutation row");
        }
      }
  }
}

void criterion_applications(Criterion& c) {
  std::mt19937_64 rng(8);
  double worst_gap = 0.0;
  int instances = 0;

  for (const auto& [name, kernel] : corpus::standard_kernels()) {
    const FiniteGroupoid& g = *kernel.groupoid();
    std::vector<std::string> nodes;
    for (int a = 0; a < std::min(8, g.arrow_count()); ++a) nodes.push_back(g.arrow_name(a));
    if (nodes.size() < 2) continue;
    DistanceMatrix d = distance_matrix(kernel, nodes, 1e-9);

    c.require(d.d == d.d.transpose(), name + ": not symmetric");
    c.require(d.d.diagonal().cwiseAbs().maxCoeff() == 0.0, name + ": diagonal not zero");
    for (int i = 0; i < d.size(); ++i)
      for (int j = 0; j < d.size(); ++j)
        for (int k = 0; k < d.size(); ++k)
          c.require(d.d(i, j) <= d.d(i, k) + d.d(k, j) + 1e-9, name + ": triangle inequality");

    // brute-force oracle, independent of solve_tsp
    std::vector<int> perm(d.size());
    std::iota(perm.begin(), perm.end(), 0);
    double optimum = std::numeric_limits<double>::infinity();
    do {
      optimum = std::min(optimum, tour_length(d, perm));
    } while (std::next_permutation(perm.begin() + 1, perm.end()));

    Tour heuristic = solve_tsp(d, TspMode::heuristic);
    c.require(heuristic.length >= optimum - 1e-12, name + ": heuristic beats the optimum");
    Tour exact = solve_tsp(d, TspMode::exact);
    c.require(std::abs(exact.length - optimum) <= 1e-12, name + ": exact misses the optimum");
    worst_gap = std::max(worst_gap, heuristic.length - optimum);
    ++instances;
  }

  // deterministic ranking across repeated runs
  GroupoidPtr g = corpus::z_n(3);
  Vector delta = Vector::Zero(3);
  delta(g->unit(0)) = 1.0;
  GroupoidKernel identity = convolution_kernel(g, delta);
  GroupoidKernel constant(g, Matrix::Ones(3, 3));
  std::vector<std::string> nodes{"g0", "g1", "g2"};
  auto first = select_kernel({identity, constant}, nodes, KernelObjective::min_tour);
  auto spread_first = select_kernel({identity, constant}, nodes, KernelObjective::max_min_distance);
  for (int run = 1; run < 5; ++run) {
    auto again = select_kernel({identity, constant}, nodes, KernelObjective::min_tour);
    auto spread = select_kernel({identity, constant}, nodes, KernelObjective::max_min_distance);
    for (std::size_t i = 0; i < first.size(); ++i) {
      c.require(again[i].index == first[i].index && again[i].objective == first[i].objective,
                "min_tour ranking drifts");
      c.require(spread[i].index == spread_first[i].index &&
                    spread[i].objective == spread_first[i].objective,
                "max_min_distance ranking drifts");
    }
  }
  (void)rng;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d tsp instances, max heuristic gap %.2e", instances, worst_gap);
  c.detail = buf;
}

}  // namespace

int main() {
  run(1, "two-point kernel matches its closed form", criterion_closed_form);
  run(2, "orthonormal spanning pair of the two-point model", criterion_orthonormal_pair);
  run(3, "positive semidefiniteness across the corpus", criterion_psd_suite);
  run(4, "translation invariance and perturbation witness", criterion_invariance_suite);
  run(5, "kernel -> representation -> kernel round trip", criterion_round_trip);
  run(6, "direct-sum / tensor-product / union identities", criterion_sum_product_identities);
  run(7, "reproducing property and Parseval frames", criterion_reproducing_and_parseval);
  run(8, "contraction and isometric embedding structure", criterion_embedding_structure);
  run(9, "group convolution inner-product oracle", criterion_convolution_oracle);
  run(10, "regular representations are 0/1 permutations", criterion_regular_representations);
  run(11, "distance matrices, tours, and kernel selection", criterion_applications);

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all 11 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criteria FAILED\n", g_failures);
  return 1;
}
