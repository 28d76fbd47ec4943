#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grkhs/kernel.hpp"
#include "grkhs/types.hpp"

namespace grkhs {

/// Symmetric nonnegative distances with zero diagonal over a labeled node
/// set; construction from a PSD kernel guarantees the triangle inequality
/// up to rounding, and it is verified.
struct DistanceMatrix {
  std::vector<std::string> labels;
  RealMatrix d;

  int size() const { return static_cast<int>(labels.size()); }
};

/// Cyclic tour; order is a permutation of node indices into the distance
/// matrix labels.
struct Tour {
  std::vector<int> order;
  double length = 0.0;
};

enum class TspMode { exact, heuristic };

enum class KernelObjective { min_tour, max_min_distance };

struct RankedCandidate {
  int index = -1;
  double objective = 0.0;
};

/// d(x, y) = sqrt(K(x,x) - 2 Re K(x,y) + K(y,y)); the real part realizes
/// the real-valued formula for Hermitian kernels and equals the norm
/// distance of the feature embedding. A radicand below -tol is a PSD
/// violation; tiny negatives are clamped to zero.
double kernel_distance(const GroupoidKernel& kernel, int x, int y,
                       double tol = defaults::distance_tol);

/// Pairwise distances over a subset of arrow labels. Symmetry and zero
/// diagonal hold by construction; the triangle inequality is verified
/// within tol after construction.
DistanceMatrix distance_matrix(const GroupoidKernel& kernel,
                               const std::vector<std::string>& nodes,
                               double tol = defaults::distance_tol);

/// Cyclic length including the closing edge; the order must visit every
/// node exactly once.
double tour_length(const DistanceMatrix& d, const std::vector<int>& order);

/// exact: brute force over (N-1)!/2 tours, N <= 10, lexicographically
/// smallest optimal tour. heuristic: nearest neighbor from the first label
/// (ties to the lowest index), then first-improvement 2-opt; optional
/// seeded random restarts keep the best tour found.
Tour solve_tsp(const DistanceMatrix& d, TspMode mode, std::uint64_t seed = 0,
               int restarts = 0);

/// Deterministic ranking of PSD kernels over common node labels. min_tour
/// ranks by tour length ascending (exact for N <= 10, heuristic above);
/// max_min_distance ranks by the smallest off-diagonal distance,
/// descending. Ties keep candidate order.
std::vector<RankedCandidate> select_kernel(const std::vector<GroupoidKernel>& candidates,
                                           const std::vector<std::string>& nodes,
                                           KernelObjective objective);

}  // namespace grkhs
