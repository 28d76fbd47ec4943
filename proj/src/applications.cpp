#include "grkhs/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace grkhs {

double kernel_distance(const GroupoidKernel& kernel, int x, int y, double tol) {
  const int n = kernel.size();
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw LookupError("kernel_distance: index out of range");
  double radicand = kernel(x, x).real() - 2.0 * kernel(x, y).real() + kernel(y, y).real();
  if (radicand < -tol)
    throw ArgumentError("kernel_distance: negative radicand " + std::to_string(radicand) +
                        ", kernel is not positive semidefinite");
  return std::sqrt(std::max(0.0, radicand));
}

DistanceMatrix distance_matrix(const GroupoidKernel& kernel,
                               const std::vector<std::string>& nodes, double tol) {
  const FiniteGroupoid& g = *kernel.groupoid();
  DistanceMatrix out;
  out.labels = nodes;
  std::vector<int> idx;
  idx.reserve(nodes.size());
  for (const auto& label : nodes) idx.push_back(g.arrow_index(label));

  const int n = static_cast<int>(nodes.size());
  out.d = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dist = kernel_distance(kernel, idx[i], idx[j], tol);
      out.d(i, j) = dist;
      out.d(j, i) = dist;
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (out.d(i, j) > out.d(i, k) + out.d(k, j) + tol)
          throw ArgumentError("distance_matrix: triangle inequality fails at ('" + nodes[i] +
                              "','" + nodes[j] + "','" + nodes[k] + "')");
  return out;
}

double tour_length(const DistanceMatrix& d, const std::vector<int>& order) {
  const int n = d.size();
  if (static_cast<int>(order.size()) != n)
    throw ArgumentError("tour_length: tour must visit every node exactly once");
  std::vector<bool> seen(n, false);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v])
      throw ArgumentError("tour_length: repeated or out-of-range node in tour");
    seen[v] = true;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += d.d(order[i], order[(i + 1) % n]);
  return total;
}

namespace {

std::vector<int> nearest_neighbor_tour(const DistanceMatrix& d, int start) {
  const int n = d.size();
  std::vector<int> tour{start};
  std::vector<bool> visited(n, false);
  visited[start] = true;
  for (int step = 1; step < n; ++step) {
    int current = tour.back(), best = -1;
    double best_dist = 0.0;
    for (int j = 0; j < n; ++j) {
      if (visited[j]) continue;
      if (best < 0 || d.d(current, j) < best_dist) {  // ties keep the lowest index
        best = j;
        best_dist = d.d(current, j);
      }
    }
    visited[best] = true;
    tour.push_back(best);
  }
  return tour;
}

// First-improvement 2-opt with a deterministic scan order.
void two_opt(const DistanceMatrix& d, std::vector<int>& tour) {
  const int n = d.size();
  if (n < 4) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 1; i < n - 1 && !improved; ++i) {
      for (int j = i + 1; j < n && !improved; ++j) {
        int a = tour[i - 1], b = tour[i], c = tour[j], e = tour[(j + 1) % n];
        double delta = d.d(a, c) + d.d(b, e) - d.d(a, b) - d.d(c, e);
        if (delta < -1e-12) {
          std::reverse(tour.begin() + i, tour.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
}

std::vector<int> brute_force_tour(const DistanceMatrix& d) {
  const int n = d.size();
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);

  std::vector<int> best, candidate(n);
  double best_length = 0.0;
  candidate[0] = 0;
  do {
    // each undirected tour appears once: fix node 0 and orientation
    if (n > 2 && rest.front() > rest.back()) continue;
    std::copy(rest.begin(), rest.end(), candidate.begin() + 1);
    double length = tour_length(d, candidate);
    if (best.empty() || length < best_length - 1e-15 ||
        (std::abs(length - best_length) <= 1e-15 && candidate < best)) {
      best = candidate;
      best_length = length;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace

Tour solve_tsp(const DistanceMatrix& d, TspMode mode, std::uint64_t seed, int restarts) {
  const int n = d.size();
  if (n < 2) throw ArgumentError("solve_tsp: at least two nodes required");

  Tour tour;
  if (mode == TspMode::exact) {
    if (n > 10)
      throw ArgumentError("solve_tsp: exact mode is limited to 10 nodes (got " +
                          std::to_string(n) + "); use heuristic mode");
    tour.order = brute_force_tour(d);
  } else {
    tour.order = nearest_neighbor_tour(d, 0);
    two_opt(d, tour.order);
    if (restarts > 0) {
      std::mt19937_64 rng(seed);
      double best_length = tour_length(d, tour.order);
      for (int r = 0; r < restarts; ++r) {
        std::vector<int> candidate(n);
        std::iota(candidate.begin(), candidate.end(), 0);
        std::shuffle(candidate.begin(), candidate.end(), rng);
        two_opt(d, candidate);
        double length = tour_length(d, candidate);
        if (length < best_length - 1e-15) {
          best_length = length;
          tour.order = candidate;
        }
      }
    }
  }
  tour.length = tour_length(d, tour.order);
  return tour;
}

std::vector<RankedCandidate> select_kernel(const std::vector<GroupoidKernel>& candidates,
                                           const std::vector<std::string>& nodes,
                                           KernelObjective objective) {
  if (candidates.empty()) throw ArgumentError("select_kernel: empty candidate list");
  if (nodes.size() < 2) throw ArgumentError("select_kernel: at least two nodes required");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    SpectralReport psd = check_positive_definite(candidates[i]);
    if (!psd.passed)
      throw ArgumentError("select_kernel: candidate " + std::to_string(i) +
                          " is not positive semidefinite");
  }

  std::vector<RankedCandidate> ranking;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    DistanceMatrix d = distance_matrix(candidates[i], nodes);
    double objective_value = 0.0;
    if (objective == KernelObjective::min_tour) {
      TspMode mode = d.size() <= 10 ? TspMode::exact : TspMode::heuristic;
      objective_value = solve_tsp(d, mode).length;
    } else {
      double min_dist = 0.0;
      bool first = true;
      for (int a = 0; a < d.size(); ++a)
        for (int b = a + 1; b < d.size(); ++b) {
          if (first || d.d(a, b) < min_dist) min_dist = d.d(a, b);
          first = false;
        }
      objective_value = min_dist;
    }
    ranking.push_back({static_cast<int>(i), objective_value});
  }

  std::stable_sort(ranking.begin(), ranking.end(),
                   [&](const RankedCandidate& a, const RankedCandidate& b) {
                     if (objective == KernelObjective::min_tour)
                       return a.objective < b.objective;
                     return a.objective > b.objective;
                   });
  return ranking;
}

}  // namespace grkhs
