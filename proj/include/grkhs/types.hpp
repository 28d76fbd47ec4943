#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace grkhs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Inner product of coordinate vectors, anti-linear in the second argument:
/// inner(x, y) = sum_i x_i * conj(y_i).
inline Complex inner(const Vector& x, const Vector& y) { return y.dot(x); }

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed data: dangling identifiers, missing components, shape mismatches.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// A well-formed call with an unusable argument (empty set, wrong groupoid,
/// nonpositive coefficient, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Unknown base-point or arrow identifier.
class LookupError : public Error {
public:
  using Error::Error;
};

/// Product requested for a pair of arrows that do not compose.
class ComposabilityError : public Error {
public:
  using Error::Error;
};

/// One violated rule with a human-readable witness.
struct Violation {
  std::string rule;
  std::string witness;
  double deviation = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
  std::string summary() const;
};

namespace defaults {
inline constexpr double representation_tol = 1e-12;
inline constexpr double haar_tol = 1e-12;
inline constexpr double psd_tol = 1e-9;
inline constexpr double invariance_tol = 1e-12;
inline constexpr double rank_tol = 1e-10;
inline constexpr double reconstruction_tol = 1e-9;
inline constexpr double distance_tol = 1e-9;
}  // namespace defaults

}  // namespace grkhs
