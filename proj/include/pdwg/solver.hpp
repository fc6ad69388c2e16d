#ifndef PDWG_SOLVER_HPP
#define PDWG_SOLVER_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdwg/sparse.hpp"

namespace pdwg {

enum class SolverMethod { Direct, Iterative };

struct SolverConfig {
  SolverMethod method = SolverMethod::Direct;
  double tolerance = 1e-12;     // iterative stopping tolerance (scaled residual)
  int max_iterations = 0;       // 0 -> 50 * sqrt(dimension)
};

struct SolveReport {
  std::vector<double> solution;
  double relative_residual = 0.0;  // ||Ax-b|| / ||b||, absolute when b = 0
  SolverMethod method = SolverMethod::Direct;
  int iterations = 0;              // 0 for the direct method
  double seconds = 0.0;
};

std::string to_string(SolverMethod m);

/// Sparse LU factorization of a symmetric indefinite matrix, reusable for
/// several right-hand sides of the same system.
class DirectFactorization {
public:
  explicit DirectFactorization(const SparseMatrix& A);
  ~DirectFactorization();
  DirectFactorization(DirectFactorization&&) noexcept;
  DirectFactorization& operator=(DirectFactorization&&) noexcept;

  std::vector<double> solve(const std::vector<double>& b) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Solves A x = b. The direct path factors with sparse LU and throws a
/// singular-matrix error when a zero pivot is hit; the iterative path runs
/// diagonally scaled MINRES and accepts an optional initial guess.
SolveReport solve(const SparseMatrix& A, const std::vector<double>& b,
                  const SolverConfig& config = {},
                  const std::optional<std::vector<double>>& initial_guess = {});

}  // namespace pdwg

#endif
