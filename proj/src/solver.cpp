#include "pdwg/solver.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <umfpack.h>

namespace pdwg {

std::string to_string(SolverMethod m) {
  return m == SolverMethod::Direct ? "direct" : "iterative";
}

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& A) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(A.nnz());
  for (int row = 0; row < A.n; ++row)
    for (int k = A.row_ptr[row]; k < A.row_ptr[row + 1]; ++k)
      triplets.emplace_back(row, A.col_idx[k], A.values[k]);
  Eigen::SparseMatrix<double> M(A.n, A.n);
  M.setFromTriplets(triplets.begin(), triplets.end());
  M.makeCompressed();
  return M;
}

double relative_residual(const SparseMatrix& A, const std::vector<double>& x,
                         const std::vector<double>& b) {
  std::vector<double> r;
  A.multiply(x, r);
  for (int i = 0; i < A.n; ++i) r[i] -= b[i];
  const double bn = norm2(b);
  return bn > 0.0 ? norm2(r) / bn : norm2(r);
}

}  // namespace

// UMFPACK multifrontal LU with the symmetric pivoting strategy; the saddle
// systems assembled here factor an order of magnitude faster that way than
// with unsymmetric column orderings. Eigen's SparseLU stays as a fallback
// for inputs UMFPACK declines for resource reasons.
struct DirectFactorization::Impl {
  int n = 0;
  std::vector<int> Ap, Ai;  // CSR of a symmetric matrix doubles as its CSC
  std::vector<double> Ax;
  void* numeric = nullptr;
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>,
                                  Eigen::COLAMDOrdering<int>>> fallback;
  Eigen::SparseMatrix<double> fallback_matrix;

  ~Impl() {
    if (numeric) umfpack_di_free_numeric(&numeric);
  }
};

DirectFactorization::DirectFactorization(const SparseMatrix& A)
    : impl_(std::make_unique<Impl>()) {
  impl_->n = A.n;
  impl_->Ap = A.row_ptr;
  impl_->Ai = A.col_idx;
  impl_->Ax = A.values;

  double control[UMFPACK_CONTROL], info[UMFPACK_INFO];
  umfpack_di_defaults(control);
  control[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_SYMMETRIC;

  void* symbolic = nullptr;
  int status = umfpack_di_symbolic(A.n, A.n, impl_->Ap.data(), impl_->Ai.data(),
                                   impl_->Ax.data(), &symbolic, control, info);
  if (status == UMFPACK_OK) {
    status = umfpack_di_numeric(impl_->Ap.data(), impl_->Ai.data(), impl_->Ax.data(),
                                symbolic, &impl_->numeric, control, info);
    umfpack_di_free_symbolic(&symbolic);
  } else if (symbolic) {
    umfpack_di_free_symbolic(&symbolic);
  }
  if (status == UMFPACK_OK) return;
  if (impl_->numeric) {
    umfpack_di_free_numeric(&impl_->numeric);
    impl_->numeric = nullptr;
  }
  if (status == UMFPACK_WARNING_singular_matrix)
    throw Error("direct solve: matrix is singular (zero pivot reported by the "
                "factorization)");

  impl_->fallback_matrix = to_eigen(A);
  impl_->fallback = std::make_unique<
      Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>>();
  impl_->fallback->analyzePattern(impl_->fallback_matrix);
  impl_->fallback->factorize(impl_->fallback_matrix);
  if (impl_->fallback->info() != Eigen::Success)
    throw Error("direct solve: factorization failed (umfpack status " +
                std::to_string(status) + "): " + impl_->fallback->lastErrorMessage());
}

DirectFactorization::~DirectFactorization() = default;
DirectFactorization::DirectFactorization(DirectFactorization&&) noexcept = default;
DirectFactorization& DirectFactorization::operator=(DirectFactorization&&) noexcept =
    default;

std::vector<double> DirectFactorization::solve(const std::vector<double>& b) const {
  if (static_cast<int>(b.size()) != impl_->n)
    throw Error("direct solve: right-hand side has wrong dimension");
  std::vector<double> x(impl_->n, 0.0);
  if (impl_->numeric) {
    double control[UMFPACK_CONTROL], info[UMFPACK_INFO];
    umfpack_di_defaults(control);
    // The arrays hold the CSC of A^T; solving A^T^T x = b recovers A x = b.
    const int status =
        umfpack_di_solve(UMFPACK_At, impl_->Ap.data(), impl_->Ai.data(),
                         impl_->Ax.data(), x.data(), b.data(), impl_->numeric,
                         control, info);
    if (status != UMFPACK_OK)
      throw Error("direct solve: back-solve failed (umfpack status " +
                  std::to_string(status) + ")");
    return x;
  }
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
  Eigen::VectorXd y = impl_->fallback->solve(rhs);
  if (impl_->fallback->info() != Eigen::Success)
    throw Error("direct solve: back-solve failed");
  for (int i = 0; i < impl_->n; ++i) x[i] = y(i);
  return x;
}

namespace {

// MINRES on the diagonally scaled system (S A S) y = S b, x = S y. Zero
// diagonal entries (the u rows and the mean multiplier) get unit scale.
SolveReport minres(const SparseMatrix& A, const std::vector<double>& b,
                   const SolverConfig& config,
                   const std::optional<std::vector<double>>& initial_guess) {
  const int n = A.n;
  std::vector<double> scale(n, 1.0);
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(A.entry(i, i)));
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(A.entry(i, i));
    if (d > 1e-14 * max_diag && d > 0.0) scale[i] = 1.0 / std::sqrt(d);
  }
  const auto apply_scaled = [&](const std::vector<double>& y, std::vector<double>& out) {
    std::vector<double> tmp(n);
    for (int i = 0; i < n; ++i) tmp[i] = scale[i] * y[i];
    A.multiply(tmp, out);
    for (int i = 0; i < n; ++i) out[i] *= scale[i];
  };

  std::vector<double> bs(n);
  for (int i = 0; i < n; ++i) bs[i] = scale[i] * b[i];
  const double bs_norm = norm2(bs);

  std::vector<double> y(n, 0.0);
  if (initial_guess) {
    if (static_cast<int>(initial_guess->size()) != n)
      throw Error("minres: initial guess has wrong dimension");
    for (int i = 0; i < n; ++i) y[i] = (*initial_guess)[i] / scale[i];
  }

  std::vector<double> r(n);
  apply_scaled(y, r);
  for (int i = 0; i < n; ++i) r[i] = bs[i] - r[i];

  const double tol = config.tolerance * std::max(bs_norm, 1e-300);
  const int max_it =
      config.max_iterations > 0
          ? config.max_iterations
          : static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))) + 10;

  SolveReport report;
  report.method = SolverMethod::Iterative;

  double beta = norm2(r);
  if (beta <= tol || bs_norm == 0.0) {
    report.solution.resize(n);
    for (int i = 0; i < n; ++i) report.solution[i] = scale[i] * y[i];
    report.iterations = 0;
    report.relative_residual = relative_residual(A, report.solution, b);
    return report;
  }

  std::vector<double> v_prev(n, 0.0), v(n), v_next(n);
  for (int i = 0; i < n; ++i) v[i] = r[i] / beta;
  std::vector<double> w0(n, 0.0), w1(n, 0.0);
  double eta = beta;
  double gamma1 = 1.0, gamma0 = 1.0, sigma1 = 0.0, sigma0 = 0.0;
  int it = 0;
  for (it = 1; it <= max_it; ++it) {
    apply_scaled(v, v_next);
    double alpha = 0.0;
    for (int i = 0; i < n; ++i) alpha += v[i] * v_next[i];
    for (int i = 0; i < n; ++i) v_next[i] -= alpha * v[i] + beta * v_prev[i];
    const double beta_next = norm2(v_next);

    const double delta = gamma1 * alpha - gamma0 * sigma1 * beta;
    const double rho1 = std::sqrt(delta * delta + beta_next * beta_next);
    const double rho2 = sigma1 * alpha + gamma0 * gamma1 * beta;
    const double rho3 = sigma0 * beta;
    const double gamma_next = delta / rho1;
    const double sigma_next = beta_next / rho1;

    for (int i = 0; i < n; ++i) {
      const double w = (v[i] - rho3 * w0[i] - rho2 * w1[i]) / rho1;
      y[i] += gamma_next * eta * w;
      w0[i] = w1[i];
      w1[i] = w;
    }
    eta = -sigma_next * eta;

    if (beta_next > 0.0)
      for (int i = 0; i < n; ++i) {
        v_prev[i] = v[i];
        v[i] = v_next[i] / beta_next;
      }
    gamma0 = gamma1;
    gamma1 = gamma_next;
    sigma0 = sigma1;
    sigma1 = sigma_next;
    beta = beta_next;

    if (std::abs(eta) <= tol || beta_next == 0.0) break;
  }

  report.solution.resize(n);
  for (int i = 0; i < n; ++i) report.solution[i] = scale[i] * y[i];
  report.iterations = std::min(it, max_it);
  report.relative_residual = relative_residual(A, report.solution, b);
  return report;
}

}  // namespace

SolveReport solve(const SparseMatrix& A, const std::vector<double>& b,
                  const SolverConfig& config,
                  const std::optional<std::vector<double>>& initial_guess) {
  if (static_cast<int>(b.size()) != A.n)
    throw Error("solve: right-hand side has wrong dimension");
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  if (config.method == SolverMethod::Direct) {
    DirectFactorization lu(A);
    report.method = SolverMethod::Direct;
    report.solution = lu.solve(b);
    report.relative_residual = relative_residual(A, report.solution, b);
  } else {
    report = minres(A, b, config, initial_guess);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pdwg
