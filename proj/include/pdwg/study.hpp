#ifndef PDWG_STUDY_HPP
#define PDWG_STUDY_HPP

#include <optional>
#include <string>
#include <vector>

#include "pdwg/dof_system.hpp"
#include "pdwg/manufactured.hpp"
#include "pdwg/solver.hpp"

namespace pdwg {

/// Configuration of one convergence study: a domain, a manufactured
/// solution, and a strictly increasing list of resolutions (cells per unit
/// length).
struct RunConfig {
  DomainTag domain = DomainTag::UnitCube;
  Solution solution = Solution::U1;
  std::vector<int> refinements = {2, 4, 8, 16};
  StabilizationWeights rho;
  int quad_order = 4;
  SolverConfig solver;

  std::string csv_path;
  std::string json_path;
  std::string vtk_path;        // field of the finest refinement
  std::string matrix_path;     // Matrix Market dump of the finest system

  void validate() const;
};

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  long dofs = 0;
  double error = 0.0;               // || eps^{1/2} (Q_0 u - u_h) ||
  std::optional<double> rate;       // empty on the first row
  double residual = 0.0;
  double seconds = 0.0;
};

struct ConvergenceReport {
  RunConfig config;
  double domain_volume = 1.0;
  std::vector<ConvergenceRow> rows;

  std::string to_csv(bool include_seconds = true) const;
  std::string to_json() const;
};

Mesh build_mesh(DomainTag domain, int n);

/// Weighted L2 distance between two per-element constant fields:
/// sqrt( sum_T |T| d_T . eps_T d_T ).
double compute_error(const Mesh& mesh, const Permittivity& eps,
                     const std::vector<Vec3>& projected, const std::vector<Vec3>& u_h);

ConvergenceReport run_study(const RunConfig& config);

/// One reference row of the bundled convergence tables.
struct ReferenceRow {
  std::string domain;
  std::string solution;
  int n = 0;  // cells per unit length
  double error = 0.0;
  std::optional<double> rate;
};

std::vector<ReferenceRow> load_reference_table(const std::string& path);

struct ComparisonTolerance {
  double error_factor = 2.0;  // computed error within [ref/factor, ref*factor]
  double rate_window = 0.25;  // |computed - reference| <= window
};

struct RowVerdict {
  int n = 0;
  bool error_ok = false;
  bool rate_ok = false;
  double error_ratio = 0.0;
  std::string message;
  bool pass() const { return error_ok && rate_ok; }
};

/// Matches report rows against reference rows by (domain, solution, n) and
/// checks each error and rate against the tolerance. Reference tables list
/// volume-normalized (RMS-style) errors, so the computed norm is divided by
/// sqrt(|Omega|) before comparing; on the unit cube the two coincide.
/// Throws when a computed row has no reference counterpart.
std::vector<RowVerdict> compare_to_reference(const ConvergenceReport& report,
                                             const std::vector<ReferenceRow>& table,
                                             const ComparisonTolerance& tol = {});

}  // namespace pdwg

#endif
