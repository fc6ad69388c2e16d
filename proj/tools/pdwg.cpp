#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdwg/study.hpp"

namespace {

pdwg::DomainTag parse_domain(const std::string& name) {
  if (name == "cube") return pdwg::DomainTag::UnitCube;
  if (name == "a") return pdwg::DomainTag::DomainA;
  if (name == "b") return pdwg::DomainTag::DomainB;
  if (name == "c") return pdwg::DomainTag::DomainC;
  throw pdwg::Error("unknown domain \"" + name + "\" (cube, a, b, c)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primal-dual weak Galerkin solver for the 3D div-curl system "
               "with tangential boundary conditions"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand(
      "solve", "Run a convergence study on a generated domain");
  std::string domain = "cube";
  std::string solution = "u1";
  int n = 0;
  std::vector<int> refinements;
  double rho1 = 1.0, rho2 = 1.0, rho3 = 1.0;
  int quad = 4;
  std::string solver_name = "direct";
  std::string csv, json, vtk, reference, matrix_out;
  double tolerance = 2.0, rate_tolerance = 0.25;

  solve->add_option("--domain", domain, "Domain: cube, a, b, c")->capture_default_str();
  solve->add_option("--solution", solution, "Exact solution: u1..u6 or const")
      ->capture_default_str();
  solve->add_option("--n", n, "Single resolution (cells per unit length)");
  solve->add_option("--refinements", refinements,
                    "Comma-separated resolutions, e.g. 2,4,8,16")
      ->delimiter(',');
  solve->add_option("--rho1", rho1, "Weight of the lambda jump stabilizer")
      ->capture_default_str();
  solve->add_option("--rho2", rho2, "Weight of the tangential q jump stabilizer")
      ->capture_default_str();
  solve->add_option("--rho3", rho3, "Weight of the s jump stabilizer")
      ->capture_default_str();
  solve->add_option("--quad", quad, "Gauss points per axis for data integrals")
      ->capture_default_str();
  solve->add_option("--solver", solver_name, "direct or minres")->capture_default_str();
  solve->add_option("--csv", csv, "Write the report as CSV");
  solve->add_option("--json", json, "Write the report as JSON");
  solve->add_option("--vtk", vtk, "Write the finest u_h field as legacy VTK");
  solve->add_option("--export-matrix", matrix_out,
                    "Write the finest system in Matrix Market format");
  bool check_data = false;
  solve->add_flag("--check-data", check_data,
                  "Report data compatibility diagnostics before solving");
  solve->add_option("--reference", reference, "Reference table CSV to compare against");
  solve->add_option("--tolerance", tolerance,
                    "Allowed factor between computed and reference errors")
      ->capture_default_str();
  solve->add_option("--rate-tolerance", rate_tolerance,
                    "Allowed deviation of observed convergence rates")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    pdwg::RunConfig config;
    config.domain = parse_domain(domain);
    config.solution = pdwg::parse_solution(solution);
    if (!refinements.empty()) config.refinements = refinements;
    else if (n > 0) config.refinements = {n};
    else throw pdwg::Error("pass --n or --refinements");
    config.rho = {rho1, rho2, rho3};
    config.quad_order = quad;
    if (solver_name == "direct") config.solver.method = pdwg::SolverMethod::Direct;
    else if (solver_name == "minres") config.solver.method = pdwg::SolverMethod::Iterative;
    else throw pdwg::Error("unknown solver \"" + solver_name + "\"");
    config.csv_path = csv;
    config.json_path = json;
    config.vtk_path = vtk;
    config.matrix_path = matrix_out;

    if (check_data) {
      const pdwg::Mesh mesh = pdwg::build_mesh(config.domain, config.refinements[0]);
      const pdwg::Permittivity eps = pdwg::Permittivity::identity(mesh.elements.size());
      const auto& sol = pdwg::manufactured_solution(config.solution);
      const pdwg::ProblemData data = pdwg::make_problem_data(mesh, sol, eps);
      const pdwg::CompatibilityReport compat =
          pdwg::check_compatibility(data, mesh, config.quad_order);
      std::cout << "# data diagnostics (n=" << config.refinements[0]
                << "): |div g| <= " << compat.max_div_g << ", |chi - n x (chi x n)| <= "
                << compat.max_chi_normal << ", flux pairing <= "
                << compat.max_flux_pairing << "\n";
      for (const std::string& w : compat.warnings)
        std::cout << "# warning: " << w << "\n";
    }

    const pdwg::ConvergenceReport report = pdwg::run_study(config);
    std::cout << report.to_csv();

    if (!reference.empty()) {
      const auto table = pdwg::load_reference_table(reference);
      pdwg::ComparisonTolerance tol;
      tol.error_factor = tolerance;
      tol.rate_window = rate_tolerance;
      const auto verdicts = pdwg::compare_to_reference(report, table, tol);
      bool all_ok = true;
      for (const pdwg::RowVerdict& v : verdicts) {
        std::cout << (v.pass() ? "[pass] " : "[FAIL] ") << v.message << "\n";
        all_ok = all_ok && v.pass();
      }
      if (!all_ok) return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
