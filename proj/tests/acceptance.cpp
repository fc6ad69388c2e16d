// Acceptance suite: runs the verification criteria end to end and prints one
// PASS/FAIL line per criterion. Groups: fast (structure + oracles), table1
// (unit-cube studies), table2 (multi-connected domains), or all.
#define DOCTEST_CONFIG_DISABLE
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pdwg/study.hpp"

using namespace pdwg;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(int criterion, bool pass, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              text.c_str());
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ConvergenceReport study(DomainTag domain, Solution solution, std::vector<int> ns) {
  RunConfig config;
  config.domain = domain;
  config.solution = solution;
  config.refinements = std::move(ns);
  return run_study(config);
}

std::string row_summary(const ConvergenceReport& report) {
  std::string s;
  for (const ConvergenceRow& row : report.rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.3e", row.error / std::sqrt(report.domain_volume));
    s += buf;
  }
  return s;
}

// criterion 1 -----------------------------------------------------------
void constant_exactness() {
  const auto start = Clock::now();
  const ConvergenceReport report = study(DomainTag::UnitCube, Solution::Constant, {2, 4});
  const double elapsed = seconds_since(start);
  bool pass = elapsed < 5.0;
  double worst = 0.0;
  for (const ConvergenceRow& row : report.rows) worst = std::max(worst, row.error);
  pass = pass && worst <= 1e-10;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "constant-solution exactness: max error %.2e (<= 1e-10), %.1fs (< 5s)",
                worst, elapsed);
  verdict(1, pass, buf);
}

// criteria 2-5 ----------------------------------------------------------
struct TableCheck {
  int criterion;
  Solution solution;
  std::vector<double> reference_errors;  // volume-normalized, n = 2,4,8,16
  double terminal_rate = 0.0;
  double rate_window = 0.0;   // 0 -> only the floor below applies
  double rate_floor = -10.0;
  bool rates_increasing = false;
  bool check_all_errors = false;  // otherwise only the finest level

  void run() const {
    const auto start = Clock::now();
    const ConvergenceReport report =
        study(DomainTag::UnitCube, solution, {2, 4, 8, 16});
    const double elapsed = seconds_since(start);

    bool errors_ok = true;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      if (!check_all_errors && i + 1 < report.rows.size()) continue;
      const double ratio = report.rows[i].error / reference_errors[i];
      errors_ok = errors_ok && ratio <= 2.0 && ratio >= 0.5;
    }
    const double terminal = report.rows.back().rate.value_or(-1.0);
    bool rate_ok = terminal >= rate_floor;
    if (rate_window > 0.0)
      rate_ok = rate_ok && std::abs(terminal - terminal_rate) <= rate_window;
    bool monotone_ok = true;
    if (rates_increasing)
      for (std::size_t i = 2; i < report.rows.size(); ++i)
        monotone_ok = monotone_ok &&
                      report.rows[i].rate.value() > report.rows[i - 1].rate.value();
    const bool runtime_ok = report.rows.back().seconds < 120.0;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Table 1 %s: errors%s, terminal rate %.2f, finest level %.0fs%s",
                  to_string(solution).c_str(), row_summary(report).c_str(), terminal,
                  report.rows.back().seconds,
                  rates_increasing ? (monotone_ok ? ", rates increasing"
                                                  : ", rates NOT increasing")
                                   : "");
    verdict(criterion, errors_ok && rate_ok && monotone_ok && runtime_ok, buf);
  }
};

void table1() {
  TableCheck{2, Solution::U1, {2.48e-2, 5.34e-3, 1.24e-3, 3.03e-4},
             2.03, 0.2, -10.0, false, true}
      .run();
  TableCheck{3, Solution::U2, {1.57e-1, 7.64e-2, 2.75e-2, 8.25e-3},
             1.74, 0.2, -10.0, true, false}
      .run();
  TableCheck{4, Solution::U3, {2.27e-2, 6.55e-3, 3.03e-3, 1.38e-3},
             0.0, 0.0, 0.9, false, false}
      .run();
  TableCheck{5, Solution::U4, {5.54e-2, 4.41e-2, 3.00e-2, 1.66e-2},
             0.0, 0.0, -10.0, true, false}
      .run();
}

// criterion 6 -----------------------------------------------------------
void table2() {
  struct DomainCase {
    DomainTag domain;
    Solution solution;
    std::vector<int> ns;
    std::vector<double> reference_errors;
    double terminal_rate;
  };
  const std::vector<DomainCase> cases = {
      {DomainTag::DomainB, Solution::U5, {1, 2, 4}, {1.14e-1, 3.97e-2, 1.23e-2}, 1.69},
      {DomainTag::DomainA, Solution::U5, {1, 2, 4}, {1.13e-1, 4.34e-2, 1.43e-2}, 1.60},
      {DomainTag::DomainC, Solution::U6, {2, 4, 8}, {3.27e-1, 1.87e-1, 7.02e-2}, 1.42},
  };
  bool all_ok = true;
  std::string detail;
  for (const DomainCase& c : cases) {
    const ConvergenceReport report = study(c.domain, c.solution, c.ns);
    const double scale = std::sqrt(report.domain_volume);
    bool errors_ok = true;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const double ratio = report.rows[i].error / scale / c.reference_errors[i];
      errors_ok = errors_ok && ratio <= 2.0 && ratio >= 0.5;
    }
    const double terminal = report.rows.back().rate.value_or(-1.0);
    const bool rate_ok = std::abs(terminal - c.terminal_rate) <= 0.25;
    all_ok = all_ok && errors_ok && rate_ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, " [%s/%s:%s, rate %.2f]",
                  to_string(c.domain).c_str(), to_string(c.solution).c_str(),
                  row_summary(report).c_str(), terminal);
    detail += buf;
  }
  verdict(6, all_ok, "Table 2 domains" + detail);
}

// criterion 7 -----------------------------------------------------------
void element_oracle() {
  const auto start = Clock::now();
  std::mt19937 rng(271828);
  std::uniform_real_distribution<double> rho_dist(0.25, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto fx = oracle::random_box(rng);
    const auto bases = face_bases(fx.mesh);
    const Mat3 eps_T = trial % 4 == 0 ? Mat3::identity() : oracle::random_spd(rng);
    const StabilizationWeights rho{rho_dist(rng), rho_dist(rng), rho_dist(rng)};
    const Eigen::MatrixXd M = element_matrix(
        fx.element(), fx.mesh, bases, Permittivity::constant(1, eps_T), rho);
    const Eigen::MatrixXd R =
        oracle::brute_force_element_matrix(fx.element(), fx.mesh, bases, eps_T, rho);
    worst = std::max(worst,
                     (M - R).cwiseAbs().maxCoeff() / R.cwiseAbs().maxCoeff());
  }
  const double elapsed = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "element oracle on 100 random hexahedra: max relative gap %.2e "
                "(<= 1e-12), %.1fs (< 10s)",
                worst, elapsed);
  verdict(7, worst <= 1e-12 && elapsed < 10.0, buf);
}

// criterion 8 -----------------------------------------------------------
void structural_invariants() {
  bool pass = true;
  std::string detail;

  pass = pass && LocalLayout{}.size() == 32;

  for (DomainTag tag : {DomainTag::UnitCube, DomainTag::DomainB}) {
    const Mesh mesh = tag == DomainTag::UnitCube ? build_unit_cube_mesh(3)
                                                 : build_domain_mesh(tag, 1);
    const DofMap dofs = build_dof_map(mesh);
    pass = pass && dofs.total_dofs <= dof_bound(mesh);

    double closure = 0.0;
    for (const Element& el : mesh.elements) {
      Vec3 sum{0, 0, 0};
      for (int lf = 0; lf < 6; ++lf)
        sum += mesh.faces[el.face_ids[lf]].area * el.outward_normals[lf];
      closure = std::max(closure, sum.norm());
    }
    pass = pass && closure <= 1e-12;

    const Permittivity eps = Permittivity::identity(mesh.elements.size());
    const GlobalSystem sys =
        assemble(mesh, dofs, eps, {}, ProblemData::zero(), uniform_quadrature(2));
    const double gap = sys.symmetry_certificate / std::max(sys.matrix.max_abs(), 1.0);
    pass = pass && gap <= 1e-12;

    const SolveReport homogeneous = solve(sys.matrix, sys.rhs);
    pass = pass && norm2(homogeneous.solution) <= 1e-12;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  " [%s: symmetry %.1e, closure %.1e, dofs %d <= %ld, |x0| %.1e]",
                  to_string(mesh.domain_tag).c_str(), gap, closure, dofs.total_dofs,
                  dof_bound(mesh), norm2(homogeneous.solution));
    detail += buf;
  }
  verdict(8, pass, "structural invariants: local dofs 32" + detail);
}

// criterion 9 -----------------------------------------------------------
void weak_operator_oracle() {
  std::mt19937 rng(161803);
  const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto fx = oracle::random_box(rng);
    const Element& el = fx.element();
    const auto bases = face_bases(fx.mesh);
    const WeakOperatorTable table = weak_operator_table(el, fx.mesh, bases);
    const QuadratureRule cell = cell_rule(el, 2);
    for (int i = 0; i < 6; ++i) {
      const Face& face = fx.mesh.faces[el.face_ids[i]];
      const QuadratureRule frule = face_rule(face, fx.mesh, 2);
      const Vec3& n = el.outward_normals[i];
      for (const Vec3& phi : axes) {
        const double grad_gap = std::abs(
            cell.integrate([&](const Vec3&) { return dot(table.grad_face[i], phi); }) -
            frule.integrate([&](const Vec3&) { return dot(phi, n); }));
        worst = std::max(worst, grad_gap);
        for (int k = 0; k < 2; ++k) {
          const Vec3 vb = bases[face.id].e(k);
          const double curl_gap = std::abs(
              cell.integrate(
                  [&](const Vec3&) { return dot(table.curl_face[i][k], phi); }) +
              frule.integrate([&](const Vec3&) { return dot(cross(vb, n), phi); }));
          worst = std::max(worst, curl_gap);
        }
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "weak-operator defining equations on 100 random elements: max "
                "defect %.2e (<= 1e-12)",
                worst);
  verdict(9, worst <= 1e-12, buf);
}

// criterion 10 ----------------------------------------------------------
void manufactured_oracle() {
  std::mt19937 rng(57721566);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<Vec3> points;
  while (points.size() < 1000) {
    const Vec3 p{coord(rng), coord(rng), coord(rng)};
    if (std::hypot(p.x, p.y) >= 0.1) points.push_back(p);
  }
  double worst_data = 0.0, worst_div = 0.0;
  for (Solution id : {Solution::U1, Solution::U2, Solution::U3, Solution::U4,
                      Solution::U5, Solution::U6}) {
    const ManufacturedSolution& sol = manufactured_solution(id);
    const auto u = [&](const Vec3& p) { return sol.u(p); };
    const auto g = [&](const Vec3& p) { return sol.g(p); };
    for (const Vec3& p : points) {
      worst_data = std::max(worst_data, std::abs(sol.f(p) - oracle::fd_divergence(u, p)));
      worst_data = std::max(worst_data, (sol.g(p) - oracle::fd_curl(u, p)).norm());
      worst_div = std::max(worst_div, std::abs(oracle::fd_divergence(g, p)));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "manufactured data vs finite differences at 1000 points/solution: "
                "data gap %.2e, div g %.2e (<= 1e-6)",
                worst_data, worst_div);
  verdict(10, worst_data <= 1e-6 && worst_div <= 1e-6, buf);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string group = argc > 1 ? argv[1] : "all";
  const bool fast = group == "fast" || group == "all";
  const bool t1 = group == "table1" || group == "all";
  const bool t2 = group == "table2" || group == "all";
  if (!fast && !t1 && !t2) {
    std::fprintf(stderr, "usage: %s [fast|table1|table2|all]\n", argv[0]);
    return 2;
  }
  try {
    if (fast) {
      constant_exactness();
      element_oracle();
      structural_invariants();
      weak_operator_oracle();
      manufactured_oracle();
    }
    if (t1) table1();
    if (t2) table2();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 3;
  }
  if (failures == 0) std::printf("all criteria in group '%s' passed\n", group.c_str());
  return failures;
}
