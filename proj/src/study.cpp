#include "pdwg/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pdwg/vtk.hpp"

namespace pdwg {

void RunConfig::validate() const {
  if (refinements.empty()) throw Error("run config: empty refinement list");
  for (std::size_t i = 0; i < refinements.size(); ++i) {
    if (refinements[i] < 1) throw Error("run config: refinements must be >= 1");
    if (i > 0 && refinements[i] <= refinements[i - 1])
      throw Error("run config: refinements must be strictly increasing");
    if (domain == DomainTag::DomainC && refinements[i] % 2 != 0)
      throw Error("run config: domain c needs even resolutions (hole walls on "
                  "grid planes)");
  }
  rho.validate();
  if (quad_order < 1) throw Error("run config: quadrature order must be >= 1");
}

Mesh build_mesh(DomainTag domain, int n) {
  if (domain == DomainTag::UnitCube) return build_unit_cube_mesh(n);
  if (domain == DomainTag::Imported)
    throw Error("build_mesh: imported domains come from import_mesh");
  return build_domain_mesh(domain, n);
}

double compute_error(const Mesh& mesh, const Permittivity& eps,
                     const std::vector<Vec3>& projected, const std::vector<Vec3>& u_h) {
  if (projected.size() != mesh.elements.size() || u_h.size() != mesh.elements.size())
    throw Error("compute_error: fields do not match the mesh");
  double sum = 0.0;
  for (const Element& el : mesh.elements) {
    const Vec3 d = projected[el.id] - u_h[el.id];
    sum += el.volume * dot(d, eps.at(el.id).apply(d));
  }
  return std::sqrt(sum);
}

namespace {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string format_fixed(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

ConvergenceReport run_study(const RunConfig& config) {
  config.validate();
  ConvergenceReport report;
  report.config = config;

  const ManufacturedSolution& sol = manufactured_solution(config.solution);

  for (std::size_t level = 0; level < config.refinements.size(); ++level) {
    const int n = config.refinements[level];
    try {
      const auto start = std::chrono::steady_clock::now();
      const Mesh mesh = build_mesh(config.domain, n);
      if (level == 0) {
        report.domain_volume = 0.0;
        for (const Element& el : mesh.elements) report.domain_volume += el.volume;
      }
      const Permittivity eps = Permittivity::identity(mesh.elements.size());
      const DofMap dofs = build_dof_map(mesh);
      const QuadratureSelector quad = solution_quadrature(sol, config.quad_order);
      const ProblemData data = make_problem_data(mesh, sol, eps, config.quad_order);
      const GlobalSystem system = assemble(mesh, dofs, eps, config.rho, data, quad);

      if (!config.matrix_path.empty() && level + 1 == config.refinements.size())
        system.matrix.write_matrix_market(config.matrix_path);

      const SolveReport solved = solve(system.matrix, system.rhs, config.solver);
      const std::vector<Vec3> u_h = extract_u(dofs, solved.solution);
      const std::vector<Vec3> q0u = project(mesh, sol, quad);

      ConvergenceRow row;
      row.n = n;
      row.h = mesh.meshsize;
      row.dofs = dofs.total_dofs;
      row.error = compute_error(mesh, eps, q0u, u_h);
      row.residual = solved.relative_residual;
      if (!report.rows.empty()) {
        const ConvergenceRow& prev = report.rows.back();
        // Rates computed from rounding-level errors are meaningless; leave
        // them empty (exactly reproduced solutions).
        if (prev.error > 1e-12 && row.error > 1e-12)
          row.rate = std::log(prev.error / row.error) /
                     std::log(static_cast<double>(n) / prev.n);
      }
      row.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      report.rows.push_back(row);

      if (!config.vtk_path.empty() && level + 1 == config.refinements.size())
        export_vtk(mesh, u_h, config.vtk_path);
    } catch (const Error& e) {
      throw Error("refinement n=" + std::to_string(n) + ": " + e.what());
    }
  }

  if (!config.csv_path.empty()) {
    std::ofstream out(config.csv_path);
    if (!out) throw Error("run_study: cannot open " + config.csv_path);
    out << report.to_csv();
  }
  if (!config.json_path.empty()) {
    std::ofstream out(config.json_path);
    if (!out) throw Error("run_study: cannot open " + config.json_path);
    out << report.to_json();
  }
  return report;
}

std::string ConvergenceReport::to_csv(bool include_seconds) const {
  std::ostringstream out;
  out << "n,h,dofs,error,rate,residual";
  if (include_seconds) out << ",seconds";
  out << "\n";
  for (const ConvergenceRow& row : rows) {
    out << row.n << "," << format_sci(row.h) << "," << row.dofs << ","
        << format_sci(row.error) << ",";
    if (row.rate) out << format_fixed(*row.rate, 4);
    out << "," << format_sci(row.residual);
    if (include_seconds) out << "," << format_fixed(row.seconds, 3);
    out << "\n";
  }
  return out.str();
}

std::string ConvergenceReport::to_json() const {
  nlohmann::json doc;
  doc["config"] = {
      {"domain", to_string(config.domain)},
      {"solution", to_string(config.solution)},
      {"refinements", config.refinements},
      {"rho", {config.rho.rho1, config.rho.rho2, config.rho.rho3}},
      {"quad_order", config.quad_order},
      {"solver", to_string(config.solver.method)},
  };
  doc["domain_volume"] = domain_volume;
  auto& rows_json = doc["rows"] = nlohmann::json::array();
  for (const ConvergenceRow& row : rows) {
    nlohmann::json r = {{"n", row.n},          {"h", row.h},
                        {"dofs", row.dofs},    {"error", row.error},
                        {"normalized_error", row.error / std::sqrt(domain_volume)},
                        {"residual", row.residual}, {"seconds", row.seconds}};
    if (row.rate) r["rate"] = *row.rate;
    else r["rate"] = nullptr;
    rows_json.push_back(r);
  }
  return doc.dump(1, '\t') + "\n";
}

std::vector<ReferenceRow> load_reference_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_reference_table: cannot open " + path);
  std::vector<ReferenceRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header line
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    ReferenceRow row;
    std::getline(ls, row.domain, ',');
    std::getline(ls, row.solution, ',');
    std::getline(ls, field, ',');
    row.n = std::stoi(field);
    std::getline(ls, field, ',');  // the table's own resolution label
    std::getline(ls, field, ',');
    row.error = std::stod(field);
    if (std::getline(ls, field, ',') && !field.empty()) row.rate = std::stod(field);
    rows.push_back(row);
  }
  if (rows.empty()) throw Error("load_reference_table: no rows in " + path);
  return rows;
}

std::vector<RowVerdict> compare_to_reference(const ConvergenceReport& report,
                                             const std::vector<ReferenceRow>& table,
                                             const ComparisonTolerance& tol) {
  const std::string domain = to_string(report.config.domain);
  const std::string solution = to_string(report.config.solution);
  std::vector<RowVerdict> verdicts;
  for (const ConvergenceRow& row : report.rows) {
    const ReferenceRow* ref = nullptr;
    for (const ReferenceRow& r : table)
      if (r.domain == domain && r.solution == solution && r.n == row.n) ref = &r;
    if (!ref)
      throw Error("compare_to_reference: no reference row for (" + domain + ", " +
                  solution + ", n=" + std::to_string(row.n) + ")");
    RowVerdict v;
    v.n = row.n;
    const double normalized = row.error / std::sqrt(report.domain_volume);
    v.error_ratio = normalized / ref->error;
    v.error_ok = v.error_ratio <= tol.error_factor && v.error_ratio >= 1.0 / tol.error_factor;
    v.rate_ok = true;
    if (ref->rate && row.rate) v.rate_ok = std::abs(*row.rate - *ref->rate) <= tol.rate_window;
    std::ostringstream msg;
    msg << "n=" << row.n << " error " << format_sci(normalized) << " vs "
        << format_sci(ref->error) << " (ratio " << format_fixed(v.error_ratio, 3)
        << (v.error_ok ? ", ok" : ", FAIL") << ")";
    if (ref->rate && row.rate)
      msg << ", rate " << format_fixed(*row.rate, 2) << " vs "
          << format_fixed(*ref->rate, 2) << (v.rate_ok ? " (ok)" : " (FAIL)");
    v.message = msg.str();
    verdicts.push_back(v);
  }
  return verdicts;
}

}  // namespace pdwg
