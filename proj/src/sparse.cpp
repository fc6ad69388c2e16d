#include "pdwg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pdwg {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw Error("SparseMatrix: triplet index out of range");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  m.col_idx.reserve(triplets.size());
  m.values.reserve(triplets.size());
  std::size_t i = 0;
  for (int row = 0; row < n; ++row) {
    while (i < triplets.size() && triplets[i].row == row) {
      const int col = triplets[i].col;
      double sum = 0.0;
      while (i < triplets.size() && triplets[i].row == row && triplets[i].col == col)
        sum += triplets[i++].value;
      if (sum != 0.0) {
        m.col_idx.push_back(col);
        m.values.push_back(sum);
      }
    }
    m.row_ptr[row + 1] = static_cast<int>(m.col_idx.size());
  }
  return m;
}

double SparseMatrix::entry(int row, int col) const {
  const auto begin = col_idx.begin() + row_ptr[row];
  const auto end = col_idx.begin() + row_ptr[row + 1];
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return values[it - col_idx.begin()];
}

void SparseMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n)
    throw Error("SparseMatrix::multiply: dimension mismatch");
  y.assign(n, 0.0);
  for (int row = 0; row < n; ++row) {
    double s = 0.0;
    for (int k = row_ptr[row]; k < row_ptr[row + 1]; ++k)
      s += values[k] * x[col_idx[k]];
    y[row] = s;
  }
}

double SparseMatrix::symmetry_gap() const {
  double gap = 0.0;
  for (int row = 0; row < n; ++row)
    for (int k = row_ptr[row]; k < row_ptr[row + 1]; ++k)
      gap = std::max(gap, std::abs(values[k] - entry(col_idx[k], row)));
  return gap;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void SparseMatrix::write_matrix_market(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("write_matrix_market: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << n << " " << n << " " << nnz() << "\n";
  out.precision(17);
  for (int row = 0; row < n; ++row)
    for (int k = row_ptr[row]; k < row_ptr[row + 1]; ++k)
      out << row + 1 << " " << col_idx[k] + 1 << " " << values[k] << "\n";
}

SparseMatrix SparseMatrix::read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_matrix_market: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw Error("read_matrix_market: missing MatrixMarket header");
  if (line.find("coordinate") == std::string::npos ||
      line.find("real") == std::string::npos)
    throw Error("read_matrix_market: only coordinate real matrices are supported");
  const bool symmetric = line.find("symmetric") != std::string::npos;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '%') break;
  std::istringstream sizes(line);
  int rows = 0, cols = 0;
  std::size_t entries = 0;
  sizes >> rows >> cols >> entries;
  if (rows != cols || rows <= 0)
    throw Error("read_matrix_market: expected a square matrix");
  std::vector<Triplet> triplets;
  triplets.reserve(symmetric ? 2 * entries : entries);
  for (std::size_t k = 0; k < entries; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw Error("read_matrix_market: truncated file");
    triplets.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) triplets.push_back({j - 1, i - 1, v});
  }
  return from_triplets(rows, std::move(triplets));
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace pdwg
