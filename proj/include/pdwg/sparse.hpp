#ifndef PDWG_SPARSE_HPP
#define PDWG_SPARSE_HPP

#include <string>
#include <vector>

#include "pdwg/geometry.hpp"

namespace pdwg {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed-row sparse matrix with sorted column indices per row.
/// Duplicate triplets are summed on construction; exact zeros produced by
/// cancellation are kept out of the stored pattern.
struct SparseMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> values;

  static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

  std::size_t nnz() const { return values.size(); }
  double entry(int row, int col) const;
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;

  /// max |A_ij - A_ji| over the stored pattern.
  double symmetry_gap() const;
  double max_abs() const;

  /// Matrix Market coordinate format ("%%MatrixMarket matrix coordinate
  /// real general"), 1-based indices.
  void write_matrix_market(const std::string& path) const;
  static SparseMatrix read_matrix_market(const std::string& path);
};

double norm2(const std::vector<double>& v);

}  // namespace pdwg

#endif
