#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wilfkit/signed_perm.hpp"

namespace wilfkit {

enum class Orientation { young, ne };

/// Young (top-left justified) or NE (top-right justified) diagram given by
/// weakly decreasing row lengths. Cells are 1-based (row, col); an NE shape
/// with rows (r_1 >= ... >= r_m) occupies, in row i, the r_i rightmost of
/// the max(r) columns.
struct Shape {
  std::vector<int> rows;
  Orientation orient = Orientation::young;

  int num_rows() const { return static_cast<int>(rows.size()); }
  int width() const { return rows.empty() ? 0 : rows.front(); }
  int row_len(int r) const { return rows[r - 1]; }
  int col_begin(int r) const { return orient == Orientation::young ? 1 : width() - rows[r - 1] + 1; }
  int col_end(int r) const { return orient == Orientation::young ? rows[r - 1] : width(); }
  bool contains_cell(int r, int c) const {
    return r >= 1 && r <= num_rows() && c >= col_begin(r) && c <= col_end(r);
  }
  int cell_count() const {
    int s = 0;
    for (int r : rows) s += r;
    return s;
  }
  bool valid() const {
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i] <= 0) return false;
      if (i && rows[i] > rows[i - 1]) return false;
    }
    return true;
  }

  bool operator==(const Shape&) const = default;
  auto operator<=>(const Shape&) const = default;
};

// Text format: comma-separated row lengths, optional "ne:" prefix.
Shape parse_shape(const std::string& text);
std::string format_shape(const Shape& s);

Shape conjugate(const Shape& s);  // young only; throws std::invalid_argument on ne
bool is_self_conjugate(const Shape& s);

struct Corner {
  int row = 0;
  int col = 0;
  bool operator==(const Corner&) const = default;
  auto operator<=>(const Corner&) const = default;
};

std::vector<Corner> corners(const Shape& s);

struct FillingEntry {
  int row = 0;
  int col = 0;
  int sign = 0;  // +1 or -1
  bool operator==(const FillingEntry&) const = default;
  auto operator<=>(const FillingEntry&) const = default;
};

/// Assignment of {0,1,-1} to a shape's cells with at most one nonzero per
/// row and column; only the nonzero cells are stored, sorted row-major.
struct SparseFilling {
  Shape shape;
  std::vector<FillingEntry> cells;

  int entry(int r, int c) const {
    for (const auto& e : cells)
      if (e.row == r && e.col == c) return e.sign;
    return 0;
  }
  void set(int r, int c, int s);
  bool is_sparse() const;
  bool is_transversal() const;
  bool is_symmetric() const;  // entry(r,c) == entry(c,r) everywhere

  bool operator==(const SparseFilling&) const = default;
  auto operator<=>(const SparseFilling&) const = default;
};

/// True iff rows r_1<...<r_k and cols c_1<...<c_k exist with all k^2 cells
/// inside the shape and the induced submatrix equal to pat.
bool filling_contains(const SparseFilling& f, const SignedMatrix& pat);

/// As filling_contains but with all occurrence rows in [row_lo, row_hi] and
/// columns in [col_lo, col_hi]. Empty pattern: true.
bool filling_contains_in_region(const SparseFilling& f, const SignedMatrix& pat, int row_lo,
                                int row_hi, int col_lo, int col_hi);

/// Occurrence witness (list of (row, col) nonzero cells), if any.
std::optional<std::vector<Corner>> filling_find_occurrence(const SparseFilling& f,
                                                           const SignedMatrix& pat);

enum class FillMode { transversal, sparse };

/// Visits each filling exactly once: row-major placement backtracking,
/// empty row first (sparse mode), column ascending, +1 before -1.
void enumerate_fillings(const Shape& s, FillMode mode, bool with_signs,
                        const std::function<void(const SparseFilling&)>& visit);

uint64_t count_fillings(const Shape& s, FillMode mode, bool with_signs);
uint64_t count_avoiding_fillings(const Shape& s, const SignedMatrix& pat, FillMode mode,
                                 bool with_signs);

/// Strictly-above-diagonal subfilling of a signed permutation matrix, as an
/// NE filling with rows (n-1, ..., 1). Matrix cell (i, j), j > i, is stored
/// at filling cell (i, j-1) (columns shifted left by one).
SparseFilling pi_plus(const SignedPerm& p);

/// Weakly-above-diagonal subfilling, NE rows (n, ..., 1); matrix cell (i, j)
/// is stored at (i, j) unchanged.
SparseFilling pi_plus_zero(const SignedPerm& p);

/// Inverse of pi_plus for involutions: f must have at most one nonzero in
/// (row i, column i) jointly for every i; fixed_signs maps exactly the
/// zero-support positions to +1/-1. Throws std::invalid_argument naming the
/// offending index otherwise.
SignedPerm extend_to_involution(const SparseFilling& f, const std::map<int, int>& fixed_signs);

/// Inverse of pi_plus_zero: the diagonal cells carry the fixed-point signs.
SignedPerm involution_from_pi_plus_zero(const SparseFilling& f);

/// All young shapes with cell count in [1, max_cells], in deterministic order.
std::vector<Shape> all_young_shapes(int max_cells);

}  // namespace wilfkit
