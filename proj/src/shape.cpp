#include "wilfkit/shape.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace wilfkit {

Shape parse_shape(const std::string& text) {
  Shape s;
  std::string body = text;
  if (body.rfind("ne:", 0) == 0) {
    s.orient = Orientation::ne;
    body = body.substr(3);
  }
  std::string tok;
  std::istringstream is(body);
  while (std::getline(is, tok, ',')) {
    // trim
    size_t b = tok.find_first_not_of(" \t");
    size_t e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty row length in shape '" + text + "'");
    tok = tok.substr(b, e - b + 1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("bad row length: '" + tok + "'");
    s.rows.push_back(v);
  }
  if (!s.valid()) throw ParseError("row lengths not weakly decreasing positive: '" + text + "'");
  return s;
}

std::string format_shape(const Shape& s) {
  std::ostringstream os;
  if (s.orient == Orientation::ne) os << "ne:";
  for (size_t i = 0; i < s.rows.size(); ++i) {
    if (i) os << ',';
    os << s.rows[i];
  }
  return os.str();
}

Shape conjugate(const Shape& s) {
  if (s.orient != Orientation::young)
    throw std::invalid_argument("conjugate is defined for young orientation; reflect first");
  Shape r;
  for (int c = 1; c <= s.width(); ++c) {
    int len = 0;
    while (len < s.num_rows() && s.rows[len] >= c) ++len;
    r.rows.push_back(len);
  }
  return r;
}

bool is_self_conjugate(const Shape& s) { return conjugate(s) == s; }

std::vector<Corner> corners(const Shape& s) {
  std::vector<Corner> out;
  for (int r = 1; r <= s.num_rows(); ++r) {
    bool shorter_below = (r == s.num_rows()) || (s.rows[r] < s.rows[r - 1]);
    if (!shorter_below) continue;
    // removable end cell: rightmost for young, leftmost for ne
    out.push_back({r, s.orient == Orientation::young ? s.col_end(r) : s.col_begin(r)});
  }
  return out;
}

void SparseFilling::set(int r, int c, int s) {
  auto it = std::find_if(cells.begin(), cells.end(),
                         [&](const FillingEntry& e) { return e.row == r && e.col == c; });
  if (it != cells.end()) {
    if (s == 0)
      cells.erase(it);
    else
      it->sign = s;
    return;
  }
  if (s == 0) return;
  FillingEntry e{r, c, s};
  cells.insert(std::upper_bound(cells.begin(), cells.end(), e), e);
}

bool SparseFilling::is_sparse() const {
  std::vector<int> rs, cs;
  for (const auto& e : cells) {
    if (e.sign != 1 && e.sign != -1) return false;
    if (!shape.contains_cell(e.row, e.col)) return false;
    rs.push_back(e.row);
    cs.push_back(e.col);
  }
  std::sort(rs.begin(), rs.end());
  std::sort(cs.begin(), cs.end());
  return std::adjacent_find(rs.begin(), rs.end()) == rs.end() &&
         std::adjacent_find(cs.begin(), cs.end()) == cs.end();
}

bool SparseFilling::is_transversal() const {
  if (!is_sparse()) return false;
  return static_cast<int>(cells.size()) == shape.num_rows() &&
         static_cast<int>(cells.size()) == shape.width();
}

bool SparseFilling::is_symmetric() const {
  for (const auto& e : cells)
    if (entry(e.col, e.row) != e.sign) return false;
  return true;
}

namespace {

struct PatRow {
  int col;
  int sign;
};

bool occurrence_dfs(const SparseFilling& f, const std::vector<PatRow>& prow, int row_lo, int row_hi,
                    int col_lo, int col_hi, std::vector<const FillingEntry*>* witness) {
  const int k = static_cast<int>(prow.size());
  if (k == 0) return true;
  std::vector<const FillingEntry*> chosen(k, nullptr);
  const auto& cells = f.cells;  // sorted row-major, one nonzero per row
  auto rec = [&](auto&& self, int a, size_t start) -> bool {
    if (a == k) {
      int max_row = chosen[k - 1]->row;
      int min_col = chosen[0]->col, max_col = chosen[0]->col;
      for (int b = 1; b < k; ++b) {
        min_col = std::min(min_col, chosen[b]->col);
        max_col = std::max(max_col, chosen[b]->col);
      }
      int anchor_col = f.shape.orient == Orientation::young ? max_col : min_col;
      if (!f.shape.contains_cell(max_row, anchor_col)) return false;
      if (witness) *witness = chosen;
      return true;
    }
    for (size_t i = start; i < cells.size(); ++i) {
      const FillingEntry& e = cells[i];
      if (e.row < row_lo || (a > 0 && e.row <= chosen[a - 1]->row)) continue;
      if (e.row > row_hi) break;
      if (e.col < col_lo || e.col > col_hi) continue;
      if (e.sign != prow[a].sign) continue;
      bool ok = true;
      for (int b = 0; b < a && ok; ++b)
        ok = ((prow[b].col < prow[a].col) == (chosen[b]->col < e.col));
      if (!ok) continue;
      chosen[a] = &e;
      if (self(self, a + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

std::vector<PatRow> pattern_rows(const SignedMatrix& pat) {
  std::vector<PatRow> prow;
  for (int i = 1; i <= pat.n; ++i)
    for (int j = 1; j <= pat.n; ++j)
      if (pat.entry(i, j) != 0) prow.push_back({j, pat.entry(i, j)});
  return prow;
}

}  // namespace

bool filling_contains_in_region(const SparseFilling& f, const SignedMatrix& pat, int row_lo,
                                int row_hi, int col_lo, int col_hi) {
  return occurrence_dfs(f, pattern_rows(pat), row_lo, row_hi, col_lo, col_hi, nullptr);
}

bool filling_contains(const SparseFilling& f, const SignedMatrix& pat) {
  return filling_contains_in_region(f, pat, 1, f.shape.num_rows(), 1, f.shape.width());
}

std::optional<std::vector<Corner>> filling_find_occurrence(const SparseFilling& f,
                                                           const SignedMatrix& pat) {
  std::vector<const FillingEntry*> witness;
  if (!occurrence_dfs(f, pattern_rows(pat), 1, f.shape.num_rows(), 1, f.shape.width(), &witness))
    return std::nullopt;
  std::vector<Corner> out;
  for (const auto* e : witness) out.push_back({e->row, e->col});
  return out;
}

void enumerate_fillings(const Shape& s, FillMode mode, bool with_signs,
                        const std::function<void(const SparseFilling&)>& visit) {
  const int m = s.num_rows();
  const int w = s.width();
  SparseFilling f;
  f.shape = s;
  std::vector<bool> used(w + 1, false);
  int used_count = 0;

  auto rec = [&](auto&& self, int r) -> void {
    if (r > m) {
      if (mode == FillMode::transversal && used_count != w) return;
      visit(f);
      return;
    }
    if (mode == FillMode::sparse) self(self, r + 1);  // leave row r empty
    for (int c = s.col_begin(r); c <= s.col_end(r); ++c) {
      if (used[c]) continue;
      used[c] = true;
      ++used_count;
      f.cells.push_back({r, c, 1});
      self(self, r + 1);
      if (with_signs) {
        f.cells.back().sign = -1;
        self(self, r + 1);
      }
      f.cells.pop_back();
      used[c] = false;
      --used_count;
    }
  };
  rec(rec, 1);
}

uint64_t count_fillings(const Shape& s, FillMode mode, bool with_signs) {
  uint64_t n = 0;
  enumerate_fillings(s, mode, with_signs, [&](const SparseFilling&) { ++n; });
  return n;
}

uint64_t count_avoiding_fillings(const Shape& s, const SignedMatrix& pat, FillMode mode,
                                 bool with_signs) {
  uint64_t n = 0;
  enumerate_fillings(s, mode, with_signs, [&](const SparseFilling& f) {
    if (!filling_contains(f, pat)) ++n;
  });
  return n;
}

SparseFilling pi_plus(const SignedPerm& p) {
  const int n = p.size();
  SparseFilling f;
  f.shape.orient = Orientation::ne;
  for (int r = n - 1; r >= 1; --r) f.shape.rows.push_back(r);
  for (int i = 1; i <= n; ++i) {
    int v = p.at(i);
    int j = std::abs(v);
    if (j > i) f.set(i, j - 1, v > 0 ? 1 : -1);
  }
  return f;
}

SparseFilling pi_plus_zero(const SignedPerm& p) {
  const int n = p.size();
  SparseFilling f;
  f.shape.orient = Orientation::ne;
  for (int r = n; r >= 1; --r) f.shape.rows.push_back(r);
  for (int i = 1; i <= n; ++i) {
    int v = p.at(i);
    int j = std::abs(v);
    if (j >= i) f.set(i, j, v > 0 ? 1 : -1);
  }
  return f;
}

SignedPerm extend_to_involution(const SparseFilling& f, const std::map<int, int>& fixed_signs) {
  const int n = f.shape.num_rows() + 1;
  for (int i = 1; i < n; ++i)
    if (f.shape.rows[i - 1] != n - i)
      throw std::invalid_argument("filling is not pi_plus shaped");
  std::vector<int> w(n + 1, 0);
  std::vector<int> support(n + 1, 0);
  for (const auto& e : f.cells) {
    if (!f.shape.contains_cell(e.row, e.col))
      throw std::invalid_argument("cell outside shape at row " + std::to_string(e.row));
    int i = e.row, j = e.col + 1;  // original matrix coordinates
    if (++support[i] > 1)
      throw std::invalid_argument("more than one entry meets index " + std::to_string(i));
    if (++support[j] > 1)
      throw std::invalid_argument("more than one entry meets index " + std::to_string(j));
    w[i] = e.sign > 0 ? j : -j;
    w[j] = e.sign > 0 ? i : -i;
  }
  for (int i = 1; i <= n; ++i) {
    if (support[i] == 0) {
      auto it = fixed_signs.find(i);
      if (it == fixed_signs.end())
        throw std::invalid_argument("missing fixed-point sign for index " + std::to_string(i));
      w[i] = it->second > 0 ? i : -i;
    } else if (fixed_signs.count(i)) {
      throw std::invalid_argument("fixed-point sign given for non-fixed index " +
                                  std::to_string(i));
    }
  }
  SignedPerm p;
  p.letters.assign(w.begin() + 1, w.end());
  return p;
}

SignedPerm involution_from_pi_plus_zero(const SparseFilling& f) {
  const int n = f.shape.num_rows();
  for (int i = 1; i <= n; ++i)
    if (f.shape.rows[i - 1] != n - i + 1)
      throw std::invalid_argument("filling is not pi_plus_zero shaped");
  std::vector<int> w(n + 1, 0);
  std::vector<int> support(n + 1, 0);
  for (const auto& e : f.cells) {
    int i = e.row, j = e.col;
    ++support[i];
    if (j != i) ++support[j];
    w[i] = e.sign > 0 ? j : -j;
    w[j] = e.sign > 0 ? i : -i;
  }
  for (int i = 1; i <= n; ++i)
    if (support[i] != 1)
      throw std::invalid_argument("index " + std::to_string(i) + " has support " +
                                  std::to_string(support[i]));
  SignedPerm p;
  p.letters.assign(w.begin() + 1, w.end());
  return p;
}

std::vector<Shape> all_young_shapes(int max_cells) {
  std::vector<Shape> out;
  std::vector<int> rows;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (!rows.empty()) out.push_back(Shape{rows, Orientation::young});
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      rows.push_back(part);
      self(self, remaining - part, part);
      rows.pop_back();
    }
  };
  rec(rec, max_cells, max_cells);
  std::sort(out.begin(), out.end(), [](const Shape& a, const Shape& b) {
    if (a.cell_count() != b.cell_count()) return a.cell_count() < b.cell_count();
    return a.rows > b.rows;
  });
  return out;
}

}  // namespace wilfkit
