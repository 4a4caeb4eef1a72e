#include "wilfkit/bijections.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>

namespace wilfkit {

namespace {

std::string cells_text(const std::vector<Corner>& cells) {
  std::ostringstream os;
  for (const auto& c : cells) os << '(' << c.row << ',' << c.col << ") ";
  return os.str();
}

void require_avoids(const SparseFilling& f, const SignedMatrix& theta, const char* what) {
  if (auto occ = filling_find_occurrence(f, theta)) {
    throw WitnessError(std::string(what) + ": input contains the forbidden pattern at cells " +
                       cells_text(*occ));
  }
}

std::string oracle_key(const Shape& s, const SignedMatrix& chi1, const SignedMatrix& chi2) {
  return format_shape(s) + "|" + format_pattern(from_matrix(chi1)) + "|" +
         format_pattern(from_matrix(chi2));
}

std::vector<int> corner_values(const SparseFilling& f) {
  std::vector<int> vals;
  for (const auto& c : corners(f.shape)) vals.push_back(f.entry(c.row, c.col));
  return vals;
}

}  // namespace

std::vector<Corner> barring_coloured_cells(const SparseFilling& f, const SignedMatrix& chi1) {
  std::vector<Corner> out;
  const Shape& s = f.shape;
  for (int r = 1; r <= s.num_rows(); ++r)
    for (int c = s.col_begin(r); c <= s.col_end(r); ++c)
      if (filling_contains_in_region(f, chi1, 1, r - 1, 1, c - 1)) out.push_back({r, c});
  return out;
}

SparseFilling barring_map(const SparseFilling& f, const SignedMatrix& chi1,
                          const SignedMatrix& chi2) {
  require_avoids(f, direct_sum({chi1, chi2}, Layout::diagonal), "barring_map");
  std::set<std::pair<int, int>> coloured;
  for (const auto& c : barring_coloured_cells(f, chi1)) coloured.insert({c.row, c.col});
  SparseFilling g = f;
  for (auto& e : g.cells)
    if (coloured.count({e.row, e.col})) e.sign = -e.sign;
  return g;
}

SparseFilling barring_map_symmetric(const SparseFilling& f, const SignedMatrix& chi1,
                                    const SignedMatrix& chi2) {
  if (f.shape.orient != Orientation::young || !is_self_conjugate(f.shape))
    throw std::invalid_argument("barring_map_symmetric: shape must be self-conjugate young");
  if (!f.is_symmetric())
    throw std::invalid_argument("barring_map_symmetric: filling must be symmetric");
  if (is_symmetric(chi1)) return barring_map(f, chi1, chi2);
  if (!is_symmetric(chi2))
    throw std::invalid_argument("barring_map_symmetric: neither pattern block is symmetric");
  require_avoids(f, direct_sum({chi1, chi2}, Layout::diagonal), "barring_map_symmetric");
  // Colour by chi2 occurrences strictly south-east; negate the uncoloured
  // nonzeros.
  const Shape& s = f.shape;
  SparseFilling g = f;
  for (auto& e : g.cells) {
    bool coloured = filling_contains_in_region(f, chi2, e.row + 1, s.num_rows(), e.col + 1,
                                               s.width());
    if (!coloured) e.sign = -e.sign;
  }
  return g;
}

const PhiOracle::Lists& PhiOracle::lists_for(const Shape& s, const SignedMatrix& chi1,
                                             const SignedMatrix& chi2) const {
  const std::string key = oracle_key(s, chi1, chi2);
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Lists lists;
  enumerate_fillings(s, FillMode::transversal, /*with_signs=*/true, [&](const SparseFilling& t) {
    if (!filling_contains(t, chi1)) lists.lhs.push_back(t);
    if (!filling_contains(t, chi2)) lists.rhs.push_back(t);
  });
  auto order = [this](const SparseFilling& a, const SparseFilling& b) {
    if (refine_by_corners_) {
      auto ca = corner_values(a), cb = corner_values(b);
      if (ca != cb) return ca < cb;
    }
    return a.cells < b.cells;
  };
  std::sort(lists.lhs.begin(), lists.lhs.end(), order);
  std::sort(lists.rhs.begin(), lists.rhs.end(), order);
  if (lists.lhs.size() != lists.rhs.size())
    throw ShapeWilfFailure("empirical shape-Wilf failure on shape " + format_shape(s) + ": " +
                           std::to_string(lists.lhs.size()) + " vs " +
                           std::to_string(lists.rhs.size()) + " avoiders");
  if (refine_by_corners_) {
    for (size_t i = 0; i < lists.lhs.size(); ++i) {
      auto ca = corner_values(lists.lhs[i]), cb = corner_values(lists.rhs[i]);
      if (ca != cb) {
        std::ostringstream os;
        os << "empirical shape-Wilf failure on shape " << format_shape(s)
           << ": corner-value blocks mismatch at corner vector (";
        for (int v : ca) os << v << ' ';
        os << ")";
        throw ShapeWilfFailure(os.str());
      }
    }
  }
  std::unique_lock lock(mu_);
  return cache_.emplace(key, std::move(lists)).first->second;
}

SparseFilling PhiOracle::apply(const SparseFilling& transversal, const SignedMatrix& chi1,
                               const SignedMatrix& chi2) const {
  const Lists& lists = lists_for(transversal.shape, chi1, chi2);
  auto it = std::find(lists.lhs.begin(), lists.lhs.end(), transversal);
  if (it == lists.lhs.end())
    throw WitnessError("oracle_phi: transversal is not chi1-avoiding on shape " +
                       format_shape(transversal.shape));
  return lists.rhs[static_cast<size_t>(it - lists.lhs.begin())];
}

std::pair<size_t, size_t> PhiOracle::check(const Shape& s, const SignedMatrix& chi1,
                                           const SignedMatrix& chi2) const {
  const Lists& lists = lists_for(s, chi1, chi2);
  return {lists.lhs.size(), lists.rhs.size()};
}

SparseFilling prop1_map(const SparseFilling& f, const SignedMatrix& chi1, const SignedMatrix& chi2,
                        const SignedMatrix& chi, const PhiOracle& phi, ZeroLineRule rule) {
  const Shape& s = f.shape;
  const bool young = s.orient == Orientation::young;
  const SignedMatrix theta =
      direct_sum({chi1, chi}, young ? Layout::diagonal : Layout::antidiagonal);
  require_avoids(f, theta, "prop1_map");

  const int m = s.num_rows(), w = s.width();
  // coloured[r][c], 1-based; cells outside the shape stay false.
  std::vector<std::vector<bool>> coloured(m + 1, std::vector<bool>(w + 1, false));
  for (int r = 1; r <= m; ++r)
    for (int c = s.col_begin(r); c <= s.col_end(r); ++c) {
      bool occ = young ? filling_contains_in_region(f, chi, r + 1, m, c + 1, w)
                       : filling_contains_in_region(f, chi, r + 1, m, 1, c - 1);
      coloured[r][c] = !occ;
    }

  // Zero-line closure: colour every row/column whose uncoloured cells all
  // hold zeros.
  for (;;) {
    bool changed = false;
    for (int r = 1; r <= m; ++r) {
      bool all_zero = true;
      for (int c = s.col_begin(r); c <= s.col_end(r); ++c)
        if (!coloured[r][c] && f.entry(r, c) != 0) all_zero = false;
      if (!all_zero) continue;
      for (int c = s.col_begin(r); c <= s.col_end(r); ++c)
        if (!coloured[r][c]) coloured[r][c] = true, changed = true;
    }
    for (int c = 1; c <= w; ++c) {
      bool all_zero = true;
      for (int r = 1; r <= m; ++r)
        if (s.contains_cell(r, c) && !coloured[r][c] && f.entry(r, c) != 0) all_zero = false;
      if (!all_zero) continue;
      for (int r = 1; r <= m; ++r)
        if (s.contains_cell(r, c) && !coloured[r][c]) coloured[r][c] = true, changed = true;
    }
    if (rule == ZeroLineRule::single_pass || !changed) break;
  }

  // Compress the uncoloured region.
  std::vector<int> rows_used, cols_used;
  for (int r = 1; r <= m; ++r)
    for (int c = s.col_begin(r); c <= s.col_end(r); ++c)
      if (!coloured[r][c]) {
        rows_used.push_back(r);
        cols_used.push_back(c);
      }
  std::sort(rows_used.begin(), rows_used.end());
  rows_used.erase(std::unique(rows_used.begin(), rows_used.end()), rows_used.end());
  std::sort(cols_used.begin(), cols_used.end());
  cols_used.erase(std::unique(cols_used.begin(), cols_used.end()), cols_used.end());
  std::map<int, int> row_idx, col_idx;
  for (size_t i = 0; i < rows_used.size(); ++i) row_idx[rows_used[i]] = static_cast<int>(i) + 1;
  for (size_t i = 0; i < cols_used.size(); ++i) col_idx[cols_used[i]] = static_cast<int>(i) + 1;
  const int wc = static_cast<int>(cols_used.size());

  Shape sub;
  sub.orient = s.orient;
  for (int r : rows_used) {
    std::vector<int> idxs;
    for (int c : cols_used)
      if (s.contains_cell(r, c) && !coloured[r][c]) idxs.push_back(col_idx[c]);
    const int len = static_cast<int>(idxs.size());
    for (int i = 0; i < len; ++i) {
      int expect = young ? i + 1 : wc - len + 1 + i;
      if (idxs[i] != expect)
        throw std::logic_error("prop1_map: uncoloured region is not a subdiagram");
    }
    sub.rows.push_back(len);
  }
  if (!sub.valid()) throw std::logic_error("prop1_map: uncoloured region is not a subdiagram");

  SparseFilling inner;
  inner.shape = sub;
  for (const auto& e : f.cells)
    if (!coloured[e.row][e.col]) inner.set(row_idx[e.row], col_idx[e.col], e.sign);
  if (!inner.is_transversal())
    throw WitnessError("prop1_map: uncoloured cells do not carry a transversal");

  SparseFilling image = phi.apply(inner, chi1, chi2);

  SparseFilling g;
  g.shape = s;
  for (const auto& e : f.cells)
    if (coloured[e.row][e.col]) g.set(e.row, e.col, e.sign);
  for (const auto& e : image.cells)
    g.set(rows_used[e.row - 1], cols_used[e.col - 1], e.sign);
  return g;
}

SignedPerm thm1_map(const SignedPerm& p, const SignedMatrix& sigma, const SignedMatrix& tau,
                    const PhiOracle& phi) {
  if (!is_involution(p)) throw WitnessError("thm1_map: " + format_pattern(p) + " is not an involution");
  SignedPerm sp = from_matrix(sigma_prime(sigma));
  if (contains(p, sp))
    throw WitnessError("thm1_map: " + format_pattern(p) + " contains sigma' = " +
                       format_pattern(sp));
  SparseFilling g = prop1_map(pi_plus(p), sigma, tau, SignedMatrix::zero(0), phi);
  std::map<int, int> fixed_signs;
  for (int i = 1; i <= p.size(); ++i)
    if (std::abs(p.at(i)) == i) fixed_signs[i] = p.at(i) > 0 ? 1 : -1;
  return extend_to_involution(g, fixed_signs);
}

SignedPerm thm2_map(const SignedPerm& p, const SignedMatrix& sigma, const SignedMatrix& tau,
                    const PhiOracle& phi) {
  if (!is_involution(p)) throw WitnessError("thm2_map: " + format_pattern(p) + " is not an involution");
  SignedPerm sd = from_matrix(sigma_dprime(sigma));
  if (contains(p, sd))
    throw WitnessError("thm2_map: " + format_pattern(p) + " contains sigma'' = " +
                       format_pattern(sd));
  SignedMatrix one = alpha(1);
  SparseFilling g = prop1_map(pi_plus_zero(p), sigma, tau, one, phi);
  return involution_from_pi_plus_zero(g);
}

}  // namespace wilfkit
