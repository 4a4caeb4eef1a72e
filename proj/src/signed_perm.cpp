#include "wilfkit/signed_perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

namespace wilfkit {

SignedPerm parse_pattern(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));

  SignedPerm p;
  std::set<int> seen;
  for (const auto& tok : tokens) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("not an integer: '" + tok + "'");
    if (v == 0) throw ParseError("zero letter: '" + tok + "'");
    if (!seen.insert(std::abs(v)).second)
      throw ParseError("duplicate absolute value: '" + tok + "'");
    p.letters.push_back(v);
  }
  const int n = p.size();
  for (size_t i = 0; i < p.letters.size(); ++i) {
    if (std::abs(p.letters[i]) > n)
      throw ParseError("letter out of range: '" + tokens[i] + "'");
  }
  return p;
}

std::string format_pattern(const SignedPerm& p) {
  std::ostringstream os;
  for (int i = 0; i < p.size(); ++i) {
    if (i) os << ' ';
    os << p.letters[i];
  }
  return os.str();
}

SignedMatrix to_matrix(const SignedPerm& p) {
  const int n = p.size();
  SignedMatrix m = SignedMatrix::zero(n);
  for (int i = 1; i <= n; ++i) {
    int v = p.at(i);
    m.set(i, std::abs(v), v > 0 ? 1 : -1);
  }
  return m;
}

SignedPerm from_matrix(const SignedMatrix& m) {
  const int n = m.n;
  SignedPerm p;
  p.letters.resize(n, 0);
  std::vector<int> col_hits(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    int hits = 0;
    for (int j = 1; j <= n; ++j) {
      int e = m.entry(i, j);
      if (e == 0) continue;
      ++hits;
      ++col_hits[j];
      p.letters[i - 1] = e > 0 ? j : -j;
    }
    if (hits != 1)
      throw std::invalid_argument("row " + std::to_string(i) + " has " + std::to_string(hits) +
                                  " nonzero entries");
  }
  for (int j = 1; j <= n; ++j) {
    if (col_hits[j] != 1)
      throw std::invalid_argument("column " + std::to_string(j) + " has " +
                                  std::to_string(col_hits[j]) + " nonzero entries");
  }
  return p;
}

bool contains(const SignedPerm& host, const SignedPerm& pat) {
  const int n = host.size(), k = pat.size();
  if (k == 0) return true;
  if (k > n) return false;
  std::vector<int> chosen(k);
  auto rec = [&](auto&& self, int a, int start) -> bool {
    if (a == k) return true;
    for (int i = start; i <= n - (k - a); ++i) {
      int hv = host.letters[i];
      if ((hv > 0) != (pat.letters[a] > 0)) continue;
      bool ok = true;
      for (int b = 0; b < a && ok; ++b) {
        bool pl = std::abs(pat.letters[b]) < std::abs(pat.letters[a]);
        bool hl = std::abs(host.letters[chosen[b]]) < std::abs(hv);
        ok = (pl == hl);
      }
      if (!ok) continue;
      chosen[a] = i;
      if (self(self, a + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

bool is_involution(const SignedPerm& p) {
  // The signed map w(i) = pi_i, w(-i) = -pi_i composed with itself is the
  // identity iff the matrix is symmetric.
  const int n = p.size();
  for (int i = 1; i <= n; ++i) {
    int v = p.at(i);
    int j = std::abs(v);
    int w = p.at(j);
    if (std::abs(w) != i) return false;
    if ((v > 0) != (w > 0)) return false;
  }
  return true;
}

SignedPerm apply_symmetry(const SignedPerm& p, Symmetry g) {
  const int n = p.size();
  SignedPerm r;
  r.letters.resize(n);
  switch (g) {
    case Symmetry::reverse:
      for (int i = 0; i < n; ++i) r.letters[i] = p.letters[n - 1 - i];
      break;
    case Symmetry::bar:
      for (int i = 0; i < n; ++i) r.letters[i] = -p.letters[i];
      break;
    case Symmetry::transpose:
      for (int i = 1; i <= n; ++i) {
        int v = p.at(i);
        r.letters[std::abs(v) - 1] = v > 0 ? i : -i;
      }
      break;
    case Symmetry::antitranspose:
      // (i,j) -> (n+1-j, n+1-i)
      for (int i = 1; i <= n; ++i) {
        int v = p.at(i);
        int j = std::abs(v);
        r.letters[n - j] = v > 0 ? (n + 1 - i) : -(n + 1 - i);
      }
      break;
  }
  return r;
}

SignedMatrix alpha(int k) {
  SignedMatrix m = SignedMatrix::zero(k);
  for (int i = 1; i <= k; ++i) m.set(i, i, 1);
  return m;
}

SignedMatrix beta(int k) {
  SignedMatrix m = SignedMatrix::zero(k);
  for (int i = 1; i <= k; ++i) m.set(i, k + 1 - i, 1);
  return m;
}

SignedMatrix direct_sum(const std::vector<SignedMatrix>& blocks, Layout layout) {
  int total = 0;
  for (const auto& b : blocks) total += b.n;
  SignedMatrix m = SignedMatrix::zero(total);
  int row = 0;
  for (const auto& b : blocks) {
    int col = layout == Layout::diagonal ? row : total - row - b.n;
    for (int i = 1; i <= b.n; ++i)
      for (int j = 1; j <= b.n; ++j)
        if (b.entry(i, j) != 0) m.set(row + i, col + j, b.entry(i, j));
    row += b.n;
  }
  return m;
}

SignedMatrix negate_block(const SignedMatrix& m) {
  SignedMatrix r = m;
  for (auto& e : r.a) e = static_cast<int8_t>(-e);
  return r;
}

SignedMatrix transpose(const SignedMatrix& m) {
  SignedMatrix r = SignedMatrix::zero(m.n);
  for (int i = 1; i <= m.n; ++i)
    for (int j = 1; j <= m.n; ++j) r.set(j, i, m.entry(i, j));
  return r;
}

bool is_symmetric(const SignedMatrix& m) {
  for (int i = 1; i <= m.n; ++i)
    for (int j = i + 1; j <= m.n; ++j)
      if (m.entry(i, j) != m.entry(j, i)) return false;
  return true;
}

SignedMatrix sigma_prime(const SignedMatrix& s) {
  const int k = s.n;
  SignedMatrix m = SignedMatrix::zero(2 * k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (s.entry(i, j) != 0) {
        m.set(i, k + j, s.entry(i, j));
        m.set(k + j, i, s.entry(i, j));
      }
  return m;
}

SignedMatrix sigma_dprime(const SignedMatrix& s) {
  const int k = s.n;
  SignedMatrix m = SignedMatrix::zero(2 * k + 1);
  m.set(k + 1, k + 1, 1);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (s.entry(i, j) != 0) {
        m.set(i, k + 1 + j, s.entry(i, j));
        m.set(k + 1 + j, i, s.entry(i, j));
      }
  return m;
}

SignedMatrix sigma_star(const SignedMatrix& s) {
  const int k = s.n;
  SignedMatrix m = SignedMatrix::zero(k + 1);
  m.set(k + 1, 1, 1);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      if (s.entry(i, j) != 0) m.set(i, 1 + j, s.entry(i, j));
  return m;
}

}  // namespace wilfkit
