#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wilfkit {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A signed permutation written as a word of nonzero letters; a negative
/// letter encodes a barred letter. The multiset of absolute values is
/// {1, ..., n}. n = 0 is the empty pattern.
struct SignedPerm {
  std::vector<int> letters;

  int size() const { return static_cast<int>(letters.size()); }
  int at(int i) const { return letters[i - 1]; }  // 1-based

  bool operator==(const SignedPerm&) const = default;
  auto operator<=>(const SignedPerm&) const = default;
};

/// {0,1,-1}-matrix with exactly one nonzero entry in every row and column.
/// Row = position, column = absolute value: entry(i,j) = 1 iff pi_i = j,
/// entry(i,j) = -1 iff pi_i = -j. Indices are 1-based.
struct SignedMatrix {
  int n = 0;
  std::vector<int8_t> a;  // row-major, n*n

  static SignedMatrix zero(int n) {
    SignedMatrix m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * n, 0);
    return m;
  }

  int entry(int i, int j) const { return a[static_cast<size_t>(i - 1) * n + (j - 1)]; }
  void set(int i, int j, int v) { a[static_cast<size_t>(i - 1) * n + (j - 1)] = static_cast<int8_t>(v); }

  bool operator==(const SignedMatrix&) const = default;
};

// Text format: whitespace- or comma-separated signed decimal integers.
SignedPerm parse_pattern(const std::string& text);
std::string format_pattern(const SignedPerm& p);

SignedMatrix to_matrix(const SignedPerm& p);
SignedPerm from_matrix(const SignedMatrix& m);  // throws std::invalid_argument on bad matrix

/// Word-level pattern containment: indices i_1 < ... < i_k with matching
/// signs and order-isomorphic absolute values.
bool contains(const SignedPerm& host, const SignedPerm& pat);

bool is_involution(const SignedPerm& p);

enum class Symmetry { reverse, transpose, antitranspose, bar };

SignedPerm apply_symmetry(const SignedPerm& p, Symmetry g);

SignedMatrix alpha(int k);  // identity matrix, word 12...k
SignedMatrix beta(int k);   // antidiagonal matrix, word k...1

enum class Layout { diagonal, antidiagonal };

/// Diagonal layout places blocks along the main diagonal; antidiagonal
/// places them along the antidiagonal, first block top-right.
SignedMatrix direct_sum(const std::vector<SignedMatrix>& blocks, Layout layout);

SignedMatrix negate_block(const SignedMatrix& m);  // the -chi operation
SignedMatrix transpose(const SignedMatrix& m);
bool is_symmetric(const SignedMatrix& m);

// sigma' = (0 s / s^t 0), sigma'' = (0 0 s / 0 1 0 / s^t 0 0),
// sigma* = (0 s / 1 0).
SignedMatrix sigma_prime(const SignedMatrix& s);
SignedMatrix sigma_dprime(const SignedMatrix& s);
SignedMatrix sigma_star(const SignedMatrix& s);

}  // namespace wilfkit
