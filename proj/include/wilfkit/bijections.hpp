#pragma once

#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wilfkit/shape.hpp"
#include "wilfkit/signed_perm.hpp"

namespace wilfkit {

/// Raised when a map's precondition fails; the message carries the witness.
class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the two avoider sets of a subshape cannot be matched.
class ShapeWilfFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cells with a chi1 occurrence strictly north-west, per shape cell.
std::vector<Corner> barring_coloured_cells(const SparseFilling& f, const SignedMatrix& chi1);

/// Sign-flip bijection between diag(chi1, chi2)-avoiding and
/// diag(chi1, -chi2)-avoiding sparse fillings: negate every entry in a cell
/// with a chi1 occurrence strictly to its north-west. Nonzero positions are
/// unchanged. Throws WitnessError if f contains diag(chi1, chi2).
SparseFilling barring_map(const SparseFilling& f, const SignedMatrix& chi1,
                          const SignedMatrix& chi2);

/// Symmetry-preserving variant for symmetric fillings of self-conjugate
/// shapes; requires chi1 or chi2 symmetric. When only chi2 is symmetric,
/// colours by chi2 occurrences strictly south-east and negates the
/// uncoloured nonzeros instead.
SparseFilling barring_map_symmetric(const SparseFilling& f, const SignedMatrix& chi1,
                                    const SignedMatrix& chi2);

/// Realization of the inner bijection phi: per subshape, the chi1-avoiding
/// and chi2-avoiding signed transversals are enumerated, sorted, and matched
/// by index. A count mismatch raises ShapeWilfFailure naming the shape (this
/// doubles as an empirical falsification detector). With refine_by_corners
/// the lists are additionally blocked by the vector of corner values; note
/// that the corner-refined matching is strictly stronger than what the
/// colouring framework needs and fails already for alpha_2/beta_2 on the
/// 2x2 square, so it is off by default.
class PhiOracle {
 public:
  explicit PhiOracle(bool refine_by_corners = false) : refine_by_corners_(refine_by_corners) {}

  SparseFilling apply(const SparseFilling& transversal, const SignedMatrix& chi1,
                      const SignedMatrix& chi2) const;

  /// Avoider counts of both sides on one shape; raises ShapeWilfFailure on
  /// any matching failure.
  std::pair<size_t, size_t> check(const Shape& s, const SignedMatrix& chi1,
                                  const SignedMatrix& chi2) const;

 private:
  struct Lists {
    std::vector<SparseFilling> lhs;
    std::vector<SparseFilling> rhs;
  };
  const Lists& lists_for(const Shape& s, const SignedMatrix& chi1, const SignedMatrix& chi2) const;

  bool refine_by_corners_;
  mutable std::map<std::string, Lists> cache_;
  mutable std::shared_mutex mu_;
};

enum class ZeroLineRule { fixpoint, single_pass };

/// The colouring framework: colour cells with no chi occurrence strictly
/// south-east (young) / south-west (ne), close rows and columns whose
/// uncoloured cells are all zero, replace the uncoloured transversal by its
/// phi image, keep coloured cells. Maps theta-avoiding to omega-avoiding
/// sparse fillings, where theta stacks chi1 over chi (diagonally for young,
/// antidiagonally for ne) and omega uses chi2 instead of chi1.
SparseFilling prop1_map(const SparseFilling& f, const SignedMatrix& chi1, const SignedMatrix& chi2,
                        const SignedMatrix& chi, const PhiOracle& phi,
                        ZeroLineRule rule = ZeroLineRule::fixpoint);

/// Fixed-point preserving bijection SI_n(sigma') -> SI_n(tau'): apply the
/// ne colouring framework with empty chi to pi_plus, extend back with the
/// original fixed-point signs.
SignedPerm thm1_map(const SignedPerm& p, const SignedMatrix& sigma, const SignedMatrix& tau,
                    const PhiOracle& phi);

/// Fixed-point preserving bijection SI_n(sigma'') -> SI_n(tau''): same via
/// pi_plus_zero and the starred patterns; the diagonal cells are the shape's
/// corners and stay coloured, so fixed points and their signs carry over.
SignedPerm thm2_map(const SignedPerm& p, const SignedMatrix& sigma, const SignedMatrix& tau,
                    const PhiOracle& phi);

}  // namespace wilfkit
