#pragma once

#include <string>
#include <vector>

#include "wilfkit/bijections.hpp"

namespace wilfkit {

struct VerifyResult {
  std::string check;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<VerifyResult>& results);
std::string render_results(const std::vector<VerifyResult>& results);

/// Sign-flip bijection properties over every young shape with at most
/// max_cells cells and every pattern pair from {(1), (-1), alpha_2, beta_2}:
/// the image avoids the flipped pattern, nonzero positions are preserved,
/// the colouring is reproduced on the image, the map round-trips, the two
/// avoider sets are equinumerous, and the symmetric variant preserves
/// symmetry on self-conjugate shapes.
std::vector<VerifyResult> verify_barring(int max_cells);

/// Colouring-framework properties on young and ne shapes for the
/// alpha_2/beta_2 pair with a single-cell lower block: image avoidance,
/// per-row and per-column nonzero counts, corner values, injectivity,
/// avoider counts, round trips.
std::vector<VerifyResult> verify_prop1(int max_cells);

/// Per-shape avoider count equality for alpha_k vs beta_k, k in {2, 3},
/// over signed and unsigned transversals, young shapes up to max_cells.
std::vector<VerifyResult> verify_shape_wilf(int max_cells);
std::vector<VerifyResult> verify_shape_wilf_pair(const SignedMatrix& a, const SignedMatrix& b,
                                                 int max_cells);

/// The even-size involution bijection on SI_n, n <= max_n, for the pairs
/// (alpha_2, beta_2) and (alpha_3, beta_3): image validity and avoidance,
/// pointwise fixed points with signs, round trips, refined count equality.
std::vector<VerifyResult> verify_thm1(int max_n);
std::vector<VerifyResult> verify_thm1_pair(const SignedMatrix& sigma, const SignedMatrix& tau,
                                           int max_n);

/// Same for the odd-size construction with the central fixed point.
std::vector<VerifyResult> verify_thm2(int max_n);
std::vector<VerifyResult> verify_thm2_pair(const SignedMatrix& sigma, const SignedMatrix& tau,
                                           int max_n);

}  // namespace wilfkit
