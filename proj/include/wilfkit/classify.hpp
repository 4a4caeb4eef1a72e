#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wilfkit/enumerate.hpp"
#include "wilfkit/signed_perm.hpp"

namespace wilfkit {

class CountCache;

enum class EquivKind { wilf, iwilf };

std::string equiv_kind_name(EquivKind k);
EquivKind parse_equiv_kind(const std::string& s);

/// Symmetry group of the equivalence: wilf is generated by reversal,
/// transpose and (on signed universes) barring; iwilf by the two diagonal
/// reflections and barring.
struct SymmetryGroupSpec {
  EquivKind kind = EquivKind::wilf;
  bool signed_universe = true;

  std::vector<Symmetry> generators() const;
};

std::vector<SignedPerm> orbit(const SignedPerm& p, const SymmetryGroupSpec& g);
SignedPerm canonical(const SignedPerm& p, const SymmetryGroupSpec& g);

/// S_k (unsigned) or B_k (signed), the patterns being classified.
struct Universe {
  int k = 0;
  bool with_signs = false;

  std::string name() const;
  uint64_t size() const;
  std::vector<SignedPerm> members() const;
  bool contains_member(const SignedPerm& p) const;
};

/// Orbit partition of the universe; each orbit sorted, orbits sorted by
/// their least member.
std::vector<std::vector<SignedPerm>> symmetry_classes(const Universe& u,
                                                      const SymmetryGroupSpec& g);

/// A proven-equivalence rewrite. rewrite(p) returns every pattern of the
/// same size obtainable by one application; outputs outside the universe
/// are discarded by the caller.
struct RewriteRule {
  std::string name;
  bool wilf_ok = false;
  bool iwilf_ok = false;
  std::function<std::vector<SignedPerm>(const SignedPerm&)> rewrite;
};

/// R1: diag(alpha_k, chi, alpha_l) <-> diag(beta_k, chi, beta_l), k+l >= 1.
/// R2: around the antidiagonal involution forms, alpha_k <-> beta_k in
///     sigma = (0 X / chi 0) embedded as sigma' (even size) or sigma''.
/// R3: diag(chi1, chi2, chi3) <-> diag(chi1, -chi2, chi3), Wilf only.
/// R4: as R3 but for I-Wilf with at least two of the blocks symmetric; any
///     nonempty subset of the blocks may be negated.
/// R5: sigma'/sigma'' of (0 chi1 / chi2 0) with chi2 negated, I-Wilf.
/// R6: diag(alpha_k, X) <-> diag(beta_k, X), k >= 1.
/// R7: R6 restricted to k in {2, 3} (the historically separate cases).
const std::vector<RewriteRule>& all_rules();
std::vector<RewriteRule> rules_for(EquivKind kind, bool signed_universe);

struct RuleEdge {
  SignedPerm from;
  SignedPerm to;  // both canonical
  std::string rule;
};

struct EquivClass {
  SignedPerm representative;          // least member
  std::vector<SignedPerm> members;    // canonical orbit representatives
  std::vector<std::string> provenance;  // "orbit" and the merging rule names
  std::map<int, uint64_t> signature;  // avoider counts by n, lazily filled
  std::string status;                 // "separated-at-n=<m>" or "signature-merged (unproven)"
};

/// Union-find closure of the orbit partition under the rule edges; outputs
/// are canonicalized through the group and dropped when outside the
/// universe. Throws std::logic_error if a rule changes the pattern size.
std::vector<EquivClass> apply_rules(const Universe& u, const SymmetryGroupSpec& g,
                                    const std::vector<RewriteRule>& rules,
                                    std::vector<RuleEdge>* edges = nullptr);

struct ClassifyReport {
  Universe universe;
  SymmetryGroupSpec group;
  SetKind count_set = SetKind::S;
  int n_lo = 0;
  int n_hi = 0;
  std::vector<EquivClass> classes;  // ordered by (first signature value, representative)
  std::vector<std::pair<size_t, size_t>> unseparated;  // index pairs, i < j
};

/// Computes signatures for the class representatives lazily: ascending n,
/// only for groups of classes still sharing all computed counts, stopping
/// once everything is separated or the range is exhausted.
ClassifyReport refine_by_signature(std::vector<EquivClass> classes, const Universe& u,
                                   const SymmetryGroupSpec& g, SetKind set, int n_lo, int n_hi,
                                   int threads = 1, CountCache* cache = nullptr);

/// symmetry_classes -> apply_rules -> refine_by_signature with the standard
/// rule set and counting ground set of the kind (wilf: S/B, iwilf: I/SI).
ClassifyReport classify(const Universe& u, EquivKind kind, int max_n, int threads = 1,
                        CountCache* cache = nullptr);

std::string emit_csv(const ClassifyReport& r);
std::string emit_json(const ClassifyReport& r);

}  // namespace wilfkit
