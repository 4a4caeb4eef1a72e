#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wilfkit/signed_perm.hpp"

namespace wilfkit {

class CountCache;

enum class SetKind { S, B, I, SI };

std::string set_kind_name(SetKind k);
SetKind parse_set_kind(const std::string& s);

/// Ground set for generation and avoidance counting. Supported up to
/// n = 16 by construction (counts use 64-bit arithmetic); practical n is
/// bounded by |B_n| growth, see the counting routines.
struct GroundSet {
  SetKind kind = SetKind::S;
  int n = 0;
};

/// |S_n| = n!, |B_n| = 2^n n!, I(n) = I(n-1) + (n-1) I(n-2),
/// T(n) = 2 T(n-1) + 2(n-1) T(n-2).
uint64_t cardinality(const GroundSet& set);

/// Visits every element exactly once, in deterministic order. SI recursion:
/// the largest free index m becomes a signed fixed point (+m then -m) or is
/// paired with a smaller position i ascending, positive pair before negative.
void generate(const GroundSet& set, const std::function<void(const SignedPerm&)>& visit);

/// Number of elements containing none of the patterns. The recursive search
/// prunes a branch as soon as the partial word contains some pattern; only
/// embeddings through freshly placed letters are re-searched. Totals are
/// identical for any thread count.
uint64_t count_avoiders(const GroundSet& set, const std::vector<SignedPerm>& patterns,
                        int threads = 1);

/// Avoider counts partitioned by the set of fixed-point positions
/// {i : |pi_i| = i}, encoded as a bitmask with bit (i-1). Only involution
/// ground sets (I, SI) are supported; throws std::invalid_argument otherwise.
using RefinedCounts = std::map<uint32_t, uint64_t>;
RefinedCounts count_avoiders_refined(const GroundSet& set, const std::vector<SignedPerm>& patterns,
                                     int threads = 1);

struct CountSignature {
  SetKind set = SetKind::S;
  SignedPerm pattern;
  std::map<int, uint64_t> counts;
};

/// Avoider counts of a single pattern for each n in [n_lo, n_hi], written
/// through the cache when one is given.
CountSignature signature(SetKind kind, const SignedPerm& pattern, int n_lo, int n_hi,
                         int threads = 1, CountCache* cache = nullptr);

}  // namespace wilfkit
