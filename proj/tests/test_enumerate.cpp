#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "wilfkit/cache.hpp"
#include "wilfkit/enumerate.hpp"

using namespace wilfkit;

namespace {

SignedPerm P(const std::string& s) { return parse_pattern(s); }

uint64_t naive_count(const GroundSet& set, const std::vector<SignedPerm>& patterns) {
  uint64_t n = 0;
  generate(set, [&](const SignedPerm& p) {
    for (const auto& pat : patterns)
      if (contains(p, pat)) return;
    ++n;
  });
  return n;
}

}  // namespace

TEST_CASE("set kind names") {
  for (SetKind k : {SetKind::S, SetKind::B, SetKind::I, SetKind::SI})
    CHECK(parse_set_kind(set_kind_name(k)) == k);
  CHECK_THROWS_AS(parse_set_kind("X"), ParseError);
}

TEST_CASE("cardinalities match the recurrences") {
  const uint64_t i_vals[] = {1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496};
  const uint64_t t_vals[] = {1, 2, 6, 20, 76, 312, 1384, 6512, 32400, 168992, 921184};
  uint64_t fact = 1;
  for (int n = 0; n <= 10; ++n) {
    if (n) fact *= n;
    CHECK(cardinality({SetKind::S, n}) == fact);
    CHECK(cardinality({SetKind::I, n}) == i_vals[n]);
    CHECK(cardinality({SetKind::SI, n}) == t_vals[n]);
    if (n <= 8) CHECK(cardinality({SetKind::B, n}) == (fact << n));
  }
  CHECK(cardinality({SetKind::SI, 11}) == 5222208);
  CHECK(cardinality({SetKind::I, 12}) == 140152);
}

TEST_CASE("generation visits each element once") {
  for (SetKind k : {SetKind::S, SetKind::B, SetKind::I, SetKind::SI}) {
    for (int n = 0; n <= (k == SetKind::B ? 6 : 7); ++n) {
      GroundSet set{k, n};
      std::set<SignedPerm> seen;
      generate(set, [&](const SignedPerm& p) {
        CHECK(p.size() == n);
        if (k == SetKind::I || k == SetKind::SI) CHECK(is_involution(p));
        if (k == SetKind::S || k == SetKind::I)
          for (int v : p.letters) CHECK(v > 0);
        CHECK(seen.insert(p).second);
      });
      CHECK(seen.size() == cardinality(set));
    }
  }
}

TEST_CASE("pruned counting agrees with the naive filter") {
  const std::vector<std::vector<SignedPerm>> pattern_sets = {
      {P("1")},         {P("-1")},        {P("1 2")},        {P("2 -1")},
      {P("-2 1")},      {P("-1 -2")},     {P("1 -2 3")},     {P("3 1 2")},
      {P("-2 -1 3")},   {P("1 2"), P("2 1")}, {P("2 1 3"), P("-1 2")},
  };
  for (SetKind k : {SetKind::S, SetKind::B, SetKind::I, SetKind::SI}) {
    for (int n = 0; n <= (k == SetKind::B ? 5 : 6); ++n) {
      for (const auto& pats : pattern_sets) {
        GroundSet set{k, n};
        CHECK(count_avoiders(set, pats) == naive_count(set, pats));
      }
    }
  }
}

TEST_CASE("empty pattern kills everything") {
  CHECK(count_avoiders({SetKind::B, 3}, {P("")}) == 0);
}

TEST_CASE("thread counts do not change totals") {
  for (int threads : {2, 3, 8}) {
    CHECK(count_avoiders({SetKind::SI, 7}, {P("1 2 3 4 5")}, threads) ==
          count_avoiders({SetKind::SI, 7}, {P("1 2 3 4 5")}, 1));
    CHECK(count_avoiders({SetKind::B, 6}, {P("1 -2 3")}, threads) ==
          count_avoiders({SetKind::B, 6}, {P("1 -2 3")}, 1));
  }
}

TEST_CASE("wilf symmetries leave counts unchanged") {
  for (const char* w : {"1 2 3", "2 -1 3", "-3 1 -2"}) {
    SignedPerm p = P(w);
    uint64_t base = count_avoiders({SetKind::B, 6}, {p});
    for (Symmetry g : {Symmetry::reverse, Symmetry::transpose, Symmetry::bar}) {
      CHECK(count_avoiders({SetKind::B, 6}, {apply_symmetry(p, g)}) == base);
    }
  }
  // iwilf group on involutions
  for (const char* w : {"1 2 3", "2 1 -3"}) {
    SignedPerm p = P(w);
    uint64_t base = count_avoiders({SetKind::SI, 6}, {p});
    for (Symmetry g : {Symmetry::transpose, Symmetry::antitranspose, Symmetry::bar}) {
      CHECK(count_avoiders({SetKind::SI, 6}, {apply_symmetry(p, g)}) == base);
    }
  }
}

TEST_CASE("avoider counts grow with n") {
  for (const char* w : {"1 2 3", "3 -1 2"}) {
    uint64_t prev = 0;
    for (int n = 1; n <= 7; ++n) {
      uint64_t cur = count_avoiders({SetKind::SI, n}, {P(w)});
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("fixed-point refinement partitions the avoiders") {
  for (SetKind k : {SetKind::I, SetKind::SI}) {
    for (int n = 1; n <= (k == SetKind::SI ? 6 : 7); ++n) {
      GroundSet set{k, n};
      std::vector<SignedPerm> pats{P("1 2 3")};
      auto refined = count_avoiders_refined(set, pats);
      uint64_t total = 0;
      for (const auto& [mask, count] : refined) {
        CHECK(mask < (1u << n));
        total += count;
      }
      CHECK(total == count_avoiders(set, pats));
    }
  }
  CHECK_THROWS_AS(count_avoiders_refined({SetKind::B, 3}, {P("1")}), std::invalid_argument);
  // refined totals are thread independent
  auto a = count_avoiders_refined({SetKind::SI, 6}, {P("2 1 3")}, 1);
  auto b = count_avoiders_refined({SetKind::SI, 6}, {P("2 1 3")}, 4);
  CHECK(a == b);
}

TEST_CASE("signatures write through the cache") {
  auto dir = std::filesystem::temp_directory_path() / "wilfkit-test-sig-cache";
  std::filesystem::remove_all(dir);
  CountCache cache(dir);
  auto sig = signature(SetKind::SI, P("1 2 3"), 3, 5, 1, &cache);
  CHECK(sig.counts.size() == 3);
  for (int n = 3; n <= 5; ++n) {
    auto hit = cache.lookup("SI", "1 2 3", n);
    REQUIRE(hit.has_value());
    CHECK(*hit == sig.counts.at(n));
    CHECK(*hit == count_avoiders({SetKind::SI, n}, {P("1 2 3")}));
  }
  // second run is served from the cache and returns identical values
  auto sig2 = signature(SetKind::SI, P("1 2 3"), 3, 5, 1, &cache);
  CHECK(sig2.counts == sig.counts);
  std::filesystem::remove_all(dir);
}
