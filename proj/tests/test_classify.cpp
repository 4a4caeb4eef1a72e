#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include <json.hpp>

#include "wilfkit/classify.hpp"

using namespace wilfkit;

namespace {

SignedPerm P(const std::string& s) { return parse_pattern(s); }

const RewriteRule& rule(const std::string& name) {
  for (const auto& r : all_rules())
    if (r.name == name) return r;
  throw std::logic_error("no such rule");
}

bool rewrites_to(const std::string& name, const std::string& from, const std::string& to) {
  auto outs = rule(name).rewrite(P(from));
  return std::find(outs.begin(), outs.end(), P(to)) != outs.end();
}

}  // namespace

TEST_CASE("orbits") {
  SymmetryGroupSpec wilf_b{EquivKind::wilf, true};
  auto orb = orbit(P("1 2"), wilf_b);
  CHECK(orb.size() == 4);
  std::set<SignedPerm> expect{P("1 2"), P("2 1"), P("-1 -2"), P("-2 -1")};
  CHECK(std::set<SignedPerm>(orb.begin(), orb.end()) == expect);

  SymmetryGroupSpec iwilf_b{EquivKind::iwilf, true};
  CHECK(orbit(P("1 2 3 4 5"), iwilf_b).size() == 2);

  // canonical form is constant on the orbit
  for (const auto& p : orb) CHECK(canonical(p, wilf_b) == canonical(P("1 2"), wilf_b));
}

TEST_CASE("universes") {
  Universe s3{3, false};
  CHECK(s3.size() == 6);
  CHECK(s3.members().size() == 6);
  CHECK(s3.contains_member(P("2 1 3")));
  CHECK_FALSE(s3.contains_member(P("2 -1 3")));
  CHECK_FALSE(s3.contains_member(P("1 2")));

  Universe b3{3, true};
  CHECK(b3.size() == 48);
  auto members = b3.members();
  CHECK(members.size() == 48);
  CHECK(std::is_sorted(members.begin(), members.end()));
  CHECK(b3.contains_member(P("2 -1 3")));
}

TEST_CASE("symmetry class counts") {
  CHECK(symmetry_classes(Universe{5, true}, {EquivKind::wilf, true}).size() == 284);
  CHECK(symmetry_classes(Universe{5, true}, {EquivKind::iwilf, true}).size() == 566);
  CHECK(symmetry_classes(Universe{5, false}, {EquivKind::iwilf, false}).size() == 45);
  // orbit sizes partition the universe
  auto classes = symmetry_classes(Universe{4, true}, {EquivKind::wilf, true});
  size_t total = 0;
  for (const auto& c : classes) total += c.size();
  CHECK(total == Universe{4, true}.size());
}

TEST_CASE("rewrite rule outputs") {
  CHECK(rewrites_to("R6", "1 2 3", "3 2 1"));
  CHECK(rewrites_to("R6", "2 1 3", "1 2 3"));
  CHECK(rewrites_to("R6", "2 1 -3", "1 2 -3"));
  CHECK(rewrites_to("R7", "2 1 3", "1 2 3"));
  CHECK(rewrites_to("R7", "1 2 3", "3 2 1"));
  CHECK(rewrites_to("R7", "1 2 3 4", "3 2 1 4"));
  CHECK_FALSE(rewrites_to("R7", "1 2 3 4", "4 3 2 1"));  // k = 4 is R6 territory
  CHECK(rewrites_to("R1", "1 3 2", "1 2 3"));  // empty prefix, beta_2 suffix
  CHECK(rule("R1").rewrite(P("1 -2 3")).empty());
  // flip both end blocks together
  CHECK(rewrites_to("R1", "1 2 -3 4 5", "2 1 -3 5 4"));
  CHECK(rewrites_to("R3", "1 2 3", "1 -2 3"));
  CHECK(rewrites_to("R3", "1 2 3", "-1 -2 3"));
  CHECK(rewrites_to("R4", "1 2 3", "1 -2 3"));
  CHECK(rewrites_to("R2", "5 4 3 2 1", "4 5 3 1 2"));
  CHECK(rewrites_to("R2", "4 5 3 1 2", "5 4 3 2 1"));
  CHECK(rewrites_to("R2", "6 5 4 3 2 1", "4 5 6 1 2 3"));
  CHECK(rewrites_to("R2", "6 5 4 3 2 1", "5 6 4 3 1 2"));
}

TEST_CASE("R2 merges the conjectured pairs") {
  SymmetryGroupSpec g{EquivKind::iwilf, false};
  std::vector<RuleEdge> edges;
  auto classes5 = apply_rules(Universe{5, false}, g, rules_for(EquivKind::iwilf, false), &edges);
  auto find_class = [](const std::vector<EquivClass>& classes, const SignedPerm& rep_member,
                       const SymmetryGroupSpec& gr) -> const EquivClass& {
    SignedPerm c = canonical(rep_member, gr);
    for (const auto& cls : classes)
      for (const auto& m : cls.members)
        if (m == c) return cls;
    throw std::logic_error("class not found");
  };
  const EquivClass& c54321 = find_class(classes5, P("5 4 3 2 1"), g);
  const EquivClass& c45312 = find_class(classes5, P("4 5 3 1 2"), g);
  CHECK(&c54321 == &c45312);
  CHECK(std::find(c54321.provenance.begin(), c54321.provenance.end(), "rule(R2)") !=
        c54321.provenance.end());

  auto classes6 = apply_rules(Universe{6, false}, g, rules_for(EquivKind::iwilf, false));
  const EquivClass& a = find_class(classes6, P("6 5 4 3 2 1"), g);
  const EquivClass& b = find_class(classes6, P("4 5 6 1 2 3"), g);
  const EquivClass& d = find_class(classes6, P("5 6 4 3 1 2"), g);
  CHECK(&a == &b);
  CHECK(&a == &d);
}

TEST_CASE("rule soundness guard") {
  RewriteRule bad{"Rbad", true, true,
                  [](const SignedPerm&) { return std::vector<SignedPerm>{P("1")}; }};
  CHECK_THROWS_AS(
      apply_rules(Universe{2, false}, {EquivKind::wilf, false}, {bad}), std::logic_error);
}

TEST_CASE("sampled rule edges have equal counts") {
  std::vector<RuleEdge> edges;
  apply_rules(Universe{4, true}, {EquivKind::iwilf, true},
              rules_for(EquivKind::iwilf, true), &edges);
  REQUIRE(!edges.empty());
  size_t step = std::max<size_t>(1, edges.size() / 10);
  for (size_t i = 0; i < edges.size(); i += step) {
    for (int n = 4; n <= 6; ++n) {
      CHECK(count_avoiders({SetKind::SI, n}, {edges[i].from}) ==
            count_avoiders({SetKind::SI, n}, {edges[i].to}));
    }
  }
}

TEST_CASE("classification of small universes") {
  auto report = classify(Universe{3, false}, EquivKind::iwilf, 8, 2);
  size_t members = 0;
  for (const auto& c : report.classes) members += c.members.size();
  CHECK(members == symmetry_classes(Universe{3, false}, {EquivKind::iwilf, false}).size());
  // every class carries a first-level signature; ordering follows it
  uint64_t prev = 0;
  for (const auto& c : report.classes) {
    REQUIRE(!c.signature.empty());
    CHECK(c.signature.begin()->first == 4);
    CHECK(c.signature.begin()->second >= prev);
    prev = c.signature.begin()->second;
  }
  // brute-force the same classification directly over I_n counts
  for (size_t i = 0; i < report.classes.size(); ++i)
    for (size_t j = i + 1; j < report.classes.size(); ++j) {
      bool tied = true;
      for (int n = 4; n <= 8; ++n)
        if (count_avoiders({SetKind::I, n}, {report.classes[i].representative}) !=
            count_avoiders({SetKind::I, n}, {report.classes[j].representative}))
          tied = false;
      bool listed = std::find(report.unseparated.begin(), report.unseparated.end(),
                              std::make_pair(i, j)) != report.unseparated.end();
      CHECK(tied == listed);
    }
}

TEST_CASE("report emission") {
  auto report = classify(Universe{3, false}, EquivKind::iwilf, 6, 2);
  std::string csv = emit_csv(report);
  CHECK(csv.rfind("class_id,representative,provenance,n=4,n=5,n=6\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(report.classes.size()));

  auto doc = nlohmann::json::parse(emit_json(report));
  CHECK(doc["universe"] == "S3");
  CHECK(doc["mode"] == "iwilf");
  CHECK(doc["classes"].size() == report.classes.size());
  CHECK(doc["classes"][0].contains("members"));

  // byte stability
  CHECK(emit_csv(classify(Universe{3, false}, EquivKind::iwilf, 6, 2)) == csv);
}
