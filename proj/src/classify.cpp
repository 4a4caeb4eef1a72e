#include "wilfkit/classify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wilfkit/cache.hpp"

namespace wilfkit {

std::string equiv_kind_name(EquivKind k) { return k == EquivKind::wilf ? "wilf" : "iwilf"; }

EquivKind parse_equiv_kind(const std::string& s) {
  if (s == "wilf") return EquivKind::wilf;
  if (s == "iwilf") return EquivKind::iwilf;
  throw ParseError("unknown equivalence kind: '" + s + "'");
}

std::vector<Symmetry> SymmetryGroupSpec::generators() const {
  std::vector<Symmetry> gens;
  if (kind == EquivKind::wilf)
    gens = {Symmetry::reverse, Symmetry::transpose};
  else
    gens = {Symmetry::transpose, Symmetry::antitranspose};
  if (signed_universe) gens.push_back(Symmetry::bar);
  return gens;
}

std::vector<SignedPerm> orbit(const SignedPerm& p, const SymmetryGroupSpec& g) {
  const auto gens = g.generators();
  std::set<SignedPerm> seen{p};
  std::vector<SignedPerm> queue{p};
  while (!queue.empty()) {
    SignedPerm cur = queue.back();
    queue.pop_back();
    for (Symmetry s : gens) {
      SignedPerm next = apply_symmetry(cur, s);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

SignedPerm canonical(const SignedPerm& p, const SymmetryGroupSpec& g) {
  auto orb = orbit(p, g);
  return *std::min_element(orb.begin(), orb.end());
}

std::string Universe::name() const { return (with_signs ? "B" : "S") + std::to_string(k); }

uint64_t Universe::size() const {
  uint64_t s = 1;
  for (int i = 2; i <= k; ++i) s *= i;
  if (with_signs) s <<= k;
  return s;
}

std::vector<SignedPerm> Universe::members() const {
  std::vector<int> base(k);
  std::iota(base.begin(), base.end(), 1);
  std::vector<SignedPerm> out;
  do {
    if (!with_signs) {
      out.push_back(SignedPerm{base});
      continue;
    }
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      SignedPerm p{base};
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) p.letters[i] = -p.letters[i];
      out.push_back(std::move(p));
    }
  } while (std::next_permutation(base.begin(), base.end()));
  std::sort(out.begin(), out.end());
  return out;
}

bool Universe::contains_member(const SignedPerm& p) const {
  if (p.size() != k) return false;
  std::vector<bool> seen(k + 1, false);
  for (int v : p.letters) {
    int a = std::abs(v);
    if (a < 1 || a > k || seen[a]) return false;
    seen[a] = true;
    if (!with_signs && v < 0) return false;
  }
  return true;
}

std::vector<std::vector<SignedPerm>> symmetry_classes(const Universe& u,
                                                      const SymmetryGroupSpec& g) {
  std::map<SignedPerm, std::vector<SignedPerm>> by_canon;
  for (const auto& p : u.members()) by_canon[canonical(p, g)].push_back(p);
  std::vector<std::vector<SignedPerm>> out;
  for (auto& [rep, members] : by_canon) out.push_back(std::move(members));
  return out;
}

namespace {

// t is a diagonal cut iff positions 1..t carry exactly the values 1..t.
std::vector<int> diag_cuts(const SignedPerm& w) {
  std::vector<int> cuts{0};
  int mx = 0;
  for (int i = 1; i <= w.size(); ++i) {
    mx = std::max(mx, std::abs(w.at(i)));
    if (mx == i) cuts.push_back(i);
  }
  return cuts;
}

// Block on positions a+1..b of a diagonally split word, values shifted to 1..b-a.
SignedPerm block_word(const SignedPerm& w, int a, int b) {
  SignedPerm v;
  for (int i = a + 1; i <= b; ++i) {
    int x = w.at(i);
    v.letters.push_back(x > 0 ? x - a : x + a);
  }
  return v;
}

bool is_alpha_word(const SignedPerm& v) {
  for (int i = 1; i <= v.size(); ++i)
    if (v.at(i) != i) return false;
  return true;
}

bool is_beta_word(const SignedPerm& v) {
  for (int i = 1; i <= v.size(); ++i)
    if (v.at(i) != v.size() + 1 - i) return false;
  return true;
}

void put_alpha(SignedPerm* w, int a, int len) {
  for (int i = 1; i <= len; ++i) w->letters[a + i - 1] = a + i;
}

void put_beta(SignedPerm* w, int a, int len) {
  for (int i = 1; i <= len; ++i) w->letters[a + i - 1] = a + len + 1 - i;
}

void emit(std::vector<SignedPerm>* out, const SignedPerm& input, SignedPerm candidate) {
  if (candidate == input) return;
  out->push_back(std::move(candidate));
}

std::vector<SignedPerm> rule_r1(const SignedPerm& w) {
  std::vector<SignedPerm> out;
  const int n = w.size();
  auto cuts = diag_cuts(w);
  for (int t1 : cuts)
    for (int t2 : cuts) {
      if (t2 < t1 || t1 + (n - t2) < 1) continue;
      SignedPerm a = block_word(w, 0, t1), c = block_word(w, t2, n);
      if (is_alpha_word(a) && is_alpha_word(c)) {
        SignedPerm r = w;
        put_beta(&r, 0, t1);
        put_beta(&r, t2, n - t2);
        emit(&out, w, std::move(r));
      }
      if (is_beta_word(a) && is_beta_word(c)) {
        SignedPerm r = w;
        put_alpha(&r, 0, t1);
        put_alpha(&r, t2, n - t2);
        emit(&out, w, std::move(r));
      }
    }
  return out;
}

// If w is sigma' (even size) or sigma'' (odd size, positive central fixed
// point) of a signed permutation sigma, recover sigma.
std::optional<std::pair<SignedPerm, bool>> prime_split(const SignedPerm& w) {
  if (!is_involution(w)) return std::nullopt;
  const int n = w.size();
  const int h = n / 2;
  const bool odd = n % 2 != 0;
  if (odd && w.at(h + 1) != h + 1) return std::nullopt;
  const int off = odd ? h + 1 : h;
  SignedPerm s;
  for (int i = 1; i <= h; ++i) {
    int x = w.at(i);
    if (std::abs(x) <= off) return std::nullopt;
    s.letters.push_back(x > 0 ? x - off : x + off);
  }
  return std::make_pair(s, odd);
}

SignedPerm rebuild_prime(const SignedPerm& s, bool odd) {
  SignedMatrix m = to_matrix(s);
  return from_matrix(odd ? sigma_dprime(m) : sigma_prime(m));
}

std::vector<SignedPerm> rule_r2(const SignedPerm& w) {
  std::vector<SignedPerm> out;
  auto split = prime_split(w);
  if (!split) return out;
  const auto& [s, odd] = *split;
  const int h = s.size();
  // sigma = (0 X / chi 0): rows 1..k occupy the rightmost k columns.
  for (int k = 1; k <= h; ++k) {
    bool top_right = true;
    for (int i = 1; i <= k && top_right; ++i) top_right = std::abs(s.at(i)) > h - k;
    if (!top_right) continue;
    SignedPerm x;
    for (int i = 1; i <= k; ++i) {
      int v = s.at(i);
      x.letters.push_back(v > 0 ? v - (h - k) : v + (h - k));
    }
    if (is_alpha_word(x)) {
      SignedPerm s2 = s;
      for (int i = 1; i <= k; ++i) s2.letters[i - 1] = h + 1 - i;
      emit(&out, w, rebuild_prime(s2, odd));
    }
    if (is_beta_word(x)) {
      SignedPerm s2 = s;
      for (int i = 1; i <= k; ++i) s2.letters[i - 1] = h - k + i;
      emit(&out, w, rebuild_prime(s2, odd));
    }
  }
  return out;
}

std::vector<SignedPerm> rule_r3(const SignedPerm& w) {
  std::vector<SignedPerm> out;
  auto cuts = diag_cuts(w);
  for (int t1 : cuts)
    for (int t2 : cuts) {
      if (t2 <= t1) continue;
      SignedPerm r = w;
      for (int i = t1; i < t2; ++i) r.letters[i] = -r.letters[i];
      emit(&out, w, std::move(r));
    }
  return out;
}

std::vector<SignedPerm> rule_r4(const SignedPerm& w) {
  std::vector<SignedPerm> out;
  const int n = w.size();
  auto cuts = diag_cuts(w);
  for (int t1 : cuts)
    for (int t2 : cuts) {
      if (t2 < t1) continue;
      int symmetric = 0;
      if (is_involution(block_word(w, 0, t1))) ++symmetric;
      if (is_involution(block_word(w, t1, t2))) ++symmetric;
      if (is_involution(block_word(w, t2, n))) ++symmetric;
      if (symmetric < 2) continue;
      for (unsigned subset = 1; subset < 8; ++subset) {
        SignedPerm r = w;
        if (subset & 1)
          for (int i = 0; i < t1; ++i) r.letters[i] = -r.letters[i];
        if (subset & 2)
          for (int i = t1; i < t2; ++i) r.letters[i] = -r.letters[i];
        if (subset & 4)
          for (int i = t2; i < n; ++i) r.letters[i] = -r.letters[i];
        emit(&out, w, std::move(r));
      }
    }
  return out;
}

std::vector<SignedPerm> rule_r5(const SignedPerm& w) {
  std::vector<SignedPerm> out;
  auto split = prime_split(w);
  if (!split) return out;
  const auto& [s, odd] = *split;
  const int h = s.size();
  // sigma = (0 chi1 / chi2 0): rows 1..k in the rightmost k columns, chi2
  // below; negate chi2.
  for (int k = 0; k < h; ++k) {
    bool top_right = true;
    for (int i = 1; i <= k && top_right; ++i) top_right = std::abs(s.at(i)) > h - k;
    if (!top_right) continue;
    SignedPerm s2 = s;
    for (int i = k; i < h; ++i) s2.letters[i] = -s2.letters[i];
    emit(&out, w, rebuild_prime(s2, odd));
  }
  return out;
}

std::vector<SignedPerm> rule_r6_impl(const SignedPerm& w, int k_lo, int k_hi) {
  std::vector<SignedPerm> out;
  for (int t : diag_cuts(w)) {
    if (t < k_lo || t > k_hi) continue;
    SignedPerm a = block_word(w, 0, t);
    if (is_alpha_word(a)) {
      SignedPerm r = w;
      put_beta(&r, 0, t);
      emit(&out, w, std::move(r));
    }
    if (is_beta_word(a)) {
      SignedPerm r = w;
      put_alpha(&r, 0, t);
      emit(&out, w, std::move(r));
    }
  }
  return out;
}

std::vector<SignedPerm> rule_r6(const SignedPerm& w) {
  return rule_r6_impl(w, 1, w.size());
}

std::vector<SignedPerm> rule_r7(const SignedPerm& w) { return rule_r6_impl(w, 2, 3); }

bool rule_needs_signs(const std::string& name) {
  return name == "R3" || name == "R4" || name == "R5";
}

struct Dsu {
  std::vector<size_t> parent;
  explicit Dsu(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), size_t{0}); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(size_t a, size_t b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

uint64_t cached_count(SetKind set, const SignedPerm& pat, int n, int threads, CountCache* cache) {
  const std::string sname = set_kind_name(set), word = format_pattern(pat);
  if (cache)
    if (auto hit = cache->lookup(sname, word, n)) return *hit;
  auto t0 = std::chrono::steady_clock::now();
  uint64_t c = count_avoiders(GroundSet{set, n}, {pat}, threads);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (cache)
    cache->store({sname, word, n, c, kEngineVersion, static_cast<uint64_t>(ms)});
  return c;
}

}  // namespace

const std::vector<RewriteRule>& all_rules() {
  static const std::vector<RewriteRule> rules = {
      {"R1", false, true, rule_r1}, {"R2", false, true, rule_r2},
      {"R3", true, false, rule_r3}, {"R4", false, true, rule_r4},
      {"R5", false, true, rule_r5}, {"R6", true, true, rule_r6},
      {"R7", false, true, rule_r7},
  };
  return rules;
}

std::vector<RewriteRule> rules_for(EquivKind kind, bool signed_universe) {
  std::vector<RewriteRule> out;
  for (const auto& r : all_rules()) {
    if (kind == EquivKind::wilf && !r.wilf_ok) continue;
    if (kind == EquivKind::iwilf && !r.iwilf_ok) continue;
    if (!signed_universe && rule_needs_signs(r.name)) continue;
    out.push_back(r);
  }
  return out;
}

std::vector<EquivClass> apply_rules(const Universe& u, const SymmetryGroupSpec& g,
                                    const std::vector<RewriteRule>& rules,
                                    std::vector<RuleEdge>* edges) {
  auto orbits = symmetry_classes(u, g);
  std::map<SignedPerm, size_t> index;
  for (size_t i = 0; i < orbits.size(); ++i) index[orbits[i].front()] = i;

  Dsu dsu(orbits.size());
  std::set<std::tuple<SignedPerm, SignedPerm, std::string>> edge_set;
  for (size_t i = 0; i < orbits.size(); ++i) {
    const SignedPerm& rep = orbits[i].front();
    for (const auto& w : orbits[i]) {
      for (const auto& rule : rules) {
        for (const auto& img : rule.rewrite(w)) {
          if (img.size() != w.size())
            throw std::logic_error("rule " + rule.name + " changed the pattern size on " +
                                   format_pattern(w));
          if (!u.contains_member(img)) continue;
          SignedPerm c = canonical(img, g);
          size_t j = index.at(c);
          if (j == i) continue;
          dsu.unite(i, j);
          edge_set.insert({std::min(rep, c), std::max(rep, c), rule.name});
        }
      }
    }
  }
  if (edges)
    for (const auto& [a, b, name] : edge_set) edges->push_back({a, b, name});

  std::map<size_t, EquivClass> by_root;
  for (size_t i = 0; i < orbits.size(); ++i) {
    EquivClass& cls = by_root[dsu.find(i)];
    cls.members.push_back(orbits[i].front());
  }
  std::map<SignedPerm, std::set<std::string>> root_rules;
  for (const auto& [a, b, name] : edge_set)
    root_rules[orbits[dsu.find(index.at(a))].front()].insert(name);

  std::vector<EquivClass> out;
  for (auto& [root, cls] : by_root) {
    std::sort(cls.members.begin(), cls.members.end());
    cls.representative = cls.members.front();
    cls.provenance = {"orbit"};
    for (const auto& name : root_rules[orbits[root].front()])
      cls.provenance.push_back("rule(" + name + ")");
    out.push_back(std::move(cls));
  }
  std::sort(out.begin(), out.end(),
            [](const EquivClass& a, const EquivClass& b) { return a.representative < b.representative; });
  return out;
}

ClassifyReport refine_by_signature(std::vector<EquivClass> classes, const Universe& u,
                                   const SymmetryGroupSpec& g, SetKind set, int n_lo, int n_hi,
                                   int threads, CountCache* cache) {
  ClassifyReport rep;
  rep.universe = u;
  rep.group = g;
  rep.count_set = set;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;

  std::vector<std::vector<size_t>> groups;
  {
    std::vector<size_t> all(classes.size());
    std::iota(all.begin(), all.end(), size_t{0});
    groups.push_back(std::move(all));
  }
  if (classes.size() == 1) classes[0].status = "separated-at-n=" + std::to_string(n_lo - 1);

  for (int n = n_lo; n <= n_hi; ++n) {
    std::vector<size_t> pending;
    for (const auto& grp : groups)
      if (grp.size() >= 2) pending.insert(pending.end(), grp.begin(), grp.end());
    if (pending.empty()) break;

    const int outer = std::max(1, std::min<int>(threads, static_cast<int>(pending.size())));
    const int inner = std::max(1, threads / outer);
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < outer; ++t)
      workers.emplace_back([&] {
        for (;;) {
          size_t idx = next.fetch_add(1);
          if (idx >= pending.size()) return;
          size_t ci = pending[idx];
          uint64_t c = cached_count(set, classes[ci].representative, n, inner, cache);
          classes[ci].signature[n] = c;
        }
      });
    for (auto& w : workers) w.join();

    std::vector<std::vector<size_t>> next_groups;
    for (auto& grp : groups) {
      if (grp.size() < 2) {
        next_groups.push_back(std::move(grp));
        continue;
      }
      std::map<uint64_t, std::vector<size_t>> split;
      for (size_t ci : grp) split[classes[ci].signature.at(n)].push_back(ci);
      for (auto& [count, sub] : split) {
        if (sub.size() == 1 && grp.size() > 1)
          classes[sub.front()].status = "separated-at-n=" + std::to_string(n);
        next_groups.push_back(std::move(sub));
      }
    }
    groups = std::move(next_groups);
  }

  std::vector<std::pair<size_t, size_t>> tied;
  for (const auto& grp : groups) {
    if (grp.size() < 2) continue;
    for (size_t ci : grp) classes[ci].status = "signature-merged (unproven)";
    for (size_t a = 0; a < grp.size(); ++a)
      for (size_t b = a + 1; b < grp.size(); ++b) tied.emplace_back(grp[a], grp[b]);
  }

  std::vector<size_t> order(classes.size());
  std::iota(order.begin(), order.end(), size_t{0});
  auto first_count = [&](size_t i) -> std::optional<uint64_t> {
    const auto& sig = classes[i].signature;
    if (sig.empty()) return std::nullopt;
    return sig.begin()->second;
  };
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    auto ca = first_count(a), cb = first_count(b);
    if (ca != cb) return ca < cb;
    return classes[a].representative < classes[b].representative;
  });
  std::vector<size_t> position(classes.size());
  for (size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  for (size_t i : order) rep.classes.push_back(std::move(classes[i]));
  for (auto [a, b] : tied) {
    size_t pa = position[a], pb = position[b];
    rep.unseparated.emplace_back(std::min(pa, pb), std::max(pa, pb));
  }
  std::sort(rep.unseparated.begin(), rep.unseparated.end());
  return rep;
}

ClassifyReport classify(const Universe& u, EquivKind kind, int max_n, int threads,
                        CountCache* cache) {
  SymmetryGroupSpec g{kind, u.with_signs};
  SetKind set = kind == EquivKind::wilf ? (u.with_signs ? SetKind::B : SetKind::S)
                                        : (u.with_signs ? SetKind::SI : SetKind::I);
  auto classes = apply_rules(u, g, rules_for(kind, u.with_signs));
  return refine_by_signature(std::move(classes), u, g, set, u.k + 1, max_n, threads, cache);
}

std::string emit_csv(const ClassifyReport& r) {
  std::ostringstream os;
  os << "class_id,representative,provenance";
  for (int n = r.n_lo; n <= r.n_hi; ++n) os << ",n=" << n;
  os << '\n';
  for (size_t i = 0; i < r.classes.size(); ++i) {
    const EquivClass& c = r.classes[i];
    os << (i + 1) << ',' << format_pattern(c.representative) << ',';
    for (size_t j = 0; j < c.provenance.size(); ++j) {
      if (j) os << '|';
      os << c.provenance[j];
    }
    for (int n = r.n_lo; n <= r.n_hi; ++n) {
      os << ',';
      auto it = c.signature.find(n);
      if (it != c.signature.end()) os << it->second;
    }
    os << '\n';
  }
  return os.str();
}

std::string emit_json(const ClassifyReport& r) {
  nlohmann::json doc;
  doc["universe"] = r.universe.name();
  doc["mode"] = equiv_kind_name(r.group.kind);
  doc["set"] = set_kind_name(r.count_set);
  doc["n_lo"] = r.n_lo;
  doc["n_hi"] = r.n_hi;
  doc["classes"] = nlohmann::json::array();
  for (size_t i = 0; i < r.classes.size(); ++i) {
    const EquivClass& c = r.classes[i];
    nlohmann::json jc;
    jc["class_id"] = i + 1;
    jc["representative"] = format_pattern(c.representative);
    jc["members"] = nlohmann::json::array();
    for (const auto& m : c.members) jc["members"].push_back(format_pattern(m));
    jc["provenance"] = c.provenance;
    jc["status"] = c.status;
    nlohmann::json sig = nlohmann::json::object();
    for (const auto& [n, count] : c.signature) sig["n=" + std::to_string(n)] = count;
    jc["signature"] = sig;
    doc["classes"].push_back(std::move(jc));
  }
  doc["unseparated_pairs"] = nlohmann::json::array();
  for (auto [a, b] : r.unseparated)
    doc["unseparated_pairs"].push_back({format_pattern(r.classes[a].representative),
                                        format_pattern(r.classes[b].representative)});
  return doc.dump(2) + "\n";
}

}  // namespace wilfkit
