#include "wilfkit/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "wilfkit/cache.hpp"

namespace wilfkit {

std::string set_kind_name(SetKind k) {
  switch (k) {
    case SetKind::S: return "S";
    case SetKind::B: return "B";
    case SetKind::I: return "I";
    case SetKind::SI: return "SI";
  }
  return "?";
}

SetKind parse_set_kind(const std::string& s) {
  if (s == "S") return SetKind::S;
  if (s == "B") return SetKind::B;
  if (s == "I") return SetKind::I;
  if (s == "SI") return SetKind::SI;
  throw ParseError("unknown ground set: '" + s + "'");
}

uint64_t cardinality(const GroundSet& set) {
  const int n = set.n;
  switch (set.kind) {
    case SetKind::S: {
      uint64_t f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f;
    }
    case SetKind::B: {
      uint64_t f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f << n;
    }
    case SetKind::I: {
      uint64_t a = 1, b = 1;  // I(0), I(1)
      if (n == 0) return 1;
      for (int i = 2; i <= n; ++i) {
        uint64_t c = b + static_cast<uint64_t>(i - 1) * a;
        a = b;
        b = c;
      }
      return b;
    }
    case SetKind::SI: {
      uint64_t a = 1, b = 2;  // T(0), T(1)
      if (n == 0) return 1;
      for (int i = 2; i <= n; ++i) {
        uint64_t c = 2 * b + 2 * static_cast<uint64_t>(i - 1) * a;
        a = b;
        b = c;
      }
      return b;
    }
  }
  return 0;
}

namespace {

constexpr int kMaxN = 31;

struct Matcher {
  int k = 0;
  std::array<int8_t, 16> sgn{};   // +1 / -1 per pattern slot
  std::array<uint8_t, 16> abs_{};  // absolute letter per slot
};

Matcher make_matcher(const SignedPerm& p) {
  Matcher m;
  m.k = p.size();
  for (int a = 0; a < m.k; ++a) {
    m.sgn[a] = static_cast<int8_t>(p.letters[a] > 0 ? 1 : -1);
    m.abs_[a] = static_cast<uint8_t>(std::abs(p.letters[a]));
  }
  return m;
}

// Does the partial word (0 = empty slot) contain the pattern via an
// embedding that uses at least one position from newmask (bit i-1)?
bool contains_partial(const int8_t* w, int n, const Matcher& m, uint32_t newmask) {
  const int k = m.k;
  if (k == 0) return true;
  int chosen_abs[16];
  auto rec = [&](auto&& self, int a, int start, bool used_new) -> bool {
    if (a == k) return used_new;
    for (int i = start; i <= n - (k - 1 - a); ++i) {
      int v = w[i];
      if (v == 0) continue;
      if ((v > 0) != (m.sgn[a] > 0)) continue;
      int av = v > 0 ? v : -v;
      bool ok = true;
      for (int b = 0; b < a && ok; ++b)
        ok = ((m.abs_[b] < m.abs_[a]) == (chosen_abs[b] < av));
      if (!ok) continue;
      chosen_abs[a] = av;
      if (self(self, a + 1, i + 1, used_new || (newmask >> (i - 1)) & 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 1, false);
}

struct State {
  std::array<int8_t, kMaxN + 1> w{};
  uint32_t used_vals = 0;  // S/B only
  int cursor = 0;          // next position (S/B) or current max index (I/SI)
};

struct Engine {
  GroundSet set;
  std::vector<Matcher> matchers;
  std::array<int8_t, kMaxN + 1> w{};
  uint32_t used_vals = 0;
  uint64_t count = 0;
  bool refined = false;
  RefinedCounts rmap;
  const std::function<void(const SignedPerm&)>* visitor = nullptr;

  bool hit(uint32_t newmask) const {
    for (const auto& m : matchers)
      if (contains_partial(w.data(), set.n, m, newmask)) return true;
    return false;
  }

  void leaf() {
    if (visitor) {
      SignedPerm p;
      p.letters.assign(w.begin() + 1, w.begin() + 1 + set.n);
      (*visitor)(p);
      return;
    }
    if (refined) {
      uint32_t mask = 0;
      for (int i = 1; i <= set.n; ++i)
        if (w[i] == i || w[i] == -i) mask |= 1u << (i - 1);
      ++rmap[mask];
      return;
    }
    ++count;
  }

  // S / B: fill positions left to right.
  void rec_word(int pos) {
    const int n = set.n;
    if (pos > n) {
      leaf();
      return;
    }
    const bool with_signs = set.kind == SetKind::B;
    const uint32_t newmask = 1u << (pos - 1);
    for (int v = 1; v <= n; ++v) {
      if ((used_vals >> v) & 1) continue;
      used_vals |= 1u << v;
      w[pos] = static_cast<int8_t>(v);
      if (!hit(newmask)) rec_word(pos + 1);
      if (with_signs) {
        w[pos] = static_cast<int8_t>(-v);
        if (!hit(newmask)) rec_word(pos + 1);
      }
      w[pos] = 0;
      used_vals &= ~(1u << v);
    }
  }

  // I / SI: the largest free index is a fixed point or pairs with a smaller
  // free position.
  void rec_inv(int m) {
    while (m >= 1 && w[m] != 0) --m;
    if (m == 0) {
      leaf();
      return;
    }
    const bool with_signs = set.kind == SetKind::SI;
    const uint32_t self_mask = 1u << (m - 1);
    w[m] = static_cast<int8_t>(m);
    if (!hit(self_mask)) rec_inv(m - 1);
    if (with_signs) {
      w[m] = static_cast<int8_t>(-m);
      if (!hit(self_mask)) rec_inv(m - 1);
    }
    w[m] = 0;
    for (int i = 1; i < m; ++i) {
      if (w[i] != 0) continue;
      const uint32_t pair_mask = self_mask | (1u << (i - 1));
      w[i] = static_cast<int8_t>(m);
      w[m] = static_cast<int8_t>(i);
      if (!hit(pair_mask)) rec_inv(m - 1);
      if (with_signs) {
        w[i] = static_cast<int8_t>(-m);
        w[m] = static_cast<int8_t>(-i);
        if (!hit(pair_mask)) rec_inv(m - 1);
      }
      w[i] = 0;
      w[m] = 0;
    }
  }

  void run_from(const State& s) {
    w = s.w;
    used_vals = s.used_vals;
    if (set.kind == SetKind::S || set.kind == SetKind::B)
      rec_word(s.cursor);
    else
      rec_inv(s.cursor);
  }

  void run() {
    State s;
    s.cursor = (set.kind == SetKind::S || set.kind == SetKind::B) ? 1 : set.n;
    run_from(s);
  }
};

bool is_word_set(SetKind k) { return k == SetKind::S || k == SetKind::B; }

// One level of branching with the same pruning as the engine. Completed
// words are counted through *done.
void expand_once(const Engine& eng, const State& s, std::vector<State>* out, Engine* done) {
  const int n = eng.set.n;
  State t = s;
  if (is_word_set(eng.set.kind)) {
    if (s.cursor > n) {
      done->w = s.w;
      done->leaf();
      return;
    }
    const bool with_signs = eng.set.kind == SetKind::B;
    const uint32_t newmask = 1u << (s.cursor - 1);
    for (int v = 1; v <= n; ++v) {
      if ((s.used_vals >> v) & 1) continue;
      t.used_vals = s.used_vals | (1u << v);
      for (int sign = 0; sign < (with_signs ? 2 : 1); ++sign) {
        t.w[s.cursor] = static_cast<int8_t>(sign ? -v : v);
        Engine probe = eng;
        probe.w = t.w;
        if (!probe.hit(newmask)) {
          t.cursor = s.cursor + 1;
          out->push_back(t);
        }
      }
    }
    return;
  }
  int m = s.cursor;
  while (m >= 1 && s.w[m] != 0) --m;
  if (m == 0) {
    done->w = s.w;
    done->leaf();
    return;
  }
  const bool with_signs = eng.set.kind == SetKind::SI;
  auto try_push = [&](int i, int sign) {
    t = s;
    if (i == m) {
      t.w[m] = static_cast<int8_t>(sign * m);
    } else {
      t.w[i] = static_cast<int8_t>(sign * m);
      t.w[m] = static_cast<int8_t>(sign * i);
    }
    Engine probe = eng;
    probe.w = t.w;
    uint32_t mask = (1u << (m - 1)) | (1u << (i - 1));
    if (!probe.hit(mask)) {
      t.cursor = m - 1;
      out->push_back(t);
    }
  };
  try_push(m, 1);
  if (with_signs) try_push(m, -1);
  for (int i = 1; i < m; ++i) {
    if (s.w[i] != 0) continue;
    try_push(i, 1);
    if (with_signs) try_push(i, -1);
  }
}

void merge_refined(RefinedCounts* into, const RefinedCounts& from) {
  for (const auto& [k, v] : from) (*into)[k] += v;
}

Engine make_engine(const GroundSet& set, const std::vector<SignedPerm>& patterns, bool refined) {
  if (set.n < 0 || set.n > kMaxN)
    throw std::invalid_argument("ground set size out of range: " + std::to_string(set.n));
  if (refined && set.kind != SetKind::I && set.kind != SetKind::SI)
    throw std::invalid_argument("fixed-point refinement requires an involution ground set");
  Engine eng;
  eng.set = set;
  eng.refined = refined;
  for (const auto& p : patterns) eng.matchers.push_back(make_matcher(p));
  std::stable_sort(eng.matchers.begin(), eng.matchers.end(),
                   [](const Matcher& a, const Matcher& b) { return a.k < b.k; });
  return eng;
}

// Shared driver for count_avoiders / count_avoiders_refined.
Engine run_count(const GroundSet& set, const std::vector<SignedPerm>& patterns, int threads,
                 bool refined) {
  Engine eng = make_engine(set, patterns, refined);
  for (const auto& m : eng.matchers)
    if (m.k == 0) return eng;  // the empty pattern is contained in everything

  threads = std::max(1, threads);
  if (threads == 1 || set.n <= 6) {
    eng.run();
    return eng;
  }

  // Expand a frontier of independent subtrees, then count them in parallel.
  std::vector<State> frontier;
  {
    State root;
    root.cursor = is_word_set(set.kind) ? 1 : set.n;
    frontier.push_back(root);
  }
  const size_t target = static_cast<size_t>(threads) * 8;
  while (frontier.size() < target) {
    std::vector<State> next;
    bool grew = false;
    for (const State& s : frontier) {
      size_t before = next.size();
      expand_once(eng, s, &next, &eng);
      if (next.size() != before + 1 || next.back().cursor != s.cursor) grew = true;
    }
    frontier = std::move(next);
    if (!grew || frontier.empty()) break;
  }

  std::atomic<size_t> next_idx{0};
  std::vector<Engine> workers(threads, eng);
  for (auto& wk : workers) {
    wk.count = 0;
    wk.rmap.clear();
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (;;) {
        size_t i = next_idx.fetch_add(1);
        if (i >= frontier.size()) break;
        workers[t].run_from(frontier[i]);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& wk : workers) {
    eng.count += wk.count;
    merge_refined(&eng.rmap, wk.rmap);
  }
  return eng;
}

}  // namespace

void generate(const GroundSet& set, const std::function<void(const SignedPerm&)>& visit) {
  Engine eng = make_engine(set, {}, false);
  eng.visitor = &visit;
  eng.run();
}

uint64_t count_avoiders(const GroundSet& set, const std::vector<SignedPerm>& patterns,
                        int threads) {
  if (patterns.empty()) throw std::invalid_argument("count_avoiders requires patterns");
  return run_count(set, patterns, threads, false).count;
}

RefinedCounts count_avoiders_refined(const GroundSet& set,
                                     const std::vector<SignedPerm>& patterns, int threads) {
  if (patterns.empty()) throw std::invalid_argument("count_avoiders_refined requires patterns");
  return run_count(set, patterns, threads, true).rmap;
}

CountSignature signature(SetKind kind, const SignedPerm& pattern, int n_lo, int n_hi, int threads,
                         CountCache* cache) {
  if (n_lo > n_hi) throw std::invalid_argument("signature: empty n range");
  CountSignature sig;
  sig.set = kind;
  sig.pattern = pattern;
  const std::string set_name = set_kind_name(kind);
  const std::string pat_text = format_pattern(pattern);
  for (int n = n_lo; n <= n_hi; ++n) {
    if (cache) {
      if (auto hit = cache->lookup(set_name, pat_text, n)) {
        sig.counts[n] = *hit;
        continue;
      }
    }
    auto t0 = std::chrono::steady_clock::now();
    uint64_t c = count_avoiders({kind, n}, {pattern}, threads);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    sig.counts[n] = c;
    if (cache)
      cache->store({set_name, pat_text, n, c, kEngineVersion, static_cast<uint64_t>(ms)});
  }
  return sig;
}

}  // namespace wilfkit
