#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "realizers.hpp"

namespace ordim {

// Shared node counter for the exact solvers.  Every search node calls
// tick(); once the limit is crossed the solvers unwind and report the
// best bracket they have instead of an exact value.
struct Budget {
  long long limit = 10000000;
  long long used = 0;
  bool tick() {
    ++used;
    return used <= limit;
  }
  bool ok() const { return used <= limit; }
};

// Result bracket for dim/ldim.  exact means lo == hi and the search ran
// to completion; certificate witnesses the hi bound and is empty only
// when the budget ran out before any witness was produced.
struct DimResult {
  int lo = 1;
  int hi = 1;
  bool exact = false;
  std::vector<std::vector<int>> certificate;
  long long nodes = 0;
};

inline std::vector<std::pair<int, int>> critical_pairs(const Poset& p) {
  std::vector<std::pair<int, int>> out;
  for (auto [x, y] : p.inc_pairs())
    if (p.down_subset(x, y) && p.up_subset(y, x)) out.emplace_back(x, y);
  return out;
}

// Least linear extension (lexicographic Kahn) that puts y before x for
// every listed pair, or nullopt when the combined constraints cycle.
inline std::optional<std::vector<int>> reversing_extension(
    const Poset& p, const std::vector<std::pair<int, int>>& pairs) {
  const int n = p.size();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto [x, y] : p.relation_pairs()) {
    succ[x].push_back(y);
    ++indeg[y];
  }
  for (auto [x, y] : pairs) {
    if (!p.incomparable(x, y))
      throw std::invalid_argument("pair not incomparable: (" +
                                  to_string(p.label(x)) + ", " +
                                  to_string(p.label(y)) + ")");
    succ[y].push_back(x);
    ++indeg[x];
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if ((int)order.size() != n) return std::nullopt;
  return order;
}

inline bool is_reversible(const Poset& p,
                          const std::vector<std::pair<int, int>>& pairs) {
  return reversing_extension(p, pairs).has_value();
}

namespace detail {

// Two critical pairs cannot share a reversing extension exactly when
// they form an alternating cycle of length two.
inline bool pairs_conflict(const Poset& p, std::pair<int, int> a,
                           std::pair<int, int> b) {
  return p.leq(a.first, b.second) && p.leq(b.first, a.second);
}

struct DimSearch {
  const Poset& p;
  Budget& budget;
  std::vector<std::pair<int, int>> cps;
  int m = 0;                                  // number of critical pairs
  std::vector<std::vector<std::uint64_t>> conflict;  // bitset rows over pairs
  std::vector<int> order;                     // pair indexes, degree-descending
  bool aborted = false;

  explicit DimSearch(const Poset& poset, Budget& b) : p(poset), budget(b) {
    cps = critical_pairs(p);
    m = (int)cps.size();
    const int words = (m + 63) / 64;
    conflict.assign(m, std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (pairs_conflict(p, cps[i], cps[j])) {
          conflict[i][j >> 6] |= 1ull << (j & 63);
          conflict[j][i >> 6] |= 1ull << (i & 63);
        }
    order.resize(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::vector<int> deg(m, 0);
    for (int i = 0; i < m; ++i)
      for (auto w : conflict[i]) deg[i] += __builtin_popcountll(w);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
  }

  bool conflicts_with(const std::vector<std::uint64_t>& mask, int i) const {
    return (mask[i >> 6] >> (i & 63)) & 1;
  }

  int clique_lower_bound() const {
    if (m == 0) return 0;
    int best = 1;
    for (int seed = 0; seed < m; ++seed) {
      int start = order[seed];
      std::vector<int> clique{start};
      for (int cand : order) {
        if (cand == start) continue;
        bool fits = true;
        for (int v : clique)
          if (!conflicts_with(conflict[v], cand)) {
            fits = false;
            break;
          }
        if (fits) clique.push_back(cand);
      }
      best = std::max(best, (int)clique.size());
      if (seed >= 8) break;  // a handful of seeds is enough for a bound
    }
    return best;
  }

  // Greedy first-fit cover; always succeeds, giving the upper bound.
  std::vector<std::vector<int>> greedy_cover() {
    std::vector<std::vector<int>> classes;
    std::vector<std::vector<std::uint64_t>> masks;
    const int words = (m + 63) / 64;
    for (int idx : order) {
      bool placed = false;
      for (size_t c = 0; c < classes.size() && !placed; ++c) {
        if (conflicts_with(masks[c], idx)) continue;
        std::vector<std::pair<int, int>> trial;
        for (int v : classes[c]) trial.push_back(cps[v]);
        trial.push_back(cps[idx]);
        if (!is_reversible(p, trial)) continue;
        classes[c].push_back(idx);
        for (int w = 0; w < words; ++w) masks[c][w] |= conflict[idx][w];
        placed = true;
      }
      if (!placed) {
        classes.push_back({idx});
        masks.push_back(conflict[idx]);
      }
    }
    return classes;
  }

  std::vector<std::vector<int>> classes;
  std::vector<std::vector<std::uint64_t>> masks;
  std::vector<std::vector<int>> found;

  bool decide(int k) {
    classes.clear();
    masks.clear();
    found.clear();
    return dfs(0, k);
  }

  bool dfs(size_t t, int k) {
    if (aborted) return false;
    if (t == order.size()) {
      found = classes;
      return true;
    }
    if (!budget.tick()) {
      aborted = true;
      return false;
    }
    const int idx = order[t];
    const int words = (m + 63) / 64;
    for (size_t c = 0; c < classes.size(); ++c) {
      if (conflicts_with(masks[c], idx)) continue;
      std::vector<std::pair<int, int>> trial;
      for (int v : classes[c]) trial.push_back(cps[v]);
      trial.push_back(cps[idx]);
      if (!is_reversible(p, trial)) continue;
      classes[c].push_back(idx);
      std::vector<std::uint64_t> saved = masks[c];
      for (int w = 0; w < words; ++w) masks[c][w] |= conflict[idx][w];
      if (dfs(t + 1, k)) return true;
      masks[c] = std::move(saved);
      classes[c].pop_back();
      if (aborted) return false;
    }
    if ((int)classes.size() < k) {
      classes.push_back({idx});
      masks.push_back(conflict[idx]);
      if (dfs(t + 1, k)) return true;
      masks.pop_back();
      classes.pop_back();
    }
    return false;
  }
};

}  // namespace detail

// Exact order dimension with witness realizer.  Covers the critical
// pairs by reversible classes; a family of linear extensions realizes
// the order exactly when every critical pair is reversed somewhere.
inline DimResult dim_exact(const Poset& p, Budget& budget) {
  DimResult res;
  const long long start = budget.used;
  detail::DimSearch search(p, budget);
  if (search.m == 0) {
    auto ext = reversing_extension(p, {});
    res.lo = res.hi = 1;
    res.exact = true;
    res.certificate = {*ext};
    res.nodes = budget.used - start;
    return res;
  }
  auto greedy = search.greedy_cover();
  res.hi = (int)greedy.size();
  res.lo = std::max(2, search.clique_lower_bound());
  auto to_realizer = [&](const std::vector<std::vector<int>>& classes) {
    std::vector<std::vector<int>> fam;
    for (const auto& cls : classes) {
      std::vector<std::pair<int, int>> want;
      for (int v : cls) want.push_back(search.cps[v]);
      fam.push_back(*reversing_extension(p, want));
    }
    return fam;
  };
  res.certificate = to_realizer(greedy);
  for (int k = res.lo; k < res.hi; ++k) {
    if (search.decide(k)) {
      res.hi = (int)search.found.size();
      res.lo = res.hi;
      res.exact = true;
      res.certificate = to_realizer(search.found);
      res.nodes = budget.used - start;
      return res;
    }
    if (search.aborted) {
      res.exact = false;
      res.nodes = budget.used - start;
      return res;
    }
    res.lo = k + 1;
  }
  res.lo = res.hi;
  res.exact = true;
  res.nodes = budget.used - start;
  return res;
}

inline DimResult dim_exact(const Poset& p) {
  Budget b;
  return dim_exact(p, b);
}

namespace detail {

struct LdimTask {
  int x;
  int y;
  bool coverage;  // true: x < y must share a ple; false: reverse inc (x, y)
};

struct LdimSearch {
  const Poset& p;
  Budget& budget;
  int k;
  std::vector<LdimTask> tasks;
  std::vector<std::vector<int>> family;
  std::vector<int> mu;
  std::unordered_set<std::string> dead;
  bool aborted = false;
  static constexpr size_t kDeadCap = 4000000;

  // One way of discharging a task: insert e1 at i1 (then e2 at i2 when
  // e2 >= 0) into family[f], or open the ple {e1, e2} when f < 0.
  struct Move {
    int f;
    int e1;
    int i1;
    int e2;
    int i2;
  };

  LdimSearch(const Poset& poset, Budget& b, int bound)
      : p(poset), budget(b), k(bound), mu(poset.size(), 0) {
    for (auto [x, y] : p.relation_pairs()) tasks.push_back({x, y, true});
    for (auto [x, y] : p.inc_pairs()) tasks.push_back({x, y, false});
  }

  bool satisfied(const LdimTask& t) const {
    for (const auto& s : family) {
      int px = -1, py = -1;
      for (int i = 0; i < (int)s.size(); ++i) {
        if (s[i] == t.x) px = i;
        if (s[i] == t.y) py = i;
      }
      if (px < 0 || py < 0) continue;
      if (t.coverage) return true;  // order inside a ple follows the poset
      if (px > py) return true;
    }
    return false;
  }

  // Positions where e may be inserted into s without breaking ple
  // validity: after every element below e, before every element above.
  std::pair<int, int> legal_range(const std::vector<int>& s, int e) const {
    int lo = 0, hi = (int)s.size();
    for (int i = 0; i < (int)s.size(); ++i) {
      if (p.less(s[i], e)) lo = i + 1;
      if (p.less(e, s[i]) && i < hi) hi = i;
    }
    return {lo, hi};
  }

  // Counts ways to discharge the task, stopping at cap; fills moves
  // instead when it is non-null.
  int moves_for(const LdimTask& t, int cap, std::vector<Move>* moves) const {
    const int first = t.coverage ? t.x : t.y;
    const int second = t.coverage ? t.y : t.x;
    int count = 0;
    auto emit = [&](int f, int e1, int i1, int e2, int i2) {
      if (moves) moves->push_back({f, e1, i1, e2, i2});
      ++count;
    };
    for (size_t f = 0; f < family.size() && count < cap; ++f) {
      const auto& s = family[f];
      int pf = -1, ps = -1;
      for (int i = 0; i < (int)s.size(); ++i) {
        if (s[i] == first) pf = i;
        if (s[i] == second) ps = i;
      }
      if (pf >= 0 && ps >= 0) continue;  // present but wrong way round
      if (pf >= 0) {
        if (mu[second] >= k) continue;
        auto [lo, hi] = legal_range(s, second);
        for (int pos = std::max(lo, pf + 1); pos <= hi && count < cap; ++pos)
          emit((int)f, second, pos, -1, -1);
      } else if (ps >= 0) {
        if (mu[first] >= k) continue;
        auto [lo, hi] = legal_range(s, first);
        for (int pos = lo; pos <= std::min(hi, ps) && count < cap; ++pos)
          emit((int)f, first, pos, -1, -1);
      } else {
        if (mu[first] >= k || mu[second] >= k) continue;
        auto [flo, fhi] = legal_range(s, first);
        auto [slo, shi] = legal_range(s, second);
        // ranges are over the unextended ple; inserting first at i shifts
        // second's slots at or after i one to the right
        for (int i = flo; i <= fhi && count < cap; ++i)
          for (int j = std::max(slo, i); j <= shi && count < cap; ++j)
            emit((int)f, first, i, second, j + 1);
      }
    }
    if (count < cap && mu[first] < k && mu[second] < k)
      emit(-1, first, 0, second, 1);
    return count;
  }

  std::string encode() const {
    std::vector<std::string> parts;
    for (const auto& s : family) {
      std::string one;
      for (int v : s) one.push_back((char)(v + 1));
      parts.push_back(one);
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& one : parts) {
      key += one;
      key.push_back('\0');
    }
    return key;
  }

  bool run() {
    family.clear();
    std::fill(mu.begin(), mu.end(), 0);
    dead.clear();
    return dfs();
  }

  bool dfs() {
    if (aborted) return false;
    if (!budget.tick()) {
      aborted = true;
      return false;
    }
    // forward check every open task; branch on the tightest one
    int best = -1, best_count = 0;
    for (size_t t = 0; t < tasks.size(); ++t) {
      if (satisfied(tasks[t])) continue;
      int cap = best < 0 ? 1 << 20 : best_count;
      int c = moves_for(tasks[t], cap, nullptr);
      if (c == 0) return false;
      if (best < 0 || c < best_count) {
        best = (int)t;
        best_count = c;
        if (c == 1) break;
      }
    }
    if (best < 0) return true;
    std::string key = encode();
    if (dead.count(key)) return false;

    std::vector<Move> moves;
    moves_for(tasks[best], 1 << 20, &moves);
    for (const Move& mv : moves) {
      if (mv.f < 0) {
        family.push_back({mv.e1, mv.e2});
        ++mu[mv.e1];
        ++mu[mv.e2];
        if (dfs()) return true;
        --mu[mv.e1];
        --mu[mv.e2];
        family.pop_back();
      } else {
        family[mv.f].insert(family[mv.f].begin() + mv.i1, mv.e1);
        ++mu[mv.e1];
        if (mv.e2 >= 0) {
          family[mv.f].insert(family[mv.f].begin() + mv.i2, mv.e2);
          ++mu[mv.e2];
        }
        if (dfs()) return true;
        if (mv.e2 >= 0) {
          --mu[mv.e2];
          family[mv.f].erase(family[mv.f].begin() + mv.i2);
        }
        --mu[mv.e1];
        family[mv.f].erase(family[mv.f].begin() + mv.i1);
      }
      if (aborted) return false;
    }
    if (dead.size() < kDeadCap) dead.insert(std::move(key));
    return false;
  }
};

}  // namespace detail

// Exact local dimension: least k admitting a family of partial linear
// extensions that covers every comparability, reverses every
// incomparable ordered pair, and uses each element at most k times.
inline DimResult ldim_exact(const Poset& p, Budget& budget) {
  DimResult res;
  const long long start = budget.used;
  if (p.inc_pairs().empty()) {
    auto ext = reversing_extension(p, {});
    res.lo = res.hi = 1;
    res.exact = true;
    res.certificate = {*ext};
    res.nodes = budget.used - start;
    return res;
  }
  DimResult dim = dim_exact(p, budget);
  res.hi = dim.hi;
  res.certificate = dim.certificate;
  res.lo = 2;
  for (int k = res.lo; k < res.hi; ++k) {
    detail::LdimSearch search(p, budget, k);
    if (search.run()) {
      res.lo = res.hi = k;
      res.exact = true;
      res.certificate = search.family;
      res.nodes = budget.used - start;
      return res;
    }
    if (search.aborted) {
      res.exact = false;
      res.nodes = budget.used - start;
      return res;
    }
    res.lo = k + 1;
  }
  res.exact = dim.exact;
  res.lo = res.hi;
  res.nodes = budget.used - start;
  return res;
}

inline DimResult ldim_exact(const Poset& p) {
  Budget b;
  return ldim_exact(p, b);
}

struct BdimResult {
  bool decided = true;
  bool yes = false;
  std::vector<std::vector<int>> orders;
  std::set<std::string> tau_ones;
  long long nodes = 0;
};

// Decide whether k orders plus a boolean table can answer every
// comparability query.  A realizer of size <= k settles the question
// immediately: pad it to k orders and accept only the all-ones pattern.
// Otherwise enumerate order multisets exhaustively.
inline BdimResult bdim_decide(const Poset& p, int k, Budget& budget) {
  if (k < 0) throw std::invalid_argument("order count must be nonnegative");
  BdimResult res;
  const long long start = budget.used;
  const int n = p.size();

  std::vector<std::pair<int, int>> queries;
  std::vector<bool> truth;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) {
        queries.emplace_back(x, y);
        truth.push_back(p.less(x, y));
      }

  if (queries.empty()) {
    res.yes = true;
    std::vector<int> id(n);
    for (int v = 0; v < n; ++v) id[v] = v;
    res.orders.assign(k, id);
    res.nodes = budget.used - start;
    return res;
  }
  if (k == 0) {
    // the empty fingerprint must answer every query the same way
    bool any_less = false;
    for (bool b : truth) any_less |= b;
    res.yes = !any_less;
    res.nodes = budget.used - start;
    return res;
  }

  DimResult dim = dim_exact(p, budget);
  if (dim.hi <= k && !dim.certificate.empty()) {
    res.yes = true;
    res.orders = dim.certificate;
    while ((int)res.orders.size() < k) res.orders.push_back(res.orders.front());
    res.tau_ones = {std::string(k, '1')};
    res.nodes = budget.used - start;
    return res;
  }
  if (n > 8 || k > 20) {
    // the exhaustive scan below is hopeless at this size
    res.decided = false;
    res.nodes = budget.used - start;
    return res;
  }

  std::vector<std::vector<int>> perms;
  {
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[v] = v;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::vector<std::vector<int>> pos(perms.size(), std::vector<int>(n));
  for (size_t i = 0; i < perms.size(); ++i)
    for (int j = 0; j < n; ++j) pos[i][perms[i][j]] = j;

  // fingerprint -> forced truth value, with epoch stamps so the table
  // resets in constant time per candidate tuple
  std::vector<int> stamp(1u << k, 0);
  std::vector<std::uint8_t> forced(1u << k, 0);
  int epoch = 0;

  std::vector<size_t> pick(k, 0);
  auto consistent = [&](const std::vector<size_t>& tuple) {
    ++epoch;
    for (size_t q = 0; q < queries.size(); ++q) {
      unsigned fp = 0;
      for (int t = 0; t < k; ++t)
        if (pos[tuple[t]][queries[q].first] < pos[tuple[t]][queries[q].second])
          fp |= 1u << t;
      const std::uint8_t want = truth[q] ? 1 : 2;
      if (stamp[fp] != epoch) {
        stamp[fp] = epoch;
        forced[fp] = want;
      } else if (forced[fp] != want) {
        return false;
      }
    }
    return true;
  };

  // orders are interchangeable (the table permutes with them), so it is
  // enough to scan non-decreasing index tuples
  while (true) {
    if (!budget.tick()) {
      res.decided = false;
      res.nodes = budget.used - start;
      return res;
    }
    if (consistent(pick)) {
      res.yes = true;
      for (int t = 0; t < k; ++t) res.orders.push_back(perms[pick[t]]);
      ++epoch;
      for (size_t q = 0; q < queries.size(); ++q) {
        unsigned fp = 0;
        for (int t = 0; t < k; ++t)
          if (pos[pick[t]][queries[q].first] < pos[pick[t]][queries[q].second])
            fp |= 1u << t;
        if (truth[q]) {
          std::string s(k, '0');
          for (int t = 0; t < k; ++t)
            if ((fp >> t) & 1) s[t] = '1';
          res.tau_ones.insert(s);
        }
      }
      res.nodes = budget.used - start;
      return res;
    }
    int t = k - 1;
    while (t >= 0 && pick[t] + 1 == perms.size()) --t;
    if (t < 0) break;
    ++pick[t];
    for (int u = t + 1; u < k; ++u) pick[u] = pick[t];
  }
  res.yes = false;
  res.nodes = budget.used - start;
  return res;
}

inline BdimResult bdim_decide(const Poset& p, int k) {
  Budget b;
  return bdim_decide(p, k, b);
}

}  // namespace ordim
