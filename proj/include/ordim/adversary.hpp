#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "constructions.hpp"
#include "poset.hpp"
#include "ramsey.hpp"

namespace ordim {

// Stage sizes the refutation procedure would need for a guaranteed run:
// the last stage needs d indexes, and each earlier stage multiplies in
// the box-extraction bound for the colors it may see.
struct Schedule {
  int d = 1;
  int colors = 1;
  std::vector<RamseyBound> p;  // p[k] is the size at distance k from the end
};

inline Schedule adversary_schedule(int d, int colors = -1) {
  if (d < 1) throw std::invalid_argument("schedule needs d >= 1");
  Schedule s;
  s.d = d;
  s.colors = colors < 0 ? std::max(1, d - 1) : colors;
  if (s.colors < 1) throw std::invalid_argument("schedule needs colors >= 1");
  s.p.push_back(
      {RamseyBound::Kind::exact, d, std::log10((double)d), 0});
  for (int k = 2; k <= d; ++k) {
    const RamseyBound& prev = s.p.back();
    const long long parts = d + 1 - k;
    RamseyBound next;
    if (prev.kind == RamseyBound::Kind::exact && prev.value <= 1000000000) {
      RamseyBound need = pram_bound(s.colors, k - 1, (int)prev.value);
      if (need.kind == RamseyBound::Kind::exact &&
          need.value <= std::numeric_limits<long long>::max() / parts) {
        next.kind = RamseyBound::Kind::exact;
        next.value = parts * need.value;
        next.log10_value = std::log10((double)next.value);
      } else if (need.kind == RamseyBound::Kind::astronomical) {
        next = need;
      } else {
        next.kind = RamseyBound::Kind::log_ten;
        next.log10_value = need.log10_value + std::log10((double)parts);
      }
    } else {
      next.kind = RamseyBound::Kind::astronomical;
      next.tower_height = prev.kind == RamseyBound::Kind::astronomical
                              ? prev.tower_height + 1
                              : 1;
    }
    s.p.push_back(next);
  }
  return s;
}

// Stage m of the refutation: m-1 fixed indexes, equal-size live index
// sets for the remaining levels, and the m-1 sequences collected so far.
struct AdversaryState {
  int m = 1;
  std::vector<int> fixed;
  std::vector<std::vector<int>> live;
  std::vector<int> chosen;
};

inline AdversaryState initial_state(const CorePoset& core) {
  AdversaryState st;
  std::vector<int> all;
  for (int x = 1; x <= core.n; ++x) all.push_back(x);
  st.live.assign(core.d, all);
  return st;
}

// A family the refutation drives all the way to a certificate once
// n >= d!: one pivot-first sequence per stage (the stage's top point,
// then every bottom point under its prefix), plus a two-point reverser
// for each last-level pair.
inline std::vector<std::vector<int>> cooperative_family(const CorePoset& core) {
  std::vector<std::vector<int>> fam;
  std::vector<int> prefix;
  for (int m = 0; m + 1 < core.d; ++m) {
    std::vector<int> name(prefix);
    name.push_back(1);
    std::vector<int> ple{core.max_id(name)};
    std::vector<int> coords(name);
    coords.resize(core.d);
    std::function<void(int)> fill = [&](int level) {
      if (level == core.d) {
        ple.push_back(core.min_id(coords));
        return;
      }
      for (int x = 1; x <= core.n; ++x) {
        coords[level] = x;
        fill(level + 1);
      }
    };
    fill((int)name.size());
    fam.push_back(std::move(ple));
    prefix.push_back(1);
  }
  for (int h = 1; h <= core.n; ++h) {
    std::vector<int> name(prefix);
    name.push_back(h);
    fam.push_back({core.max_id(name), core.min_id(name)});
  }
  return fam;
}

struct Certificate {
  int witness = -1;
  std::vector<int> ple_indexes;
};

struct FailureReport {
  enum class Reason {
    size_insufficient,
    unreversed_pair,
    uncovered_comparability,
    mu_precondition_exceeded
  };
  Reason reason = Reason::size_insufficient;
  int stage = 0;
  std::pair<int, int> pair{-1, -1};  // unreversed or uncovered element ids
  int element = -1;                  // the pivot, when mu is the problem
  int mu = 0;
  long long required_size = 0;  // size case; -1 when past the exact range
  std::string detail;
};

using StepResult = std::variant<AdversaryState, FailureReport>;

namespace detail {

struct PleTable {
  std::vector<std::vector<int>> pos;  // pos[k][id], -1 when absent
  std::vector<int> mu;
};

inline PleTable index_ples(const Poset& p,
                           const std::vector<std::vector<int>>& ples) {
  PleTable t;
  t.mu.assign(p.size(), 0);
  for (size_t k = 0; k < ples.size(); ++k) {
    auto r = validate_order(p, ples[k], SeqMode::ple);
    if (!r.ok)
      throw std::invalid_argument("sequence " + std::to_string(k) +
                                  " does not respect the order");
    std::vector<int> pk(p.size(), -1);
    for (size_t i = 0; i < ples[k].size(); ++i) {
      pk[ples[k][i]] = (int)i;
      ++t.mu[ples[k][i]];
    }
    t.pos.push_back(std::move(pk));
  }
  return t;
}

// run fn on every coordinate choice from sets, last set moving fastest
inline void for_each_pick(const std::vector<std::vector<int>>& sets,
                          const std::function<void(const std::vector<int>&)>& fn) {
  for (const auto& s : sets)
    if (s.empty()) return;
  const int t = (int)sets.size();
  std::vector<int> idx(t, 0), pick(t);
  if (t == 0) {
    fn(pick);
    return;
  }
  while (true) {
    for (int a = 0; a < t; ++a) pick[a] = sets[a][idx[a]];
    fn(pick);
    int a = t - 1;
    while (a >= 0 && idx[a] + 1 == (int)sets[a].size()) idx[a--] = 0;
    if (a < 0) return;
    ++idx[a];
  }
}

inline std::vector<int> reversing_family(
    const CorePoset& core, const PleTable& table,
    const std::vector<int>& prefix,
    const std::vector<std::vector<int>>& parts) {
  const int m = (int)prefix.size() + 1;
  if ((int)parts.size() != core.d - m + 1)
    throw std::invalid_argument("part count must cover the live levels");
  std::vector<char> in_family(table.pos.size(), 0);
  std::vector<int> coords(core.d);
  for (int i = 0; i + 1 < m; ++i) coords[i] = prefix[i];
  for_each_pick(parts, [&](const std::vector<int>& tail) {
    for (int i = 0; i < (int)tail.size(); ++i) coords[m - 1 + i] = tail[i];
    const int u = core.min_id(coords);
    std::vector<int> w(prefix);
    w.push_back(tail[0]);
    const int v = core.max_id(w);
    for (size_t k = 0; k < table.pos.size(); ++k) {
      if (in_family[k]) continue;
      const int pu = table.pos[k][u], pv = table.pos[k][v];
      if (pu >= 0 && pv >= 0 && pv < pu) in_family[k] = 1;
    }
  });
  std::vector<int> out;
  for (size_t k = 0; k < in_family.size(); ++k)
    if (in_family[k]) out.push_back((int)k);
  return out;
}

inline void check_state(const CorePoset& core, const PleTable& table,
                        const AdversaryState& st) {
  const int d = core.d;
  if (st.m < 1 || st.m > d) throw std::invalid_argument("stage out of range");
  if ((int)st.fixed.size() != st.m - 1)
    throw std::invalid_argument("fixed index count must be one below the stage");
  if ((int)st.live.size() != d - st.m + 1)
    throw std::invalid_argument("live level count must reach the last level");
  if ((int)st.chosen.size() != st.m - 1)
    throw std::invalid_argument("collected sequence count must be one below the stage");
  for (int h : st.fixed)
    if (h < 1 || h > core.n) throw std::invalid_argument("fixed index out of range");
  const size_t width = st.live[0].size();
  for (const auto& lv : st.live) {
    if (lv.size() != width)
      throw std::invalid_argument("live levels must share one size");
    for (size_t i = 0; i < lv.size(); ++i) {
      if (lv[i] < 1 || lv[i] > core.n)
        throw std::invalid_argument("live index out of range");
      if (i > 0 && lv[i] <= lv[i - 1])
        throw std::invalid_argument("live levels must ascend");
    }
  }
  std::set<int> seen;
  for (int k : st.chosen) {
    if (k < 0 || k >= (int)table.pos.size())
      throw std::invalid_argument("collected sequence index out of range");
    if (!seen.insert(k).second)
      throw std::invalid_argument("collected sequence repeated");
  }
  // every product point must appear in every collected sequence
  std::vector<int> coords(d);
  for (int i = 0; i + 1 < st.m; ++i) coords[i] = st.fixed[i];
  for_each_pick(st.live, [&](const std::vector<int>& tail) {
    for (int i = 0; i < (int)tail.size(); ++i) coords[st.m - 1 + i] = tail[i];
    const int u = core.min_id(coords);
    for (int k : st.chosen)
      if (table.pos[k][u] < 0)
        throw std::invalid_argument(
            "collected sequence misses " + to_string(core.poset.label(u)));
  });
}

inline std::vector<std::vector<int>> round_robin(const std::vector<int>& all,
                                                 int parts) {
  std::vector<std::vector<int>> out(parts);
  for (size_t i = 0; i < all.size(); ++i) out[i % parts].push_back(all[i]);
  return out;
}

}  // namespace detail

// Sequences that put some minimal point of the prefixed product over the
// incomparable top point of its own index; parts list one index set per
// live level, the first carrying the pair-forming level.
inline std::vector<int> minmax_reversing_family(
    const CorePoset& core, const std::vector<std::vector<int>>& ples,
    const std::vector<int>& prefix,
    const std::vector<std::vector<int>>& parts) {
  auto table = detail::index_ples(core.poset, ples);
  return detail::reversing_family(core, table, prefix, parts);
}

namespace detail {

inline StepResult step_with_table(const AdversaryState& st,
                                  const CorePoset& core, const PleTable& table,
                                  int target_size,
                                  bool constructive_only = false) {
  const int m = st.m, d = core.d;
  if (m >= d)
    throw std::invalid_argument("the last stage forms the certificate, not a step");
  if (target_size < 1) throw std::invalid_argument("target size must be positive");
  check_state(core, table, st);

  // partition every live level and collect the per-part reversing families
  std::vector<std::vector<std::vector<int>>> part_of_level;
  for (const auto& lv : st.live) part_of_level.push_back(round_robin(lv, m));
  std::vector<std::vector<int>> families(m);
  for (int j = 0; j < m; ++j) {
    std::vector<std::vector<int>> parts;
    for (const auto& pl : part_of_level) parts.push_back(pl[j]);
    families[j] = reversing_family(core, table, st.fixed, parts);
  }
  for (int j = 0; j < m; ++j)
    for (int jj = j + 1; jj < m; ++jj)
      for (int k : families[j])
        if (std::find(families[jj].begin(), families[jj].end(), k) !=
            families[jj].end())
          throw std::logic_error("reversing families overlap");

  int j0 = -1;
  for (int j = 0; j < m && j0 < 0; ++j) {
    bool touched = false;
    for (int k : st.chosen)
      if (std::find(families[j].begin(), families[j].end(), k) !=
          families[j].end())
        touched = true;
    if (!touched) j0 = j;
  }
  if (j0 < 0) throw std::logic_error("every part met the collected sequences");

  if (part_of_level[0][j0].empty()) {
    FailureReport f;
    f.reason = FailureReport::Reason::size_insufficient;
    f.stage = m;
    f.required_size = m;
    f.detail = "stage " + std::to_string(m) + " split " +
               std::to_string(st.live[0].size()) + " live indexes into " +
               std::to_string(m) + " parts and one came out empty";
    return f;
  }
  const int h = part_of_level[0][j0].front();
  std::vector<int> vname(st.fixed);
  vname.push_back(h);
  const int v = core.max_id(vname);

  if (table.mu[v] > d - 1) {
    FailureReport f;
    f.reason = FailureReport::Reason::mu_precondition_exceeded;
    f.stage = m;
    f.element = v;
    f.mu = table.mu[v];
    f.detail = "pivot " + to_string(core.poset.label(v)) + " appears in " +
               std::to_string(table.mu[v]) + " sequences, the budget is " +
               std::to_string(d - 1);
    return f;
  }
  std::vector<int> palette;
  for (size_t k = 0; k < table.pos.size(); ++k)
    if (table.pos[k][v] >= 0) palette.push_back((int)k);

  // color the prefixed product under the pivot by its least reverser
  GridColoring grid;
  for (size_t i = 1; i < part_of_level.size(); ++i)
    grid.axes.push_back(part_of_level[i][j0]);
  std::vector<int> coords(d);
  for (int i = 0; i + 1 < m; ++i) coords[i] = st.fixed[i];
  coords[m - 1] = h;
  std::optional<FailureReport> colour_failure;
  detail::for_each_pick(grid.axes, [&](const std::vector<int>& tail) {
    if (colour_failure) return;
    for (int i = 0; i < (int)tail.size(); ++i) coords[m + i] = tail[i];
    const int w = core.min_id(coords);
    int colour = -1;
    for (int c = 0; c < (int)palette.size() && colour < 0; ++c) {
      const auto& pk = table.pos[palette[c]];
      if (pk[w] >= 0 && pk[v] < pk[w]) colour = c;
    }
    if (colour < 0) {
      FailureReport f;
      f.reason = FailureReport::Reason::unreversed_pair;
      f.stage = m;
      f.pair = {w, v};
      f.detail = "no sequence places " + to_string(core.poset.label(w)) +
                 " above " + to_string(core.poset.label(v));
      colour_failure = f;
      return;
    }
    grid.colors.push_back(colour);
  });
  if (colour_failure) return *colour_failure;

  const int r = std::max(1, (int)palette.size());
  std::optional<MonoBox> box;
  if (!constructive_only) box = find_mono_box_exact(grid, target_size);
  if (!box) {
    try {
      box = extract_mono_box(grid, r, target_size);
    } catch (const std::length_error&) {
      // the constructive extractor could not even size its recursion
    }
  }
  if (!box) {
    FailureReport f;
    f.reason = FailureReport::Reason::size_insufficient;
    f.stage = m;
    RamseyBound need = pram_bound(r, d - m, target_size);
    f.required_size =
        need.kind == RamseyBound::Kind::exact &&
                need.value <= std::numeric_limits<long long>::max() / m
            ? m * need.value
            : -1;
    f.detail = "no one-color box of side " + std::to_string(target_size) +
               " in the live grid; " + std::to_string(m) + " parts of " +
               need.describe() + " indexes per level would have sufficed";
    return f;
  }
  if (!verify_mono_box(grid, *box, target_size))
    throw std::logic_error("extracted box failed its own check");

  AdversaryState next;
  next.m = m + 1;
  next.fixed = st.fixed;
  next.fixed.push_back(h);
  for (size_t a = 0; a < grid.axes.size(); ++a) {
    std::vector<int> kept;
    for (int i : box->picks[a]) kept.push_back(grid.axes[a][i]);
    next.live.push_back(std::move(kept));
  }
  next.chosen = st.chosen;
  next.chosen.push_back(palette[box->color]);
  check_state(core, table, next);
  return next;
}

}  // namespace detail

inline StepResult adversary_step(const AdversaryState& st,
                                 const CorePoset& core,
                                 const std::vector<std::vector<int>>& ples,
                                 int target_size,
                                 bool constructive_only = false) {
  auto table = detail::index_ples(core.poset, ples);
  return detail::step_with_table(st, core, table, target_size,
                                 constructive_only);
}

struct AdversaryRun {
  bool success = false;
  Certificate certificate;
  FailureReport failure;
  std::vector<AdversaryState> trace;
};

inline bool verify_certificate(const CorePoset& core,
                               const std::vector<std::vector<int>>& ples,
                               const Certificate& c) {
  if ((int)c.ple_indexes.size() != core.d) return false;
  std::set<int> distinct(c.ple_indexes.begin(), c.ple_indexes.end());
  if ((int)distinct.size() != core.d) return false;
  if (c.witness < 0 || c.witness >= core.poset.size()) return false;
  for (int k : c.ple_indexes) {
    if (k < 0 || k >= (int)ples.size()) return false;
    if (std::find(ples[k].begin(), ples[k].end(), c.witness) == ples[k].end())
      return false;
  }
  return true;
}

inline bool verify_failure(const CorePoset& core,
                           const std::vector<std::vector<int>>& ples,
                           const FailureReport& f) {
  auto table = detail::index_ples(core.poset, ples);
  switch (f.reason) {
    case FailureReport::Reason::unreversed_pair: {
      auto [w, v] = f.pair;
      if (w < 0 || v < 0 || w >= core.poset.size() || v >= core.poset.size())
        return false;
      if (!core.poset.incomparable(w, v)) return false;
      for (const auto& pk : table.pos)
        if (pk[w] >= 0 && pk[v] >= 0 && pk[v] < pk[w]) return false;
      return true;
    }
    case FailureReport::Reason::uncovered_comparability: {
      auto [x, y] = f.pair;
      if (x < 0 || y < 0 || x >= core.poset.size() || y >= core.poset.size())
        return false;
      if (!core.poset.comparable(x, y)) return false;
      for (const auto& pk : table.pos)
        if (pk[x] >= 0 && pk[y] >= 0) return false;
      return true;
    }
    case FailureReport::Reason::mu_precondition_exceeded:
      return f.element >= 0 && f.element < core.poset.size() &&
             table.mu[f.element] == f.mu && f.mu > core.d - 1;
    case FailureReport::Reason::size_insufficient:
    default:
      return f.required_size != 0;
  }
}

// Drive a purported low-cost family to a witness appearing in d distinct
// sequences, or report exactly where the family or the index budget gave
// out.  The trace holds the state entering each stage.
inline AdversaryRun run_adversary(const CorePoset& core,
                                  const std::vector<std::vector<int>>& ples,
                                  bool constructive_only = false) {
  AdversaryRun run;
  const int d = core.d;
  auto table = detail::index_ples(core.poset, ples);

  if (d == 1) {
    // a single level: any covered bottom point is already a witness
    for (int u = 0; u < core.min_count(); ++u)
      for (size_t k = 0; k < table.pos.size(); ++k)
        if (table.pos[k][u] >= 0) {
          run.success = true;
          run.certificate = {u, {(int)k}};
          return run;
        }
    FailureReport f;
    f.reason = FailureReport::Reason::uncovered_comparability;
    f.stage = 1;
    const int u = core.min_id({1});
    const int v = core.max_id({2});
    f.pair = {u, v};
    f.detail = "no sequence contains " + to_string(core.poset.label(u)) +
               ", so its relation with " + to_string(core.poset.label(v)) +
               " is covered nowhere";
    run.failure = f;
    return run;
  }

  AdversaryState st = initial_state(core);
  run.trace.push_back(st);
  // stage m partitions into m parts and each later stage does the same,
  // so the workable box side at stage m is d!/m!
  long long want = 1;
  for (int j = 2; j <= d; ++j)
    want = std::min<long long>(want * j, std::numeric_limits<int>::max());
  for (int m = 1; m < d; ++m) {
    auto res =
        detail::step_with_table(st, core, table, (int)want, constructive_only);
    if (std::holds_alternative<FailureReport>(res)) {
      run.failure = std::get<FailureReport>(res);
      return run;
    }
    st = std::get<AdversaryState>(res);
    run.trace.push_back(st);
    want /= m + 1;
  }

  // final stage: the pairs over the surviving level form a standard
  // example, so they need d distinct reversers and one is new
  std::vector<int> tops(st.live[0].begin(), st.live[0].end());
  if ((int)tops.size() > d) tops.resize(d);
  if ((int)tops.size() < d) {
    FailureReport f;
    f.reason = FailureReport::Reason::size_insufficient;
    f.stage = d;
    f.required_size = d;
    f.detail = "the last level kept " + std::to_string(tops.size()) +
               " indexes, the final stage needs " + std::to_string(d);
    run.failure = f;
    return run;
  }
  std::vector<int> mins, maxs;
  for (int h : tops) {
    std::vector<int> name(st.fixed);
    name.push_back(h);
    mins.push_back(core.min_id(name));
    maxs.push_back(core.max_id(name));
  }
  {
    std::vector<int> ids(mins);
    ids.insert(ids.end(), maxs.begin(), maxs.end());
    if (!order_isomorphic(core.poset.induced(ids), standard_example(d)))
      throw std::logic_error("final pairs lost the standard-example shape");
  }
  std::vector<std::vector<int>> reversers(d);
  for (int i = 0; i < d; ++i) {
    for (size_t k = 0; k < table.pos.size(); ++k) {
      const auto& pk = table.pos[k];
      if (pk[mins[i]] >= 0 && pk[maxs[i]] >= 0 && pk[maxs[i]] < pk[mins[i]])
        reversers[i].push_back((int)k);
    }
    if (reversers[i].empty()) {
      FailureReport f;
      f.reason = FailureReport::Reason::unreversed_pair;
      f.stage = d;
      f.pair = {mins[i], maxs[i]};
      f.detail = "no sequence places " + to_string(core.poset.label(mins[i])) +
                 " above " + to_string(core.poset.label(maxs[i]));
      run.failure = f;
      return run;
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k : reversers[i])
        if (std::find(reversers[j].begin(), reversers[j].end(), k) !=
            reversers[j].end())
          throw std::logic_error("one sequence reversed two standard pairs");

  for (int i = 0; i < d; ++i) {
    for (int k : reversers[i]) {
      if (std::find(st.chosen.begin(), st.chosen.end(), k) != st.chosen.end())
        continue;
      Certificate c;
      c.witness = mins[i];
      c.ple_indexes = st.chosen;
      c.ple_indexes.push_back(k);
      if (!verify_certificate(core, ples, c))
        throw std::logic_error("assembled certificate failed its own check");
      run.success = true;
      run.certificate = c;
      return run;
    }
  }
  throw std::logic_error("every reverser was already collected");
}

inline AdversaryRun run_adversary(int n, int d,
                                  const std::vector<std::vector<int>>& ples,
                                  bool constructive_only = false) {
  return run_adversary(abstract_core(n, d), ples, constructive_only);
}

}  // namespace ordim
