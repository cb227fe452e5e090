#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "poset.hpp"

namespace ordim {

constexpr long long kSizeGuard = 1000000;

inline void check_size_guard(const std::string& what, long long elements) {
  if (elements > kSizeGuard)
    throw std::length_error("size guard exceeded: " + what + " would have " +
                            std::to_string(elements) + " elements");
}

inline Poset chain(int n) {
  std::vector<Label> labels;
  for (int i = 0; i < n; ++i) labels.push_back(default_label(i));
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return poset_from_covers(std::move(labels), covers);
}

inline Poset antichain(int n) {
  std::vector<Label> labels;
  for (int i = 0; i < n; ++i) labels.push_back(default_label(i));
  return poset_from_covers(std::move(labels), {});
}

// Side-by-side copy of two posets with no relations across; elements are
// relabeled to the defaults, so use ids when tracing parts.
inline Poset disjoint_union(const Poset& a, const Poset& b) {
  const int na = a.size();
  const int n = na + b.size();
  check_size_guard("disjoint union", n);
  return Poset::from_less(n, {}, [&](int x, int y) {
    if (x < na && y < na) return a.less(x, y);
    if (x >= na && y >= na) return b.less(x - na, y - na);
    return false;
  });
}

// S_n: minimal a_1..a_n, maximal b_1..b_n, a_i < b_j exactly when i != j.
// ids: a_i -> i-1, b_j -> n+j-1.
inline Poset standard_example(int n) {
  if (n < 2) throw std::invalid_argument("standard example needs n >= 2");
  std::vector<Label> labels;
  for (int i = 1; i <= n; ++i) labels.push_back({LabelToken{'a', i}});
  for (int j = 1; j <= n; ++j) labels.push_back({LabelToken{'b', j}});
  return Poset::from_less(2 * n, std::move(labels), [n](int x, int y) {
    return x < n && y >= n && y - n != x;
  });
}

// id layout of one Kelly copy, shared by the canned realizers
inline int kelly_a_id(int n, int i) { (void)n; return i - 1; }
inline int kelly_b_id(int n, int i) { return n + i - 1; }
inline int kelly_w_id(int n, int i) { return 2 * n + i - 1; }
inline int kelly_z_id(int n, int i) { return 3 * n - 1 + i - 1; }

inline std::vector<std::pair<int, int>> kelly_cover_pairs(int n) {
  std::vector<std::pair<int, int>> covers;
  for (int i = 1; i <= n - 1; ++i) {
    covers.emplace_back(kelly_a_id(n, i), kelly_w_id(n, i));
    covers.emplace_back(kelly_w_id(n, i), kelly_b_id(n, i + 1));
    covers.emplace_back(kelly_a_id(n, i + 1), kelly_z_id(n, i));
    covers.emplace_back(kelly_z_id(n, i), kelly_b_id(n, i));
  }
  for (int i = 1; i <= n - 2; ++i) {
    covers.emplace_back(kelly_w_id(n, i), kelly_w_id(n, i + 1));
    covers.emplace_back(kelly_z_id(n, i + 1), kelly_z_id(n, i));
  }
  return covers;
}

inline Poset kelly(int n) {
  if (n < 2) throw std::invalid_argument("kelly needs n >= 2");
  std::vector<Label> labels(4 * n - 2);
  for (int i = 1; i <= n; ++i) {
    labels[kelly_a_id(n, i)] = {LabelToken{'a', i}};
    labels[kelly_b_id(n, i)] = {LabelToken{'b', i}};
  }
  for (int i = 1; i <= n - 1; ++i) {
    labels[kelly_w_id(n, i)] = {LabelToken{'w', i}};
    labels[kelly_z_id(n, i)] = {LabelToken{'z', i}};
  }
  return poset_from_covers(std::move(labels), kelly_cover_pairs(n));
}

struct KellyInstance {
  std::vector<int> path;         // child indexes from the root; empty at root
  std::vector<int> a, b, w, z;   // global ids; position i-1 holds index i
};

struct KellyRec {
  Poset poset;
  int n = 0;
  int d = 1;
  std::vector<KellyInstance> copies;            // breadth-first, root first
  std::vector<std::pair<int, Label>> aliases;   // glue id, its (prefix, b_n) name
};

// Recursive Kelly family: d levels of K_n copies, each child hung below a
// parent point a_i by identifying the child's b_n with it.  The identified
// point keeps the shorter all-a name; the b_n alias is kept on the side.
inline KellyRec kelly_rec(int n, int d) {
  if (n < 2 || d < 1)
    throw std::invalid_argument("kelly_rec needs n >= 2, d >= 1");
  {
    long long copies_count = 0, pw = 1;
    for (int k = 0; k < d && copies_count <= kSizeGuard; ++k) {
      copies_count += pw;
      pw *= n;
    }
    check_size_guard(
        "kelly_rec(" + std::to_string(n) + "," + std::to_string(d) + ")",
        copies_count * (4 * n - 2) - (copies_count - 1));
  }

  KellyRec out;
  out.n = n;
  out.d = d;
  std::vector<Label> labels;
  int next_id = 0;

  auto new_element = [&](const std::vector<int>& path, char family, int index) {
    Label l;
    for (int step : path) l.push_back(LabelToken{'a', step});
    l.push_back(LabelToken{family, index});
    labels.push_back(l);
    return next_id++;
  };

  KellyInstance root;
  for (int i = 1; i <= n; ++i) root.a.push_back(new_element({}, 'a', i));
  for (int i = 1; i <= n; ++i) root.b.push_back(new_element({}, 'b', i));
  for (int i = 1; i <= n - 1; ++i) root.w.push_back(new_element({}, 'w', i));
  for (int i = 1; i <= n - 1; ++i) root.z.push_back(new_element({}, 'z', i));
  out.copies.push_back(std::move(root));

  int level_begin = 0, level_end = 1;
  for (int depth = 1; depth < d; ++depth) {
    for (int parent = level_begin; parent < level_end; ++parent) {
      for (int i = 1; i <= n; ++i) {
        KellyInstance child;
        child.path = out.copies[parent].path;
        child.path.push_back(i);
        for (int j = 1; j <= n; ++j)
          child.a.push_back(new_element(child.path, 'a', j));
        for (int j = 1; j <= n - 1; ++j)
          child.b.push_back(new_element(child.path, 'b', j));
        int glue = out.copies[parent].a[i - 1];
        child.b.push_back(glue);
        Label alias;
        for (int step : child.path) alias.push_back(LabelToken{'a', step});
        alias.push_back(LabelToken{'b', n});
        out.aliases.emplace_back(glue, alias);
        for (int j = 1; j <= n - 1; ++j)
          child.w.push_back(new_element(child.path, 'w', j));
        for (int j = 1; j <= n - 1; ++j)
          child.z.push_back(new_element(child.path, 'z', j));
        out.copies.push_back(std::move(child));
      }
    }
    level_begin = level_end;
    level_end = static_cast<int>(out.copies.size());
  }

  const auto local_covers = kelly_cover_pairs(n);
  std::vector<std::pair<int, int>> covers;
  covers.reserve(out.copies.size() * local_covers.size());
  for (const auto& copy : out.copies) {
    auto global = [&](int local) {
      if (local < n) return copy.a[local];
      if (local < 2 * n) return copy.b[local - n];
      if (local < 3 * n - 1) return copy.w[local - 2 * n];
      return copy.z[local - (3 * n - 1)];
    };
    for (const auto& [lo, hi] : local_covers)
      covers.emplace_back(global(lo), global(hi));
  }

  out.poset = poset_from_covers(std::move(labels), covers);
  return out;
}

struct CorePoset {
  Poset poset;
  int n = 0;
  int d = 1;

  int min_count() const {
    int c = 1;
    for (int k = 0; k < d; ++k) c *= n;
    return c;
  }
  bool is_min(int id) const { return id < min_count(); }

  // minimal ids enumerate coordinate vectors of [n]^d lexicographically
  int min_id(const std::vector<int>& v) const {
    int id = 0;
    for (int x : v) id = id * n + (x - 1);
    return id;
  }
  std::vector<int> min_coords(int id) const {
    std::vector<int> v(d);
    for (int k = d - 1; k >= 0; --k) {
      v[k] = id % n + 1;
      id /= n;
    }
    return v;
  }

  // maximal ids follow, grouped by level k = 1..d, lexicographic inside a
  // level; a level-k point is a length-k vector whose last entry is the b index
  int max_id(const std::vector<int>& w) const {
    int id = min_count();
    int pw = 1;
    for (size_t k = 1; k < w.size(); ++k) {
      pw *= n;
      id += pw;
    }
    int off = 0;
    for (int x : w) off = off * n + (x - 1);
    return id + off;
  }
  std::pair<int, std::vector<int>> max_coords(int id) const {
    int rest = id - min_count();
    int pw = n;
    int level = 1;
    while (rest >= pw) {
      rest -= pw;
      pw *= n;
      ++level;
    }
    std::vector<int> w(level);
    for (int k = level - 1; k >= 0; --k) {
      w[k] = rest % n + 1;
      rest /= n;
    }
    return {level, w};
  }
};

// Height-2 core: minimal points are full index sequences over [n], maximal
// points are shorter sequences ending in a b token; u < v exactly when the
// two agree before v's last level and differ at it.
inline CorePoset abstract_core(int n, int d) {
  if (n < 2 || d < 1)
    throw std::invalid_argument("abstract_core needs n >= 2, d >= 1");
  long long mins_ll = 1;
  for (int k = 0; k < d; ++k) mins_ll *= n;
  long long maxs_ll = 0, pw = 1;
  for (int k = 1; k <= d; ++k) {
    pw *= n;
    maxs_ll += pw;
  }
  check_size_guard(
      "abstract_core(" + std::to_string(n) + "," + std::to_string(d) + ")",
      mins_ll + maxs_ll);

  CorePoset core;
  core.n = n;
  core.d = d;
  const int mins = static_cast<int>(mins_ll);
  const int size = static_cast<int>(mins_ll + maxs_ll);

  std::vector<std::vector<int>> coords(size);
  std::vector<Label> labels(size);
  for (int id = 0; id < mins; ++id) {
    coords[id] = core.min_coords(id);
    Label l;
    for (int x : coords[id]) l.push_back(LabelToken{'a', x});
    labels[id] = l;
  }
  for (int id = mins; id < size; ++id) {
    auto [level, w] = core.max_coords(id);
    coords[id] = w;
    Label l;
    for (int k = 0; k + 1 < level; ++k) l.push_back(LabelToken{'a', w[k]});
    l.push_back(LabelToken{'b', w[level - 1]});
    labels[id] = l;
  }

  core.poset = Poset::from_less(
      size, std::move(labels), [&coords, mins](int x, int y) {
        if (x >= mins || y < mins) return false;
        const auto& u = coords[x];
        const auto& w = coords[y];
        for (size_t k = 0; k + 1 < w.size(); ++k)
          if (u[k] != w[k]) return false;
        return u[w.size() - 1] != w.back();
      });
  return core;
}

// Pure form of the same comparison on printed names.  Throws when a label is
// not a valid core point name for the given parameters.
inline bool prop1_less(const Label& u, const Label& v, int n, int d) {
  auto classify = [&](const Label& l) {
    // returns 0 for minimal form, the level k for maximal form
    if (l.empty() || static_cast<int>(l.size()) > d)
      throw std::invalid_argument("malformed core label " + to_string(l));
    for (const auto& t : l)
      if (t.index < 1 || t.index > n)
        throw std::invalid_argument("malformed core label " + to_string(l) +
                                    ": index outside [" + std::to_string(n) + "]");
    for (size_t k = 0; k + 1 < l.size(); ++k)
      if (l[k].family != 'a')
        throw std::invalid_argument("malformed core label " + to_string(l));
    if (l.back().family == 'b') return static_cast<int>(l.size());
    if (l.back().family != 'a' || static_cast<int>(l.size()) != d)
      throw std::invalid_argument("malformed core label " + to_string(l));
    return 0;
  };
  int cu = classify(u), cv = classify(v);
  if (cu != 0 || cv == 0) return false;
  for (int k = 0; k + 1 < cv; ++k)
    if (u[k].index != v[k].index) return false;
  return u[cv - 1].index != v[cv - 1].index;
}

// ids of the a and b points of every copy, canonical names only, ascending
inline std::vector<int> structural_core_points(const KellyRec& k) {
  std::vector<int> out;
  for (int id = 0; id < k.poset.size(); ++id) {
    char fam = k.poset.label(id).back().family;
    if (fam == 'a' || fam == 'b') out.push_back(id);
  }
  return out;
}

struct CoreEmbedding {
  CorePoset core;
  KellyRec host;
  std::vector<int> image;  // core id -> host id
};

// Order embedding of the height-2 core on [n] into the recursive Kelly family
// on [n+1]: a minimal index sequence lands on the a point its path selects, a
// maximal one on the matching b point of the copy its prefix selects.
inline CoreEmbedding embed_core(int n, int d) {
  CoreEmbedding e{abstract_core(n, d), kelly_rec(n + 1, d), {}};
  std::map<std::vector<int>, int> copy_at;
  for (size_t c = 0; c < e.host.copies.size(); ++c)
    copy_at[e.host.copies[c].path] = static_cast<int>(c);

  const int size = e.core.poset.size();
  e.image.resize(size);
  for (int id = 0; id < size; ++id) {
    if (e.core.is_min(id)) {
      auto v = e.core.min_coords(id);
      std::vector<int> path(v.begin(), v.end() - 1);
      e.image[id] = e.host.copies[copy_at.at(path)].a[v.back() - 1];
    } else {
      auto [level, w] = e.core.max_coords(id);
      std::vector<int> path(w.begin(), w.end() - 1);
      (void)level;
      e.image[id] = e.host.copies[copy_at.at(path)].b[w.back() - 1];
    }
  }

  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      if (e.core.poset.less(x, y) != e.host.poset.less(e.image[x], e.image[y]))
        throw std::logic_error(
            "embedding violation at " + to_string(e.core.poset.label(x)) +
            ", " + to_string(e.core.poset.label(y)));
  return e;
}

}  // namespace ordim
