#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordim {

// Element names are token sequences like (a1) or (a2,b3); families a/b name
// grid points, w/z name the ladder points of the Kelly construction.
struct LabelToken {
  char family = 'a';
  int index = 1;

  friend bool operator==(const LabelToken& s, const LabelToken& t) {
    return s.family == t.family && s.index == t.index;
  }
  friend bool operator<(const LabelToken& s, const LabelToken& t) {
    return s.family != t.family ? s.family < t.family : s.index < t.index;
  }
};

using Label = std::vector<LabelToken>;

inline std::string to_string(const LabelToken& t) {
  return std::string(1, t.family) + std::to_string(t.index);
}

inline std::string to_string(const Label& l) {
  std::string s = "(";
  for (size_t i = 0; i < l.size(); ++i) {
    if (i) s += ",";
    s += to_string(l[i]);
  }
  return s + ")";
}

inline LabelToken parse_label_token(const std::string& s) {
  if (s.size() < 2 || std::string("abwz").find(s[0]) == std::string::npos)
    throw std::invalid_argument("malformed label token: " + s);
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("malformed label token: " + s);
  int idx = std::stoi(s.substr(1));
  if (idx < 1) throw std::invalid_argument("label index must be positive: " + s);
  return LabelToken{s[0], idx};
}

inline Label default_label(int id) { return {LabelToken{'a', id + 1}}; }

// Finite strict order over ids 0..n-1, stored as bitset rows in both
// directions.  Immutable once built; every factory validates the axioms.
class Poset {
 public:
  Poset() = default;

  static Poset from_less(int n, std::vector<Label> labels,
                         const std::function<bool(int, int)>& less_fn) {
    Poset p = raw(n, std::move(labels));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (less_fn(x, y)) p.set_less(x, y);
    p.check_axioms();
    p.check_labels();
    p.compute_heights();
    return p;
  }

  int size() const { return n_; }
  int words() const { return words_; }

  bool less(int x, int y) const {
    check_id(x);
    check_id(y);
    return up_bit(x, y);
  }
  bool leq(int x, int y) const { return x == y || less(x, y); }
  bool comparable(int x, int y) const { return less(x, y) || less(y, x); }
  bool incomparable(int x, int y) const { return x != y && !comparable(x, y); }

  const Label& label(int v) const {
    check_id(v);
    return labels_[v];
  }
  const std::vector<Label>& labels() const { return labels_; }

  std::optional<int> find_label(const Label& l) const {
    for (int v = 0; v < n_; ++v)
      if (labels_[v] == l) return v;
    return std::nullopt;
  }

  // Pairs (x,y) with x<y and no z strictly between; lexicographic order.
  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y) {
        if (!up_bit(x, y)) continue;
        bool is_cover = true;
        for (int w = 0; w < words_ && is_cover; ++w)
          if (up_[idx(x, w)] & down_[idx(y, w)]) is_cover = false;
        if (is_cover) out.emplace_back(x, y);
      }
    return out;
  }

  // All ordered incomparable pairs, both orientations, lexicographic.
  std::vector<std::pair<int, int>> inc_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (x != y && !up_bit(x, y) && !up_bit(y, x)) out.emplace_back(x, y);
    return out;
  }

  std::vector<std::pair<int, int>> relation_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (up_bit(x, y)) out.emplace_back(x, y);
    return out;
  }

  std::vector<int> up_set(int v) const { return row_ids(up_, v); }
  std::vector<int> down_set(int v) const { return row_ids(down_, v); }

  bool down_subset(int x, int y) const {  // down(x) included in down(y)
    check_id(x);
    check_id(y);
    for (int w = 0; w < words_; ++w)
      if (down_[idx(x, w)] & ~down_[idx(y, w)]) return false;
    return true;
  }
  bool up_subset(int x, int y) const {  // up(x) included in up(y)
    check_id(x);
    check_id(y);
    for (int w = 0; w < words_; ++w)
      if (up_[idx(x, w)] & ~up_[idx(y, w)]) return false;
    return true;
  }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (row_empty(down_, v)) out.push_back(v);
    return out;
  }
  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (row_empty(up_, v)) out.push_back(v);
    return out;
  }

  // Longest chain ending at v, counted in elements (minimal elements get 1).
  int height_of(int v) const {
    check_id(v);
    return heights_[v];
  }
  int height() const {
    int h = 0;
    for (int v = 0; v < n_; ++v) h = std::max(h, heights_[v]);
    return h;
  }

  Poset dual() const {
    Poset p;
    p.n_ = n_;
    p.words_ = words_;
    p.up_ = down_;
    p.down_ = up_;
    p.labels_ = labels_;
    p.compute_heights();
    return p;
  }

  Poset induced(const std::vector<int>& ids) const {
    std::vector<Label> ls;
    ls.reserve(ids.size());
    for (int v : ids) {
      check_id(v);
      ls.push_back(labels_[v]);
    }
    Poset p = raw(static_cast<int>(ids.size()), std::move(ls));
    for (size_t i = 0; i < ids.size(); ++i)
      for (size_t j = 0; j < ids.size(); ++j)
        if (up_bit(ids[i], ids[j]))
          p.set_less(static_cast<int>(i), static_cast<int>(j));
    p.check_axioms();
    p.check_labels();
    p.compute_heights();
    return p;
  }

  bool same_order(const Poset& o) const { return n_ == o.n_ && up_ == o.up_; }
  friend bool operator==(const Poset& a, const Poset& b) {
    return a.same_order(b) && a.labels_ == b.labels_;
  }

  std::uint64_t up_word(int v, int w) const { return up_[idx(v, w)]; }
  std::uint64_t down_word(int v, int w) const { return down_[idx(v, w)]; }

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> up_, down_;
  std::vector<Label> labels_;
  std::vector<int> heights_;

  static Poset raw(int n, std::vector<Label> labels) {
    if (n < 0) throw std::invalid_argument("negative poset size");
    Poset p;
    p.n_ = n;
    p.words_ = n == 0 ? 1 : (n + 63) / 64;
    p.up_.assign(static_cast<size_t>(n) * p.words_, 0);
    p.down_.assign(static_cast<size_t>(n) * p.words_, 0);
    if (labels.empty()) {
      labels.reserve(n);
      for (int v = 0; v < n; ++v) labels.push_back(default_label(v));
    }
    if (static_cast<int>(labels.size()) != n)
      throw std::invalid_argument("label count does not match size");
    p.labels_ = std::move(labels);
    return p;
  }

  size_t idx(int v, int w) const { return static_cast<size_t>(v) * words_ + w; }

  void check_id(int v) const {
    if (v < 0 || v >= n_)
      throw std::out_of_range("id out of range: " + std::to_string(v));
  }

  bool up_bit(int x, int y) const {
    return up_[idx(x, y / 64)] >> (y % 64) & 1;
  }

  bool row_empty(const std::vector<std::uint64_t>& rows, int v) const {
    for (int w = 0; w < words_; ++w)
      if (rows[idx(v, w)]) return false;
    return true;
  }

  std::vector<int> row_ids(const std::vector<std::uint64_t>& rows, int v) const {
    check_id(v);
    std::vector<int> out;
    for (int y = 0; y < n_; ++y)
      if (rows[idx(v, y / 64)] >> (y % 64) & 1) out.push_back(y);
    return out;
  }

  void set_less(int x, int y) {
    up_[idx(x, y / 64)] |= 1ull << (y % 64);
    down_[idx(y, x / 64)] |= 1ull << (x % 64);
  }

  void check_axioms() const {
    for (int x = 0; x < n_; ++x)
      if (up_bit(x, x))
        throw std::invalid_argument("relation not irreflexive at " +
                                    to_string(labels_[x]));
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (up_bit(x, y)) {
          if (up_bit(y, x))
            throw std::invalid_argument("relation not antisymmetric on " +
                                        to_string(labels_[x]) + "," +
                                        to_string(labels_[y]));
          // transitivity: up(y) must be a subset of up(x)
          for (int w = 0; w < words_; ++w)
            if (up_[idx(y, w)] & ~up_[idx(x, w)])
              throw std::invalid_argument("relation not transitive through " +
                                          to_string(labels_[x]) + "<" +
                                          to_string(labels_[y]));
        }
  }

  void check_labels() const {
    for (int x = 0; x < n_; ++x) {
      if (labels_[x].empty()) throw std::invalid_argument("empty label");
      for (int y = x + 1; y < n_; ++y)
        if (labels_[x] == labels_[y])
          throw std::invalid_argument("duplicate label " + to_string(labels_[x]));
    }
  }

  void compute_heights() {
    heights_.assign(n_, 0);
    // ids in non-decreasing order of down-set size topologically sort a
    // transitively closed relation
    std::vector<int> order(n_);
    std::vector<int> deg(n_, 0);
    for (int v = 0; v < n_; ++v) deg[v] = static_cast<int>(down_set(v).size());
    for (int v = 0; v < n_; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] < deg[b]; });
    for (int v : order) {
      int h = 1;
      for (int u : down_set(v)) h = std::max(h, heights_[u] + 1);
      heights_[v] = h;
    }
  }

  friend Poset poset_from_covers(std::vector<Label> labels,
                                 const std::vector<std::pair<int, int>>& covers);
};

// Builds the transitive closure of an acyclic cover relation.  Throws with a
// cycle witness when the covers loop, and rejects duplicate labels and ids
// out of range.
inline Poset poset_from_covers(std::vector<Label> labels,
                               const std::vector<std::pair<int, int>>& covers) {
  const int n = static_cast<int>(labels.size());
  Poset p = Poset::raw(n, std::move(labels));
  p.check_labels();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto& [lo, hi] : covers) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw std::out_of_range("cover id out of range: (" + std::to_string(lo) +
                              "," + std::to_string(hi) + ")");
    succ[lo].push_back(hi);
    ++indeg[hi];
  }
  std::vector<int> topo;
  topo.reserve(n);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    topo.push_back(v);
    for (int s : succ[v])
      if (--indeg[s] == 0) queue.push_back(s);
  }
  if (static_cast<int>(topo.size()) != n) {
    // Every vertex Kahn left behind keeps a leftover predecessor, so walking
    // predecessors must revisit one; that loop, reversed, is a cover cycle.
    std::vector<char> left(n, 1);
    for (int v : topo) left[v] = 0;
    std::vector<std::vector<int>> pred(n);
    for (auto& [lo, hi] : covers)
      if (left[lo] && left[hi]) pred[hi].push_back(lo);
    int v = 0;
    while (!left[v]) ++v;
    std::vector<int> path;
    std::vector<int> seen(n, -1);
    while (seen[v] < 0) {
      seen[v] = static_cast<int>(path.size());
      path.push_back(v);
      v = pred[v].front();
    }
    std::string msg = "cycle detected in covers: " + to_string(p.label(v));
    for (int i = static_cast<int>(path.size()) - 1; i >= seen[v]; --i)
      msg += " < " + to_string(p.label(path[i]));
    throw std::invalid_argument(msg);
  }
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int v = *it;
    for (int s : succ[v]) {
      p.set_less(v, s);
      for (int w = 0; w < p.words_; ++w)
        p.up_[p.idx(v, w)] |= p.up_[p.idx(s, w)];
    }
  }
  // rebuild down rows from the closed up rows
  std::fill(p.down_.begin(), p.down_.end(), 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (p.up_bit(x, y)) p.down_[p.idx(y, x / 64)] |= 1ull << (x % 64);
  p.check_axioms();
  p.compute_heights();
  return p;
}

enum class SeqMode { total, ple };

struct SeqReport {
  bool ok = true;
  // a comparability x<y that the sequence lists in the wrong order
  std::optional<std::pair<int, int>> violation;
};

// Checks that seq never places y before x when x<y in P.  mode total
// additionally requires seq to cover the whole ground set.  Duplicates and
// bad ids throw; order violations are reported, with the witness chosen
// lexicographically by id pair.
inline SeqReport validate_order(const Poset& p, const std::vector<int>& seq,
                                SeqMode mode) {
  std::vector<char> seen(p.size(), 0);
  for (int v : seq) {
    if (v < 0 || v >= p.size())
      throw std::out_of_range("sequence id out of range: " + std::to_string(v));
    if (seen[v])
      throw std::invalid_argument("duplicate element in sequence: " +
                                  to_string(p.label(v)));
    seen[v] = 1;
  }
  if (mode == SeqMode::total && static_cast<int>(seq.size()) != p.size())
    throw std::invalid_argument("sequence does not cover the ground set");
  std::optional<std::pair<int, int>> worst;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j)
      if (p.less(seq[j], seq[i])) {
        std::pair<int, int> v{seq[j], seq[i]};
        if (!worst || v < *worst) worst = v;
      }
  if (worst) return {false, worst};
  return {};
}

inline bool is_linear_extension(const Poset& p, const std::vector<int>& seq) {
  return validate_order(p, seq, SeqMode::total).ok;
}

inline bool is_ple(const Poset& p, const std::vector<int>& seq) {
  return validate_order(p, seq, SeqMode::ple).ok;
}

// Deterministic random order: a DAG on i<j sampled edge-wise, then closed.
inline Poset random_poset(int n, double prob, std::uint64_t seed) {
  if (prob < 0.0 || prob > 1.0)
    throw std::invalid_argument("edge probability outside [0,1]");
  std::mt19937_64 rng(seed);
  auto coin = [&] { return (rng() >> 11) * 0x1.0p-53 < prob; };
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin()) covers.emplace_back(i, j);
  std::vector<Label> labels;
  for (int v = 0; v < n; ++v) labels.push_back(default_label(v));
  return poset_from_covers(std::move(labels), covers);
}

// Backtracking search for an injection f with u<v iff f(u)<f(v).  Returns
// the lexicographically least image vector.  Intended for desk-scale sizes.
inline std::optional<std::vector<int>> find_order_embedding(const Poset& small,
                                                            const Poset& big) {
  const int k = small.size(), n = big.size();
  if (k > n) return std::nullopt;
  std::vector<int> image(k, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> place = [&](int v) {
    if (v == k) return true;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        if (small.less(u, v) != big.less(image[u], c)) ok = false;
        if (ok && small.less(v, u) != big.less(c, image[u])) ok = false;
      }
      if (!ok) continue;
      image[v] = c;
      used[c] = 1;
      if (place(v + 1)) return true;
      used[c] = 0;
      image[v] = -1;
    }
    return false;
  };
  if (place(0)) return image;
  return std::nullopt;
}

inline bool order_isomorphic(const Poset& a, const Poset& b) {
  return a.size() == b.size() && find_order_embedding(a, b).has_value();
}

}  // namespace ordim
