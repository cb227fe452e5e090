#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordim {

// Least row count forcing m equal colors among r color classes.
inline long long pigeonhole_bound(long long r, long long m) {
  if (r < 1 || m < 1) throw std::invalid_argument("bound needs r, m >= 1");
  if (m > 1 && r > (std::numeric_limits<long long>::max() - 1) / (m - 1))
    throw std::overflow_error("pigeonhole bound overflows");
  return r * (m - 1) + 1;
}

// Product-Ramsey bounds explode as towers, so values carry their own
// scale: a plain integer while it fits, then only its decimal exponent,
// then just the nesting depth once even the exponent overflows.
struct RamseyBound {
  enum class Kind { exact, log_ten, astronomical };
  Kind kind = Kind::exact;
  long long value = 0;      // kind == exact
  double log10_value = 0;   // kind != astronomical
  int tower_height = 0;     // kind == astronomical

  std::string describe() const {
    switch (kind) {
      case Kind::exact:
        return std::to_string(value);
      case Kind::log_ten: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "about 10^%.6g", log10_value);
        return buf;
      }
      case Kind::astronomical:
      default: {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "beyond 10^308, exponent tower of depth %d",
                      tower_height);
        return buf;
      }
    }
  }
};

namespace detail {

inline bool less_bound(const RamseyBound& a, const RamseyBound& b) {
  auto rank = [](const RamseyBound& x) { return (int)x.kind; };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  switch (a.kind) {
    case RamseyBound::Kind::exact:
      return a.value < b.value;
    case RamseyBound::Kind::log_ten:
      return a.log10_value < b.log10_value;
    case RamseyBound::Kind::astronomical:
    default:
      return a.tower_height < b.tower_height;
  }
}

inline std::optional<long long> checked_pow(long long base, long long e) {
  long long result = 1;
  long long b = base;
  while (e > 0) {
    if (e & 1) {
      if (result > std::numeric_limits<long long>::max() / b)
        return std::nullopt;
      result *= b;
    }
    e >>= 1;
    if (e > 0) {
      if (b > std::numeric_limits<long long>::max() / b) return std::nullopt;
      b *= b;
    }
  }
  return result;
}

}  // namespace detail

// Grid size making an r-coloring of a t-fold product yield a box with m
// choices per axis on one color.  Level one is the pigeonhole bound;
// each level exponentiates the one below.
inline RamseyBound pram_bound(int r, int t, int m) {
  if (r < 1 || t < 1 || m < 1) throw std::invalid_argument("bound needs r, t, m >= 1");
  if (m == 1) return {RamseyBound::Kind::exact, 1, 0.0, 0};
  RamseyBound cur{RamseyBound::Kind::exact, pigeonhole_bound(r, m),
                  std::log10((double)pigeonhole_bound(r, m)), 0};
  const double logr = std::log10((double)r);
  for (int level = 2; level <= t; ++level) {
    // exponent e = cur^(level-1); bound = (m-1) * r^e + 1
    RamseyBound next;
    bool set = false;
    if (cur.kind == RamseyBound::Kind::astronomical) {
      next.kind = RamseyBound::Kind::astronomical;
      next.tower_height = cur.tower_height + 1;
      set = true;
    } else {
      const double log_e = (level - 1) * cur.log10_value;
      if (log_e > 308.0) {
        next.kind = RamseyBound::Kind::astronomical;
        next.tower_height = 1;
        set = true;
      } else if (cur.kind == RamseyBound::Kind::exact) {
        auto e = detail::checked_pow(cur.value, level - 1);
        auto pw = e ? detail::checked_pow(r, *e) : std::optional<long long>();
        if (pw && *pw <= (std::numeric_limits<long long>::max() - 1) / (m - 1)) {
          next.kind = RamseyBound::Kind::exact;
          next.value = (m - 1) * *pw + 1;
          next.log10_value = std::log10((double)next.value);
          set = true;
        }
      }
      if (!set) {
        next.kind = RamseyBound::Kind::log_ten;
        next.log10_value =
            std::pow(10.0, log_e) * logr + std::log10((double)(m - 1));
      }
    }
    cur = detail::less_bound(cur, next) ? next : cur;
  }
  return cur;
}

// Coloring of a product of finite axes; colors are row-major over the
// positions of the axis values.
struct GridColoring {
  std::vector<std::vector<int>> axes;
  std::vector<int> colors;

  int dims() const { return (int)axes.size(); }

  long long cells() const {
    long long total = 1;
    for (const auto& a : axes) {
      if (a.empty()) return 0;
      if (total > 4000000 / (long long)a.size())
        throw std::length_error("grid too large");
      total *= (long long)a.size();
    }
    return total;
  }

  void validate(int r = -1) const {
    if (axes.empty()) throw std::invalid_argument("grid needs an axis");
    for (const auto& a : axes) {
      std::vector<int> sorted = a;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate axis value");
    }
    if ((long long)colors.size() != cells())
      throw std::invalid_argument("coloring size mismatch");
    for (int c : colors)
      if (c < 0 || (r >= 0 && c >= r))
        throw std::invalid_argument("color out of range");
  }

  int color_at(const std::vector<int>& pos) const {
    if ((int)pos.size() != dims())
      throw std::invalid_argument("position arity mismatch");
    long long idx = 0;
    for (int a = 0; a < dims(); ++a) {
      if (pos[a] < 0 || pos[a] >= (int)axes[a].size())
        throw std::out_of_range("position outside axis");
      idx = idx * (long long)axes[a].size() + pos[a];
    }
    return colors[idx];
  }
};

// m chosen positions per axis, all cells one color.  Positions index
// into the grid's axes and stay sorted.
struct MonoBox {
  std::vector<std::vector<int>> picks;
  int color = 0;
};

inline bool verify_mono_box(const GridColoring& grid, const MonoBox& box,
                            int m) {
  if ((int)box.picks.size() != grid.dims()) return false;
  for (int a = 0; a < grid.dims(); ++a) {
    const auto& sel = box.picks[a];
    if ((int)sel.size() != m) return false;
    for (int i = 0; i < (int)sel.size(); ++i) {
      if (sel[i] < 0 || sel[i] >= (int)grid.axes[a].size()) return false;
      if (i > 0 && sel[i] <= sel[i - 1]) return false;
    }
  }
  std::vector<int> pos(grid.dims(), 0);
  std::vector<int> cell(grid.dims());
  while (true) {
    for (int a = 0; a < grid.dims(); ++a) cell[a] = box.picks[a][pos[a]];
    if (grid.color_at(cell) != box.color) return false;
    int a = grid.dims() - 1;
    while (a >= 0 && pos[a] + 1 == m) pos[a--] = 0;
    if (a < 0) return true;
    ++pos[a];
  }
}

namespace detail {

inline bool next_combination(std::vector<int>& comb, int limit) {
  const int m = (int)comb.size();
  for (int i = m - 1; i >= 0; --i) {
    if (comb[i] < limit - (m - i)) {
      ++comb[i];
      for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline bool exact_box_rec(const GridColoring& grid, int m, int axis,
                          std::vector<std::vector<int>>& chosen,
                          MonoBox& out) {
  if (axis == grid.dims()) {
    std::vector<int> pos(grid.dims(), 0);
    std::vector<int> cell(grid.dims());
    int color = -1;
    while (true) {
      for (int a = 0; a < grid.dims(); ++a) cell[a] = chosen[a][pos[a]];
      int c = grid.color_at(cell);
      if (color < 0) color = c;
      if (c != color) return false;
      int a = grid.dims() - 1;
      while (a >= 0 && pos[a] + 1 == m) pos[a--] = 0;
      if (a < 0) break;
      ++pos[a];
    }
    out.picks = chosen;
    out.color = color;
    return true;
  }
  const int len = (int)grid.axes[axis].size();
  if (len < m) return false;
  std::vector<int> comb(m);
  for (int i = 0; i < m; ++i) comb[i] = i;
  do {
    chosen[axis] = comb;
    if (exact_box_rec(grid, m, axis + 1, chosen, out)) return true;
  } while (next_combination(comb, len));
  return false;
}

}  // namespace detail

// Exhaustive search for a monochromatic box, lexicographically least in
// the pick sequences.  Complete but exponential in the grid size.
inline std::optional<MonoBox> find_mono_box_exact(const GridColoring& grid,
                                                  int m) {
  grid.validate();
  if (m < 1) throw std::invalid_argument("box side must be positive");
  std::vector<std::vector<int>> chosen(grid.dims());
  MonoBox out;
  if (detail::exact_box_rec(grid, m, 0, chosen, out)) return out;
  return std::nullopt;
}

// Constructive extraction by iterated pigeonhole.  Prefix axes are
// truncated to the level-below bound so the signature space stays small
// enough for the pigeonhole step; when the grid meets pram_bound sizes
// the extraction cannot fail, on smaller grids it may succeed anyway.
inline std::optional<MonoBox> extract_mono_box(const GridColoring& grid,
                                               int r, int m) {
  grid.validate(r);
  if (m < 1) throw std::invalid_argument("box side must be positive");
  const int t = grid.dims();
  if (t == 1) {
    std::map<int, std::vector<int>> buckets;
    for (int i = 0; i < (int)grid.axes[0].size(); ++i) {
      auto& b = buckets[grid.colors[i]];
      b.push_back(i);
      if ((int)b.size() == m) return MonoBox{{b}, grid.colors[i]};
    }
    return std::nullopt;
  }

  RamseyBound below = pram_bound(r, t - 1, m);
  if (below.kind != RamseyBound::Kind::exact)
    throw std::length_error("prefix bound exceeds exact range");

  GridColoring prefix;
  for (int a = 0; a + 1 < t; ++a) {
    auto axis = grid.axes[a];
    if ((long long)axis.size() > below.value) axis.resize(below.value);
    prefix.axes.push_back(axis);
  }
  const long long pcells = prefix.cells();

  // signature of a last-axis index: the induced coloring of the
  // truncated prefix block at that index
  auto signature = [&](int c) {
    std::vector<int> sig((size_t)pcells);
    std::vector<int> pos(t - 1, 0);
    std::vector<int> cell(t);
    cell[t - 1] = c;
    for (long long i = 0; i < pcells; ++i) {
      for (int a = 0; a + 1 < t; ++a) cell[a] = pos[a];
      sig[i] = grid.color_at(cell);
      int a = t - 2;
      while (a >= 0 && pos[a] + 1 == (int)prefix.axes[a].size()) pos[a--] = 0;
      if (a >= 0) ++pos[a];
    }
    return sig;
  };

  std::map<std::vector<int>, std::vector<int>> buckets;
  std::vector<std::vector<int>> full_sigs;
  for (int c = 0; c < (int)grid.axes[t - 1].size(); ++c) {
    auto sig = signature(c);
    auto& b = buckets[sig];
    b.push_back(c);
    if ((int)b.size() == m) full_sigs.push_back(sig);
  }
  for (const auto& sig : full_sigs) {
    prefix.colors = sig;
    auto sub = extract_mono_box(prefix, r, m);
    if (!sub) continue;
    MonoBox out;
    out.picks = sub->picks;
    auto last = buckets[sig];
    last.resize(m);
    out.picks.push_back(last);
    out.color = sub->color;
    return out;
  }
  return std::nullopt;
}

}  // namespace ordim
