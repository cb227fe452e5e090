#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace ordim {

// Positions of every element in a family of total orders on a common ground
// set.  The orders need not extend any poset; they only have to be
// permutations.
class OrderFamily {
 public:
  OrderFamily(int ground, const std::vector<std::vector<int>>& orders) {
    for (const auto& seq : orders) {
      if (static_cast<int>(seq.size()) != ground)
        throw std::invalid_argument("order does not cover the ground set");
      std::vector<int> pos(ground, -1);
      for (int i = 0; i < ground; ++i) {
        int v = seq[i];
        if (v < 0 || v >= ground)
          throw std::out_of_range("order id out of range: " + std::to_string(v));
        if (pos[v] >= 0)
          throw std::invalid_argument("duplicate element in order: " +
                                      std::to_string(v));
        pos[v] = i;
      }
      pos_.push_back(std::move(pos));
    }
  }

  int count() const { return static_cast<int>(pos_.size()); }
  int ground() const { return pos_.empty() ? 0 : static_cast<int>(pos_[0].size()); }

  bool before(int k, int x, int y) const { return pos_[k][x] < pos_[k][y]; }

  // bit k is 1 when x comes before y in order k
  std::string fingerprint(int x, int y) const {
    std::string s(pos_.size(), '0');
    for (size_t k = 0; k < pos_.size(); ++k)
      if (pos_[k][x] < pos_[k][y]) s[k] = '1';
    return s;
  }

 private:
  std::vector<std::vector<int>> pos_;
};

struct RealizerReport {
  bool ok = true;
  std::optional<int> bad_sequence;                      // index of a broken one
  std::optional<std::pair<int, int>> order_violation;   // x<y listed reversed
  std::optional<std::pair<int, int>> unreversed;        // incomparable (x,y)
                                                        // never put x after y
};

// A realizer is a nonempty family of linear extensions whose intersection is
// the poset: every incomparable ordered pair must be reversed somewhere.
inline RealizerReport verify_realizer(const Poset& p,
                                      const std::vector<std::vector<int>>& seqs) {
  if (seqs.empty()) throw std::invalid_argument("empty realizer");
  RealizerReport rep;
  std::vector<std::vector<int>> pos;
  for (size_t k = 0; k < seqs.size(); ++k) {
    auto r = validate_order(p, seqs[k], SeqMode::total);
    if (!r.ok) {
      rep.ok = false;
      rep.bad_sequence = static_cast<int>(k);
      rep.order_violation = r.violation;
      return rep;
    }
    std::vector<int> pk(p.size());
    for (int i = 0; i < p.size(); ++i) pk[seqs[k][i]] = i;
    pos.push_back(std::move(pk));
  }
  for (auto [x, y] : p.inc_pairs()) {
    bool reversed = false;
    for (const auto& pk : pos)
      if (pk[x] > pk[y]) {
        reversed = true;
        break;
      }
    if (!reversed) {
      rep.ok = false;
      rep.unreversed = {x, y};
      return rep;
    }
  }
  return rep;
}

struct LocalReport {
  bool ok = true;
  std::optional<int> bad_sequence;
  std::optional<std::pair<int, int>> order_violation;
  std::optional<std::pair<int, int>> uncovered;    // comparability in no
                                                   // common sequence
  std::optional<std::pair<int, int>> unreversed;   // incomparable (x,y) never
                                                   // put x after y
  std::vector<int> mu;                             // sequences containing v
  int mu_max = 0;
};

// Local realizer: partial linear extensions that together see every
// comparability and reverse every incomparable ordered pair.  mu counts how
// many sequences touch each element; the family's cost is its maximum.
inline LocalReport verify_local_realizer(
    const Poset& p, const std::vector<std::vector<int>>& ples) {
  LocalReport rep;
  const int n = p.size();
  const int words = (n + 63) / 64;
  rep.mu.assign(n, 0);

  std::vector<std::vector<int>> pos;
  std::vector<std::vector<std::uint64_t>> present;
  for (size_t k = 0; k < ples.size(); ++k) {
    auto r = validate_order(p, ples[k], SeqMode::ple);
    if (!r.ok) {
      rep.ok = false;
      rep.bad_sequence = static_cast<int>(k);
      rep.order_violation = r.violation;
      return rep;
    }
    std::vector<int> pk(n, -1);
    std::vector<std::uint64_t> mask(words, 0);
    for (size_t i = 0; i < ples[k].size(); ++i) {
      int v = ples[k][i];
      pk[v] = static_cast<int>(i);
      mask[v / 64] |= 1ull << (v % 64);
      ++rep.mu[v];
    }
    pos.push_back(std::move(pk));
    present.push_back(std::move(mask));
  }
  for (int v = 0; v < n; ++v) rep.mu_max = std::max(rep.mu_max, rep.mu[v]);

  std::vector<std::uint64_t> together(static_cast<size_t>(n) * words, 0);
  for (size_t k = 0; k < ples.size(); ++k)
    for (int v : ples[k])
      for (int w = 0; w < words; ++w)
        together[static_cast<size_t>(v) * words + w] |= present[k][w];

  for (auto [x, y] : p.relation_pairs())
    if (!(together[static_cast<size_t>(x) * words + y / 64] >> (y % 64) & 1)) {
      rep.ok = false;
      rep.uncovered = {x, y};
      return rep;
    }

  for (auto [x, y] : p.inc_pairs()) {
    bool reversed = false;
    for (const auto& pk : pos)
      if (pk[x] >= 0 && pk[y] >= 0 && pk[x] > pk[y]) {
        reversed = true;
        break;
      }
    if (!reversed) {
      rep.ok = false;
      rep.unreversed = {x, y};
      return rep;
    }
  }
  return rep;
}

struct BooleanReport {
  bool ok = true;
  std::optional<std::pair<int, int>> witness;  // pair the table misclassifies
  std::string fingerprint;                     // its bit pattern
  bool expected = false;                       // whether the pair is a
                                               // comparability in the poset
};

// Boolean realizer: arbitrary total orders plus a set of accepted bit
// patterns; the pattern of (x,y) must be accepted exactly when x < y.
inline BooleanReport verify_boolean_realizer(const Poset& p,
                                             const OrderFamily& orders,
                                             const std::set<std::string>& tau_ones) {
  if (orders.count() > 0 && orders.ground() != p.size())
    throw std::invalid_argument("orders and poset sizes differ");
  BooleanReport rep;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y) {
      if (x == y) continue;
      std::string fp = orders.fingerprint(x, y);
      bool declared = tau_ones.count(fp) > 0;
      if (declared != p.less(x, y)) {
        rep.ok = false;
        rep.witness = {x, y};
        rep.fingerprint = fp;
        rep.expected = p.less(x, y);
        return rep;
      }
    }
  return rep;
}

struct InferredTau {
  bool ok = true;
  std::set<std::string> ones;
  std::optional<std::pair<int, int>> conflict;  // pair whose pattern was
                                                // already forced the other way
  std::string fingerprint;
};

// Sorts every pair's pattern into required-1 (comparabilities) and required-0
// buckets; a pattern landing in both is a conflict and no table exists.
inline InferredTau infer_tau(const Poset& p, const OrderFamily& orders) {
  if (orders.count() > 0 && orders.ground() != p.size())
    throw std::invalid_argument("orders and poset sizes differ");
  InferredTau out;
  std::set<std::string> zeros;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y) {
      if (x == y) continue;
      std::string fp = orders.fingerprint(x, y);
      if (p.less(x, y)) {
        if (zeros.count(fp)) {
          out.ok = false;
          out.conflict = {x, y};
          out.fingerprint = fp;
          return out;
        }
        out.ones.insert(fp);
      } else {
        if (out.ones.count(fp)) {
          out.ok = false;
          out.conflict = {x, y};
          out.fingerprint = fp;
          return out;
        }
        zeros.insert(fp);
      }
    }
  return out;
}

// The four canned total orders on a Kelly copy.  The first two are linear
// extensions; the last two interleave a and b by index and are not.
inline std::vector<std::vector<int>> kelly_boolean_orders(int n) {
  if (n < 2) throw std::invalid_argument("kelly orders need n >= 2");
  std::vector<std::vector<int>> out(4);
  // ascending a,w ladder, then b_n and the z,b descent
  auto& l1 = out[0];
  for (int i = 1; i <= n - 1; ++i) {
    l1.push_back(kelly_a_id(n, i));
    l1.push_back(kelly_w_id(n, i));
  }
  l1.push_back(kelly_a_id(n, n));
  l1.push_back(kelly_b_id(n, n));
  for (int i = n - 1; i >= 1; --i) {
    l1.push_back(kelly_z_id(n, i));
    l1.push_back(kelly_b_id(n, i));
  }
  // descending a,z ladder, then b_1 and the w,b ascent
  auto& l2 = out[1];
  l2.push_back(kelly_a_id(n, n));
  for (int i = n - 1; i >= 1; --i) {
    l2.push_back(kelly_z_id(n, i));
    l2.push_back(kelly_a_id(n, i));
  }
  l2.push_back(kelly_b_id(n, 1));
  for (int i = 1; i <= n - 1; ++i) {
    l2.push_back(kelly_w_id(n, i));
    l2.push_back(kelly_b_id(n, i + 1));
  }
  // a,b interleaved by ascending index, then the ladders ascending
  auto& l3 = out[2];
  for (int i = 1; i <= n; ++i) {
    l3.push_back(kelly_a_id(n, i));
    l3.push_back(kelly_b_id(n, i));
  }
  for (int i = 1; i <= n - 1; ++i) l3.push_back(kelly_w_id(n, i));
  for (int i = 1; i <= n - 1; ++i) l3.push_back(kelly_z_id(n, i));
  // ladders descending, then a,b interleaved by descending index
  auto& l4 = out[3];
  for (int i = n - 1; i >= 1; --i) l4.push_back(kelly_z_id(n, i));
  for (int i = n - 1; i >= 1; --i) l4.push_back(kelly_w_id(n, i));
  for (int i = n; i >= 1; --i) {
    l4.push_back(kelly_a_id(n, i));
    l4.push_back(kelly_b_id(n, i));
  }
  return out;
}

inline std::set<std::string> kelly_tau_ones() { return {"1101", "1110"}; }

struct BooleanRealizer {
  std::vector<std::vector<int>> orders;
  std::set<std::string> tau_ones;
};

inline BooleanReport verify_boolean_realizer(const Poset& p,
                                             const BooleanRealizer& br) {
  return verify_boolean_realizer(p, OrderFamily(p.size(), br.orders),
                                 br.tau_ones);
}

inline BooleanRealizer kelly_boolean_realizer(int n) {
  return {kelly_boolean_orders(n), kelly_tau_ones()};
}

// Two full extensions plus one two-point sequence b_i, a_i per index: every
// element is used at most three times.
inline std::vector<std::vector<int>> kelly_local_realizer(int n) {
  auto orders = kelly_boolean_orders(n);
  std::vector<std::vector<int>> out{orders[0], orders[1]};
  for (int i = 1; i <= n; ++i)
    out.push_back({kelly_b_id(n, i), kelly_a_id(n, i)});
  return out;
}

}  // namespace ordim
