#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coalbase/scalar.hpp"

namespace coalbase {

struct shape_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subsets of a carrier are bitmasks in carrier order; carriers are capped at
// 64 elements, which is far above every guard in this library.
using subset = std::uint64_t;

inline bool mask_contains(subset m, int i) { return (m >> i) & 1u; }
inline subset mask_bit(int i) { return subset{1} << i; }
inline subset full_mask(int n) { return n == 64 ? ~subset{0} : (subset{1} << n) - 1; }
inline int mask_size(subset m) { return __builtin_popcountll(m); }

inline std::vector<int> mask_elements(subset m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

struct fin_set {
  std::vector<std::string> labels;
  std::map<std::string, int, std::less<>> index;

  static fin_set of(std::vector<std::string> ls) {
    if (ls.size() > 64) throw guard_error("carrier larger than 64 elements");
    fin_set s;
    s.labels = std::move(ls);
    for (int i = 0; i < static_cast<int>(s.labels.size()); ++i) {
      auto [it, fresh] = s.index.emplace(s.labels[i], i);
      if (!fresh) throw shape_error("duplicate label '" + s.labels[i] + "'");
    }
    return s;
  }

  int size() const { return static_cast<int>(labels.size()); }

  int index_of(std::string_view l) const {
    auto it = index.find(l);
    if (it == index.end()) throw shape_error("unknown label '" + std::string(l) + "'");
    return it->second;
  }

  bool contains(std::string_view l) const { return index.find(l) != index.end(); }

  bool operator==(const fin_set& o) const { return labels == o.labels; }
};

using fin_set_ptr = std::shared_ptr<const fin_set>;

inline fin_set_ptr share(fin_set s) {
  return std::make_shared<const fin_set>(std::move(s));
}

inline std::string mask_label(const fin_set& s, subset m) {
  std::string out = "{";
  bool first = true;
  for (int i : mask_elements(m)) {
    if (!first) out += ",";
    out += s.labels[i];
    first = false;
  }
  return out + "}";
}

struct fin_map {
  fin_set_ptr source, target;
  std::vector<int> table;

  static fin_map of(fin_set_ptr src, fin_set_ptr dst, std::vector<int> tab) {
    if (static_cast<int>(tab.size()) != src->size())
      throw shape_error("map table size does not match source");
    for (int v : tab)
      if (v < 0 || v >= dst->size()) throw shape_error("map entry out of target range");
    return fin_map{std::move(src), std::move(dst), std::move(tab)};
  }

  static fin_map identity(fin_set_ptr s) {
    std::vector<int> tab(s->size());
    std::iota(tab.begin(), tab.end(), 0);
    return fin_map{s, s, std::move(tab)};
  }

  static fin_map constant(fin_set_ptr src, fin_set_ptr dst, int value) {
    if (value < 0 || value >= dst->size()) throw shape_error("constant out of range");
    std::vector<int> tab(static_cast<std::size_t>(src->size()), value);
    return fin_map{std::move(src), std::move(dst), std::move(tab)};
  }

  int operator()(int i) const { return table[static_cast<std::size_t>(i)]; }

  friend fin_map compose(const fin_map& g, const fin_map& f) {
    if (!(*f.target == *g.source)) throw shape_error("compose: target/source mismatch");
    std::vector<int> tab(f.table.size());
    for (std::size_t i = 0; i < tab.size(); ++i) tab[i] = g.table[f.table[i]];
    return fin_map{f.source, g.target, std::move(tab)};
  }

  bool operator==(const fin_map& o) const {
    return *source == *o.source && *target == *o.target && table == o.table;
  }
};

struct fin_poset {
  fin_set_ptr carrier;
  std::vector<subset> up;    // up[x] = { y : x <= y }
  std::vector<subset> down;  // down[x] = { y : y <= x }

  int size() const { return carrier->size(); }
  bool leq(int x, int y) const { return mask_contains(up[x], y); }

  static fin_poset discrete(fin_set_ptr s) {
    fin_poset p;
    p.carrier = std::move(s);
    p.up.resize(p.carrier->size());
    p.down.resize(p.carrier->size());
    for (int i = 0; i < p.carrier->size(); ++i) p.up[i] = p.down[i] = mask_bit(i);
    return p;
  }

  static fin_poset from_leq(fin_set_ptr s, const std::vector<subset>& up_rows) {
    fin_poset p;
    p.carrier = std::move(s);
    p.up = up_rows;
    int n = p.carrier->size();
    p.down.assign(n, 0);
    for (int x = 0; x < n; ++x) {
      if (!mask_contains(p.up[x], x)) throw shape_error("relation not reflexive");
      for (int y : mask_elements(p.up[x])) {
        if ((p.up[y] & ~p.up[x]) != 0) throw shape_error("relation not transitive");
        if (y != x && mask_contains(p.up[y], x))
          throw shape_error("antisymmetry violation: cycle {" + p.carrier->labels[x] +
                            "," + p.carrier->labels[y] + "}");
        p.down[y] |= mask_bit(x);
      }
    }
    return p;
  }

  bool operator==(const fin_poset& o) const {
    return *carrier == *o.carrier && up == o.up;
  }
};

using fin_poset_ptr = std::shared_ptr<const fin_poset>;

inline fin_poset_ptr share(fin_poset p) {
  return std::make_shared<const fin_poset>(std::move(p));
}

inline fin_poset poset_from_pairs(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  auto carrier = share(fin_set::of(std::move(elements)));
  int n = carrier->size();
  std::vector<subset> up(n);
  for (int i = 0; i < n; ++i) up[i] = mask_bit(i);
  for (const auto& [a, b] : pairs) up[carrier->index_of(a)] |= mask_bit(carrier->index_of(b));
  // reflexive-transitive closure, then antisymmetry becomes a cycle check
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      subset acc = up[x];
      for (int y : mask_elements(up[x])) acc |= up[y];
      if (acc != up[x]) {
        up[x] = acc;
        changed = true;
      }
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y : mask_elements(up[x]))
      if (y != x && mask_contains(up[y], x))
        throw shape_error("antisymmetry violation: cycle {" + carrier->labels[x] + "," +
                          carrier->labels[y] + "}");
  return fin_poset::from_leq(carrier, up);
}

inline bool is_downset(const fin_poset& p, subset m) {
  for (int x : mask_elements(m))
    if ((p.down[x] & ~m) != 0) return false;
  return true;
}

inline subset downward_close(const fin_poset& p, subset m) {
  subset out = 0;
  for (int x : mask_elements(m)) out |= p.down[x];
  return out;
}

inline subset upward_close(const fin_poset& p, subset m) {
  subset out = 0;
  for (int x : mask_elements(m)) out |= p.up[x];
  return out;
}

// all downward-closed subsets, ascending as masks (deterministic)
inline std::vector<subset> all_downsets(const fin_poset& p) {
  int n = p.size();
  if (n > 25) throw guard_error("downset enumeration refused for carrier > 25");
  std::vector<subset> out;
  for (subset m = 0; m <= full_mask(n); ++m) {
    if (is_downset(p, m)) out.push_back(m);
    if (n == 0) break;
  }
  return out;
}

// nonempty and every pair has an upper bound inside the subset
inline bool is_directed(const fin_poset& p, subset m) {
  if (m == 0) return false;
  auto xs = mask_elements(m);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i; j < xs.size(); ++j) {
      subset ub = p.up[xs[i]] & p.up[xs[j]] & m;
      if (ub == 0) return false;
    }
  return true;
}

inline std::optional<int> join_of(const fin_poset& p, int x, int y) {
  subset ub = p.up[x] & p.up[y];
  for (int z : mask_elements(ub))
    if ((ub & ~p.up[z]) == 0) return z;  // z below every upper bound
  return std::nullopt;
}

inline std::optional<int> meet_of(const fin_poset& p, int x, int y) {
  subset lb = p.down[x] & p.down[y];
  for (int z : mask_elements(lb))
    if ((lb & ~p.down[z]) == 0) return z;
  return std::nullopt;
}

inline std::optional<int> join_of_mask(const fin_poset& p, subset m) {
  subset ub = full_mask(p.size());
  for (int x : mask_elements(m)) ub &= p.up[x];
  for (int z : mask_elements(ub))
    if ((ub & ~p.up[z]) == 0) return z;
  return std::nullopt;
}

inline std::optional<int> bottom_of(const fin_poset& p) {
  for (int z = 0; z < p.size(); ++z)
    if (p.up[z] == full_mask(p.size())) return z;
  return std::nullopt;
}

inline std::optional<int> top_of(const fin_poset& p) {
  for (int z = 0; z < p.size(); ++z)
    if (p.down[z] == full_mask(p.size())) return z;
  return std::nullopt;
}

inline bool is_lattice(const fin_poset& p) {
  if (p.size() == 0) return false;
  for (int x = 0; x < p.size(); ++x)
    for (int y = x + 1; y < p.size(); ++y)
      if (!join_of(p, x, y) || !meet_of(p, x, y)) return false;
  return bottom_of(p).has_value();
}

// the subset {x : f(x) = g(x)} with its inclusion into the shared source
inline std::pair<fin_set, fin_map> equalize(const fin_map& f, const fin_map& g) {
  if (!(*f.source == *g.source) || !(*f.target == *g.target))
    throw shape_error("equalize: maps must share source and target");
  std::vector<std::string> labels;
  std::vector<int> incl;
  for (int i = 0; i < f.source->size(); ++i)
    if (f(i) == g(i)) {
      labels.push_back(f.source->labels[i]);
      incl.push_back(i);
    }
  fin_set e = fin_set::of(labels);
  fin_map inc = fin_map::of(share(e), f.source, incl);
  return {std::move(e), std::move(inc)};
}

// Dwn(X) or P(A) materialized as a poset ordered by inclusion, with the
// mask <-> index translation kept alongside.
struct indexed_poset {
  fin_poset_ptr order;
  std::vector<subset> elems;        // elems[i] = mask over the base carrier
  std::map<subset, int> index_of;

  int index(subset m) const {
    auto it = index_of.find(m);
    if (it == index_of.end()) throw shape_error("subset not an element of this carrier");
    return it->second;
  }
};

inline indexed_poset inclusion_poset(const fin_set& base, std::vector<subset> elems) {
  indexed_poset out;
  out.elems = std::move(elems);
  int n = static_cast<int>(out.elems.size());
  if (n > 64) throw guard_error("derived carrier larger than 64 elements");
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) {
    labels.push_back(mask_label(base, out.elems[i]));
    out.index_of[out.elems[i]] = i;
  }
  auto carrier = share(fin_set::of(std::move(labels)));
  std::vector<subset> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((out.elems[i] & ~out.elems[j]) == 0) up[i] |= mask_bit(j);
  out.order = share(fin_poset::from_leq(carrier, up));
  return out;
}

inline indexed_poset downset_poset(const fin_poset& base) {
  return inclusion_poset(*base.carrier, all_downsets(base));
}

inline indexed_poset powerset_poset(const fin_set& base) {
  if (base.size() > 20) throw guard_error("powerset carrier refused for base > 20");
  std::vector<subset> elems;
  for (subset m = 0; m <= full_mask(base.size()); ++m) {
    elems.push_back(m);
    if (base.size() == 0) break;
  }
  return inclusion_poset(base, std::move(elems));
}

inline fin_set product_set(const fin_set& x, const fin_set& y) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(x.size()) * y.size());
  for (const auto& a : x.labels)
    for (const auto& b : y.labels) labels.push_back("(" + a + "," + b + ")");
  return fin_set::of(std::move(labels));
}

inline fin_set disjoint_union(const fin_set& x, const fin_set& y) {
  std::vector<std::string> labels = x.labels;
  labels.insert(labels.end(), y.labels.begin(), y.labels.end());
  return fin_set::of(std::move(labels));  // duplicate labels rejected there
}

inline bool is_monotone(const fin_poset& src, const fin_poset& dst,
                        const std::vector<int>& table) {
  for (int x = 0; x < src.size(); ++x)
    for (int y : mask_elements(src.up[x]))
      if (!dst.leq(table[x], table[y])) return false;
  return true;
}

}  // namespace coalbase
