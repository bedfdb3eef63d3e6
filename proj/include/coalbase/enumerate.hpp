#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "coalbase/finstruct.hpp"

// Exhaustive generators for small posets and lattices, up to isomorphism.
// Both build structures element by element along a linear extension: the new
// element picks a downward-closed strict-down-set among the existing ones.
// For lattices the prefix is additionally kept meet-closed, which prunes the
// search to the (small) family of naturally labelled meet-semilattices.

namespace coalbase {
namespace detail {

// strict-down masks -> canonical key, minimized over all permutations that
// respect the (down-degree, up-degree) fingerprint of each element
inline std::vector<subset> closed_down(const std::vector<subset>& strict) {
  std::vector<subset> down(strict.size());
  for (std::size_t i = 0; i < strict.size(); ++i) down[i] = strict[i] | mask_bit(static_cast<int>(i));
  return down;
}

inline std::vector<std::uint64_t> iso_invariant(const std::vector<subset>& down) {
  int n = static_cast<int>(down.size());
  std::vector<subset> up(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y : mask_elements(down[x])) up[y] |= mask_bit(x);
  std::vector<std::uint64_t> inv(n);
  for (int x = 0; x < n; ++x)
    inv[x] = (static_cast<std::uint64_t>(mask_size(down[x])) << 32) |
             static_cast<std::uint64_t>(mask_size(up[x]));
  std::vector<std::uint64_t> key = inv;
  std::sort(key.begin(), key.end());
  return key;
}

inline bool isomorphic(const std::vector<subset>& a, const std::vector<subset>& b) {
  int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) return false;
  std::vector<std::uint64_t> fa(n), fb(n);
  {
    std::vector<subset> upa(n, 0), upb(n, 0);
    for (int x = 0; x < n; ++x) {
      for (int y : mask_elements(a[x])) upa[y] |= mask_bit(x);
      for (int y : mask_elements(b[x])) upb[y] |= mask_bit(x);
    }
    for (int x = 0; x < n; ++x) {
      fa[x] = (static_cast<std::uint64_t>(mask_size(a[x])) << 32) | mask_size(upa[x]);
      fb[x] = (static_cast<std::uint64_t>(mask_size(b[x])) << 32) | mask_size(upb[x]);
    }
  }
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  // map element i of a to perm[i] in b, backtracking with fingerprint pruning
  auto ok_so_far = [&](int i) {
    for (int j = 0; j < i; ++j) {
      bool rel_a = mask_contains(a[i], j);
      bool rel_b = mask_contains(b[perm[i]], perm[j]);
      if (rel_a != rel_b) return false;
      bool rel_a2 = mask_contains(a[j], i);
      bool rel_b2 = mask_contains(b[perm[j]], perm[i]);
      if (rel_a2 != rel_b2) return false;
    }
    return true;
  };
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) return true;
    for (int c = 0; c < n; ++c) {
      if (used[c] || fa[i] != fb[c]) continue;
      perm[i] = c;
      used[c] = true;
      if (ok_so_far(i) && go(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  return go(0);
}

struct iso_store {
  std::map<std::vector<std::uint64_t>, std::vector<std::vector<subset>>> buckets;

  bool insert(const std::vector<subset>& down) {
    auto key = iso_invariant(down);
    auto& bucket = buckets[key];
    for (const auto& seen : bucket)
      if (isomorphic(seen, down)) return false;
    bucket.push_back(down);
    return true;
  }
};

inline fin_poset poset_from_down(const std::vector<subset>& down) {
  int n = static_cast<int>(down.size());
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  std::vector<subset> up(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y : mask_elements(down[x])) up[y] |= mask_bit(x);
  return fin_poset::from_leq(share(fin_set::of(labels)), up);
}

// every downward-closed subset of the prefix poset given by closed down-masks
inline std::vector<subset> prefix_downsets(const std::vector<subset>& down, int k) {
  std::vector<subset> out;
  for (subset m = 0; m <= full_mask(k); ++m) {
    bool ok = true;
    for (int x : mask_elements(m))
      if ((down[x] & ~m) != 0) { ok = false; break; }
    if (ok) out.push_back(m);
    if (k == 0) break;
  }
  return out;
}

}  // namespace detail

// all posets with exactly n elements, one representative per iso class
inline std::vector<fin_poset> all_posets(int n) {
  if (n < 0 || n > 5) throw guard_error("poset enumeration guarded at n <= 5");
  if (n == 0) return {};
  detail::iso_store store;
  std::vector<fin_poset> out;
  std::vector<subset> down;  // closed down-masks of the prefix
  std::function<void(int)> grow = [&](int k) {
    if (k == n) {
      if (store.insert(down)) out.push_back(detail::poset_from_down(down));
      return;
    }
    for (subset d : detail::prefix_downsets(down, k)) {
      down.push_back(d | mask_bit(k));
      grow(k + 1);
      down.pop_back();
    }
  };
  grow(0);
  return out;
}

// all lattices with 1..max_size elements, one representative per iso class,
// grouped in increasing size order
inline std::vector<fin_poset> all_lattices(int max_size) {
  if (max_size < 1 || max_size > 9) throw guard_error("lattice enumeration guarded at n <= 9");
  detail::iso_store store;
  std::vector<fin_poset> out;
  std::vector<subset> down;

  auto meets_ok = [&](int k, subset strict) {
    // every pair (k, y) needs a greatest common lower bound
    for (int y = 0; y < k; ++y) {
      subset common = strict & down[y];
      bool has_max = false;
      for (int z : mask_elements(common))
        if ((common & ~down[z]) == 0) { has_max = true; break; }
      if (!has_max) return false;
    }
    return true;
  };
  auto has_top = [&](int k) {
    for (int z = 0; z < k; ++z)
      if (mask_size(down[z]) == k) return true;
    return false;
  };

  std::function<void(int)> grow = [&](int k) {
    if (k > 0 && has_top(k) && store.insert(down))
      out.push_back(detail::poset_from_down(down));
    if (k == max_size) return;
    for (subset d : detail::prefix_downsets(down, k)) {
      if (!meets_ok(k, d)) continue;
      down.push_back(d | mask_bit(k));
      grow(k + 1);
      down.pop_back();
    }
  };
  grow(0);
  std::stable_sort(out.begin(), out.end(),
                   [](const fin_poset& a, const fin_poset& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace coalbase
