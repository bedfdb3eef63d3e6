#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coalbase/linalg.hpp"
#include "coalbase/monads.hpp"
#include "coalbase/report.hpp"

namespace coalbase {

// ---------------------------------------------------------------------------
// lattice-join algebras (powerset monad) and frames (downset monad)

struct lattice_algebra {
  monad_kind monad = monad_kind::powerset;  // powerset | downset
  fin_poset_ptr order;
  std::vector<std::vector<int>> join;
  int bottom = -1;

  // set when built by free_algebra: carrier elements are subsets (or
  // downsets) of the base, with the mask translation kept here
  struct free_info {
    monad_kind kind;
    fin_set_ptr base_set;
    fin_poset_ptr base_order;  // downset case only
    std::vector<subset> elem_masks;
    std::map<subset, int> index_of;
  };
  std::shared_ptr<const free_info> free_on;

  int size() const { return order->size(); }

  carrier_ref carrier() const {
    if (monad == monad_kind::downset) return carrier_ref::of(order);
    return carrier_ref::of(order->carrier);
  }

  monad_tag tag() const {
    return monad == monad_kind::downset ? monad_tag::downset() : monad_tag::powerset();
  }

  int eval_mask(subset s) const {
    int acc = bottom;
    for (int x : mask_elements(s)) acc = join[static_cast<std::size_t>(acc)][x];
    return acc;
  }

  int eval(const monad_value& v) const {
    if (!(v.tag == tag())) throw shape_error("algebra/value monad mismatch");
    if (!(*v.carrier.set == *order->carrier)) throw shape_error("algebra/value carrier mismatch");
    return eval_mask(v.mask);
  }
};

inline lattice_algebra make_lattice_algebra(fin_poset_ptr order,
                                            monad_kind monad = monad_kind::powerset) {
  if (monad != monad_kind::powerset && monad != monad_kind::downset)
    throw shape_error("lattice algebras are powerset or downset algebras");
  lattice_algebra alg;
  alg.monad = monad;
  alg.order = std::move(order);
  int n = alg.order->size();
  auto bot = bottom_of(*alg.order);
  if (!bot)
    throw shape_error("not a lattice: no bottom element (empty join missing)");
  alg.bottom = *bot;
  alg.join.assign(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto j = join_of(*alg.order, x, y);
      if (!j)
        throw shape_error("not a lattice: join missing for pair {" +
                          alg.order->carrier->labels[x] + "," +
                          alg.order->carrier->labels[y] + "}");
      alg.join[static_cast<std::size_t>(x)][y] = *j;
    }
  return alg;
}

inline lattice_algebra free_algebra_powerset(const fin_set& base) {
  auto ip = powerset_poset(base);
  lattice_algebra alg = make_lattice_algebra(ip.order, monad_kind::powerset);
  auto fi = std::make_shared<lattice_algebra::free_info>();
  fi->kind = monad_kind::powerset;
  fi->base_set = share(base);
  fi->elem_masks = ip.elems;
  fi->index_of = ip.index_of;
  alg.free_on = fi;
  return alg;
}

inline lattice_algebra free_algebra_downset(const fin_poset& base) {
  auto ip = downset_poset(base);
  lattice_algebra alg = make_lattice_algebra(ip.order, monad_kind::downset);
  auto fi = std::make_shared<lattice_algebra::free_info>();
  fi->kind = monad_kind::downset;
  fi->base_set = base.carrier;
  fi->base_order = share(base);
  fi->elem_masks = ip.elems;
  fi->index_of = ip.index_of;
  alg.free_on = fi;
  return alg;
}

// ---------------------------------------------------------------------------
// free modules S^n (multiset monad) and convex generator sets (distribution)

struct module_algebra {
  scalar_domain dom = scalar_domain::rational;
  int dim = 0;

  qvec eval(const std::vector<std::pair<scalar, qvec>>& formal_sum) const {
    qvec acc(static_cast<std::size_t>(dim), scalar::zero(dom));
    for (const auto& [s, v] : formal_sum) {
      if (static_cast<int>(v.size()) != dim) throw shape_error("vector dimension mismatch");
      acc = vec_add(acc, vec_scale(s, v));
    }
    return acc;
  }

  qvec basis_vector(int j) const {
    qvec v(static_cast<std::size_t>(dim), scalar::zero(dom));
    v[static_cast<std::size_t>(j)] = scalar::one(dom);
    return v;
  }
};

struct convex_algebra {
  int dim = 0;
  std::vector<qvec> generators;  // points of Q^dim

  qvec eval(const std::vector<std::pair<scalar, qvec>>& convex_sum) const {
    scalar total = scalar::zero(scalar_domain::rational);
    qvec acc(static_cast<std::size_t>(dim), scalar::zero(scalar_domain::rational));
    for (const auto& [r, p] : convex_sum) {
      if (r.domain() != scalar_domain::rational || r.re() < 0)
        throw shape_error("convex coefficients must be nonnegative rationals");
      if (static_cast<int>(p.size()) != dim) throw shape_error("point dimension mismatch");
      total = add(total, r);
      acc = vec_add(acc, vec_scale(r, p));
    }
    if (!total.is_one()) throw shape_error("coefficients do not form a convex combination");
    return acc;
  }
};

inline convex_algebra make_convex_algebra(int dim, std::vector<qvec> generators) {
  if (generators.empty()) throw shape_error("convex algebra needs at least one generator");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != dim) throw shape_error("generator dimension mismatch");
    for (const auto& c : g)
      if (c.domain() != scalar_domain::rational)
        throw shape_error("convex generators live in Q^d");
  }
  return convex_algebra{dim, std::move(generators)};
}

using em_algebra = std::variant<lattice_algebra, module_algebra, convex_algebra>;

// ---------------------------------------------------------------------------
// law checking

namespace detail {

// families of T(L)-elements standing in for T^2(L); exhaustive when the
// family space is small, singleton/pair plus seeded samples otherwise
inline void for_each_family(const std::vector<subset>& t1, const monad_law_options& opt,
                            const std::function<void(const std::vector<subset>&)>& fn,
                            bool downward_families, const fin_poset* t1_order,
                            const std::vector<subset>* t1_elem_lookup) {
  std::size_t n1 = t1.size();
  if (!downward_families && n1 <= 16) {
    for (subset fam = 0; fam <= full_mask(static_cast<int>(n1)); ++fam) {
      std::vector<subset> f;
      for (int i : mask_elements(fam)) f.push_back(t1[i]);
      fn(f);
      if (n1 == 0) break;
    }
    return;
  }
  if (downward_families && t1_order && t1_order->size() <= 16) {
    for (subset fam : all_downsets(*t1_order)) {
      std::vector<subset> f;
      for (int i : mask_elements(fam)) f.push_back((*t1_elem_lookup)[i]);
      fn(f);
    }
    return;
  }
  fn({});
  for (std::size_t i = 0; i < n1; ++i) fn({t1[i]});
  long pairs = 0;
  for (std::size_t i = 0; i < n1 && pairs < opt.pair_cap; ++i)
    for (std::size_t j = i; j < n1 && pairs < opt.pair_cap; ++j, ++pairs)
      fn({t1[i], t1[j]});
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n1 - 1);
  for (int s = 0; s < opt.samples; ++s) {
    std::vector<subset> f;
    int k = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < k; ++i) f.push_back(t1[pick(rng)]);
    fn(f);
  }
}

}  // namespace detail

inline check_report check_em_laws(const lattice_algebra& alg,
                                  const monad_law_options& opt = {}) {
  check_report rep;
  const fin_poset& l = *alg.order;
  bool dwn = alg.monad == monad_kind::downset;

  std::vector<subset> t1;
  if (dwn)
    t1 = all_downsets(l);
  else
    for (subset m = 0; m <= full_mask(l.size()); ++m) t1.push_back(m);

  // a . eta = id
  for (int x = 0; x < l.size(); ++x) {
    subset unit = dwn ? l.down[x] : mask_bit(x);
    rep.record_once("em_unit", alg.eval_mask(unit) == x,
                    "x = " + l.carrier->labels[x]);
    rep.cases_run += 1;
  }

  // a . mu = a . T(a)
  std::optional<indexed_poset> t1p;
  if (dwn) t1p = downset_poset(l);
  detail::for_each_family(
      t1, opt,
      [&](const std::vector<subset>& fam) {
        subset unioned = 0, evals = 0;
        for (subset s : fam) {
          unioned |= s;
          evals |= mask_bit(alg.eval_mask(s));
        }
        if (dwn) evals = downward_close(l, evals);
        bool ok = alg.eval_mask(unioned) == alg.eval_mask(evals);
        std::string w;
        if (!ok) {
          w = "family {";
          for (std::size_t i = 0; i < fam.size(); ++i)
            w += (i ? ", " : "") + mask_label(*l.carrier, fam[i]);
          w += "}";
        }
        rep.record_once("em_mult", ok, w);
        rep.cases_run += 1;
      },
      dwn, t1p ? t1p->order.get() : nullptr, t1p ? &t1p->elems : nullptr);
  return rep;
}

inline check_report check_em_laws(const module_algebra& alg,
                                  const monad_law_options& opt = {}) {
  check_report rep;
  std::mt19937_64 rng(opt.seed);
  auto random_vector = [&] {
    qvec v;
    for (int i = 0; i < alg.dim; ++i) v.push_back(random_scalar(rng, alg.dom));
    return v;
  };
  for (int s = 0; s < opt.samples; ++s) {
    qvec v = random_vector();
    rep.record_once("em_unit", alg.eval({{scalar::one(alg.dom), v}}) == v, "");
    // nested formal sum: evaluate inner sums first, or flatten with products
    std::vector<std::pair<scalar, std::vector<std::pair<scalar, qvec>>>> nested;
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<std::pair<scalar, qvec>> inner;
      int k2 = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int j = 0; j < k2; ++j) inner.emplace_back(random_scalar(rng, alg.dom), random_vector());
      nested.emplace_back(random_scalar(rng, alg.dom), std::move(inner));
    }
    std::vector<std::pair<scalar, qvec>> flattened, collapsed;
    for (const auto& [c, inner] : nested) {
      for (const auto& [c2, v2] : inner) flattened.emplace_back(mul(c, c2), v2);
      collapsed.emplace_back(c, alg.eval(inner));
    }
    rep.record_once("em_mult", alg.eval(flattened) == alg.eval(collapsed), "");
    rep.cases_run += 2;
  }
  return rep;
}

inline check_report check_em_laws(const convex_algebra& alg,
                                  const monad_law_options& opt = {}) {
  check_report rep;
  std::mt19937_64 rng(opt.seed);
  auto convex_coeffs = [&](std::size_t k) {
    std::vector<int> w(k);
    long total = 0;
    for (auto& x : w) {
      x = std::uniform_int_distribution<int>(1, 6)(rng);
      total += x;
    }
    std::vector<scalar> out;
    for (std::size_t i = 0; i < k; ++i) {
      mpq_class q(w[i], total);
      q.canonicalize();
      out.push_back(scalar::make(scalar_domain::rational, q));
    }
    return out;
  };
  auto random_point = [&] {
    // a random convex combination of the generators (stays in the hull)
    auto cs = convex_coeffs(alg.generators.size());
    std::vector<std::pair<scalar, qvec>> fc;
    for (std::size_t i = 0; i < alg.generators.size(); ++i)
      fc.emplace_back(cs[i], alg.generators[i]);
    return alg.eval(fc);
  };
  for (int s = 0; s < opt.samples; ++s) {
    qvec p = random_point();
    rep.record_once("em_unit",
                    alg.eval({{scalar::one(scalar_domain::rational), p}}) == p, "");
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    auto outer = convex_coeffs(static_cast<std::size_t>(k));
    std::vector<std::vector<std::pair<scalar, qvec>>> inners;
    for (int i = 0; i < k; ++i) {
      int k2 = std::uniform_int_distribution<int>(1, 3)(rng);
      auto cs = convex_coeffs(static_cast<std::size_t>(k2));
      std::vector<std::pair<scalar, qvec>> inner;
      for (int j = 0; j < k2; ++j) inner.emplace_back(cs[static_cast<std::size_t>(j)], random_point());
      inners.push_back(std::move(inner));
    }
    std::vector<std::pair<scalar, qvec>> flattened, collapsed;
    for (int i = 0; i < k; ++i) {
      for (const auto& [c2, v2] : inners[static_cast<std::size_t>(i)])
        flattened.emplace_back(mul(outer[static_cast<std::size_t>(i)], c2), v2);
      collapsed.emplace_back(outer[static_cast<std::size_t>(i)],
                             alg.eval(inners[static_cast<std::size_t>(i)]));
    }
    rep.record_once("em_mult", alg.eval(flattened) == alg.eval(collapsed), "");
    rep.cases_run += 2;
  }
  return rep;
}

inline check_report check_em_laws(const em_algebra& alg, const monad_law_options& opt = {}) {
  return std::visit([&](const auto& a) { return check_em_laws(a, opt); }, alg);
}

// h . a = a' . T(h), for join-algebra homomorphism candidates
inline check_report check_homomorphism(const lattice_algebra& src,
                                       const lattice_algebra& dst,
                                       const std::vector<int>& table) {
  if (src.monad != dst.monad) throw shape_error("homomorphism: monad tag mismatch");
  if (static_cast<int>(table.size()) != src.size()) throw shape_error("homomorphism table size");
  check_report rep;
  bool dwn = src.monad == monad_kind::downset;
  std::vector<subset> t1;
  if (dwn)
    t1 = all_downsets(*src.order);
  else
    for (subset m = 0; m <= full_mask(src.size()); ++m) t1.push_back(m);
  for (subset s : t1) {
    subset image = 0;
    for (int x : mask_elements(s)) image |= mask_bit(table[static_cast<std::size_t>(x)]);
    if (dwn) image = downward_close(*dst.order, image);
    bool ok = table[static_cast<std::size_t>(src.eval_mask(s))] == dst.eval_mask(image);
    rep.record_once("homomorphism", ok,
                    "S = " + mask_label(*src.order->carrier, s));
    rep.cases_run += 1;
  }
  return rep;
}

// module homomorphism candidates are matrices; checked on samples
inline check_report check_homomorphism(const module_algebra& src, const module_algebra& dst,
                                       const matrix& h, const monad_law_options& opt = {}) {
  if (src.dom != dst.dom) throw shape_error("homomorphism: domain mismatch");
  if (h.rows != dst.dim || h.cols != src.dim) throw shape_error("homomorphism matrix shape");
  check_report rep;
  std::mt19937_64 rng(opt.seed);
  for (int s = 0; s < opt.samples; ++s) {
    std::vector<std::pair<scalar, qvec>> fc;
    int k = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < k; ++i) {
      qvec v;
      for (int j = 0; j < src.dim; ++j) v.push_back(random_scalar(rng, src.dom));
      fc.emplace_back(random_scalar(rng, src.dom), std::move(v));
    }
    std::vector<std::pair<scalar, qvec>> mapped;
    for (const auto& [c, v] : fc) mapped.emplace_back(c, mat_vec(h, v));
    bool ok = mat_vec(h, src.eval(fc)) == dst.eval(mapped);
    rep.record_once("homomorphism", ok, "");
    rep.cases_run += 1;
  }
  return rep;
}

}  // namespace coalbase
