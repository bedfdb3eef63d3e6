#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coalbase/algebras.hpp"
#include "coalbase/bases.hpp"
#include "coalbase/finstruct.hpp"
#include "coalbase/report.hpp"

namespace coalbase {

// A Galois connection l -| r between two finite posets, verified pointwise:
// id <= r.l and l.r <= id.
struct galois_connection {
  const fin_poset* p = nullptr;
  const fin_poset* q = nullptr;
  std::vector<int> left;   // l : P -> Q
  std::vector<int> right;  // r : Q -> P
};

inline check_report check_galois(const galois_connection& g, const std::string& name) {
  check_report rep;
  if (!is_monotone(*g.p, *g.q, g.left))
    rep.record(name + "_left_monotone", false, "left map is not monotone");
  if (!is_monotone(*g.q, *g.p, g.right))
    rep.record(name + "_right_monotone", false, "right map is not monotone");
  for (int x = 0; x < g.p->size(); ++x) {
    bool ok = g.p->leq(x, g.right[static_cast<std::size_t>(g.left[static_cast<std::size_t>(x)])]);
    rep.record_once(name + "_unit", ok, "x = " + g.p->carrier->labels[x]);
    rep.cases_run += 1;
  }
  for (int y = 0; y < g.q->size(); ++y) {
    bool ok = g.q->leq(g.left[static_cast<std::size_t>(g.right[static_cast<std::size_t>(y)])], y);
    rep.record_once(name + "_counit", ok, "y = " + g.q->carrier->labels[y]);
    rep.cases_run += 1;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// the two-level downset tower used throughout this module

struct dwn_tower {
  fin_poset_ptr base;
  indexed_poset l1;  // Dwn(base)
  indexed_poset l2;  // Dwn(Dwn(base))

  static dwn_tower of(fin_poset_ptr p, int guard = 12) {
    if (p->size() > guard)
      throw guard_error("downset tower refused: carrier " + std::to_string(p->size()) +
                        " exceeds guard " + std::to_string(guard));
    dwn_tower t;
    t.base = std::move(p);
    t.l1 = downset_poset(*t.base);
    t.l2 = downset_poset(*t.l1.order);
    return t;
  }

  int n1() const { return static_cast<int>(t1_size()); }
  std::size_t t1_size() const { return l1.elems.size(); }

  // eta_{Dwn(base)} : principal downset in the L1 order
  int eta1(int i) const { return l2.index(l1.order->down[static_cast<std::size_t>(i)]); }

  // Dwn(eta_base) : U |-> downclosure of { principal(x) : x in U }
  int teta(int i) const {
    subset fam = 0;
    subset u = l1.elems[static_cast<std::size_t>(i)];
    for (int j = 0; j < static_cast<int>(l1.elems.size()); ++j) {
      for (int x : mask_elements(u))
        if ((l1.elems[static_cast<std::size_t>(j)] & ~base->down[x]) == 0) {
          fam |= mask_bit(j);
          break;
        }
    }
    return l2.index(fam);
  }

  // mu : union of the family
  int mu(int j) const {
    subset u = 0;
    for (int i : mask_elements(l2.elems[static_cast<std::size_t>(j)]))
      u |= l1.elems[static_cast<std::size_t>(i)];
    return l1.index(u);
  }

  // Dwn(a) for a map a : Dwn(base) -> base given as a table over L1
  int ta(int j, const std::vector<int>& a_table) const {
    subset img = 0;
    for (int i : mask_elements(l2.elems[static_cast<std::size_t>(j)]))
      img |= mask_bit(a_table[static_cast<std::size_t>(i)]);
    return l1.index(downward_close(*base, img));
  }
};

// ---------------------------------------------------------------------------
// the KZ inequality T(eta) <= eta on Dwn

struct kz_report {
  check_report checks;
  std::vector<std::string> strict_witnesses;  // downsets where the inclusion is strict
};

inline kz_report kz_check(const fin_poset& x, int guard = 12) {
  if (x.size() > guard)
    throw guard_error("kz check refused: carrier " + std::to_string(x.size()) +
                      " exceeds guard " + std::to_string(guard));
  kz_report rep;
  auto downs = all_downsets(x);
  for (subset u : downs) {
    // Dwn(eta)(U) = { V : exists x in U, V <= down(x) },  eta(U) = { V : V <= U }
    bool contained = true;
    bool strict = false;
    for (subset v : downs) {
      bool lhs = false;
      for (int e : mask_elements(u))
        if ((v & ~x.down[e]) == 0) { lhs = true; break; }
      bool rhs = (v & ~u) == 0;
      if (lhs && !rhs) contained = false;
      if (rhs && !lhs) strict = true;
    }
    rep.checks.record_once("kz_inequality", contained, "U = " + mask_label(*x.carrier, u));
    rep.checks.cases_run += 1;
    if (contained && strict) rep.strict_witnesses.push_back(mask_label(*x.carrier, u));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// algebras are reflections (on Dwn)

struct equivalence_verdict {
  bool em_laws = false;
  bool reflection = false;
  std::string em_witness, reflection_witness;
  bool agree() const { return em_laws == reflection; }
};

inline equivalence_verdict algebra_iff_reflection(const dwn_tower& t,
                                                  const std::vector<int>& a) {
  if (static_cast<int>(a.size()) != t.n1())
    throw shape_error("algebra table must cover Dwn(X)");
  if (!is_monotone(*t.l1.order, *t.base, a))
    throw shape_error("algebra candidate must be monotone");
  equivalence_verdict v;

  bool unit_ok = true;
  std::string unit_w;
  for (int e = 0; e < t.base->size(); ++e) {
    int i = t.l1.index(t.base->down[static_cast<std::size_t>(e)]);
    if (a[static_cast<std::size_t>(i)] != e) {
      unit_ok = false;
      unit_w = "a(down(" + t.base->carrier->labels[e] + ")) != " + t.base->carrier->labels[e];
      break;
    }
  }

  v.em_laws = unit_ok;
  v.em_witness = unit_w;
  if (v.em_laws) {
    for (int j = 0; j < static_cast<int>(t.l2.elems.size()); ++j) {
      int lhs = a[static_cast<std::size_t>(t.mu(j))];
      int rhs = a[static_cast<std::size_t>(t.ta(j, a))];
      if (lhs != rhs) {
        v.em_laws = false;
        v.em_witness = "a(mu(U)) != a(Dwn(a)(U)) at family " +
                       t.l2.order->carrier->labels[j];
        break;
      }
    }
  }

  v.reflection = unit_ok;
  v.reflection_witness = unit_w;
  if (v.reflection) {
    for (int i = 0; i < t.n1(); ++i) {
      subset u = t.l1.elems[static_cast<std::size_t>(i)];
      if ((u & ~t.base->down[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])]) != 0) {
        v.reflection = false;
        v.reflection_witness =
            "U = " + t.l1.order->carrier->labels[i] + " not below down(a(U))";
        break;
      }
    }
  }
  return v;
}

// mu <= Dwn(a) pointwise, the KZ comonad inequality, for an algebra a
inline check_report kz_mu_below_ta(const dwn_tower& t, const std::vector<int>& a) {
  check_report rep;
  for (int j = 0; j < static_cast<int>(t.l2.elems.size()); ++j) {
    subset mu_mask = t.l1.elems[static_cast<std::size_t>(t.mu(j))];
    subset ta_mask = t.l1.elems[static_cast<std::size_t>(t.ta(j, a))];
    rep.record_once("mu_below_ta", (mu_mask & ~ta_mask) == 0,
                    "family " + t.l2.order->carrier->labels[j]);
    rep.cases_run += 1;
  }
  return rep;
}

// every monotone candidate a : Dwn(X) -> X, for exhaustive Thm-style sweeps
inline std::vector<std::vector<int>> all_monotone_maps(const fin_poset& src,
                                                       const fin_poset& dst) {
  std::vector<std::vector<int>> out;
  std::vector<int> table(static_cast<std::size_t>(src.size()), -1);
  std::function<void(int)> assign = [&](int i) {
    if (i == src.size()) {
      out.push_back(table);
      return;
    }
    for (int v = 0; v < dst.size(); ++v) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (src.leq(j, i) && !dst.leq(table[static_cast<std::size_t>(j)], v)) ok = false;
        if (src.leq(i, j) && !dst.leq(v, table[static_cast<std::size_t>(j)])) ok = false;
      }
      if (!ok) continue;
      table[static_cast<std::size_t>(i)] = v;
      assign(i + 1);
    }
    table[static_cast<std::size_t>(i)] = -1;
  };
  assign(0);
  return out;
}

// ---------------------------------------------------------------------------
// coalgebras are coreflections (Dwn-algebras = finite lattices, a = join)

struct coalgebra_verdict {
  bool precondition = true;  // c monotone and a map of algebras
  std::string precondition_witness;
  bool coalg_laws = false;
  bool coreflection = false;
  std::string laws_witness, coreflection_witness;
  bool agree() const { return coalg_laws == coreflection; }
};

inline coalgebra_verdict coalgebra_iff_coreflection(const lattice_algebra& frame,
                                                    const std::vector<int>& c) {
  if (frame.monad != monad_kind::downset)
    throw shape_error("coalgebra check expects a frame (downset algebra)");
  const fin_poset& l = *frame.order;
  indexed_poset dl = downset_poset(l);
  if (static_cast<int>(c.size()) != l.size())
    throw shape_error("coalgebra table must cover the carrier");

  coalgebra_verdict v;
  if (!is_monotone(l, *dl.order, c)) {
    v.precondition = false;
    v.precondition_witness = "c is not monotone";
    return v;
  }
  // map of algebras: c(join U) = union { c(y) : y in U } for every downset U
  for (subset u : dl.elems) {
    subset rhs = 0;
    for (int y : mask_elements(u)) rhs |= dl.elems[static_cast<std::size_t>(c[static_cast<std::size_t>(y)])];
    int join = frame.eval_mask(u);
    if (dl.elems[static_cast<std::size_t>(c[static_cast<std::size_t>(join)])] != rhs) {
      v.precondition = false;
      v.precondition_witness = "c is not a map of algebras at U = " + mask_label(*l.carrier, u);
      return v;
    }
  }

  // coalgebra laws: a.c = id and Dwn(eta).c = Dwn(c).c  (law 1 is the
  // algebra-map condition, already established)
  std::vector<subset> rows;
  for (int x = 0; x < l.size(); ++x) rows.push_back(dl.elems[static_cast<std::size_t>(c[static_cast<std::size_t>(x)])]);
  auto tb = make_table_basis(std::make_shared<const lattice_algebra>(frame), rows);
  auto laws = check_basis_laws(tb);
  v.coalg_laws = laws.all_laws();
  if (!v.coalg_laws) {
    if (!laws.law2.pass) v.laws_witness = "a.c != id: " + laws.law2.witness;
    else if (!laws.law3.pass) v.laws_witness = "comultiplication law: " + laws.law3.witness;
    else v.laws_witness = laws.law1.witness;
  }

  // coreflection: a.c = id and c.a <= id
  v.coreflection = true;
  for (int x = 0; x < l.size(); ++x) {
    if (frame.eval_mask(rows[static_cast<std::size_t>(x)]) != x) {
      v.coreflection = false;
      v.coreflection_witness = "a(c(" + l.carrier->labels[x] + ")) != id";
      break;
    }
  }
  if (v.coreflection) {
    for (subset u : dl.elems) {
      subset cu = rows[static_cast<std::size_t>(frame.eval_mask(u))];
      if ((cu & ~u) != 0) {
        v.coreflection = false;
        v.coreflection_witness = "c(a(U)) not below U at U = " + mask_label(*l.carrier, u);
        break;
      }
    }
  }
  return v;
}

// algebra-map candidates c : L -> Dwn(L), for exhaustive verdict sweeps
inline std::vector<std::vector<int>> all_algebra_map_coalgebra_candidates(
    const lattice_algebra& frame) {
  const fin_poset& l = *frame.order;
  indexed_poset dl = downset_poset(l);
  std::vector<std::vector<int>> out;
  for (const auto& c : all_monotone_maps(l, *dl.order)) {
    bool algebra_map = true;
    for (subset u : dl.elems) {
      subset rhs = 0;
      for (int y : mask_elements(u)) rhs |= dl.elems[static_cast<std::size_t>(c[static_cast<std::size_t>(y)])];
      if (dl.elems[static_cast<std::size_t>(c[static_cast<std::size_t>(frame.eval_mask(u))])] != rhs) {
        algebra_map = false;
        break;
      }
    }
    if (algebra_map) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// way-below, by brute force over all directed subsets

struct way_below_relation {
  fin_poset_ptr carrier;
  std::vector<subset> below;  // below[y] = { x : x << y }
  bool equals_leq = false;
  check_report checks;
};

inline way_below_relation way_below(const fin_poset& l, int guard = 15) {
  if (l.size() > guard)
    throw guard_error("way-below refused: carrier " + std::to_string(l.size()) +
                      " exceeds guard " + std::to_string(guard));
  if (!is_lattice(l)) throw shape_error("way-below oracle expects a finite lattice");
  way_below_relation rel;
  rel.carrier = share(l);
  int n = l.size();
  std::vector<subset> directed;
  for (subset m = 0; m <= full_mask(n); ++m) {
    if (is_directed(l, m)) directed.push_back(m);
    if (n == 0) break;
  }
  rel.below.assign(static_cast<std::size_t>(n), 0);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      bool way = true;
      for (subset u : directed) {
        auto j = join_of_mask(l, u);
        if (!j) continue;
        if (!l.leq(y, *j)) continue;
        bool dominated = false;
        for (int z : mask_elements(u))
          if (l.leq(x, z)) { dominated = true; break; }
        if (!dominated) { way = false; break; }
      }
      if (way) rel.below[static_cast<std::size_t>(y)] |= mask_bit(x);
    }

  // x << y implies x <= y
  for (int y = 0; y < n; ++y)
    rel.checks.record_once("way_below_implies_leq",
                           (rel.below[static_cast<std::size_t>(y)] & ~l.down[y]) == 0,
                           "y = " + l.carrier->labels[y]);
  // down-up stability: x' <= x << y <= y'  =>  x' << y'
  bool stable = true;
  std::string stw;
  for (int y = 0; y < n && stable; ++y)
    for (int x : mask_elements(rel.below[static_cast<std::size_t>(y)])) {
      for (int x2 : mask_elements(l.down[x]))
        for (int y2 : mask_elements(l.up[y]))
          if (!mask_contains(rel.below[static_cast<std::size_t>(y2)], x2)) {
            stable = false;
            stw = l.carrier->labels[x2] + " <= " + l.carrier->labels[x] + " << " +
                  l.carrier->labels[y] + " <= " + l.carrier->labels[y2];
          }
      if (!stable) break;
    }
  rel.checks.record("way_below_stability", stable, stw);

  // the finite collapse: << computed by brute force must equal <=
  rel.equals_leq = true;
  for (int y = 0; y < n; ++y)
    if (rel.below[static_cast<std::size_t>(y)] != l.down[y]) rel.equals_leq = false;
  rel.checks.record("way_below_equals_leq", rel.equals_leq,
                    rel.equals_leq ? "" : "brute force disagrees with <=");
  return rel;
}

inline check_report continuity_and_stability(const fin_poset& l, int guard = 15) {
  auto rel = way_below(l, guard);
  check_report rep = rel.checks;
  int n = l.size();
  // continuity: way-below sets are directed with join x
  for (int x = 0; x < n; ++x) {
    subset wb = rel.below[static_cast<std::size_t>(x)];
    bool ok = is_directed(l, wb);
    auto j = join_of_mask(l, wb);
    ok = ok && j && *j == x;
    rep.record_once("continuity", ok, "x = " + l.carrier->labels[x]);
    rep.cases_run += 1;
  }
  // top is way below itself
  auto top = top_of(l);
  rep.record("top_way_below_top",
             top && mask_contains(rel.below[static_cast<std::size_t>(*top)], *top), "");
  // stability under binary meets
  bool stable = true;
  std::string w;
  for (int x = 0; x < n && stable; ++x)
    for (int y = 0; y < n && stable; ++y)
      for (int z = 0; z < n && stable; ++z)
        if (mask_contains(rel.below[static_cast<std::size_t>(y)], x) &&
            mask_contains(rel.below[static_cast<std::size_t>(z)], x)) {
          auto m = meet_of(l, y, z);
          if (!m || !mask_contains(rel.below[static_cast<std::size_t>(*m)], x)) {
            stable = false;
            w = "x = " + l.carrier->labels[x] + ", y = " + l.carrier->labels[y] +
                ", z = " + l.carrier->labels[z];
          }
        }
  rep.record("stable_continuity", stable, w);
  return rep;
}

// ---------------------------------------------------------------------------
// the adjoint chain T(a) -| T(eta) -| mu -| eta on the free algebra Dwn(A)

struct chain_report {
  check_report checks;
  bool algebra_part_applicable = false;  // A itself carries a join algebra
  std::string note;
  int dwn_size = 0, dwn2_size = 0;
};

inline chain_report adjoint_chain_verify(const fin_poset& a, int guard = 3) {
  if (a.size() > guard)
    throw guard_error("adjoint chain refused: |A| = " + std::to_string(a.size()) +
                      " exceeds guard " + std::to_string(guard));
  chain_report rep;
  auto t = dwn_tower::of(share(a));
  rep.dwn_size = t.n1();
  rep.dwn2_size = static_cast<int>(t.l2.elems.size());

  std::vector<int> eta_t, mu_t, teta_t;
  for (int i = 0; i < t.n1(); ++i) {
    eta_t.push_back(t.eta1(i));
    teta_t.push_back(t.teta(i));
  }
  for (int j = 0; j < rep.dwn2_size; ++j) mu_t.push_back(t.mu(j));

  // mu -| eta, a reflection: mu.eta = id and id <= eta.mu
  for (int i = 0; i < t.n1(); ++i) {
    rep.checks.record_once("mu_eta_identity", mu_t[static_cast<std::size_t>(eta_t[static_cast<std::size_t>(i)])] == i,
                           "U = " + t.l1.order->carrier->labels[i]);
  }
  rep.checks.merge(check_galois(
      galois_connection{t.l2.order.get(), t.l1.order.get(), mu_t, eta_t}, "mu_adj_eta"));

  // T(eta) -| mu, a coreflection: mu.T(eta) = id and T(eta).mu <= id
  for (int i = 0; i < t.n1(); ++i)
    rep.checks.record_once("mu_teta_identity", mu_t[static_cast<std::size_t>(teta_t[static_cast<std::size_t>(i)])] == i,
                           "U = " + t.l1.order->carrier->labels[i]);
  rep.checks.merge(check_galois(
      galois_connection{t.l1.order.get(), t.l2.order.get(), teta_t, mu_t}, "teta_adj_mu"));

  // T(a) -| T(eta), a reflection, available when A is itself a lattice
  if (is_lattice(a)) {
    rep.algebra_part_applicable = true;
    auto alg = make_lattice_algebra(share(a));
    std::vector<int> a_table;
    for (subset u : t.l1.elems) a_table.push_back(alg.eval_mask(u));
    std::vector<int> ta_t;
    for (int j = 0; j < rep.dwn2_size; ++j) ta_t.push_back(t.ta(j, a_table));
    for (int i = 0; i < t.n1(); ++i)
      rep.checks.record_once("ta_teta_identity", ta_t[static_cast<std::size_t>(teta_t[static_cast<std::size_t>(i)])] == i,
                             "U = " + t.l1.order->carrier->labels[i]);
    rep.checks.merge(check_galois(
        galois_connection{t.l2.order.get(), t.l1.order.get(), ta_t, teta_t}, "ta_adj_teta"));
  } else {
    rep.note = "A carries no join algebra (not a lattice); the T(a) -| T(eta) "
               "reflection does not arise";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// compact elements and freeness of the canonical chain on Dwn(A)

struct compact_freeness_report {
  check_report checks;
  std::vector<std::string> compact_labels;  // X_c, rendered
  bool b_total = false;                     // the T''-algebra b exists
  std::string note;
};

inline compact_freeness_report compact_freeness(const fin_poset& a, int guard = 3) {
  if (a.size() > guard)
    throw guard_error("compact freeness refused: |A| = " + std::to_string(a.size()) +
                      " exceeds guard " + std::to_string(guard));
  compact_freeness_report rep;
  auto t = dwn_tower::of(share(a));
  int n1 = t.n1();
  int n2 = static_cast<int>(t.l2.elems.size());

  std::vector<int> eta_t(static_cast<std::size_t>(n1)), c_t(static_cast<std::size_t>(n1));
  std::vector<int> a_t(static_cast<std::size_t>(n2));
  for (int i = 0; i < n1; ++i) {
    eta_t[static_cast<std::size_t>(i)] = t.eta1(i);
    c_t[static_cast<std::size_t>(i)] = t.teta(i);
  }
  for (int j = 0; j < n2; ++j) a_t[static_cast<std::size_t>(j)] = t.mu(j);

  // c -| a coreflection: a.c = id, c.a <= id
  for (int i = 0; i < n1; ++i)
    rep.checks.record_once("a_c_identity", a_t[static_cast<std::size_t>(c_t[static_cast<std::size_t>(i)])] == i,
                           t.l1.order->carrier->labels[i]);
  rep.checks.merge(check_galois(
      galois_connection{t.l1.order.get(), t.l2.order.get(), c_t, a_t}, "c_adj_a"));

  // a -| eta reflection: a.eta = id, id <= eta.a
  for (int i = 0; i < n1; ++i)
    rep.checks.record_once("a_eta_identity", a_t[static_cast<std::size_t>(eta_t[static_cast<std::size_t>(i)])] == i,
                           t.l1.order->carrier->labels[i]);
  rep.checks.merge(check_galois(
      galois_connection{t.l2.order.get(), t.l1.order.get(), a_t, eta_t}, "a_adj_eta"));

  // b, the least left adjoint of c, where it exists
  std::vector<int> b_t(static_cast<std::size_t>(n2), -1);
  rep.b_total = true;
  for (int j = 0; j < n2; ++j) {
    subset fam = t.l2.elems[static_cast<std::size_t>(j)];
    int best = -1;
    for (int w = 0; w < n1; ++w) {
      if ((fam & ~t.l2.elems[static_cast<std::size_t>(c_t[static_cast<std::size_t>(w)])]) != 0) continue;
      if (best < 0 || t.l1.order->leq(w, best)) best = w;
    }
    // best must be below every admissible w
    if (best >= 0) {
      for (int w = 0; w < n1; ++w)
        if ((fam & ~t.l2.elems[static_cast<std::size_t>(c_t[static_cast<std::size_t>(w)])]) == 0 &&
            !t.l1.order->leq(best, w))
          best = -1;
    }
    if (best < 0) rep.b_total = false;
    b_t[static_cast<std::size_t>(j)] = best;
  }
  if (rep.b_total) {
    for (int i = 0; i < n1; ++i)
      rep.checks.record_once("b_c_identity", b_t[static_cast<std::size_t>(c_t[static_cast<std::size_t>(i)])] == i,
                             t.l1.order->carrier->labels[i]);
    rep.checks.merge(check_galois(
        galois_connection{t.l2.order.get(), t.l1.order.get(), b_t, c_t}, "b_adj_c"));
  } else {
    rep.note = "the left adjoint b of c is partial on Dwn(Dwn A); the full chain "
               "needs A to be a lattice";
  }

  // X_c = equalizer of (c, eta): the principal downsets
  std::vector<int> compact;
  for (int i = 0; i < n1; ++i)
    if (c_t[static_cast<std::size_t>(i)] == eta_t[static_cast<std::size_t>(i)]) {
      compact.push_back(i);
      rep.compact_labels.push_back(t.l1.order->carrier->labels[i]);
    }
  {
    // X_c must be exactly { down(x) : x in A }
    bool ok = static_cast<int>(compact.size()) == a.size();
    for (int i : compact) {
      bool principal = false;
      for (int x = 0; x < a.size(); ++x)
        if (t.l1.elems[static_cast<std::size_t>(i)] == a.down[static_cast<std::size_t>(x)]) principal = true;
      ok = ok && principal;
    }
    rep.checks.record("compact_equals_principal", ok, "");
  }

  // phi = a . T(e) : Dwn(X_c) -> Dwn(A) is an order isomorphism with
  // inverse psi(U) = { P in X_c : P <= U } (= T(k) . c on a full chain)
  int k = static_cast<int>(compact.size());
  std::vector<std::string> labels;
  std::vector<subset> up(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    labels.push_back(t.l1.order->carrier->labels[compact[static_cast<std::size_t>(i)]]);
    for (int j = 0; j < k; ++j)
      if (t.l1.order->leq(compact[static_cast<std::size_t>(i)], compact[static_cast<std::size_t>(j)]))
        up[static_cast<std::size_t>(i)] |= mask_bit(j);
  }
  fin_poset xc = fin_poset::from_leq(share(fin_set::of(labels)), up);
  auto xc_downs = all_downsets(xc);

  auto phi = [&](subset dmask) {
    subset u = 0;
    for (int i : mask_elements(dmask)) u |= t.l1.elems[static_cast<std::size_t>(compact[static_cast<std::size_t>(i)])];
    return t.l1.index(u);
  };
  auto psi = [&](int l1_idx) {
    subset dmask = 0;
    for (int i = 0; i < k; ++i)
      if ((t.l1.elems[static_cast<std::size_t>(compact[static_cast<std::size_t>(i)])] &
           ~t.l1.elems[static_cast<std::size_t>(l1_idx)]) == 0)
        dmask |= mask_bit(i);
    return dmask;
  };

  std::vector<int> hits(static_cast<std::size_t>(n1), 0);
  for (subset d : xc_downs) {
    int u = phi(d);
    hits[static_cast<std::size_t>(u)] += 1;
    rep.checks.record_once("psi_phi_identity", psi(u) == d, "downset of X_c");
  }
  bool bijective = true;
  for (int i = 0; i < n1; ++i) bijective = bijective && hits[static_cast<std::size_t>(i)] == 1;
  rep.checks.record("phi_bijective", bijective, "");
  for (int i = 0; i < n1; ++i)
    rep.checks.record_once("phi_psi_identity", phi(psi(i)) == i,
                           t.l1.order->carrier->labels[i]);
  // both directions monotone: an order isomorphism
  bool mono = true;
  for (subset d1 : xc_downs)
    for (subset d2 : xc_downs)
      if ((d1 & ~d2) == 0 && !t.l1.order->leq(phi(d1), phi(d2))) mono = false;
  for (int i = 0; i < n1 && mono; ++i)
    for (int j = 0; j < n1; ++j)
      if (t.l1.order->leq(i, j) && (psi(i) & ~psi(j)) != 0) mono = false;
  rep.checks.record("phi_order_iso", mono, "");

  // on a full chain, psi factors as T(k) . c with k = (b . eta) corestricted,
  // and k . e = id
  if (rep.b_total) {
    std::vector<int> k_t(static_cast<std::size_t>(n1), -1);
    bool k_ok = true;
    for (int i = 0; i < n1; ++i) {
      int w = b_t[static_cast<std::size_t>(eta_t[static_cast<std::size_t>(i)])];
      int pos = -1;
      for (int idx = 0; idx < k; ++idx)
        if (compact[static_cast<std::size_t>(idx)] == w) pos = idx;
      if (pos < 0) k_ok = false;
      k_t[static_cast<std::size_t>(i)] = pos;
    }
    rep.checks.record("k_lands_in_compacts", k_ok, "");
    if (k_ok) {
      for (int idx = 0; idx < k; ++idx)
        rep.checks.record_once("k_e_identity",
                               k_t[static_cast<std::size_t>(compact[static_cast<std::size_t>(idx)])] == idx, "");
      for (int i = 0; i < n1; ++i) {
        // T(k)(c(U)) = downclosure in X_c of { k(V) : V in c(U) }
        subset dmask = 0;
        for (int v : mask_elements(t.l2.elems[static_cast<std::size_t>(c_t[static_cast<std::size_t>(i)])])) {
          int pos = k_t[static_cast<std::size_t>(v)];
          for (int idx = 0; idx < k; ++idx)
            if (xc.leq(idx, pos)) dmask |= mask_bit(idx);
        }
        rep.checks.record_once("psi_equals_tk_c", dmask == psi(i),
                               t.l1.order->carrier->labels[i]);
      }
    }
  }
  return rep;
}

}  // namespace coalbase
