#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coalbase/algebras.hpp"
#include "coalbase/linalg.hpp"
#include "coalbase/monads.hpp"
#include "coalbase/report.hpp"

namespace coalbase {

// b : X -> T(X) in three presentations.  Table rows are masks over the
// lattice carrier (downward closed for frames); the matrix pair stores the
// claimed basis columns E and the coordinate matrix C; barycentric bases are
// the generator list itself, coordinates recovered on demand.

struct table_basis {
  std::shared_ptr<const lattice_algebra> alg;
  std::vector<subset> b;
};

struct matrix_basis {
  module_algebra alg;
  matrix E;  // n x m basis columns
  matrix C;  // m x n coordinates
};

struct barycentric_basis {
  convex_algebra alg;
};

using basis_coalgebra = std::variant<table_basis, matrix_basis, barycentric_basis>;

inline table_basis make_table_basis(std::shared_ptr<const lattice_algebra> alg,
                                    std::vector<subset> rows) {
  if (static_cast<int>(rows.size()) != alg->size())
    throw shape_error("coalgebra table must cover the carrier");
  if (alg->monad == monad_kind::downset)
    for (subset r : rows)
      if (!is_downset(*alg->order, r))
        throw shape_error("frame coalgebra rows must be downsets");
  for (subset r : rows)
    if ((r & ~full_mask(alg->size())) != 0) throw shape_error("table row out of range");
  return table_basis{std::move(alg), std::move(rows)};
}

struct law_result {
  bool pass = true;
  std::string witness;
};

struct basis_report {
  law_result law1, law2, law3;
  bool all_laws() const { return law1.pass && law2.pass && law3.pass; }
};

namespace detail {

// T(L) for a join algebra: all subsets, or all downsets for a frame
inline std::vector<subset> tl_elements(const lattice_algebra& alg) {
  if (alg.monad == monad_kind::downset) return all_downsets(*alg.order);
  if (alg.size() > 12) throw guard_error("exhaustive law check guarded at carrier <= 12");
  std::vector<subset> out;
  for (subset m = 0; m <= full_mask(alg.size()); ++m) out.push_back(m);
  return out;
}

inline subset eta_mask(const lattice_algebra& alg, int x) {
  return alg.monad == monad_kind::downset ? alg.order->down[x] : mask_bit(x);
}

// family of T(L)-elements compared as T^2(L)-elements: plain set equality
// for powerset, downward-closed membership for frames
struct family_cmp {
  const lattice_algebra* alg;
  std::vector<subset> all1;

  explicit family_cmp(const lattice_algebra& a) : alg(&a) {
    if (a.monad == monad_kind::downset) all1 = all_downsets(*a.order);
  }

  bool equal(std::vector<subset> f, std::vector<subset> g) const {
    if (alg->monad == monad_kind::powerset) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
      return f == g;
    }
    auto member = [&](const std::vector<subset>& fam, subset v) {
      for (subset w : fam)
        if ((v & ~w) == 0) return true;
      return false;
    };
    for (subset v : all1)
      if (member(f, v) != member(g, v)) return false;
    return true;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// law checking

inline basis_report check_basis_laws(const table_basis& tb) {
  const lattice_algebra& alg = *tb.alg;
  basis_report rep;
  auto t1 = detail::tl_elements(alg);
  detail::family_cmp cmp(alg);

  // law 2: a . b = id
  for (int x = 0; x < alg.size() && rep.law2.pass; ++x)
    if (alg.eval_mask(tb.b[x]) != x)
      rep.law2 = {false, "x = " + alg.order->carrier->labels[x]};

  // law 1: b . a = mu . T(b), over all of T(L)
  for (subset s : t1) {
    if (!rep.law1.pass) break;
    subset rhs = 0;
    for (int y : mask_elements(s)) rhs |= tb.b[y];
    if (tb.b[alg.eval_mask(s)] != rhs)
      rep.law1 = {false, "S = " + mask_label(*alg.order->carrier, s)};
  }

  // law 3: T(eta) . b = T(b) . b
  for (int x = 0; x < alg.size() && rep.law3.pass; ++x) {
    std::vector<subset> lhs, rhs;
    for (int y : mask_elements(tb.b[x])) {
      lhs.push_back(detail::eta_mask(alg, y));
      rhs.push_back(tb.b[y]);
    }
    if (!cmp.equal(lhs, rhs)) rep.law3 = {false, "x = " + alg.order->carrier->labels[x]};
  }
  return rep;
}

inline basis_report check_basis_laws(const matrix_basis& mb, int samples = 50,
                                     unsigned long seed = 0) {
  basis_report rep;
  int n = mb.E.rows, m = mb.E.cols;
  if (mb.C.rows != m || mb.C.cols != n) throw shape_error("coordinate matrix shape mismatch");

  // law 2 <=> E C = I_n, law 3 <=> C E = I_m
  matrix ec = mat_mul(mb.E, mb.C);
  if (!(ec == matrix::identity(mb.alg.dom, n))) {
    for (int i = 0; i < n && rep.law2.pass; ++i)
      for (int j = 0; j < n && rep.law2.pass; ++j)
        if (!(ec.at(i, j) == (i == j ? scalar::one(mb.alg.dom) : scalar::zero(mb.alg.dom))))
          rep.law2 = {false, "(E*C)[" + std::to_string(i) + "," + std::to_string(j) +
                                 "] = " + ec.at(i, j).str()};
  }
  matrix ce = mat_mul(mb.C, mb.E);
  if (!(ce == matrix::identity(mb.alg.dom, m))) {
    for (int i = 0; i < m && rep.law3.pass; ++i)
      for (int j = 0; j < m && rep.law3.pass; ++j)
        if (!(ce.at(i, j) == (i == j ? scalar::one(mb.alg.dom) : scalar::zero(mb.alg.dom))))
          rep.law3 = {false, "(C*E)[" + std::to_string(i) + "," + std::to_string(j) +
                                 "] = " + ce.at(i, j).str()};
  }

  // law 1 follows from linearity of x -> Cx; guard that assumption on samples
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples && rep.law1.pass; ++s) {
    std::vector<std::pair<scalar, qvec>> fc;
    int k = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < k; ++i) {
      qvec v;
      for (int j = 0; j < n; ++j) v.push_back(random_scalar(rng, mb.alg.dom));
      fc.emplace_back(random_scalar(rng, mb.alg.dom), std::move(v));
    }
    qvec lhs = mat_vec(mb.C, mb.alg.eval(fc));  // b(a(sum))
    qvec rhs(static_cast<std::size_t>(m), scalar::zero(mb.alg.dom));
    for (const auto& [c, v] : fc) rhs = vec_add(rhs, vec_scale(c, mat_vec(mb.C, v)));
    if (lhs != rhs) rep.law1 = {false, "formal sum with " + std::to_string(k) + " terms"};
  }
  return rep;
}

inline qvec barycentric_coords(const convex_algebra& alg, const qvec& p) {
  matrix sys = matrix::zero(scalar_domain::rational, alg.dim + 1,
                            static_cast<int>(alg.generators.size()));
  for (int j = 0; j < sys.cols; ++j) {
    for (int i = 0; i < alg.dim; ++i) sys.at(i, j) = alg.generators[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    sys.at(alg.dim, j) = scalar::one(scalar_domain::rational);
  }
  qvec rhs = p;
  rhs.push_back(scalar::one(scalar_domain::rational));
  auto sol = solve_unique(sys, rhs);
  if (!sol) throw shape_error("no unique barycentric coordinates (affinely dependent or outside hull)");
  return *sol;
}

inline basis_report check_basis_laws(const barycentric_basis& bb, int samples = 50,
                                     unsigned long seed = 0) {
  basis_report rep;
  const auto& alg = bb.alg;
  std::size_t m = alg.generators.size();

  // law 3: each generator decomposes as its own point mass
  for (std::size_t j = 0; j < m && rep.law3.pass; ++j) {
    qvec lam = barycentric_coords(alg, alg.generators[j]);
    for (std::size_t i = 0; i < m; ++i) {
      bool want_one = i == j;
      if (lam[i].is_one() != want_one || (!want_one && !lam[i].is_zero())) {
        rep.law3 = {false, "generator " + std::to_string(j)};
        break;
      }
    }
  }

  std::mt19937_64 rng(seed);
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
    auto cs = convex_coeffs(m);
    std::vector<std::pair<scalar, qvec>> fc;
    for (std::size_t i = 0; i < m; ++i) fc.emplace_back(cs[i], alg.generators[i]);
    return alg.eval(fc);
  };
  for (int s = 0; s < samples; ++s) {
    qvec p = random_point();
    qvec lam = barycentric_coords(alg, p);
    // law 2: a . b = id
    std::vector<std::pair<scalar, qvec>> fc;
    for (std::size_t i = 0; i < m; ++i) fc.emplace_back(lam[i], alg.generators[i]);
    if (rep.law2.pass && alg.eval(fc) != p) rep.law2 = {false, "sampled point"};
    // law 1: b is affine on convex combinations
    qvec p2 = random_point();
    auto cs = convex_coeffs(2);
    qvec mix = alg.eval({{cs[0], p}, {cs[1], p2}});
    qvec lam_mix = barycentric_coords(alg, mix);
    qvec lam2 = barycentric_coords(alg, p2);
    qvec expect = vec_add(vec_scale(cs[0], lam), vec_scale(cs[1], lam2));
    if (rep.law1.pass && lam_mix != expect) rep.law1 = {false, "sampled mixture"};
  }
  return rep;
}

inline basis_report check_basis_laws(const basis_coalgebra& b, int samples = 50,
                                     unsigned long seed = 0) {
  if (const auto* tb = std::get_if<table_basis>(&b)) return check_basis_laws(*tb);
  if (const auto* mb = std::get_if<matrix_basis>(&b)) return check_basis_laws(*mb, samples, seed);
  return check_basis_laws(std::get<barycentric_basis>(b), samples, seed);
}

// ---------------------------------------------------------------------------
// basic elements and freeness

// the equaliser X_b = { x : b(x) = eta(x) }
inline std::vector<int> basic_elements(const table_basis& tb) {
  std::vector<int> out;
  for (int x = 0; x < tb.alg->size(); ++x)
    if (tb.b[x] == detail::eta_mask(*tb.alg, x)) out.push_back(x);
  return out;
}

inline std::vector<qvec> basic_elements(const matrix_basis& mb) {
  std::vector<qvec> out;
  for (int j = 0; j < mb.E.cols; ++j) out.push_back(mb.E.column(j));
  return out;
}

inline std::vector<qvec> basic_elements(const barycentric_basis& bb) {
  return bb.alg.generators;
}

struct freeness_result {
  enum class status { ok, hypothesis_unmet, failed } st = status::ok;
  std::string detail;
  bool pass() const { return st == status::ok; }
};

inline freeness_result freeness_iso(const table_basis& tb) {
  const lattice_algebra& alg = *tb.alg;
  auto basics = basic_elements(tb);
  if (basics.empty())
    return {freeness_result::status::hypothesis_unmet,
            "X_b is empty; the freeness hypothesis is unmet"};
  subset basic_mask = 0;
  for (int x : basics) basic_mask |= mask_bit(x);
  // b must land in subsets of X_b for the restriction b' to exist
  for (int x = 0; x < alg.size(); ++x)
    if ((tb.b[x] & ~basic_mask) != 0)
      return {freeness_result::status::failed,
              "b(" + alg.order->carrier->labels[x] + ") leaves the basic elements"};

  // enumerate T(X_b): subsets for powerset, downsets of the induced order
  std::vector<subset> tx;
  int k = static_cast<int>(basics.size());
  if (alg.monad == monad_kind::powerset) {
    for (subset m = 0; m <= full_mask(k); ++m) tx.push_back(m);
  } else {
    std::vector<std::string> labels;
    for (int x : basics) labels.push_back(alg.order->carrier->labels[x]);
    std::vector<subset> up(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (alg.order->leq(basics[static_cast<std::size_t>(i)], basics[static_cast<std::size_t>(j)]))
          up[static_cast<std::size_t>(i)] |= mask_bit(j);
    tx = all_downsets(fin_poset::from_leq(share(fin_set::of(labels)), up));
  }

  auto expand = [&](subset small) {
    subset big = 0;
    for (int i : mask_elements(small)) big |= mask_bit(basics[static_cast<std::size_t>(i)]);
    return big;
  };
  auto restrict_to_basics = [&](subset big) {
    subset small = 0;
    for (int i = 0; i < k; ++i)
      if (mask_contains(big, basics[static_cast<std::size_t>(i)])) small |= mask_bit(i);
    return small;
  };

  // phi = a . T(e) : T(X_b) -> L, with claimed inverse b' = restrict . b
  std::vector<int> seen(static_cast<std::size_t>(alg.size()), 0);
  for (subset t : tx) {
    int x = alg.eval_mask(expand(t));
    seen[static_cast<std::size_t>(x)] += 1;
    if (restrict_to_basics(tb.b[x]) != t)
      return {freeness_result::status::failed,
              "b'(phi(" + std::to_string(t) + ")) != id witness at " +
                  alg.order->carrier->labels[x]};
  }
  for (int x = 0; x < alg.size(); ++x) {
    if (seen[static_cast<std::size_t>(x)] != 1)
      return {freeness_result::status::failed,
              "phi is not a bijection at " + alg.order->carrier->labels[x]};
    if (alg.eval_mask(expand(restrict_to_basics(tb.b[x]))) != x)
      return {freeness_result::status::failed,
              "phi(b'(x)) != x at " + alg.order->carrier->labels[x]};
  }
  return {};
}

inline freeness_result freeness_iso(const matrix_basis& mb) {
  if (mb.E.cols == 0)
    return {freeness_result::status::hypothesis_unmet,
            "X_b is empty; the freeness hypothesis is unmet"};
  if (!(mat_mul(mb.E, mb.C) == matrix::identity(mb.alg.dom, mb.E.rows)))
    return {freeness_result::status::failed, "E*C != I"};
  if (!(mat_mul(mb.C, mb.E) == matrix::identity(mb.alg.dom, mb.E.cols)))
    return {freeness_result::status::failed, "C*E != I"};
  return {};
}

inline freeness_result freeness_iso(const barycentric_basis& bb, int samples = 30,
                                    unsigned long seed = 0) {
  basis_report laws = check_basis_laws(bb, samples, seed);
  if (!laws.all_laws()) return {freeness_result::status::failed, "basis laws fail"};
  return {};
}

// ---------------------------------------------------------------------------
// basis builders

// Free algebras carry the canonical basis T(eta).
inline table_basis canonical_basis(const lattice_algebra& alg) {
  if (!alg.free_on) throw shape_error("canonical basis exists only on free algebras");
  const auto& fi = *alg.free_on;
  std::vector<subset> rows;
  int n = alg.size();
  for (int i = 0; i < n; ++i) {
    subset row = 0;
    if (fi.kind == monad_kind::powerset) {
      for (int x : mask_elements(fi.elem_masks[static_cast<std::size_t>(i)]))
        row |= mask_bit(fi.index_of.at(mask_bit(x)));
    } else {
      // members are all downsets below some principal downset of an element
      for (int j = 0; j < n; ++j)
        for (int x : mask_elements(fi.elem_masks[static_cast<std::size_t>(i)]))
          if ((fi.elem_masks[static_cast<std::size_t>(j)] & ~fi.base_order->down[x]) == 0) {
            row |= mask_bit(j);
            break;
          }
    }
    rows.push_back(row);
  }
  return make_table_basis(std::make_shared<const lattice_algebra>(alg), std::move(rows));
}

struct atoms_result {
  std::optional<table_basis> basis;
  std::vector<int> atoms;
  int witness = -1;  // first non-atomic element when no basis exists
};

inline atoms_result atoms_basis(const lattice_algebra& alg) {
  if (alg.monad != monad_kind::powerset)
    throw shape_error("atoms_basis expects a lattice-join algebra");
  atoms_result res;
  for (int x = 0; x < alg.size(); ++x)
    if (x != alg.bottom && alg.order->down[x] == (mask_bit(x) | mask_bit(alg.bottom)))
      res.atoms.push_back(x);
  subset atom_mask = 0;
  for (int a : res.atoms) atom_mask |= mask_bit(a);
  std::vector<subset> rows;
  for (int x = 0; x < alg.size(); ++x) {
    subset below = atom_mask & alg.order->down[x];
    if (alg.eval_mask(below) != x) {
      res.witness = x;
      return res;
    }
    rows.push_back(below);
  }
  res.basis = make_table_basis(std::make_shared<const lattice_algebra>(alg), std::move(rows));
  return res;
}

struct hamel_result {
  std::optional<matrix_basis> basis;
  singular_witness witness;
};

inline hamel_result hamel_basis(const module_algebra& alg, const std::vector<qvec>& columns) {
  if (!domain_is_field(alg.dom))
    throw shape_error("hamel basis needs a field of scalars");
  if (static_cast<int>(columns.size()) != alg.dim)
    throw shape_error("need exactly dim basis vectors");
  matrix e = matrix::from_columns(alg.dom, columns);
  if (e.rows != alg.dim) throw shape_error("basis vectors have the wrong dimension");
  hamel_result res;
  auto c = invert(e, &res.witness);
  if (!c) return res;
  res.basis = matrix_basis{alg, std::move(e), std::move(*c)};
  return res;
}

// generators not expressible as convex combinations of the others; exact
// feasibility via enumeration of affinely independent supports
inline std::vector<int> extreme_points(const convex_algebra& alg) {
  int m = static_cast<int>(alg.generators.size());
  std::vector<int> extreme;
  for (int j = 0; j < m; ++j) {
    std::vector<int> others;
    for (int i = 0; i < m; ++i)
      if (i != j && alg.generators[static_cast<std::size_t>(i)] != alg.generators[static_cast<std::size_t>(j)])
        others.push_back(i);
    bool expressible = false;
    // duplicated generators are trivially expressible
    for (int i = 0; i < m && !expressible; ++i)
      if (i != j && alg.generators[static_cast<std::size_t>(i)] == alg.generators[static_cast<std::size_t>(j)])
        expressible = true;
    int cap = std::min<int>(alg.dim + 1, static_cast<int>(others.size()));
    std::vector<int> pick;
    std::function<void(std::size_t)> search = [&](std::size_t from) {
      if (expressible) return;
      if (!pick.empty()) {
        matrix sys = matrix::zero(scalar_domain::rational, alg.dim + 1,
                                  static_cast<int>(pick.size()));
        for (int cidx = 0; cidx < static_cast<int>(pick.size()); ++cidx) {
          for (int r = 0; r < alg.dim; ++r)
            sys.at(r, cidx) = alg.generators[static_cast<std::size_t>(pick[static_cast<std::size_t>(cidx)])][static_cast<std::size_t>(r)];
          sys.at(alg.dim, cidx) = scalar::one(scalar_domain::rational);
        }
        qvec rhs = alg.generators[static_cast<std::size_t>(j)];
        rhs.push_back(scalar::one(scalar_domain::rational));
        if (auto sol = solve_unique(sys, rhs)) {
          bool nonneg = true;
          for (const auto& lam : *sol)
            if (lam.re() < 0) { nonneg = false; break; }
          if (nonneg) expressible = true;
        }
      }
      if (static_cast<int>(pick.size()) == cap) return;
      for (std::size_t i = from; i < others.size(); ++i) {
        pick.push_back(others[i]);
        search(i + 1);
        pick.pop_back();
      }
    };
    search(0);
    if (!expressible) extreme.push_back(j);
  }
  return extreme;
}

inline barycentric_basis convex_basis(const convex_algebra& alg) {
  // affine independence: [v_i ; 1] must have full column rank
  int m = static_cast<int>(alg.generators.size());
  matrix sys = matrix::zero(scalar_domain::rational, alg.dim + 1, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < alg.dim; ++i) sys.at(i, j) = alg.generators[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    sys.at(alg.dim, j) = scalar::one(scalar_domain::rational);
  }
  for (int j = 1; j <= m; ++j) {
    matrix prefix = matrix::zero(scalar_domain::rational, alg.dim + 1, j);
    for (int r = 0; r <= alg.dim; ++r)
      for (int c = 0; c < j; ++c) prefix.at(r, c) = sys.at(r, c);
    if (rank(prefix) != j)
      throw shape_error("generator " + std::to_string(j - 1) + " is affinely dependent");
  }
  return barycentric_basis{alg};
}

// every valid coalgebra on a small join algebra, by brute force over all
// maps L -> P(L); the oracle behind uniqueness and atoms_basis
inline std::vector<table_basis> exhaustive_basis_search(const lattice_algebra& alg,
                                                        int guard = 5) {
  if (alg.monad != monad_kind::powerset)
    throw shape_error("exhaustive search expects a lattice-join algebra");
  if (alg.size() > guard)
    throw guard_error("exhaustive basis search refused: carrier " +
                      std::to_string(alg.size()) + " exceeds guard " + std::to_string(guard));
  int n = alg.size();
  // law 2 prunes the per-element candidates to { S : join S = x }
  std::vector<std::vector<subset>> candidates(static_cast<std::size_t>(n));
  for (subset s = 0; s <= full_mask(n); ++s)
    candidates[static_cast<std::size_t>(alg.eval_mask(s))].push_back(s);

  std::vector<table_basis> found;
  std::vector<subset> rows(static_cast<std::size_t>(n), 0);
  std::function<void(int)> assign = [&](int x) {
    if (x == n) {
      auto tb = make_table_basis(std::make_shared<const lattice_algebra>(alg), rows);
      if (check_basis_laws(tb).all_laws()) found.push_back(std::move(tb));
      return;
    }
    for (subset cand : candidates[static_cast<std::size_t>(x)]) {
      rows[static_cast<std::size_t>(x)] = cand;
      // partial law-1 pruning on pairs whose join is already assigned
      bool ok = true;
      for (int y = 0; y <= x && ok; ++y) {
        int j = alg.join[static_cast<std::size_t>(x)][y];
        if (j <= x && rows[static_cast<std::size_t>(j)] != (rows[static_cast<std::size_t>(x)] | rows[static_cast<std::size_t>(y)]))
          ok = false;
      }
      if (ok) assign(x + 1);
    }
  };
  assign(0);
  return found;
}

// ---------------------------------------------------------------------------
// equaliser diagnostics

// b : X -> T(X) should be the equaliser of T(b), T(eta) : T(X) => T^2(X)
inline check_report check_equaliser_characterisation(const table_basis& tb) {
  const lattice_algebra& alg = *tb.alg;
  check_report rep;
  auto t1 = detail::tl_elements(alg);
  detail::family_cmp cmp(alg);
  for (subset t : t1) {
    std::vector<subset> tb_fam, teta_fam;
    for (int y : mask_elements(t)) {
      tb_fam.push_back(tb.b[y]);
      teta_fam.push_back(detail::eta_mask(alg, y));
    }
    bool equalises = cmp.equal(tb_fam, teta_fam);
    int preimages = 0;
    for (int x = 0; x < alg.size(); ++x)
      if (tb.b[x] == t) ++preimages;
    bool ok = equalises ? (preimages == 1) : (preimages == 0);
    rep.record_once("equaliser_characterisation", ok,
                    "candidate t = " + mask_label(*alg.order->carrier, t) +
                        (equalises ? " equalises with " : " does not equalise but has ") +
                        std::to_string(preimages) + " preimage(s)");
    rep.cases_run += 1;
  }
  return rep;
}

// does eta_A : A -> T(A) equalise T(eta_A), eta_TA : T(A) => T^2(A)?
struct equaliser_requirement_report {
  bool pass = true;
  std::vector<std::string> fixed_elements;  // the equalising subset, rendered
  std::vector<std::string> witnesses;       // symmetric difference with eta[A]
};

inline equaliser_requirement_report check_equaliser_requirement_powerset(const fin_set& a) {
  if (a.size() > 4) throw guard_error("equaliser requirement guarded at |A| <= 4");
  equaliser_requirement_report rep;
  int n = a.size();
  for (subset t = 0; t <= full_mask(n); ++t) {
    // T(eta)(t) = { {x} : x in t }   vs   eta_TA(t) = { t }
    std::vector<subset> lhs, rhs{t};
    for (int x : mask_elements(t)) lhs.push_back(mask_bit(x));
    std::sort(lhs.begin(), lhs.end());
    lhs.erase(std::unique(lhs.begin(), lhs.end()), lhs.end());
    bool equalises = lhs == rhs;
    bool in_eta_image = mask_size(t) == 1;
    if (equalises) rep.fixed_elements.push_back(mask_label(a, t));
    if (equalises != in_eta_image) {
      rep.pass = false;
      rep.witnesses.push_back(mask_label(a, t));
    }
    if (n == 0) break;
  }
  return rep;
}

inline equaliser_requirement_report check_equaliser_requirement_downset(const fin_poset& a) {
  if (a.size() > 4) throw guard_error("equaliser requirement guarded at |A| <= 4");
  equaliser_requirement_report rep;
  auto downs = all_downsets(a);
  for (subset u : downs) {
    // T(eta)(U) = down-closure of { down(x) : x in U } in Dwn(A)
    // eta_TA(U) = { V : V subseteq U }
    auto member_lhs = [&](subset v) {
      for (int x : mask_elements(u))
        if ((v & ~a.down[x]) == 0) return true;
      return false;
    };
    auto member_rhs = [&](subset v) { return (v & ~u) == 0; };
    bool equalises = true;
    for (subset v : downs)
      if (member_lhs(v) != member_rhs(v)) { equalises = false; break; }
    bool principal = false;
    for (int x = 0; x < a.size(); ++x)
      if (u == a.down[x]) principal = true;
    if (equalises) rep.fixed_elements.push_back(mask_label(*a.carrier, u));
    if (equalises != principal) {
      rep.pass = false;
      rep.witnesses.push_back(mask_label(*a.carrier, u));
    }
  }
  return rep;
}

}  // namespace coalbase
