#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "coalbase/finstruct.hpp"
#include "coalbase/monads.hpp"
#include "coalbase/report.hpp"

namespace coalbase {

// The transformer E(T) = T(E + -) on two concrete bases.  The coproduct
// monad T = F + (-) is the primary one: T(0) = F makes throw maps
// informative.  Powerset is kept as the degenerate second shape.
//
// Element layout for the coproduct base:
//   T(X)          raise f        indices [0, |F|)
//                 value x        indices [|F|, |F|+|X|)
//   T(E+X)        raise f        [0, |F|)
//                 exception e    [|F|, |F|+|E|)
//                 value x        [|F|+|E|, ...)
// Powerset values are masks; exception bits sit below value bits.

struct exception_setup {
  enum class base_kind { coproduct, powerset };
  base_kind base = base_kind::coproduct;
  fin_set_ptr summand;     // F, coproduct base only
  fin_set_ptr exceptions;  // E

  int nf() const { return base == base_kind::coproduct ? summand->size() : 0; }
  int ne() const { return exceptions->size(); }

  static exception_setup coproduct(fin_set_ptr f, fin_set_ptr e) {
    // label spacing: F and E must not collide
    disjoint_union(*f, *e);
    return {base_kind::coproduct, std::move(f), std::move(e)};
  }
  static exception_setup powerset(fin_set_ptr e) {
    return {base_kind::powerset, nullptr, std::move(e)};
  }
};

// r : E -> T(0).  For the coproduct base T(0) = F; for powerset T(0) = {0}
// and the table is empty of content.
struct throw_map {
  std::vector<int> table;  // coproduct: e -> f

  bool operator==(const throw_map& o) const { return table == o.table; }
};

// sigma_X : T(E+X) -> T(X), one component per (size of) test carrier
struct handler_family {
  exception_setup setup;
  std::function<int(int nx, int elem)> cop_apply;
  std::function<subset(int nx, subset m)> pw_apply;

  int apply_cop(int nx, int elem) const { return cop_apply(nx, elem); }
  subset apply_pw(int nx, subset m) const { return pw_apply(nx, m); }
};

// r-hat_X = mu . T([T(!) . r, eta]) : raises pass through, exceptions are
// rethrown through r, values pass through
inline handler_family throw_to_handler(const exception_setup& setup, const throw_map& r) {
  handler_family h;
  h.setup = setup;
  if (setup.base == exception_setup::base_kind::coproduct) {
    if (static_cast<int>(r.table.size()) != setup.ne())
      throw shape_error("throw map must be total on E");
    for (int f : r.table)
      if (f < 0 || f >= setup.nf()) throw shape_error("throw map lands outside F");
    int nf = setup.nf(), ne = setup.ne();
    auto table = r.table;
    h.cop_apply = [nf, ne, table](int nx, int elem) {
      if (elem < nf) return elem;                      // raise f
      if (elem < nf + ne) return table[static_cast<std::size_t>(elem - nf)];  // throw
      if (elem >= nf + ne + nx) throw shape_error("element outside T(E+X)");
      return elem - ne;                                // value x
    };
  } else {
    int ne = setup.ne();
    h.pw_apply = [ne](int nx, subset m) {
      if ((m & ~full_mask(ne + nx)) != 0) throw shape_error("mask outside P(E+X)");
      return m >> ne;  // exceptions erase to the empty contribution
    };
  }
  return h;
}

// sigma-hat = sigma_0 . T(kappa_1) . eta, the throw map read off at X = 0
inline throw_map handler_to_throw(const exception_setup& setup, const handler_family& h) {
  throw_map r;
  if (setup.base == exception_setup::base_kind::coproduct) {
    int nf = setup.nf();
    for (int e = 0; e < setup.ne(); ++e) {
      int out = h.apply_cop(0, nf + e);
      if (out < 0 || out >= nf)
        throw shape_error("handler at the empty carrier does not land in T(0)");
      r.table.push_back(out);
    }
  } else {
    for (int e = 0; e < setup.ne(); ++e) {
      subset out = h.apply_pw(0, mask_bit(e));
      if (out != 0) throw shape_error("powerset handler must erase exceptions at X = 0");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// the bijection, naturality, and the monad-map squares

struct roundtrip_options {
  int max_carrier = 3;
  int samples = 60;        // powerset multiplication square only
  unsigned long seed = 0;
};

namespace detail {

inline std::string cop_label(const exception_setup& s, int nx, int elem) {
  if (elem < s.nf()) return "raise(" + s.summand->labels[elem] + ")";
  if (elem < s.nf() + s.ne()) return "exc(" + s.exceptions->labels[elem - s.nf()] + ")";
  return "x" + std::to_string(elem - s.nf() - s.ne());
}

}  // namespace detail

inline check_report roundtrip_check(const exception_setup& setup,
                                    const roundtrip_options& opt = {}) {
  check_report rep;
  int ne = setup.ne();

  if (setup.base == exception_setup::base_kind::coproduct) {
    int nf = setup.nf();
    if (nf == 0) throw shape_error("coproduct base needs a nonempty F");
    // every throw map round-trips: all |F|^|E| of them
    std::vector<throw_map> throws;
    std::vector<int> cur(static_cast<std::size_t>(ne), 0);
    std::function<void(int)> gen = [&](int e) {
      if (e == ne) {
        throws.push_back(throw_map{cur});
        return;
      }
      for (int f = 0; f < nf; ++f) {
        cur[static_cast<std::size_t>(e)] = f;
        gen(e + 1);
      }
    };
    gen(0);
    for (const auto& r : throws) {
      auto h = throw_to_handler(setup, r);
      bool ok = handler_to_throw(setup, h) == r;
      std::string rw;
      for (std::size_t e = 0; e < r.table.size(); ++e)
        rw += (e ? "," : "") + setup.exceptions->labels[e] + "->" +
              setup.summand->labels[r.table[e]];
      rep.record_once("throw_roundtrip", ok, "r = {" + rw + "}");
      rep.cases_run += 1;

      // handler generated from a throw regenerates itself pointwise
      auto h2 = throw_to_handler(setup, handler_to_throw(setup, h));
      for (int nx = 0; nx <= opt.max_carrier; ++nx)
        for (int t = 0; t < nf + ne + nx; ++t) {
          rep.record_once("handler_roundtrip", h.apply_cop(nx, t) == h2.apply_cop(nx, t),
                          detail::cop_label(setup, nx, t));
          rep.cases_run += 1;
        }

      // monad-map unit square: r-hat . eta^{E(T)} = eta
      for (int nx = 0; nx <= opt.max_carrier; ++nx)
        for (int x = 0; x < nx; ++x) {
          int lifted = nf + ne + x;  // eta^{E(T)}(x)
          rep.record_once("unit_square", h.apply_cop(nx, lifted) == nf + x,
                          "x" + std::to_string(x));
          rep.cases_run += 1;
        }

      // monad-map multiplication square on all of T(E+T(E+X))
      for (int nx = 0; nx <= opt.max_carrier; ++nx) {
        int inner = nf + ne + nx;  // |T(E+X)|
        int total = nf + ne + inner;
        for (int t = 0; t < total; ++t) {
          // left: sigma_X . mu^{E(T)}
          int via_mu;
          if (t < nf + ne) via_mu = h.apply_cop(nx, t);
          else via_mu = h.apply_cop(nx, t - nf - ne);
          // right: mu^T . sigma_{T(X)} . E(T)(sigma_X)
          int stage;  // in T(E + T(X))
          if (t < nf + ne) stage = t;
          else {
            int mapped = h.apply_cop(nx, t - nf - ne);  // in T(X)
            stage = nf + ne + mapped;
          }
          int tx_size = nf + nx;  // carrier T(X)
          int in_ttx = h.apply_cop(tx_size, stage);
          // mu^T: raises stay, a value of T(T(X)) names the T(X) element itself
          int via_sigma = in_ttx < nf ? in_ttx : in_ttx - nf;
          rep.record_once("mult_square", via_mu == via_sigma,
                          detail::cop_label(setup, inner, t));
          rep.cases_run += 1;
        }
      }

      // naturality: r-hat_Y . E(T)(h0) = T(h0) . r-hat_X for every map h0
      for (int nx = 0; nx <= opt.max_carrier; ++nx)
        for (int nny = 0; nny <= opt.max_carrier; ++nny) {
          if (nx > 0 && nny == 0) continue;  // no maps X -> empty
          std::vector<int> h0(static_cast<std::size_t>(nx), 0);
          std::function<void(int)> maps = [&](int i) {
            if (i == nx) {
              for (int t = 0; t < nf + ne + nx; ++t) {
                int lifted = t < nf + ne ? t : nf + ne + h0[static_cast<std::size_t>(t - nf - ne)];
                int lhs = h.apply_cop(nny, lifted);
                int rx = h.apply_cop(nx, t);
                int rhs = rx < nf ? rx : nf + h0[static_cast<std::size_t>(rx - nf)];
                rep.record_once("naturality", lhs == rhs, detail::cop_label(setup, nx, t));
                rep.cases_run += 1;
              }
              return;
            }
            for (int y = 0; y < nny; ++y) {
              h0[static_cast<std::size_t>(i)] = y;
              maps(i + 1);
            }
          };
          maps(0);
        }
    }
    return rep;
  }

  // powerset base: the unique throw map, executed rather than assumed
  throw_map unique_r;
  auto h = throw_to_handler(setup, unique_r);
  rep.record("throw_roundtrip", handler_to_throw(setup, h) == unique_r, "");
  rep.cases_run += 1;

  for (int nx = 0; nx <= opt.max_carrier; ++nx) {
    // unit square over all of P(X)
    for (subset m = 0; m <= full_mask(nx); ++m) {
      subset lifted = m << ne;  // P(eta) injects values above the exception bits
      rep.record_once("unit_square", h.apply_pw(nx, lifted) == m, "");
      rep.cases_run += 1;
      if (nx == 0) break;
    }
    // naturality over all of P(E+X) and all maps h0 : X -> Y
    for (int nny = 0; nny <= opt.max_carrier; ++nny) {
      if (nx > 0 && nny == 0) continue;
      std::vector<int> h0(static_cast<std::size_t>(nx), 0);
      std::function<void(int)> maps = [&](int i) {
        if (i == nx) {
          for (subset m = 0; m <= full_mask(ne + nx); ++m) {
            subset mapped = m & full_mask(ne);  // exceptions fixed
            for (int x = 0; x < nx; ++x)
              if (mask_contains(m, ne + x)) mapped |= mask_bit(ne + h0[static_cast<std::size_t>(x)]);
            subset lhs = h.apply_pw(nny, mapped);
            subset rx = h.apply_pw(nx, m);
            subset rhs = 0;
            for (int x = 0; x < nx; ++x)
              if (mask_contains(rx, x)) rhs |= mask_bit(h0[static_cast<std::size_t>(x)]);
            rep.record_once("naturality", lhs == rhs, "");
            rep.cases_run += 1;
            if (ne + nx == 0) break;
          }
          return;
        }
        for (int y = 0; y < nny; ++y) {
          h0[static_cast<std::size_t>(i)] = y;
          maps(i + 1);
        }
      };
      maps(0);
    }
    // multiplication square, sampled: the middle carrier P(E+X) is too big
    // to quantify over at the outer level
    std::mt19937_64 rng(opt.seed);
    int inner_bits = ne + nx;
    for (int s = 0; s < opt.samples; ++s) {
      // an element of P(E + P(E+X)): exception bits plus a set of inner masks
      subset exc_part = random_subset(rng, ne);
      int inner_count = std::uniform_int_distribution<int>(0, 3)(rng);
      std::vector<subset> inners;
      for (int i = 0; i < inner_count; ++i) inners.push_back(random_subset(rng, inner_bits));
      // left: sigma_X . mu^{E(T)};  mu keeps exceptions and unions the inners
      subset mu_val = exc_part;
      for (subset im : inners) mu_val |= im;
      subset lhs = h.apply_pw(nx, mu_val);
      // right: mu^P . sigma_{P-level} with inner handlers applied first
      subset rhs = 0;
      for (subset im : inners) rhs |= h.apply_pw(nx, im);
      // exceptions at the outer level erase, as sigma at carrier P(X) drops them
      rep.record_once("mult_square", lhs == rhs, "");
      rep.cases_run += 1;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// catch composition (coproduct base): Kleisli-extend [f, g] after a handle

struct catch_data {
  // handle : T(X) -> T(X+E); values may be rerouted to exceptions
  std::vector<int> handle;  // size nf+nx, values in T(X+E) = F | X | E
  std::vector<int> f;       // X -> T(Y) = F | Y
  std::vector<int> g;       // E -> T(Y)
};

inline std::vector<int> catch_compose(const exception_setup& setup, int nx, int ny,
                                      const catch_data& d) {
  if (setup.base != exception_setup::base_kind::coproduct)
    throw shape_error("catch composition is built on the coproduct base");
  int nf = setup.nf(), ne = setup.ne();
  if (static_cast<int>(d.handle.size()) != nf + nx ||
      static_cast<int>(d.f.size()) != nx || static_cast<int>(d.g.size()) != ne)
    throw shape_error("catch composition: table shapes do not align");
  auto check_ty = [&](int v) {
    if (v < 0 || v >= nf + ny) throw shape_error("catch composition: value outside T(Y)");
  };
  for (int v : d.f) check_ty(v);
  for (int v : d.g) check_ty(v);
  std::vector<int> out;
  for (int t = 0; t < nf + nx; ++t) {
    int h = d.handle[static_cast<std::size_t>(t)];
    if (h < 0 || h >= nf + nx + ne) throw shape_error("handle lands outside T(X+E)");
    int res;
    if (h < nf) res = h;                                  // raise passes through
    else if (h < nf + nx) res = d.f[static_cast<std::size_t>(h - nf)];        // normal computation
    else res = d.g[static_cast<std::size_t>(h - nf - nx)];                    // handled exception
    out.push_back(res);
  }
  return out;
}

}  // namespace coalbase
