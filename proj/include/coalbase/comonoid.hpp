#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coalbase/bases.hpp"
#include "coalbase/linalg.hpp"
#include "coalbase/report.hpp"

namespace coalbase {

// Copy/delete structure derived from a basis.  For a module basis (E, C) the
// counit sums coordinates and the comultiplication sends x to
// sum_j c_j(x) (e_j (x) e_j), stored as matrices over the standard pair
// basis of S^(n^2).  For lattice/frame bases the monoidal structure is read
// cartesianly, so d is the actual diagonal and u the unique map.

struct module_comonoid {
  matrix_basis basis;
  qvec counit;     // u as a row vector, u = 1^T C
  matrix comult;   // d as an (n^2 x n) matrix, columns d(std e_i)

  int dim() const { return basis.E.rows; }
  scalar_domain dom() const { return basis.alg.dom; }

  scalar apply_counit(const qvec& x) const { return dot(counit, x); }
  qvec apply_comult(const qvec& x) const { return mat_vec(comult, x); }
};

struct cartesian_comonoid {
  std::shared_ptr<const lattice_algebra> alg;
};

using comonoid_data = std::variant<module_comonoid, cartesian_comonoid>;

inline module_comonoid derive_comonoid(const matrix_basis& mb) {
  int n = mb.E.rows;
  if (n != mb.E.cols) throw shape_error("comonoid derivation needs a square basis");
  module_comonoid c;
  c.basis = mb;
  c.counit.assign(static_cast<std::size_t>(n), scalar::zero(mb.alg.dom));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      c.counit[static_cast<std::size_t>(i)] = add(c.counit[static_cast<std::size_t>(i)], mb.C.at(j, i));
  c.comult = matrix::zero(mb.alg.dom, n * n, n);
  for (int j = 0; j < n; ++j) {
    qvec ej = mb.E.column(j);
    qvec pair = kron_vec(ej, ej);
    for (int col = 0; col < n; ++col) {
      const scalar& cj = mb.C.at(j, col);
      if (cj.is_zero()) continue;
      for (int r = 0; r < n * n; ++r)
        c.comult.at(r, col) = add(c.comult.at(r, col), mul(cj, pair[static_cast<std::size_t>(r)]));
    }
  }
  return c;
}

inline cartesian_comonoid derive_comonoid(const table_basis& tb) { return {tb.alg}; }

inline comonoid_data derive_comonoid(const basis_coalgebra& b) {
  if (const auto* mb = std::get_if<matrix_basis>(&b)) return derive_comonoid(*mb);
  if (const auto* tb = std::get_if<table_basis>(&b)) return derive_comonoid(*tb);
  throw shape_error("comonoid derivation is provided for module and lattice bases");
}

namespace detail {

inline matrix row_matrix(const qvec& row, scalar_domain dom) {
  matrix m = matrix::zero(dom, 1, static_cast<int>(row.size()));
  for (int j = 0; j < m.cols; ++j) m.at(0, j) = row[static_cast<std::size_t>(j)];
  return m;
}

inline matrix swap_matrix(scalar_domain dom, int n) {
  matrix s = matrix::zero(dom, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.at(j * n + i, i * n + j) = scalar::one(dom);
  return s;
}

}  // namespace detail

inline check_report check_comonoid_laws(const module_comonoid& c, int samples = 25,
                                        unsigned long seed = 0) {
  check_report rep;
  int n = c.dim();
  scalar_domain dom = c.dom();
  matrix id_n = matrix::identity(dom, n);
  matrix u_row = detail::row_matrix(c.counit, dom);

  // counit: (u (x) id).d = id and (id (x) u).d = id
  matrix left = mat_mul(kron(u_row, id_n), c.comult);
  rep.record("counit_left", left == id_n, "");
  matrix right = mat_mul(kron(id_n, u_row), c.comult);
  rep.record("counit_right", right == id_n, "");

  // coassociativity: (d (x) id).d = (id (x) d).d
  matrix lhs = mat_mul(kron(c.comult, id_n), c.comult);
  matrix rhs = mat_mul(kron(id_n, c.comult), c.comult);
  rep.record("coassociativity", lhs == rhs, "");

  // commutativity: swap . d = d
  rep.record("commutativity", mat_mul(detail::swap_matrix(dom, n), c.comult) == c.comult, "");

  // the matrix identities encode linearity; replay pointwise on samples
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    qvec x;
    for (int i = 0; i < n; ++i) x.push_back(random_scalar(rng, dom));
    qvec d = c.apply_comult(x);
    qvec back(static_cast<std::size_t>(n), scalar::zero(dom));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        back[static_cast<std::size_t>(k)] =
            add(back[static_cast<std::size_t>(k)],
                mul(c.counit[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i * n + k)]));
    rep.record_once("counit_pointwise", back == x, "sample " + std::to_string(s));
    rep.cases_run += 1;
  }
  return rep;
}

inline check_report check_comonoid_laws(const cartesian_comonoid& c, int = 0,
                                        unsigned long = 0) {
  check_report rep;
  const auto& l = *c.alg->order;
  int n = l.size();
  auto d = [&](int x) { return std::pair<int, int>{x, x}; };
  for (int x = 0; x < n; ++x) {
    auto [a, b] = d(x);
    rep.record_once("counit_left", b == x, l.carrier->labels[x]);   // lambda(*, b)
    rep.record_once("counit_right", a == x, l.carrier->labels[x]);  // rho(a, *)
    // (d x id).d = ((x,x),x) reassociates to (x,(x,x)) = (id x d).d
    auto lhs = std::make_pair(d(a), b);
    auto rhs = std::make_pair(a, d(b));
    rep.record_once("coassociativity",
                    lhs.first.first == rhs.first && lhs.first.second == rhs.second.first &&
                        lhs.second == rhs.second.second,
                    l.carrier->labels[x]);
    rep.record_once("commutativity", std::pair<int, int>{b, a} == d(x), l.carrier->labels[x]);
    rep.cases_run += 1;
  }
  return rep;
}

inline check_report check_comonoid_laws(const comonoid_data& c, int samples = 25,
                                        unsigned long seed = 0) {
  return std::visit([&](const auto& cc) { return check_comonoid_laws(cc, samples, seed); }, c);
}

// ---------------------------------------------------------------------------
// diagonalisation of endomaps

struct diagonalise_result {
  bool diagonal = false;
  matrix in_basis;             // C F E
  qvec eigen_row;              // v = u . f, a row vector
  std::pair<int, int> witness{-1, -1};  // first off-diagonal nonzero
  check_report certificate;    // the composite replay
};

inline diagonalise_result diagonalise(const matrix& f, const module_comonoid& c,
                                      int samples = 25, unsigned long seed = 0) {
  int n = c.dim();
  if (f.rows != n || f.cols != n) throw shape_error("endomap dimension mismatch");
  diagonalise_result res;
  res.in_basis = mat_mul(mat_mul(c.basis.C, f), c.basis.E);
  res.diagonal = true;
  for (int i = 0; i < n && res.diagonal; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !res.in_basis.at(i, j).is_zero()) {
        res.diagonal = false;
        res.witness = {i, j};
        break;
      }
  res.eigen_row = row_vec(c.counit, f);  // v = u . f
  if (!res.diagonal) return res;

  // certify: lambda . (v (x) id) . d must reproduce f exactly
  matrix v_row = detail::row_matrix(res.eigen_row, c.dom());
  matrix composite = mat_mul(kron(v_row, matrix::identity(c.dom(), n)), c.comult);
  res.certificate.record("composite_equals_f", composite == f, "");
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    qvec x;
    for (int i = 0; i < n; ++i) x.push_back(random_scalar(rng, c.dom()));
    res.certificate.record_once("composite_pointwise",
                                mat_vec(composite, x) == mat_vec(f, x), "");
    res.certificate.cases_run += 1;
  }
  if (!res.certificate.all_pass())
    throw arith_error("diagonal matrix criterion and composite replay disagree");
  return res;
}

// is d(x) = x (x) x?
inline bool copy_check(const module_comonoid& c, const qvec& x) {
  return c.apply_comult(x) == kron_vec(x, x);
}

inline bool copy_check(const cartesian_comonoid&, int /*element*/) {
  return true;  // the diagonal copies every element
}

// ---------------------------------------------------------------------------
// tensor products of module bases

inline matrix_basis tensor_basis(const matrix_basis& b1, const matrix_basis& b2) {
  if (b1.alg.dom != b2.alg.dom) throw domain_error("tensor basis: domain mismatch");
  matrix_basis out;
  out.alg = module_algebra{b1.alg.dom, b1.E.rows * b2.E.rows};
  out.E = kron(b1.E, b2.E);
  out.C = kron(b1.C, b2.C);
  return out;
}

// ---------------------------------------------------------------------------
// bifinite multirelations (square matrices over an involutive semiring)

struct multirel_result {
  bool diagonal = false;
  std::pair<int, int> witness{-1, -1};
  qvec eigenvalues;  // the diagonal, when diagonal
  matrix dagger;
  bool dagger_involutive = false;
};

inline multirel_result multirel_diag_check(const matrix& r) {
  if (r.rows != r.cols) throw shape_error("multirelation must be square");
  multirel_result res;
  res.diagonal = true;
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < r.cols; ++j)
      if (i != j && !r.at(i, j).is_zero() && res.diagonal) {
        res.diagonal = false;
        res.witness = {i, j};
      }
  if (res.diagonal)
    for (int i = 0; i < r.rows; ++i) res.eigenvalues.push_back(r.at(i, i));
  // dagger: swap arguments and conjugate entries (when the domain has one)
  res.dagger = matrix::zero(r.dom, r.cols, r.rows);
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < r.cols; ++j) {
      const scalar& v = r.at(i, j);
      res.dagger.at(j, i) = domain_has_involution(r.dom) ? conj(v) : v;
    }
  matrix twice = matrix::zero(r.dom, r.rows, r.cols);
  for (int i = 0; i < res.dagger.rows; ++i)
    for (int j = 0; j < res.dagger.cols; ++j) {
      const scalar& v = res.dagger.at(i, j);
      twice.at(j, i) = domain_has_involution(r.dom) ? conj(v) : v;
    }
  res.dagger_involutive = twice == r;
  return res;
}

// ---------------------------------------------------------------------------
// the Pauli spin suite over Q(i)

struct pauli_data {
  module_algebra alg{scalar_domain::gaussian_rational, 2};
  matrix_basis bx, by, bz;
  module_comonoid cx, cy, cz;
  matrix sx, sy, sz;
  check_report checks;
};

inline pauli_data pauli_suite() {
  pauli_data p;
  auto g = [](int rn, int rd, int in_, int id_) {
    return scalar::make(scalar_domain::gaussian_rational, mpq_class(rn, rd), mpq_class(in_, id_));
  };
  scalar one = g(1, 1, 0, 1), zero = g(0, 1, 0, 1), i_ = g(0, 1, 1, 1),
         mi = g(0, 1, -1, 1), mone = g(-1, 1, 0, 1);

  // sigma_x(z,w) = (w,z); sigma_y(z,w) = (-iw, iz); sigma_z(z,w) = (z,-w)
  p.sx = matrix::from_columns(p.alg.dom, {{zero, one}, {one, zero}});
  p.sy = matrix::from_columns(p.alg.dom, {{zero, i_}, {mi, zero}});
  p.sz = matrix::from_columns(p.alg.dom, {{one, zero}, {zero, mone}});

  // eigenvector bases: (1,1),(1,-1) for x; (-i,1),(i,1) for y; standard for z
  auto hx = hamel_basis(p.alg, {{one, one}, {one, mone}});
  auto hy = hamel_basis(p.alg, {{mi, one}, {i_, one}});
  auto hz = hamel_basis(p.alg, {{one, zero}, {zero, one}});
  p.checks.record("bases_invertible", hx.basis && hy.basis && hz.basis, "");
  if (!(hx.basis && hy.basis && hz.basis)) return p;
  p.bx = *hx.basis;
  p.by = *hy.basis;
  p.bz = *hz.basis;

  for (auto [name, b] : {std::pair<const char*, const matrix_basis*>{"bx", &p.bx},
                         {"by", &p.by},
                         {"bz", &p.bz}}) {
    auto laws = check_basis_laws(*b);
    p.checks.record(std::string(name) + "_laws", laws.all_laws(),
                    laws.all_laws() ? "" : "a basis law failed");
  }

  p.cx = derive_comonoid(p.bx);
  p.cy = derive_comonoid(p.by);
  p.cz = derive_comonoid(p.bz);
  for (auto [name, c] : {std::pair<const char*, const module_comonoid*>{"cx", &p.cx},
                         {"cy", &p.cy},
                         {"cz", &p.cz}})
    p.checks.record(std::string(name) + "_comonoid", check_comonoid_laws(*c).all_pass(), "");

  // u_x(z,w) = z, symbolically: the counit row is (1, 0)
  p.checks.record("ux_is_first_coordinate", p.cx.counit == qvec{one, zero}, "");

  auto dx = diagonalise(p.sx, p.cx);
  auto dy = diagonalise(p.sy, p.cy);
  auto dz = diagonalise(p.sz, p.cz);
  p.checks.record("sigma_x_diagonal_in_bx", dx.diagonal && dx.certificate.all_pass(), "");
  p.checks.record("sigma_y_diagonal_in_by", dy.diagonal && dy.certificate.all_pass(), "");
  p.checks.record("sigma_z_diagonal_in_bz", dz.diagonal && dz.certificate.all_pass(), "");

  // eigenvalue maps, symbolically: v_x = (0,1) ~ w; v_y = (i,0) ~ iz;
  // v_z = (1,-1) ~ z-w
  p.checks.record("vx_row", dx.eigen_row == qvec{zero, one}, "");
  p.checks.record("vy_row", dy.eigen_row == qvec{i_, zero}, "");
  p.checks.record("vz_row", dz.eigen_row == qvec{one, mone}, "");

  // eigenvalues on the basic vectors
  auto apply_row = [](const qvec& row, const qvec& x) { return dot(row, x); };
  p.checks.record("vx_on_basics",
                  apply_row(dx.eigen_row, {one, one}) == one &&
                      apply_row(dx.eigen_row, {one, mone}) == mone,
                  "");
  p.checks.record("vy_on_basics",
                  apply_row(dy.eigen_row, {mi, one}) == one &&
                      apply_row(dy.eigen_row, {i_, one}) == mone,
                  "");
  p.checks.record("vz_on_basics",
                  apply_row(dz.eigen_row, {one, zero}) == one &&
                      apply_row(dz.eigen_row, {zero, one}) == mone,
                  "");

  // cross pairs are not diagonal
  p.checks.record("cross_pairs_not_diagonal",
                  !diagonalise(p.sy, p.cx).diagonal && !diagonalise(p.sz, p.cx).diagonal &&
                      !diagonalise(p.sx, p.cy).diagonal && !diagonalise(p.sz, p.cy).diagonal &&
                      !diagonalise(p.sx, p.cz).diagonal && !diagonalise(p.sy, p.cz).diagonal,
                  "");

  // the composite reproduces each sigma on a 5x5 grid of test vectors
  std::vector<scalar> grid = {zero, one, mone, i_, g(1, 2, -2, 3)};
  bool grid_ok = true;
  for (const auto& z : grid)
    for (const auto& w : grid) {
      qvec v{z, w};
      auto run = [&](const matrix& sigma, const module_comonoid& c) {
        qvec d = c.apply_comult(v);
        qvec vrow = row_vec(c.counit, sigma);  // v = u . sigma
        qvec out(2, scalar::zero(p.alg.dom));
        for (int a = 0; a < 2; ++a)
          for (int k = 0; k < 2; ++k)
            out[static_cast<std::size_t>(k)] =
                add(out[static_cast<std::size_t>(k)],
                    mul(vrow[static_cast<std::size_t>(a)], d[static_cast<std::size_t>(a * 2 + k)]));
        return out;
      };
      grid_ok = grid_ok && run(p.sx, p.cx) == mat_vec(p.sx, v);
      grid_ok = grid_ok && run(p.sy, p.cy) == mat_vec(p.sy, v);
      grid_ok = grid_ok && run(p.sz, p.cz) == mat_vec(p.sz, v);
    }
  p.checks.record("composite_on_grid", grid_ok, "");

  // base vectors are copyable; (1,0) under bx is not
  bool copy_ok = true;
  for (const auto* b : {&p.bx, &p.by, &p.bz}) {
    auto c = derive_comonoid(*b);
    for (int j = 0; j < 2; ++j) copy_ok = copy_ok && copy_check(c, b->E.column(j));
  }
  p.checks.record("basics_copyable", copy_ok, "");
  p.checks.record("non_basic_not_copyable", !copy_check(p.cx, qvec{one, zero}), "");
  return p;
}

}  // namespace coalbase
