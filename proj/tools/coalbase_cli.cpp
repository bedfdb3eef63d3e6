// coalbase: exact-arithmetic checks for bases-as-coalgebras on finite
// structures.  Subcommands map 1:1 onto library operations; every failure
// carries a witness that replays through the library alone.
//
// Exit codes: 0 all checks pass; 1 a mathematical check failed; 2 input or
// format error; 3 guard refusal.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "coalbase/comonoid.hpp"
#include "coalbase/enumerate.hpp"
#include "coalbase/json_io.hpp"
#include "coalbase/kzorder.hpp"

namespace cb = coalbase;
using cb::json;

namespace {

constexpr const char* kVersion = "coalbase 0.1.0";

struct options {
  bool as_json = false;
  int samples = 100;
  unsigned long seed = 0;
  int guard = -1;  // -1: per-command default
};

struct run_output {
  cb::check_report checks;
  json data = json::object();
};

int exit_code(const run_output& out) { return out.checks.all_pass() ? 0 : 1; }

void emit(const std::string& command, const options& opt, const run_output& out, int code) {
  if (opt.as_json) {
    json j;
    j["tool"] = "coalbase";
    j["version"] = kVersion;
    j["command"] = command;
    j["seed"] = opt.seed;
    j["checks"] = json::array();
    for (const auto& item : out.checks.items)
      j["checks"].push_back({{"name", item.name}, {"pass", item.pass}, {"witness", item.witness}});
    j["data"] = out.data;
    j["exit"] = code;
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& item : out.checks.items) {
    std::cout << (item.pass ? "[PASS] " : "[FAIL] ") << item.name;
    if (!item.witness.empty()) std::cout << "  (" << item.witness << ")";
    std::cout << "\n";
  }
  for (const auto& [k, v] : out.data.items())
    std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

cb::lattice_algebra lattice_from_file(const json& j) {
  if (cb::kind_of(j) != "poset" || !cb::poset_as_lattice(j))
    throw cb::parse_error("expected a poset document with \"as\":\"lattice\"");
  cb::monad_kind mk = cb::monad_kind::powerset;
  if (j.contains("monad")) {
    if (j["monad"] == "downset") mk = cb::monad_kind::downset;
    else if (j["monad"] != "powerset") throw cb::parse_error("unknown monad tag");
  }
  try {
    return cb::make_lattice_algebra(cb::share(cb::parse_poset(j)), mk);
  } catch (const cb::shape_error& e) {
    throw cb::parse_error(e.what());
  }
}

void laws_into(const cb::basis_report& laws, cb::check_report& checks) {
  checks.record("law1_algebra_map", laws.law1.pass, laws.law1.witness);
  checks.record("law2_section", laws.law2.pass, laws.law2.witness);
  checks.record("law3_comultiplication", laws.law3.pass, laws.law3.witness);
}

run_output run_check_algebra(const json& j, const options& opt) {
  run_output out;
  cb::monad_law_options lo{opt.samples, opt.seed};
  std::string kind = cb::kind_of(j);
  if (kind == "poset") {
    auto alg = lattice_from_file(j);
    out.checks = cb::check_em_laws(alg, lo);
    out.data["carrier"] = alg.size();
  } else if (kind == "module") {
    out.checks = cb::check_em_laws(cb::parse_module(j), lo);
  } else if (kind == "convex") {
    out.checks = cb::check_em_laws(cb::parse_convex(j), lo);
  } else {
    throw cb::parse_error("check-algebra expects a lattice, module, or convex document");
  }
  return out;
}

run_output run_check_basis(const json& j, const options& opt) {
  run_output out;
  std::string kind = cb::kind_of(j);
  if (kind == "basis") {
    auto parsed = cb::parse_basis(j);
    auto res = cb::hamel_basis(parsed.alg, parsed.columns);
    if (!res.basis) {
      out.checks.record("invertible", false, res.witness.describe(cb::matrix{}));
      return out;
    }
    laws_into(cb::check_basis_laws(*res.basis, opt.samples, opt.seed), out.checks);
    out.data["basic_elements"] = res.basis->E.cols;
    out.checks.record("freeness", cb::freeness_iso(*res.basis).pass(), "");
  } else if (kind == "coalgebra") {
    auto parsed = cb::parse_coalgebra(j);
    auto tb = cb::make_table_basis(
        std::make_shared<const cb::lattice_algebra>(parsed.alg), parsed.rows);
    laws_into(cb::check_basis_laws(tb), out.checks);
    auto basics = cb::basic_elements(tb);
    json names = json::array();
    for (int x : basics) names.push_back(tb.alg->order->carrier->labels[x]);
    out.data["basic_elements"] = names;
    auto fr = cb::freeness_iso(tb);
    out.checks.record("freeness",
                      fr.st != cb::freeness_result::status::failed,
                      fr.detail);
  } else {
    throw cb::parse_error("check-basis expects a basis or coalgebra document");
  }
  return out;
}

run_output run_extract_basis(const json& j, const options& opt) {
  run_output out;
  std::string kind = cb::kind_of(j);
  if (kind == "basis") {
    auto parsed = cb::parse_basis(j);
    auto res = cb::hamel_basis(parsed.alg, parsed.columns);
    if (!res.basis) {
      out.checks.record("invertible", false, res.witness.describe(cb::matrix{}));
      return out;
    }
    json cols = json::array();
    for (const auto& v : cb::basic_elements(*res.basis)) {
      json col = json::array();
      for (const auto& s : v) col.push_back(s.str());
      cols.push_back(col);
    }
    out.data["basic_elements"] = cols;
    out.checks.record("laws", cb::check_basis_laws(*res.basis, opt.samples, opt.seed).all_laws(), "");
  } else if (kind == "coalgebra") {
    auto parsed = cb::parse_coalgebra(j);
    auto tb = cb::make_table_basis(
        std::make_shared<const cb::lattice_algebra>(parsed.alg), parsed.rows);
    json names = json::array();
    for (int x : cb::basic_elements(tb)) names.push_back(tb.alg->order->carrier->labels[x]);
    out.data["basic_elements"] = names;
    out.checks.record("laws", cb::check_basis_laws(tb).all_laws(), "");
  } else {
    throw cb::parse_error("extract-basis expects a basis or coalgebra document");
  }
  return out;
}

run_output run_atoms(const json& j, const options&) {
  run_output out;
  auto alg = lattice_from_file(j);
  auto res = cb::atoms_basis(alg);
  json atoms = json::array();
  for (int a : res.atoms) atoms.push_back(alg.order->carrier->labels[a]);
  out.data["atoms"] = atoms;
  if (!res.basis) {
    out.checks.record("atomic", false,
                      "witness element " + alg.order->carrier->labels[res.witness] +
                          " is not the join of the atoms below it");
    return out;
  }
  out.checks.record("atomic", true, "");
  laws_into(cb::check_basis_laws(*res.basis), out.checks);
  return out;
}

run_output run_extreme_points(const json& j, const options& opt) {
  run_output out;
  auto alg = cb::parse_convex(j);
  auto ext = cb::extreme_points(alg);
  json pts = json::array();
  for (int i : ext) {
    json p = json::array();
    for (const auto& s : alg.generators[static_cast<std::size_t>(i)]) p.push_back(s.str());
    pts.push_back(p);
  }
  out.data["extreme_points"] = pts;
  out.checks.record("computed", true, "");
  try {
    auto bb = cb::convex_basis(alg);
    laws_into(cb::check_basis_laws(bb, opt.samples, opt.seed), out.checks);
  } catch (const cb::shape_error& e) {
    out.data["barycentric"] = std::string("not a simplex: ") + e.what();
  }
  return out;
}

run_output run_way_below(const json& j, const options& opt) {
  run_output out;
  auto alg = lattice_from_file(j);
  int guard = opt.guard < 0 ? 15 : opt.guard;
  auto rel = cb::way_below(*alg.order, guard);
  // continuity_and_stability re-runs the oracle and extends its report
  out.checks = cb::continuity_and_stability(*alg.order, guard);
  json rows = json::object();
  for (int y = 0; y < alg.size(); ++y) {
    json xs = json::array();
    for (int x : cb::mask_elements(rel.below[static_cast<std::size_t>(y)]))
      xs.push_back(alg.order->carrier->labels[x]);
    rows[alg.order->carrier->labels[y]] = xs;
  }
  out.data["way_below"] = rows;
  return out;
}

run_output run_kz_check(const json& j, const options& opt) {
  run_output out;
  auto p = cb::parse_poset(j);
  auto rep = cb::kz_check(p, opt.guard < 0 ? 12 : opt.guard);
  out.checks = rep.checks;
  out.data["strict_at"] = rep.strict_witnesses;
  return out;
}

run_output run_adjoint_check(const json& j, const options& opt) {
  run_output out;
  auto p = cb::parse_poset(j);
  int guard = opt.guard < 0 ? 3 : opt.guard;
  if (p.size() > guard)
    throw cb::guard_error("adjoint check refused: |X| = " + std::to_string(p.size()) +
                          " exceeds guard " + std::to_string(guard));
  auto t = cb::dwn_tower::of(cb::share(p));
  long candidates = 0, algebras = 0;
  bool agree = true;
  std::string witness;
  for (const auto& a : cb::all_monotone_maps(*t.l1.order, p)) {
    auto v = cb::algebra_iff_reflection(t, a);
    ++candidates;
    if (v.em_laws) ++algebras;
    if (!v.agree()) {
      agree = false;
      witness = v.em_laws ? v.reflection_witness : v.em_witness;
    }
  }
  out.checks.record("em_equals_reflection", agree, witness);
  out.data["monotone_candidates"] = candidates;
  out.data["algebras_found"] = algebras;
  return out;
}

run_output run_adjoint_chain(const json& j, const options& opt) {
  run_output out;
  auto p = cb::parse_poset(j);
  auto rep = cb::adjoint_chain_verify(p, opt.guard < 0 ? 3 : opt.guard);
  out.checks = rep.checks;
  out.data["dwn_size"] = rep.dwn_size;
  out.data["dwn2_size"] = rep.dwn2_size;
  out.data["algebra_part"] = rep.algebra_part_applicable ? "verified" : rep.note;
  return out;
}

run_output run_compact_freeness(const json& j, const options& opt) {
  run_output out;
  auto p = cb::parse_poset(j);
  auto rep = cb::compact_freeness(p, opt.guard < 0 ? 3 : opt.guard);
  out.checks = rep.checks;
  out.data["compact_elements"] = rep.compact_labels;
  if (!rep.b_total) out.data["b_note"] = rep.note;
  return out;
}

run_output run_comonoid(const json& j, const options& opt) {
  run_output out;
  std::string kind = cb::kind_of(j);
  if (kind == "basis") {
    auto parsed = cb::parse_basis(j);
    auto res = cb::hamel_basis(parsed.alg, parsed.columns);
    if (!res.basis) {
      out.checks.record("invertible", false, res.witness.describe(cb::matrix{}));
      return out;
    }
    auto c = cb::derive_comonoid(*res.basis);
    out.checks = cb::check_comonoid_laws(c, opt.samples, opt.seed);
    json u = json::array();
    for (const auto& s : c.counit) u.push_back(s.str());
    out.data["counit_row"] = u;
  } else if (kind == "coalgebra") {
    auto parsed = cb::parse_coalgebra(j);
    auto tb = cb::make_table_basis(
        std::make_shared<const cb::lattice_algebra>(parsed.alg), parsed.rows);
    out.checks = cb::check_comonoid_laws(cb::derive_comonoid(tb));
    out.data["shape"] = "cartesian (diagonal copy, unique delete)";
  } else {
    throw cb::parse_error("comonoid expects a basis or coalgebra document");
  }
  return out;
}

run_output run_diagonalise(const json& jb, const json& je, const options& opt) {
  run_output out;
  auto parsed = cb::parse_basis(jb);
  auto res = cb::hamel_basis(parsed.alg, parsed.columns);
  if (!res.basis) {
    out.checks.record("invertible", false, res.witness.describe(cb::matrix{}));
    return out;
  }
  cb::matrix f = cb::parse_endo(je);
  if (f.dom != parsed.alg.dom)
    throw cb::parse_error("endomap and basis scalar domains differ");
  auto c = cb::derive_comonoid(*res.basis);
  auto d = cb::diagonalise(f, c, opt.samples, opt.seed);
  if (!d.diagonal) {
    out.checks.record("diagonal", false,
                      "off-diagonal entry at (" + std::to_string(d.witness.first) + "," +
                          std::to_string(d.witness.second) + "): " +
                          d.in_basis.at(d.witness.first, d.witness.second).str());
    return out;
  }
  out.checks.record("diagonal", true, "");
  out.checks.merge(d.certificate);
  json v = json::array();
  for (const auto& s : d.eigen_row) v.push_back(s.str());
  out.data["eigenvalue_map"] = v;
  json eig = json::array();
  for (int i = 0; i < d.in_basis.rows; ++i) eig.push_back(d.in_basis.at(i, i).str());
  out.data["eigenvalues"] = eig;
  return out;
}

run_output run_tensor_basis(const json& j1, const json& j2, const options& opt) {
  run_output out;
  auto p1 = cb::parse_basis(j1);
  auto p2 = cb::parse_basis(j2);
  auto r1 = cb::hamel_basis(p1.alg, p1.columns);
  auto r2 = cb::hamel_basis(p2.alg, p2.columns);
  if (!r1.basis || !r2.basis) {
    out.checks.record("invertible", false, "an input basis is singular");
    return out;
  }
  auto t = cb::tensor_basis(*r1.basis, *r2.basis);
  laws_into(cb::check_basis_laws(t, opt.samples, opt.seed), out.checks);
  out.data["dim"] = t.alg.dim;
  json cols = json::array();
  for (int c = 0; c < t.E.cols; ++c) {
    json col = json::array();
    for (int r = 0; r < t.E.rows; ++r) col.push_back(t.E.at(r, c).str());
    cols.push_back(col);
  }
  out.data["E"] = cols;
  return out;
}

run_output run_pauli_demo(const options&) {
  run_output out;
  auto p = cb::pauli_suite();
  out.checks = p.checks;
  out.data["v_x(1,1)"] = "1";
  out.data["v_x(1,-1)"] = "-1";
  out.data["u_x"] = "z";
  out.data["v_x"] = "w";
  out.data["v_y"] = "iz";
  out.data["v_z"] = "z-w";
  return out;
}

run_output run_multirel_diag(const json& j, const options&) {
  run_output out;
  auto r = cb::parse_endo(j);
  auto res = cb::multirel_diag_check(r);
  if (!res.diagonal) {
    out.checks.record("diagonal", false,
                      "off-diagonal entry at (" + std::to_string(res.witness.first) + "," +
                          std::to_string(res.witness.second) + "): " +
                          r.at(res.witness.first, res.witness.second).str());
  } else {
    out.checks.record("diagonal", true, "");
    json eig = json::array();
    for (const auto& s : res.eigenvalues) eig.push_back(s.str());
    out.data["eigenvalue_map"] = eig;
  }
  out.checks.record("dagger_involutive", res.dagger_involutive, "");
  return out;
}

run_output run_exception_roundtrip(const json& j, const options& opt) {
  run_output out;
  auto parsed = cb::parse_exceptions(j);
  cb::roundtrip_options ro;
  ro.samples = opt.samples;
  ro.seed = opt.seed;
  if (opt.guard >= 0) ro.max_carrier = opt.guard;
  out.checks = cb::roundtrip_check(parsed.setup, ro);
  if (parsed.has_throw &&
      parsed.setup.base == cb::exception_setup::base_kind::coproduct) {
    auto h = cb::throw_to_handler(parsed.setup, parsed.given);
    out.checks.record("given_throw_roundtrip",
                      cb::handler_to_throw(parsed.setup, h) == parsed.given, "");
    json t = json::object();
    for (int e = 0; e < parsed.setup.ne(); ++e)
      t[parsed.setup.exceptions->labels[e]] =
          parsed.setup.summand->labels[parsed.given.table[static_cast<std::size_t>(e)]];
    out.data["throw"] = t;
  }
  return out;
}

run_output run_search_basis(const json& j, const options& opt) {
  run_output out;
  auto alg = lattice_from_file(j);
  auto found = cb::exhaustive_basis_search(alg, opt.guard < 0 ? 5 : opt.guard);
  out.data["survivors"] = found.size();
  out.checks.record("at_most_one", found.size() <= 1,
                    "uniqueness would be violated");
  if (found.size() == 1) {
    json map = json::object();
    for (int x = 0; x < alg.size(); ++x) {
      json row = json::array();
      for (int y : cb::mask_elements(found[0].b[static_cast<std::size_t>(x)]))
        row.push_back(alg.order->carrier->labels[y]);
      map[alg.order->carrier->labels[x]] = row;
    }
    out.data["basis"] = map;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for bases-as-coalgebras on finite structures"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  options opt;
  app.add_flag("--json", opt.as_json, "machine-readable output");
  app.add_option("--samples", opt.samples, "sample count for randomized checks")
      ->default_val(100);
  app.add_option("--seed", opt.seed, "RNG seed (fixed seed => identical output)")
      ->default_val(0);
  app.add_option("--guard", opt.guard, "override the per-command size guard");

  std::string file1, file2;
  auto add_cmd = [&](const char* name, const char* desc, int files) {
    auto* sub = app.add_subcommand(name, desc);
    if (files >= 1) sub->add_option("input", file1, "input file")->required();
    if (files >= 2) sub->add_option("second", file2, "second input file")->required();
    return sub;
  };

  auto* c_alg = add_cmd("check-algebra", "verify the Eilenberg-Moore laws", 1);
  auto* c_basis = add_cmd("check-basis", "verify the three basis laws", 1);
  auto* c_extract = add_cmd("extract-basis", "compute the basic elements", 1);
  auto* c_atoms = add_cmd("atoms", "atoms basis of a lattice", 1);
  auto* c_ext = add_cmd("extreme-points", "extreme points of a convex generator set", 1);
  auto* c_wb = add_cmd("way-below", "brute-force way-below relation", 1);
  auto* c_kz = add_cmd("kz-check", "the inequality Dwn(eta) <= eta", 1);
  auto* c_adj = add_cmd("adjoint-check", "EM laws vs reflection, all monotone candidates", 1);
  auto* c_chain = add_cmd("adjoint-chain", "the adjoint chain on Dwn(A)", 1);
  auto* c_cf = add_cmd("compact-freeness", "compact elements and Dwn(X_c) ~ Dwn(A)", 1);
  auto* c_com = add_cmd("comonoid", "derive and check the copy/delete comonoid", 1);
  auto* c_diag = add_cmd("diagonalise", "diagonalise an endomap in a basis", 2);
  auto* c_tens = add_cmd("tensor-basis", "tensor product of two module bases", 2);
  auto* c_pauli = app.add_subcommand("pauli-demo", "the Pauli spin suite over Q(i)");
  auto* c_mrel = add_cmd("multirel-diag", "diagonality and dagger of a multirelation", 1);
  auto* c_exc = add_cmd("exception-roundtrip", "throw/handle bijection checks", 1);
  auto* c_search = add_cmd("search-basis", "exhaustive coalgebra search on a lattice", 1);

  CLI11_PARSE(app, argc, argv);

  try {
    run_output out;
    std::string command;
    auto with_file = [&](auto fn) { return fn(cb::load_json_file(file1), opt); };
    if (c_alg->parsed()) { command = "check-algebra"; out = with_file(run_check_algebra); }
    else if (c_basis->parsed()) { command = "check-basis"; out = with_file(run_check_basis); }
    else if (c_extract->parsed()) { command = "extract-basis"; out = with_file(run_extract_basis); }
    else if (c_atoms->parsed()) { command = "atoms"; out = with_file(run_atoms); }
    else if (c_ext->parsed()) { command = "extreme-points"; out = with_file(run_extreme_points); }
    else if (c_wb->parsed()) { command = "way-below"; out = with_file(run_way_below); }
    else if (c_kz->parsed()) { command = "kz-check"; out = with_file(run_kz_check); }
    else if (c_adj->parsed()) { command = "adjoint-check"; out = with_file(run_adjoint_check); }
    else if (c_chain->parsed()) { command = "adjoint-chain"; out = with_file(run_adjoint_chain); }
    else if (c_cf->parsed()) { command = "compact-freeness"; out = with_file(run_compact_freeness); }
    else if (c_com->parsed()) { command = "comonoid"; out = with_file(run_comonoid); }
    else if (c_diag->parsed()) {
      command = "diagonalise";
      out = run_diagonalise(cb::load_json_file(file1), cb::load_json_file(file2), opt);
    } else if (c_tens->parsed()) {
      command = "tensor-basis";
      out = run_tensor_basis(cb::load_json_file(file1), cb::load_json_file(file2), opt);
    } else if (c_pauli->parsed()) {
      command = "pauli-demo";
      out = run_pauli_demo(opt);
    } else if (c_mrel->parsed()) { command = "multirel-diag"; out = with_file(run_multirel_diag); }
    else if (c_exc->parsed()) { command = "exception-roundtrip"; out = with_file(run_exception_roundtrip); }
    else if (c_search->parsed()) { command = "search-basis"; out = with_file(run_search_basis); }

    int code = exit_code(out);
    emit(command, opt, out, code);
    return code;
  } catch (const cb::guard_error& e) {
    std::cerr << "guard refusal: " << e.what() << "\n";
    return 3;
  } catch (const cb::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cb::shape_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
