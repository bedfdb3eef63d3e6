#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coalbase/algebras.hpp"
#include "coalbase/bases.hpp"
#include "coalbase/exceptions.hpp"
#include "coalbase/linalg.hpp"

// Parsers for the documented input documents:
//   {"kind":"poset","elements":[...],"leq":[[a,b],...]}        (+ "as":"lattice")
//   {"kind":"module","scalars":"rational|gaussian_rational","dim":n}
//   {"kind":"basis","of":<module>,"E":[[...],...]}
//   {"kind":"coalgebra","of":<lattice>,"map":{"x":["y","z"],...}}
//   {"kind":"endo","rows":[[...],...],"scalars":...}
//   {"kind":"convex","points":[["0","0"],...]}
//   {"kind":"exceptions","base":{"coproduct":[...]}|"powerset","E":[...],
//    "throw":{"e0":"f0"}}

namespace coalbase {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void require_kind(const json& j, const std::string& kind) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != kind)
    throw parse_error("expected a document of kind '" + kind + "'");
}

inline std::string kind_of(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("input document has no 'kind' field");
  return j["kind"].get<std::string>();
}

inline fin_poset parse_poset(const json& j) {
  require_kind(j, "poset");
  if (!j.contains("elements") || !j["elements"].is_array())
    throw parse_error("poset needs an 'elements' array");
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw parse_error("poset elements must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("leq")) {
    if (!j["leq"].is_array()) throw parse_error("'leq' must be an array of pairs");
    for (const auto& p : j["leq"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
        throw parse_error("'leq' entries must be [a,b] label pairs");
      pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
  }
  try {
    return poset_from_pairs(elements, pairs);
  } catch (const shape_error& e) {
    throw parse_error(e.what());
  }
}

inline bool poset_as_lattice(const json& j) {
  return j.contains("as") && j["as"] == "lattice";
}

inline scalar_domain parse_domain(const json& j, const char* field = "scalars") {
  if (!j.contains(field) || !j[field].is_string())
    throw parse_error(std::string("missing '") + field + "' field");
  auto d = domain_from_name(j[field].get<std::string>());
  if (!d) throw parse_error("unknown scalar domain '" + j[field].get<std::string>() + "'");
  return *d;
}

inline module_algebra parse_module(const json& j) {
  require_kind(j, "module");
  scalar_domain dom = parse_domain(j);
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw parse_error("module needs an integer 'dim'");
  int dim = j["dim"].get<int>();
  if (dim < 0 || dim > 16) throw parse_error("module dimension out of range [0,16]");
  return module_algebra{dom, dim};
}

inline qvec parse_vector(const json& j, scalar_domain dom) {
  if (!j.is_array()) throw parse_error("vector entries must be arrays of scalar strings");
  qvec v;
  for (const auto& s : j) {
    if (!s.is_string()) throw parse_error("scalar entries are strings, e.g. \"-1/2+3/4i\"");
    v.push_back(scalar::parse(s.get<std::string>(), dom));
  }
  return v;
}

struct parsed_basis {
  module_algebra alg;
  std::vector<qvec> columns;
};

inline parsed_basis parse_basis(const json& j) {
  require_kind(j, "basis");
  if (!j.contains("of")) throw parse_error("basis needs an 'of' module");
  parsed_basis out{parse_module(j["of"]), {}};
  if (!j.contains("E") || !j["E"].is_array())
    throw parse_error("basis needs an 'E' array of column vectors");
  for (const auto& col : j["E"]) {
    qvec v = parse_vector(col, out.alg.dom);
    if (static_cast<int>(v.size()) != out.alg.dim)
      throw parse_error("basis column has the wrong dimension");
    out.columns.push_back(std::move(v));
  }
  return out;
}

inline matrix parse_endo(const json& j) {
  require_kind(j, "endo");
  scalar_domain dom =
      j.contains("scalars") ? parse_domain(j) : scalar_domain::rational;
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
    throw parse_error("endo needs a nonempty 'rows' array");
  int n = static_cast<int>(j["rows"].size());
  matrix m = matrix::zero(dom, n, n);
  for (int i = 0; i < n; ++i) {
    qvec row = parse_vector(j["rows"][static_cast<std::size_t>(i)], dom);
    if (static_cast<int>(row.size()) != n)
      throw parse_error("endo matrix must be square");
    for (int k = 0; k < n; ++k) m.at(i, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

inline convex_algebra parse_convex(const json& j) {
  require_kind(j, "convex");
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
    throw parse_error("convex needs a nonempty 'points' array");
  std::vector<qvec> pts;
  for (const auto& p : j["points"]) pts.push_back(parse_vector(p, scalar_domain::rational));
  int dim = static_cast<int>(pts[0].size());
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != dim) throw parse_error("points have mixed dimensions");
  try {
    return make_convex_algebra(dim, std::move(pts));
  } catch (const shape_error& e) {
    throw parse_error(e.what());
  }
}

struct parsed_coalgebra {
  lattice_algebra alg;
  std::vector<subset> rows;
};

inline parsed_coalgebra parse_coalgebra(const json& j) {
  require_kind(j, "coalgebra");
  if (!j.contains("of")) throw parse_error("coalgebra needs an 'of' lattice");
  fin_poset p = parse_poset(j["of"]);
  monad_kind mk = monad_kind::powerset;
  if (j["of"].contains("monad")) {
    if (j["of"]["monad"] == "downset") mk = monad_kind::downset;
    else if (j["of"]["monad"] != "powerset") throw parse_error("unknown monad tag");
  }
  lattice_algebra alg;
  try {
    alg = make_lattice_algebra(share(p), mk);
  } catch (const shape_error& e) {
    throw parse_error(e.what());
  }
  if (!j.contains("map") || !j["map"].is_object())
    throw parse_error("coalgebra needs a 'map' object");
  std::vector<subset> rows(static_cast<std::size_t>(alg.size()), 0);
  std::vector<bool> seen(static_cast<std::size_t>(alg.size()), false);
  for (const auto& [key, val] : j["map"].items()) {
    int x = alg.order->carrier->index_of(key);
    if (!val.is_array()) throw parse_error("coalgebra rows are arrays of labels");
    subset m = 0;
    for (const auto& lbl : val) {
      if (!lbl.is_string()) throw parse_error("coalgebra row entries are labels");
      m |= mask_bit(alg.order->carrier->index_of(lbl.get<std::string>()));
    }
    rows[static_cast<std::size_t>(x)] = m;
    seen[static_cast<std::size_t>(x)] = true;
  }
  for (int x = 0; x < alg.size(); ++x)
    if (!seen[static_cast<std::size_t>(x)])
      throw parse_error("coalgebra map is missing element '" +
                        alg.order->carrier->labels[x] + "'");
  return {std::move(alg), std::move(rows)};
}

struct parsed_exceptions {
  exception_setup setup;
  throw_map given;
  bool has_throw = false;
};

inline parsed_exceptions parse_exceptions(const json& j) {
  require_kind(j, "exceptions");
  if (!j.contains("E") || !j["E"].is_array()) throw parse_error("exceptions need an 'E' array");
  std::vector<std::string> es;
  for (const auto& e : j["E"]) es.push_back(e.get<std::string>());
  auto eset = share(fin_set::of(es));

  if (!j.contains("base")) throw parse_error("exceptions need a 'base'");
  parsed_exceptions out;
  if (j["base"].is_string() && j["base"] == "powerset") {
    out.setup = exception_setup::powerset(eset);
  } else if (j["base"].is_object() && j["base"].contains("coproduct")) {
    std::vector<std::string> fs;
    for (const auto& f : j["base"]["coproduct"]) fs.push_back(f.get<std::string>());
    try {
      out.setup = exception_setup::coproduct(share(fin_set::of(fs)), eset);
    } catch (const shape_error& e) {
      throw parse_error(e.what());
    }
  } else {
    throw parse_error("base must be \"powerset\" or {\"coproduct\":[...]}");
  }

  if (j.contains("throw")) {
    out.has_throw = true;
    if (out.setup.base != exception_setup::base_kind::coproduct) {
      if (!j["throw"].empty()) throw parse_error("powerset base admits only the empty throw");
    } else {
      out.given.table.assign(static_cast<std::size_t>(out.setup.ne()), -1);
      for (const auto& [e, f] : j["throw"].items()) {
        int ei = out.setup.exceptions->index_of(e);
        out.given.table[static_cast<std::size_t>(ei)] =
            out.setup.summand->index_of(f.get<std::string>());
      }
      for (int v : out.given.table)
        if (v < 0) throw parse_error("throw map must cover every exception");
    }
  }
  return out;
}

}  // namespace coalbase
