#include "cyq/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cyq/error.hpp"
#include "cyq/potential_io.hpp"

namespace cyq {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string("field \"") + what + "\" must be an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  bad(std::string("field \"") + what + "\" must be a string");
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json quiver_to_json(const GradedQuiver& q) {
  Json j;
  j["d"] = q.d;
  j["vertices"] = q.vertices;
  j["half"] = q.half;
  Json arrows = Json::array();
  for (const auto& a : q.arrows) {
    Json x;
    x["id"] = a.id;
    x["src"] = q.vertices.at(static_cast<std::size_t>(a.source));
    x["tgt"] = q.vertices.at(static_cast<std::size_t>(a.target));
    x["deg"] = a.degree;
    if (!q.half && a.dual >= 0) x["dual"] = q.arrows.at(static_cast<std::size_t>(a.dual)).id;
    arrows.push_back(std::move(x));
  }
  j["arrows"] = std::move(arrows);
  return j;
}

GradedQuiver quiver_from_json(const Json& j) {
  GradedQuiver q;
  q.d = as_int(field(j, "d"), "d");
  for (const auto& v : field(j, "vertices")) q.vertices.push_back(as_string(v, "vertices"));
  q.half = j.contains("half") ? field(j, "half").get<bool>() : true;
  auto vertex = [&](const Json& v, const char* what) {
    const std::string id = as_string(v, what);
    auto it = std::find(q.vertices.begin(), q.vertices.end(), id);
    if (it == q.vertices.end()) {
      throw Error(ErrorCode::invalid_quiver, "arrow endpoint '" + id + "' is not a vertex");
    }
    return static_cast<int>(it - q.vertices.begin());
  };
  std::vector<std::string> duals;
  const Json& arrows = field(j, "arrows");
  if (!arrows.is_array()) bad("field \"arrows\" must be a list");
  for (const auto& a : arrows) {
    Arrow x;
    x.id = as_string(field(a, "id"), "id");
    x.source = vertex(field(a, "src"), "src");
    x.target = vertex(field(a, "tgt"), "tgt");
    x.degree = as_int(field(a, "deg"), "deg");
    duals.push_back(a.contains("dual") ? as_string(a.at("dual"), "dual") : "");
    q.arrows.push_back(std::move(x));
  }
  if (!q.half) {
    // Pair arrows through "dual" fields, falling back to the xi: id scheme.
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (q.arrows[a].dual >= 0) continue;
      std::optional<int> partner;
      if (!duals[a].empty()) {
        partner = q.find_arrow(duals[a]);
      } else if (auto p = q.find_arrow(dual_arrow_id(q.arrows[a].id))) {
        partner = p;
      }
      if (!partner || *partner == static_cast<int>(a) || q.arrows[*partner].dual >= 0) continue;
      q.arrows[a].dual = *partner;
      q.arrows[a].primal = true;
      q.arrows[*partner].dual = static_cast<int>(a);
      q.arrows[*partner].primal = false;
    }
  }
  return q;
}

Json ext_table_to_json(const ExtTable& t) {
  Json j;
  j["d"] = t.d;
  j["vertices"] = t.vertices;
  Json dims = Json::object();
  const int n = static_cast<int>(t.vertices.size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::vector<int> row;
      for (int e = 0; e <= t.d; ++e) row.push_back(t.dim(i, k, e));
      dims[t.vertices[i] + "," + t.vertices[k]] = row;
    }
  }
  j["dims"] = std::move(dims);
  return j;
}

ExtTable ext_table_from_json(const Json& j) {
  ExtTable t;
  t.d = as_int(field(j, "d"), "d");
  const Json& dims = field(j, "dims");
  if (!dims.is_object()) bad("field \"dims\" must be an object keyed by \"i,j\"");
  std::vector<std::pair<std::string, std::string>> keys;
  for (auto it = dims.begin(); it != dims.end(); ++it) {
    const std::string key = it.key();
    const auto comma = key.find(',');
    if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos) {
      bad("dims key '" + key + "' must have the form \"i,j\"");
    }
    keys.emplace_back(key.substr(0, comma), key.substr(comma + 1));
  }
  if (j.contains("vertices")) {
    for (const auto& v : j.at("vertices")) t.vertices.push_back(as_string(v, "vertices"));
  } else {
    std::set<std::string> ids;
    for (const auto& [a, b] : keys) {
      ids.insert(a);
      ids.insert(b);
    }
    t.vertices.assign(ids.begin(), ids.end());
    const bool numeric = std::all_of(t.vertices.begin(), t.vertices.end(), all_digits);
    if (numeric) {
      std::sort(t.vertices.begin(), t.vertices.end(), [](const std::string& a, const std::string& b) {
        return std::stol(a) < std::stol(b);
      });
    }
  }
  auto index = [&](const std::string& id) {
    auto it = std::find(t.vertices.begin(), t.vertices.end(), id);
    if (it == t.vertices.end()) bad("dims refers to unknown vertex '" + id + "'");
    return static_cast<int>(it - t.vertices.begin());
  };
  std::size_t k = 0;
  for (auto it = dims.begin(); it != dims.end(); ++it, ++k) {
    std::vector<int> row;
    if (!it.value().is_array()) bad("dims entries must be lists of integers");
    for (const auto& e : it.value()) row.push_back(as_int(e, "dims"));
    t.set(index(keys[k].first), index(keys[k].second), std::move(row));
  }
  const int n = static_cast<int>(t.vertices.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!t.dims.count({a, b})) {
        throw Error(ErrorCode::invalid_quiver, "dims has no entry for (" + t.vertices[a] + "," +
                                                   t.vertices[b] + ")");
      }
    }
  }
  return t;
}

OrientationChoice orientation_from_json(const Json& j, const ExtTable& t) {
  OrientationChoice out;
  if (j.is_null()) return out;
  if (!j.is_object()) bad("orientation must map \"i,j\" to true (i->j) or false (j->i)");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    const auto comma = key.find(',');
    if (comma == std::string::npos) bad("orientation key '" + key + "' must be \"i,j\"");
    auto find = [&](const std::string& id) {
      auto p = std::find(t.vertices.begin(), t.vertices.end(), id);
      if (p == t.vertices.end()) bad("orientation refers to unknown vertex '" + id + "'");
      return static_cast<int>(p - t.vertices.begin());
    };
    int a = find(key.substr(0, comma));
    int b = find(key.substr(comma + 1));
    bool forward = it.value().get<bool>();
    if (a > b) {
      std::swap(a, b);
      forward = !forward;
    }
    out[{a, b}] = forward;
  }
  return out;
}

Json validation_to_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json e;
    e["kind"] = x.kind;
    if (x.i >= 0) e["i"] = x.i;
    if (x.j >= 0) e["j"] = x.j;
    if (x.k >= 0) e["k"] = x.k;
    e["message"] = x.message;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

Json rational_to_json(const Rational& q) { return q.get_str(); }

Json integer_or_infinity(int p) {
  if (p == kExact) return "inf";
  return p;
}

Json master_to_json(const MasterReport& r) {
  Json j;
  j["pass"] = r.pass;
  Json terms = Json::array();
  for (const auto& [w, c] : r.residual.terms()) {
    Json t;
    t["word"] = print_word(r.residual.alphabet(), w.letters, w.vertex);
    t["coeff"] = rational_to_json(c);
    terms.push_back(std::move(t));
  }
  j["residual_terms"] = std::move(terms);
  j["precision"] = integer_or_infinity(r.precision);
  return j;
}

namespace {

Json vector_to_json(const Vector& v, const Alphabet& a) {
  Json out = Json::array();
  for (const auto& [z, c] : v) {
    Json e;
    e["basis"] = basis_id(a, z);
    e["coeff"] = rational_to_json(c);
    out.push_back(std::move(e));
  }
  return out;
}

Json inputs_to_json(const Word& w, const Alphabet& a) {
  Json out = Json::array();
  for (Letter z : w) out.push_back(basis_id(a, z));
  return out;
}

}  // namespace

Json products_to_json(const StructureConstants& m) {
  Json out = Json::array();
  for (const auto& [inputs, v] : m.products) {
    Json r;
    r["n"] = inputs.size();
    r["inputs"] = inputs_to_json(inputs, *m.alphabet);
    r["output"] = vector_to_json(v, *m.alphabet);
    out.push_back(std::move(r));
  }
  return out;
}

Json ainfty_to_json(const AinftyReport& r, const Alphabet& a) {
  Json j;
  j["pass"] = r.pass;
  j["max_arity"] = r.max_arity;
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json e;
    e["inputs"] = inputs_to_json(x.inputs, a);
    e["residual"] = vector_to_json(x.residual, a);
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

Json cyclicity_to_json(const CyclicityReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["cyclic"] = r.cyclic;
  j["pairing_symmetric"] = r.pairing_symmetric;
  j["canonical_unit"] = r.canonical_unit;
  j["canonical_associative"] = r.canonical_associative;
  j["contains_canonical"] = r.contains_canonical;
  j["full_unit"] = r.full_unit;
  j["notes"] = r.notes;
  return j;
}

Json dgla_to_json(const DglaReport& r) {
  Json j;
  j["d"] = r.d;
  j["window"] = r.window;
  Json rows = Json::array();
  for (const auto& x : r.rows) {
    Json e;
    e["n"] = x.n;
    e["k"] = x.k;
    e["dim_hat_g"] = x.dim_hat;
    e["dim_g_can"] = x.dim_can;
    e["dim_g"] = x.dim_g;
    e["rank_D"] = x.rank_out;
    e["dim_H"] = x.dim_h;
    e["in_g_can"] = x.in_g_can;
    e["dim_alpha"] = x.dim_alpha;
    e["dim_H_alpha"] = x.h_alpha;
    e["dim_H_rest"] = x.h_rest;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  Json sums = Json::object();
  for (const auto& [n, h] : r.h_g_can_by_n) sums[std::to_string(n)] = h;
  j["H_g_can_by_n"] = std::move(sums);
  j["d_squared_zero"] = r.d_squared_zero;
  j["direct_sum"] = r.direct_sum;
  j["alpha_split"] = r.alpha_split;
  j["rest_degree_bound"] = r.rest_degree_bound;
  j["g_can_vanishing"] = r.g_can_vanishing;
  j["notes"] = r.notes;
  return j;
}

Json psi_to_json(const PsiReport& r) {
  Json j;
  j["lands_in_g_can"] = r.lands_in_g_can;
  j["closed_in_degree_one"] = r.closed_in_degree_one;
  j["bracket_compatible"] = r.bracket_compatible;
  j["h_differential_trivial"] = r.h_differential_trivial;
  j["window_caveat"] = r.window_caveat;
  Json rows = Json::array();
  for (const auto& x : r.rows) {
    Json e;
    e["i"] = x.i;
    e["k"] = x.k;
    e["dim_H_h"] = x.dim_h;
    e["dim_H_g_can"] = x.dim_g_can;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  j["notes"] = r.notes;
  return j;
}

Automorphism automorphism_from_json(const Json& j, const AlphabetPtr& alphabet) {
  if (!j.is_object()) bad("transform must map coordinate ids to expressions");
  Automorphism id = Automorphism::identity(alphabet);
  std::vector<PathSeries> images = id.images();
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto z = alphabet->find(it.key());
    if (!z) throw Error(ErrorCode::inadmissible_transform, "unknown coordinate '" + it.key() + "'");
    if (!it.value().is_string()) bad("image of '" + it.key() + "' must be an expression string");
    const auto& c = alphabet->at(*z);
    try {
      images[static_cast<std::size_t>(*z)] =
          parse_path(it.value().get<std::string>(), alphabet, c.source, c.target);
    } catch (const Error& e) {
      throw Error(e.code(), "image of '" + it.key() + "': " + e.what());
    }
  }
  return Automorphism(alphabet, std::move(images));
}

}  // namespace cyq
