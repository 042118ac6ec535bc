#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyq/cyq.h"

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  int d = 0;
  int truncation = 8;
  int window = 6;
  bool structured = false;
  std::string output;
  std::string mode = "all";
  std::string kind = "auto";
  std::string orientation;
  int max_arity = 0;
  std::vector<std::string> inputs;
};

// Raised to abort a command with an exit code after a diagnostic.
struct Exit {
  int code;
};

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Exit{code};
}

void check(cyq_status s) {
  if (s != CYQ_OK) die(s, cyq_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  cyq_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(CYQ_PARSE_ERROR, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) die(CYQ_INVALID_ARGUMENT, "cannot write '" + cfg.output + "'");
  out << text;
}

struct QuiverDeleter {
  void operator()(cyq_quiver* q) const { cyq_quiver_free(q); }
};
struct SeriesDeleter {
  void operator()(cyq_series* p) const { cyq_series_free(p); }
};
using Quiver = std::unique_ptr<cyq_quiver, QuiverDeleter>;
using Series = std::unique_ptr<cyq_series, SeriesDeleter>;

// Fills a missing "d" from --d and rejects a conflicting one.
std::string with_dimension(const Config& cfg, const std::string& text, const std::string& path) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    die(CYQ_PARSE_ERROR, path + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) die(CYQ_PARSE_ERROR, path + ": expected a JSON object");
  if (cfg.d) {
    if (!j.contains("d")) {
      j["d"] = cfg.d;
    } else if (!j["d"].is_number_integer() || j["d"].get<int>() != cfg.d) {
      die(CYQ_PARSE_ERROR, path + ": dimension differs from --d " + std::to_string(cfg.d));
    }
  }
  return j.dump();
}

Quiver load_quiver(const Config& cfg, const std::string& path) {
  std::string text = with_dimension(cfg, read_file(path), path);
  cyq_quiver* q = nullptr;
  check(cyq_quiver_from_json(text.c_str(), &q));
  return Quiver(q);
}

Series load_series(const cyq_quiver* q, const std::string& path, int flags) {
  const std::string text = read_file(path);
  cyq_series* p = nullptr;
  char* warnings = nullptr;
  cyq_status s = cyq_series_parse(q, text.c_str(), flags, &p, &warnings);
  if (s != CYQ_OK) die(s, path + ": " + cyq_last_error());
  for (const auto& w : Json::parse(take(warnings))) {
    std::cerr << "warning: " << path << ": " << w.get<std::string>() << "\n";
  }
  return Series(p);
}

std::string print(const cyq_series* p) {
  char* out = nullptr;
  check(cyq_series_print(p, &out));
  return take(out);
}

void need_inputs(const Config& cfg, std::size_t n, const char* usage) {
  if (cfg.inputs.size() != n) die(CYQ_INVALID_ARGUMENT, std::string("usage: ") + usage);
}

std::string format_terms(const Json& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    std::string c = t["coeff"].get<std::string>();
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (c != "1") out += c + "*";
    out += t["word"].get<std::string>();
    first = false;
  }
  return out;
}

std::string precision_text(const Json& p) {
  return p.is_string() ? p.get<std::string>() : std::to_string(p.get<int>());
}

std::string verdict(bool pass) { return pass ? "pass" : "fail"; }

std::string format_vector(const Json& v) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& e : v) {
    std::string c = e["coeff"].get<std::string>();
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    if (c != "1") out += c + "*";
    out += e["basis"].get<std::string>();
    first = false;
  }
  return out;
}

std::string format_inputs(const Json& inputs) {
  std::string out;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (k) out += ", ";
    out += inputs[k].get<std::string>();
  }
  return out;
}

std::string human_check(const Json& r) {
  std::ostringstream out;
  for (const char* key : {"master", "mc"}) {
    if (!r.contains(key)) continue;
    const Json& m = r[key];
    out << (std::string(key) == "master" ? "master equation" : "Maurer-Cartan equation") << ": "
        << verdict(m["pass"].get<bool>()) << " (exact through length "
        << precision_text(m["precision"]) << ")\n";
    out << "  residual: " << format_terms(m["residual_terms"]) << "\n";
  }
  if (r.contains("ainfty")) {
    const Json& a = r["ainfty"];
    out << "A-infinity relations: " << verdict(a["pass"].get<bool>()) << " (arity up to "
        << a["max_arity"].get<int>() << ", " << (a["minimal"].get<bool>() ? "minimal" : "m_1 nonzero")
        << ")\n";
    for (const auto& v : a["violations"]) {
      out << "  relation on (" << format_inputs(v["inputs"]) << ") = " << format_vector(v["residual"])
          << "\n";
    }
    const Json& c = a["cyclicity"];
    out << "  cyclic: " << verdict(c["cyclic"].get<bool>())
        << ", pairing symmetric: " << verdict(c["pairing_symmetric"].get<bool>())
        << ", canonical unit: " << verdict(c["canonical_unit"].get<bool>())
        << ", canonical associativity: " << verdict(c["canonical_associative"].get<bool>()) << "\n";
    out << "  strictly unital as a whole: " << (c["full_unit"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& n : c["notes"]) out << "  note: " << n.get<std::string>() << "\n";
  }
  out << "result: " << verdict(r["pass"].get<bool>()) << "\n";
  return out.str();
}

std::string human_dgla(const Json& r) {
  std::ostringstream out;
  out << "DGLA ranks, d=" << r["d"].get<int>() << ", cyclic degree 1.." << r["window"].get<int>()
      << "\n";
  out << std::setw(4) << "n" << std::setw(4) << "k" << std::setw(8) << "dim ĝ" << " " << std::setw(11)
      << "dim g_can" << std::setw(7) << "dim g" << std::setw(8) << "rank D" << std::setw(7) << "dim H"
      << "  part\n";
  for (const auto& row : r["rows"]) {
    out << std::setw(4) << row["n"].get<int>() << std::setw(4) << row["k"].get<int>() << std::setw(8)
        << row["dim_hat_g"].get<long>() << std::setw(11) << row["dim_g_can"].get<long>()
        << std::setw(7) << row["dim_g"].get<long>() << std::setw(8) << row["rank_D"].get<long>()
        << std::setw(7) << row["dim_H"].get<long>() << "  "
        << (row["in_g_can"].get<bool>() ? "g_can" : "g") << "\n";
  }
  out << "H(g_can) by n:";
  for (auto it = r["H_g_can_by_n"].begin(); it != r["H_g_can_by_n"].end(); ++it) {
    out << " " << it.key() << ":" << it.value().get<long>();
  }
  out << "\n";
  auto yes = [](const Json& b) { return b.get<bool>() ? "yes" : "no"; };
  out << "D^2 = 0: " << yes(r["d_squared_zero"]) << "\n";
  out << "dim hat g = dim g_can + dim g: " << yes(r["direct_sum"]) << "\n";
  out << "alpha words split off: " << yes(r["alpha_split"]) << "\n";
  out << "non-alpha cohomology in coh.deg <= d-2: " << yes(r["rest_degree_bound"]) << "\n";
  out << "H^{n>1}(g_can) vanishes in window: " << yes(r["g_can_vanishing"]) << "\n";
  const Json& p = r["psi"];
  out << "comparison map lands in g_can: " << yes(p["lands_in_g_can"]) << "\n";
  out << "D of comparison image vanishes in coh.deg 1: " << yes(p["closed_in_degree_one"]) << "\n";
  out << "comparison map respects brackets: " << yes(p["bracket_compatible"]) << "\n";
  out << "differential on h vanishes: " << yes(p["h_differential_trivial"]) << "\n";
  for (const auto& n : r["notes"]) out << "note: " << n.get<std::string>() << "\n";
  for (const auto& n : p["notes"]) out << "note: " << n.get<std::string>() << "\n";
  return out.str();
}

int cmd_build_double(const Config& cfg) {
  need_inputs(cfg, 1, "build-double QUIVER");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  cyq_quiver* qbar = nullptr;
  check(cyq_quiver_double(q.get(), &qbar));
  Quiver owned(qbar);
  char* out = nullptr;
  check(cyq_quiver_to_json(qbar, &out));
  emit(cfg, take(out));
  return 0;
}

int cmd_quiver_from_ext(const Config& cfg) {
  need_inputs(cfg, 1, "quiver-from-ext EXT_TABLE");
  const std::string table = with_dimension(cfg, read_file(cfg.inputs[0]), cfg.inputs[0]);
  std::string orient;
  if (!cfg.orientation.empty()) orient = read_file(cfg.orientation);
  cyq_quiver* q = nullptr;
  check(cyq_quiver_from_ext_table(table.c_str(), orient.empty() ? nullptr : orient.c_str(), &q));
  Quiver owned(q);
  char* out = nullptr;
  check(cyq_quiver_to_json(q, &out));
  emit(cfg, take(out));
  return 0;
}

int cmd_ext_table(const Config& cfg) {
  need_inputs(cfg, 1, "ext-table QUIVER");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  char* out = nullptr;
  check(cyq_quiver_ext_table(q.get(), &out));
  emit(cfg, take(out));
  return 0;
}

int cmd_validate(const Config& cfg) {
  need_inputs(cfg, 1, "validate QUIVER|EXT_TABLE");
  const std::string text = with_dimension(cfg, read_file(cfg.inputs[0]), cfg.inputs[0]);
  const bool table = Json::parse(text).contains("dims");
  char* report = nullptr;
  cyq_status s = table ? cyq_validate_ext_table_json(text.c_str(), &report)
                       : cyq_validate_quiver_json(text.c_str(), &report);
  if (!report) die(s, cyq_last_error());
  const std::string body = take(report);
  if (cfg.structured) {
    emit(cfg, body);
  } else {
    Json r = Json::parse(body);
    std::ostringstream out;
    out << (table ? "ext table: " : "quiver: ") << (r["ok"].get<bool>() ? "valid" : "invalid") << "\n";
    for (const auto& v : r["violations"]) {
      out << "  " << v["kind"].get<std::string>() << ": " << v["message"].get<std::string>() << "\n";
    }
    emit(cfg, out.str());
  }
  return s;
}

int cmd_check(const Config& cfg) {
  need_inputs(cfg, 2, "check QUIVER POTENTIAL [--mode master|mc|ainfty|all]");
  int modes = 0;
  if (cfg.mode == "master") modes = CYQ_CHECK_MASTER;
  else if (cfg.mode == "mc") modes = CYQ_CHECK_MC;
  else if (cfg.mode == "ainfty") modes = CYQ_CHECK_AINFTY;
  else if (cfg.mode == "all") modes = CYQ_CHECK_ALL;
  else die(CYQ_INVALID_ARGUMENT, "unknown mode '" + cfg.mode + "'");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  Series w = load_series(q.get(), cfg.inputs[1], CYQ_PARSE_HOMOGENEOUS | CYQ_PARSE_MINIMAL);
  char* report = nullptr;
  cyq_status s = cyq_check(w.get(), modes, cfg.max_arity, &report);
  if (!report) die(s, cyq_last_error());
  const std::string body = take(report);
  emit(cfg, cfg.structured ? body : human_check(Json::parse(body)));
  return s;
}

int cmd_lift(const Config& cfg) {
  need_inputs(cfg, 2, "lift QUIVER W0");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  Series w0 = load_series(q.get(), cfg.inputs[1], CYQ_PARSE_ANY);
  cyq_series* w = nullptr;
  check(cyq_series_lift(w0.get(), &w));
  Series owned(w);
  emit(cfg, print(w) + "\n");
  return 0;
}

int cmd_restrict(const Config& cfg) {
  need_inputs(cfg, 2, "restrict QUIVER W");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  Series w = load_series(q.get(), cfg.inputs[1], CYQ_PARSE_ANY);
  cyq_series* w0 = nullptr;
  check(cyq_series_restrict(w.get(), &w0));
  Series owned(w0);
  emit(cfg, print(w0) + "\n");
  return 0;
}

int cmd_gauge(const Config& cfg) {
  need_inputs(cfg, 3, "gauge QUIVER POTENTIAL TRANSFORM [--kind auto|flow]");
  if (cfg.kind != "auto" && cfg.kind != "flow") die(CYQ_INVALID_ARGUMENT, "unknown kind '" + cfg.kind + "'");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  Series w = load_series(q.get(), cfg.inputs[1], CYQ_PARSE_HOMOGENEOUS | CYQ_PARSE_MINIMAL);
  const std::string transform = read_file(cfg.inputs[2]);
  cyq_series* out = nullptr;
  if (cfg.kind == "auto") {
    check(cyq_gauge_automorphism(w.get(), transform.c_str(), cfg.truncation, &out));
  } else {
    check(cyq_gauge_flow(w.get(), transform.c_str(), cfg.truncation, &out));
  }
  Series owned(out);
  char* report = nullptr;
  cyq_status s = cyq_check(out, CYQ_CHECK_MASTER, 0, &report);
  if (!report) die(s, cyq_last_error());
  Json master = Json::parse(take(report))["master"];
  const std::string potential = print(out);
  if (cfg.structured) {
    Json j;
    j["potential"] = potential;
    j["master"] = master;
    emit(cfg, j.dump(2) + "\n");
  } else {
    emit(cfg, potential + "\n");
    std::cerr << "master equation after gauge: " << verdict(master["pass"].get<bool>())
              << " (exact through length " << precision_text(master["precision"]) << ")\n";
    if (!master["pass"].get<bool>()) {
      std::cerr << "  residual: " << format_terms(master["residual_terms"]) << "\n";
    }
  }
  return s;
}

int cmd_extract(const Config& cfg) {
  need_inputs(cfg, 2, "extract QUIVER POTENTIAL");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  Series w = load_series(q.get(), cfg.inputs[1], CYQ_PARSE_HOMOGENEOUS);
  char* products = nullptr;
  check(cyq_extract_products(w.get(), cfg.max_arity, &products));
  const std::string body = take(products);
  if (cfg.structured) {
    emit(cfg, body);
    return 0;
  }
  std::ostringstream out;
  for (const auto& p : Json::parse(body)) {
    out << "m_" << p["n"].get<int>() << "(" << format_inputs(p["inputs"]) << ") = "
        << format_vector(p["output"]) << "\n";
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_dgla(const Config& cfg) {
  need_inputs(cfg, 1, "dgla QUIVER [--window K]");
  Quiver q = load_quiver(cfg, cfg.inputs[0]);
  char* report = nullptr;
  check(cyq_dgla_report(q.get(), cfg.window, &report));
  const std::string body = take(report);
  emit(cfg, cfg.structured ? body : human_dgla(Json::parse(body)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calabi-Yau A-infinity structures and graded quivers with potential"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--d", cfg.d, "Calabi-Yau dimension (fills or checks the input files)")
      ->check(CLI::Range(2, 64));
  app.add_option("--truncation", cfg.truncation, "Word-length truncation N for gauge actions")
      ->check(CLI::Range(3, 1 << 20));
  app.add_option("--window", cfg.window, "Cyclic-degree window K for dgla")
      ->check(CLI::Range(1, 1 << 20));
  app.add_flag("--structured", cfg.structured, "Emit JSON instead of human-readable text");
  app.add_option("--output", cfg.output, "Write the main output to PATH");

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const Command commands[] = {
      {"build-double", "Add the dual arrows to a half quiver", cmd_build_double},
      {"quiver-from-ext", "Build the half quiver of an Ext table", cmd_quiver_from_ext},
      {"ext-table", "Recover the Ext table of a quiver", cmd_ext_table},
      {"validate", "Validate a quiver or an Ext table", cmd_validate},
      {"check", "Check master, Maurer-Cartan and A-infinity equations", cmd_check},
      {"lift", "Lift W0 to W_can + W0", cmd_lift},
      {"restrict", "Restrict W to the primal subalgebra", cmd_restrict},
      {"gauge", "Apply an automorphism or a Hamiltonian flow", cmd_gauge},
      {"extract", "Extract cyclic A-infinity structure constants", cmd_extract},
      {"dgla", "Cohomology ranks of the deformation DGLA", cmd_dgla},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Config&)>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    sub->add_option("inputs", cfg.inputs, "Input files")->required();
    const std::string name = c.name;
    if (name == "check") sub->add_option("--mode", cfg.mode, "master, mc, ainfty or all");
    if (name == "gauge") sub->add_option("--kind", cfg.kind, "auto or flow");
    if (name == "quiver-from-ext") sub->add_option("--orientation", cfg.orientation, "Orientation JSON file");
    if (name == "check" || name == "extract") {
      sub->add_option("--max-arity", cfg.max_arity, "Largest arity considered");
    }
    subs.emplace_back(sub, c.run);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : CYQ_INVALID_ARGUMENT;
  }
  try {
    for (const auto& [sub, run] : subs) {
      if (sub->parsed()) return run(cfg);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return CYQ_INTERNAL;
  }
  return CYQ_INVALID_ARGUMENT;
}
