#include "cyq/cyq.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cyq/ainfty.hpp"
#include "cyq/calculus.hpp"
#include "cyq/dgla.hpp"
#include "cyq/error.hpp"
#include "cyq/json_io.hpp"
#include "cyq/potential_io.hpp"
#include "cyq/quiver.hpp"

struct cyq_quiver {
  cyq::GradedQuiver quiver;
  mutable cyq::AlphabetPtr alphabet;
};

struct cyq_series {
  cyq::CyclicSeries series;
};

namespace {

thread_local std::string last_error;

cyq_status fail(cyq_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <class F>
cyq_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const cyq::Error& e) {
    return fail(static_cast<cyq_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CYQ_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CYQ_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = duplicate(s);
}

void put(char** out, const cyq::Json& j) { put(out, j.dump(2) + "\n"); }

void need(const void* p, const char* what) {
  if (!p) throw cyq::Error(cyq::ErrorCode::invalid_argument, std::string(what) + " is null");
}

void require_valid(const cyq::GradedQuiver& q) {
  auto report = cyq::validate_quiver(q);
  if (!report.ok()) throw cyq::Error(cyq::ErrorCode::invalid_quiver, report.summary());
}

const cyq::AlphabetPtr& alphabet_of(const cyq_quiver* q) {
  need(q, "quiver");
  if (!q->alphabet) {
    require_valid(q->quiver);
    cyq::GradedQuiver qbar = q->quiver.half ? cyq::double_quiver(q->quiver) : q->quiver;
    q->alphabet = cyq::Alphabet::from_double_quiver(qbar);
  }
  return q->alphabet;
}

cyq_series* wrap(cyq::CyclicSeries s) { return new cyq_series{std::move(s)}; }

void require_truncation(int n) {
  if (n < 3) throw cyq::Error(cyq::ErrorCode::invalid_argument, "truncation must be at least 3");
}

}  // namespace

extern "C" {

const char* cyq_last_error(void) { return last_error.c_str(); }

const char* cyq_version(void) { return "0.1.0"; }

void cyq_string_free(char* s) { std::free(s); }

cyq_status cyq_quiver_from_json(const char* json, cyq_quiver** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    auto q = cyq::quiver_from_json(cyq::parse_json(json));
    require_valid(q);
    *out = new cyq_quiver{std::move(q), nullptr};
    return CYQ_OK;
  });
}

cyq_status cyq_quiver_from_ext_table(const char* ext_json, const char* orientation_json,
                                     cyq_quiver** out) {
  return guarded([&] {
    need(ext_json, "ext table");
    need(out, "out");
    auto table = cyq::ext_table_from_json(cyq::parse_json(ext_json));
    cyq::OrientationChoice orient;
    if (orientation_json) orient = cyq::orientation_from_json(cyq::parse_json(orientation_json), table);
    *out = new cyq_quiver{cyq::quiver_from_ext_table(table, orient), nullptr};
    return CYQ_OK;
  });
}

cyq_status cyq_quiver_double(const cyq_quiver* q, cyq_quiver** out) {
  return guarded([&] {
    need(q, "quiver");
    need(out, "out");
    if (!q->quiver.half) {
      throw cyq::Error(cyq::ErrorCode::invalid_quiver, "quiver is already a double quiver");
    }
    require_valid(q->quiver);
    *out = new cyq_quiver{cyq::double_quiver(q->quiver), nullptr};
    return CYQ_OK;
  });
}

cyq_status cyq_quiver_to_json(const cyq_quiver* q, char** out) {
  return guarded([&] {
    need(q, "quiver");
    put(out, cyq::quiver_to_json(q->quiver));
    return CYQ_OK;
  });
}

cyq_status cyq_quiver_ext_table(const cyq_quiver* q, char** out_json) {
  return guarded([&] {
    need(q, "quiver");
    require_valid(q->quiver);
    const cyq::GradedQuiver qbar = q->quiver.half ? cyq::double_quiver(q->quiver) : q->quiver;
    put(out_json, cyq::ext_table_to_json(cyq::ext_table_from_quiver(qbar)));
    return CYQ_OK;
  });
}

int cyq_quiver_dimension(const cyq_quiver* q) { return q ? q->quiver.d : -1; }

int cyq_quiver_is_half(const cyq_quiver* q) { return q && q->quiver.half ? 1 : 0; }

void cyq_quiver_free(cyq_quiver* q) { delete q; }

cyq_status cyq_validate_quiver_json(const char* json, char** report_json) {
  return guarded([&] {
    need(json, "json");
    auto report = cyq::validate_quiver(cyq::quiver_from_json(cyq::parse_json(json)));
    put(report_json, cyq::validation_to_json(report));
    return report.ok() ? CYQ_OK : fail(CYQ_INVALID_QUIVER, report.summary());
  });
}

cyq_status cyq_validate_ext_table_json(const char* json, char** report_json) {
  return guarded([&] {
    need(json, "json");
    auto report = cyq::validate_ext_table(cyq::ext_table_from_json(cyq::parse_json(json)));
    put(report_json, cyq::validation_to_json(report));
    return report.ok() ? CYQ_OK : fail(CYQ_INVALID_QUIVER, report.summary());
  });
}

cyq_status cyq_series_parse(const cyq_quiver* qbar, const char* text, int flags, cyq_series** out,
                            char** warnings_json) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    const auto& a = alphabet_of(qbar);
    auto parsed = cyq::parse_potential(text, a);
    if (flags & CYQ_PARSE_HOMOGENEOUS) cyq::require_homogeneous(parsed, 3 - a->dimension());
    if (flags & CYQ_PARSE_MINIMAL) cyq::require_minimal(parsed);
    put(warnings_json, cyq::Json(parsed.warnings));
    *out = wrap(std::move(parsed.series));
    return CYQ_OK;
  });
}

cyq_status cyq_series_print(const cyq_series* p, char** out) {
  return guarded([&] {
    need(p, "series");
    put(out, cyq::print_potential(p->series));
    return CYQ_OK;
  });
}

cyq_status cyq_series_canonical(const cyq_quiver* qbar, cyq_series** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(cyq::build_W_can(alphabet_of(qbar)));
    return CYQ_OK;
  });
}

cyq_status cyq_series_lift(const cyq_series* w0, cyq_series** out) {
  return guarded([&] {
    need(w0, "series");
    need(out, "out");
    *out = wrap(cyq::lift_potential(w0->series));
    return CYQ_OK;
  });
}

cyq_status cyq_series_restrict(const cyq_series* w, cyq_series** out) {
  return guarded([&] {
    need(w, "series");
    need(out, "out");
    *out = wrap(cyq::restrict_series(w->series, cyq::ideal_generators(w->series.alphabet())));
    return CYQ_OK;
  });
}

cyq_status cyq_series_bracket(const cyq_series* f, const cyq_series* g, cyq_series** out) {
  return guarded([&] {
    need(f, "series");
    need(g, "series");
    need(out, "out");
    if (!(f->series.alphabet() == g->series.alphabet())) {
      throw cyq::Error(cyq::ErrorCode::invalid_argument, "series live over different quivers");
    }
    *out = wrap(cyq::necklace_bracket(f->series, g->series));
    return CYQ_OK;
  });
}

cyq_status cyq_series_derivative(const cyq_series* p, const char* coordinate, char** out) {
  return guarded([&] {
    need(p, "series");
    need(coordinate, "coordinate");
    auto z = p->series.alphabet().find(coordinate);
    if (!z) {
      throw cyq::Error(cyq::ErrorCode::invalid_argument,
                       std::string("unknown coordinate '") + coordinate + "'");
    }
    put(out, cyq::print_path(cyq::cyclic_derivative(p->series, *z)));
    return CYQ_OK;
  });
}

int cyq_series_is_zero(const cyq_series* p) { return p && p->series.terms().empty() ? 1 : 0; }

int cyq_series_equal(const cyq_series* a, const cyq_series* b) {
  if (!a || !b) return 0;
  return a->series.alphabet() == b->series.alphabet() && a->series == b->series ? 1 : 0;
}

void cyq_series_free(cyq_series* p) { delete p; }

cyq_status cyq_check(const cyq_series* w, int modes, int max_arity, char** report_json) {
  return guarded([&] {
    need(w, "series");
    if (modes <= 0 || (modes & ~CYQ_CHECK_ALL)) {
      throw cyq::Error(cyq::ErrorCode::invalid_argument, "unknown check mode");
    }
    const cyq::CyclicSeries& series = w->series;
    bool pass = true;
    cyq::Json report;
    if (modes & CYQ_CHECK_MASTER) {
      auto r = cyq::check_master(series);
      report["master"] = cyq::master_to_json(r);
      pass = pass && r.pass;
    }
    if (modes & CYQ_CHECK_MC) {
      auto gamma = series - cyq::build_W_can(series.alphabet_ptr());
      auto r = cyq::maurer_cartan_check(gamma);
      report["mc"] = cyq::master_to_json(r);
      pass = pass && r.pass;
    }
    if (modes & CYQ_CHECK_AINFTY) {
      const cyq::AlphabetPtr& a = series.alphabet_ptr();
      cyq::Pairing pairing(a);
      auto m = cyq::extract_products(series, pairing);
      const int arity = max_arity > 0 ? max_arity : cyq::default_relation_arity(series);
      auto r = cyq::check_ainfty(m, arity);
      auto c = cyq::check_cyclicity_and_unit(m, pairing, series);
      cyq::Json j = cyq::ainfty_to_json(r, *a);
      j["minimal"] = !m.has_m1();
      j["cyclicity"] = cyq::cyclicity_to_json(c);
      j["pass"] = r.pass && c.pass;
      report["ainfty"] = std::move(j);
      pass = pass && r.pass && c.pass;
    }
    report["pass"] = pass;
    put(report_json, report);
    return pass ? CYQ_OK : fail(CYQ_CHECK_FAILED, "check failed");
  });
}

cyq_status cyq_gauge_automorphism(const cyq_series* w, const char* transform_json, int truncation,
                                  cyq_series** out) {
  return guarded([&] {
    need(w, "series");
    need(transform_json, "transform");
    need(out, "out");
    require_truncation(truncation);
    cyq::Json j;
    try {
      j = cyq::parse_json(transform_json);
    } catch (const cyq::Error& e) {
      throw cyq::Error(cyq::ErrorCode::inadmissible_transform, e.what());
    }
    auto phi = cyq::automorphism_from_json(j, w->series.alphabet_ptr());
    phi.require_admissible();
    *out = wrap(phi.apply(w->series, truncation));
    return CYQ_OK;
  });
}

cyq_status cyq_gauge_flow(const cyq_series* w, const char* hamiltonian, int truncation,
                          cyq_series** out) {
  return guarded([&] {
    need(w, "series");
    need(hamiltonian, "hamiltonian");
    need(out, "out");
    require_truncation(truncation);
    cyq::CyclicSeries h(w->series.alphabet_ptr());
    try {
      h = cyq::parse_potential(hamiltonian, w->series.alphabet_ptr()).series;
    } catch (const cyq::Error& e) {
      throw cyq::Error(cyq::ErrorCode::inadmissible_transform, e.what());
    }
    cyq::require_flow_generator(h);
    *out = wrap(cyq::hamiltonian_flow(h, w->series, truncation));
    return CYQ_OK;
  });
}

cyq_status cyq_extract_products(const cyq_series* w, int max_arity, char** out_json) {
  return guarded([&] {
    need(w, "series");
    cyq::Pairing pairing(w->series.alphabet_ptr());
    auto m = cyq::extract_products(w->series, pairing, max_arity > 0 ? max_arity : -1);
    put(out_json, cyq::products_to_json(m));
    return CYQ_OK;
  });
}

cyq_status cyq_dgla_report(const cyq_quiver* qbar, int window, char** out_json) {
  return guarded([&] {
    if (window < 1) throw cyq::Error(cyq::ErrorCode::invalid_argument, "window must be at least 1");
    const auto& a = alphabet_of(qbar);
    auto r = cyq::cohomology_ranks(a, window);
    auto psi = cyq::psi_probe(a, window);
    cyq::Json j = cyq::dgla_to_json(r);
    j["psi"] = cyq::psi_to_json(psi);
    put(out_json, j);
    return CYQ_OK;
  });
}

}  // extern "C"
