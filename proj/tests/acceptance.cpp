// Acceptance run: one PASS/FAIL line per criterion, all comparisons exact.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cyq/ainfty.hpp"
#include "cyq/dgla.hpp"
#include "cyq/error.hpp"
#include "cyq/json_io.hpp"
#include "support.hpp"

using namespace cyq;
using namespace cyq::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what;
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %2d %s  %s (%.2f s)%s%s\n", id, out.pass ? "PASS" : "FAIL", name, secs,
              out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

int coh(const CyclicSeries& f) {
  return f.homogeneous_degree().value_or(0) + f.alphabet().dimension() - 2;
}

AlphabetPtr random_alphabet(std::mt19937& rng, int d) {
  return Alphabet::from_double_quiver(double_quiver(quiver_from_ext_table(random_ext_table(rng, d, 3, 3))));
}

// Nonzero random series; gives up after many empty draws.
CyclicSeries nonzero_series(std::mt19937& rng, const AlphabetPtr& a, const std::vector<Letter>& letters,
                            int degree, int min_len, int max_len, int terms) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto s = random_series(rng, a, letters, degree, min_len, max_len, terms);
    if (!s.is_zero()) return s;
  }
  return CyclicSeries(a);
}

Automorphism dual_pair_scaling(std::mt19937& rng, const AlphabetPtr& a) {
  auto images = Automorphism::identity(a).images();
  std::uniform_int_distribution<int> pick(1, 3);
  for (std::size_t z = 0; z < a->size(); ++z) {
    const auto& c = a->at(static_cast<Letter>(z));
    if (c.kind != CoordKind::x) continue;
    Rational lambda(pick(rng), pick(rng));
    if (rng() % 2) lambda = -lambda;
    images[z] = Rational(lambda) * PathSeries::letter(a, static_cast<Letter>(z));
    images[static_cast<std::size_t>(c.dual)] =
        Rational(1 / lambda) * PathSeries::letter(a, static_cast<Letter>(c.dual));
  }
  return Automorphism(a, std::move(images));
}

CyclicSeries engineered_failure(const AlphabetPtr& b) {
  return lift_potential(parse(b, "x*x*y + x*x*xi:y"));
}

}  // namespace

int main() {
  criterion(1, "W_can satisfies the master equation on 250 random Ext tables, under 10 s", [] {
    Outcome o;
    std::mt19937 rng(101);
    const auto start = std::chrono::steady_clock::now();
    for (int d = 2; d <= 6; ++d) {
      for (int t = 0; t < 50; ++t) {
        auto table = random_ext_table(rng, d, 3, 3);
        o.require(validate_ext_table(table).ok(), "generated table invalid");
        auto a = Alphabet::from_double_quiver(double_quiver(quiver_from_ext_table(table)));
        auto r = check_master(build_W_can(a));
        o.require(r.pass && r.residual.is_zero(), "d=" + std::to_string(d) + " table " + std::to_string(t));
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 10.0, "took " + std::to_string(secs) + " s");
    return o;
  });

  criterion(2, "cyclic derivatives of W_can match their closed forms byte for byte", [] {
    Outcome o;
    for (int d = 2; d <= 6; ++d) {
      auto a = one_vertex_alphabet(d, {{"x", 0}});
      auto w = build_W_can(a);
      const std::string da = print_path(cyclic_derivative(w, a->alpha(0)));
      const std::string dx = print_path(cyclic_derivative(w, a->find("x").value()));
      if (d % 2 == 0) {
        o.require(da == "alpha_1*beta_1 + x*xi:x - xi:x*x + beta_1*alpha_1", "d=" + std::to_string(d) + ": " + da);
        o.require(dx == "-alpha_1*xi:x + xi:x*alpha_1", "d=" + std::to_string(d) + ": " + dx);
      } else {
        // Odd d: beta and xi are odd, so rotations move the Koszul signs.
        o.require(da == "alpha_1*beta_1 + x*xi:x - xi:x*x - beta_1*alpha_1", "d=" + std::to_string(d) + ": " + da);
        o.require(dx == "-alpha_1*xi:x - xi:x*alpha_1", "d=" + std::to_string(d) + ": " + dx);
      }
    }
    return o;
  });

  criterion(3, "{W_can, W0} = 0 for 100 admissible W0 and the cyclic identity for 100 P", [] {
    Outcome o;
    std::mt19937 rng(103);
    int cross = 0, ident = 0;
    while (cross < 100) {
      const int d = 3 + cross % 4;
      auto a = cross % 2 ? full_loops(d) : random_alphabet(rng, d);
      auto w0 = nonzero_series(rng, a, w0_letters(*a), 3 - d, 3, 6, 3);
      if (w0.is_zero()) continue;
      o.require(admissibility_issues(w0).empty(), "generated W0 inadmissible");
      o.require(necklace_bracket(build_W_can(a), w0).is_zero(), print_potential(w0));
      ++cross;
    }
    while (ident < 100) {
      const int d = 2 + ident % 5;
      auto a = ident % 2 ? full_loops(d) : random_alphabet(rng, d);
      auto p = nonzero_series(rng, a, all_letters(*a), static_cast<int>(rng() % 5) - 3, 1, 6, 4);
      if (p.is_zero()) continue;
      o.require(all_zero(cyclic_identity_residual(p)), print_potential(p));
      ++ident;
    }
    return o;
  });

  criterion(4, "graded antisymmetry and Jacobi on 200 random triples", [] {
    Outcome o;
    std::mt19937 rng(107);
    int done = 0;
    while (done < 200) {
      const int d = 2 + done % 5;
      auto a = done % 3 ? full_loops(d) : random_alphabet(rng, d);
      const auto letters = all_letters(*a);
      std::uniform_int_distribution<int> deg(-2 * d, 2);
      auto f = nonzero_series(rng, a, letters, deg(rng), 1, 4, 3);
      auto g = nonzero_series(rng, a, letters, deg(rng), 1, 4, 3);
      auto h = nonzero_series(rng, a, letters, deg(rng), 1, 4, 3);
      if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
      const int cf = coh(f), cg = coh(g);
      auto fg = necklace_bracket(f, g);
      o.require(fg == Rational(-koszul_sign(cf, cg)) * necklace_bracket(g, f), "antisymmetry");
      auto lhs = necklace_bracket(f, necklace_bracket(g, h));
      auto rhs = necklace_bracket(fg, h) + Rational(koszul_sign(cf, cg)) * necklace_bracket(g, necklace_bracket(f, h));
      o.require(lhs == rhs, "Jacobi");
      ++done;
    }
    return o;
  });

  criterion(5, "master equation holds exactly when the A-infinity relations do (50 potentials)", [] {
    Outcome o;
    std::mt19937 rng(109);
    int passing = 0, failing = 0;
    auto compare = [&](const CyclicSeries& w, const std::string& label) {
      Pairing pairing(w.alphabet_ptr());
      const bool master = check_master(w).pass;
      auto m = extract_products(w, pairing);
      const bool ainfty = check_ainfty(m, default_relation_arity(w)).pass;
      o.require(master == ainfty, label + ": " + print_potential(w));
      (master ? passing : failing) += 1;
    };
    int done = 0;
    while (done < 49) {
      const int d = 3 + done % 2;
      auto a = full_loops(d);
      CyclicSeries w(a);
      if (done % 3 == 2) {
        w = nonzero_series(rng, a, all_letters(*a), 3 - d, 3, 4, 3);
      } else {
        w = lift_potential(nonzero_series(rng, a, w0_letters(*a), 3 - d, 3, 5, 3));
      }
      if (w.is_zero()) continue;
      compare(w, "random");
      ++done;
    }
    auto b = one_vertex_alphabet(4, {{"x", 0}, {"y", -1}});
    auto w = engineered_failure(b);
    auto r = check_master(w);
    const Letter x = b->find("x").value();
    o.require(!r.pass && r.residual.size() == 1 && r.residual.terms().begin()->first.letters == Word{x, x, x, x},
              "engineered residual is not cyclic x^4");
    compare(w, "engineered");
    o.require(passing > 0 && failing > 0, "sample lacks passing or failing cases");
    o.detail = o.pass ? std::to_string(passing) + " pass, " + std::to_string(failing) + " fail" : o.detail;
    return o;
  });

  criterion(6, "m_2 of W_can is associative and unital with unit e_alpha; m_1 = 0 when minimal", [] {
    Outcome o;
    std::mt19937 rng(113);
    for (int t = 0; t < 25; ++t) {
      const int d = 2 + t % 5;
      auto a = t % 2 ? full_loops(d) : random_alphabet(rng, d);
      auto m = extract_products(build_W_can(a), Pairing(a));
      o.require(check_ainfty(m, 3).pass, "associativity");
      o.require(check_strict_unit(m).strict, "unit");
      o.require(!m.has_m1(), "m_1 of W_can");
    }
    for (int t = 0; t < 40; ++t) {
      const int d = 2 + t % 5;
      auto a = full_loops(d);
      auto w = nonzero_series(rng, a, all_letters(*a), 3 - d, 3, 5, 3);
      if (w.is_zero()) continue;
      o.require(is_minimal(w) && !extract_products(w, Pairing(a)).has_m1(), "m_1 of a minimal potential");
    }
    return o;
  });

  criterion(7, "20 flows and 20 automorphisms preserve the master verdict and the Ext table", [] {
    Outcome o;
    std::mt19937 rng(127);
    const int N = 8;
    auto sample = [&](int t) {
      if (t % 4 == 3) return engineered_failure(one_vertex_alphabet(4, {{"x", 0}, {"y", -1}}));
      const int d = 3 + t % 3;
      auto a = full_loops(d);
      return lift_potential(nonzero_series(rng, a, w0_letters(*a), 3 - d, 3, 4, 2));
    };
    auto same_table = [](const CyclicSeries& p, const CyclicSeries& q) {
      return ext_table_from_quiver(p.alphabet().quiver()) == ext_table_from_quiver(q.alphabet().quiver()) &&
             is_minimal(q);
    };
    int fails_seen = 0;
    for (int t = 0; t < 20; ++t) {
      auto p = sample(t);
      const auto& a = p.alphabet_ptr();
      auto h = nonzero_series(rng, a, all_letters(*a), 2 - a->dimension(), 3, 4, 2);
      auto moved = hamiltonian_flow(h, p, N);
      const bool before = check_master(p).pass;
      fails_seen += before ? 0 : 1;
      o.require(check_master(moved).pass == before, "flow changed the verdict");
      o.require(same_table(p, moved), "flow changed the Ext table");
      auto expect = p;
      expect.truncate(N);
      o.require(hamiltonian_flow(-h, moved, N) == expect, "inverse flow");
    }
    for (int t = 0; t < 20; ++t) {
      auto p = sample(t);
      const auto& a = p.alphabet_ptr();
      auto h = nonzero_series(rng, a, all_letters(*a), 2 - a->dimension(), 3, 4, 2);
      auto phi = hamiltonian_automorphism(h, N).compose(dual_pair_scaling(rng, a), N);
      o.require(phi.problems().empty(), "automorphism inadmissible");
      auto moved = phi.apply(p, N);
      o.require(check_master(moved).pass == check_master(p).pass, "automorphism changed the verdict");
      o.require(same_table(p, moved), "automorphism changed the Ext table");
    }
    o.require(fails_seen > 0, "no failing potential in the sample");
    return o;
  });

  criterion(8, "Ext table, quiver and double quiver round trips; restrict(lift(W0)) = W0", [] {
    Outcome o;
    std::mt19937 rng(131);
    for (int d = 2; d <= 6; ++d) {
      for (int t = 0; t < 30; ++t) {
        auto table = random_ext_table(rng, d, 3, 3);
        auto q = quiver_from_ext_table(table);
        auto qbar = double_quiver(q);
        o.require(ext_table_from_quiver(qbar) == table, "Ext table from double quiver");
        o.require(quiver_from_ext_table(ext_table_from_quiver(qbar)) == q, "quiver from recovered table");
        o.require(quiver_from_json(parse_json(quiver_to_json(qbar).dump())) == qbar, "double quiver document");
        o.require(ext_table_from_json(parse_json(ext_table_to_json(table).dump())) == table, "table document");
      }
    }
    int done = 0;
    while (done < 100) {
      const int d = 3 + done % 4;
      auto a = done % 2 ? full_loops(d) : random_alphabet(rng, d);
      auto w0 = random_series(rng, a, w0_letters(*a), 3 - d, 3, 6, 3);
      auto back = restrict_series(lift_potential(w0), ideal_generators(*a));
      o.require(back == w0 && print_potential(back) == print_potential(w0), print_potential(w0));
      o.require(parse(a, print_potential(lift_potential(w0))) == lift_potential(w0), "print/parse");
      ++done;
    }
    return o;
  });

  criterion(9, "DGLA window for one loop in d = 3, k <= 6, under 30 s", [] {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    auto a = one_vertex_alphabet(3, {{"x", 0}});
    auto r = cohomology_ranks(a, 6);
    o.require(r.d_squared_zero, "D^2 = 0");
    o.require(r.direct_sum, "dim hat g = dim g_can + dim g");
    for (const auto& row : r.rows) {
      o.require(row.dim_hat == row.dim_can + row.dim_g, "direct sum at (" + std::to_string(row.n) + "," +
                                                         std::to_string(row.k) + ")");
      if (row.in_g_can && row.n > 1) {
        o.require(row.dim_h == 0, "H^" + std::to_string(row.n) + " at k=" + std::to_string(row.k));
      }
      if (row.h_rest > 0) o.require(row.n <= a->dimension() - 2, "non-alpha class above d-2");
    }
    o.require(r.g_can_vanishing, "H^{n>1}(g_can)");
    o.require(r.rest_degree_bound, "non-alpha degree bound");
    auto psi = psi_probe(a, 6);
    o.require(psi.closed_in_degree_one, "D Psi = 0 in degree 1");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 30.0, "took " + std::to_string(secs) + " s");
    return o;
  });

  criterion(10, "validation rejects odd middle dims and 2-cycles; d = 2 takes only W0 = 0", [] {
    Outcome o;
    std::mt19937 rng(137);
    for (int d : {2, 4, 6}) {
      for (int t = 0; t < 10; ++t) {
        auto table = random_ext_table(rng, d, 3, 3);
        const int i = static_cast<int>(rng() % table.vertices.size());
        table.dims[{i, i}][d / 2] = 1 + 2 * static_cast<int>(rng() % 2);
        auto report = validate_ext_table(table);
        bool named = false;
        for (const auto& v : report.violations) named = named || v.kind == "middle dimension odd";
        o.require(!report.ok() && named, "odd middle dimension accepted");
        bool thrown = false;
        try {
          quiver_from_ext_table(table);
        } catch (const Error& e) {
          thrown = e.code() == ErrorCode::invalid_quiver;
        }
        o.require(thrown, "quiver built from an invalid table");
      }
      const int mid = -(d - 2) / 2;
      GradedQuiver two{d, {"1", "2"}, {{"a", 0, 1, mid, -1, true}, {"b", 1, 0, mid, -1, true}}, true};
      auto report = validate_quiver(two);
      o.require(!report.ok() && report.summary().find("forbidden 2-cycle") != std::string::npos,
                "2-cycle accepted at d=" + std::to_string(d));
    }
    GradedQuiver ok2{2, {"1"}, {{"x", 0, 0, 0, -1, true}}, true};
    o.require(validate_quiver(ok2).ok(), "middle-degree loop rejected at d=2");
    GradedQuiver bad2{2, {"1"}, {{"x", 0, 0, -1, -1, true}}, true};
    o.require(!validate_quiver(bad2).ok(), "degree -1 arrow accepted at d=2");
    for (int t = 0; t < 20; ++t) {
      auto a = random_alphabet(rng, 2);
      o.require(lift_potential(CyclicSeries(a)) == build_W_can(a), "W0 = 0 at d=2");
      auto w0 = random_series(rng, a, w0_letters(*a), static_cast<int>(rng() % 3) - 1, 3, 5, 2);
      if (w0.is_zero()) continue;
      o.require(!admissibility_issues(w0).empty(), "nonzero W0 accepted at d=2");
    }
    return o;
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
