#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyq/error.hpp"
#include "support.hpp"

using namespace cyq;
using namespace cyq::testing;

namespace {

CyclicSeries bracket(const CyclicSeries& f, const CyclicSeries& g) { return necklace_bracket(f, g); }

int coh(const CyclicSeries& f) {
  return f.homogeneous_degree().value_or(0) + f.alphabet().dimension() - 2;
}

}  // namespace

TEST_CASE("cyclic derivatives of W_can match their closed forms") {
  for (int d : {2, 4, 6}) {
    auto a = one_vertex_alphabet(d, {{"x", 0}});
    auto w = build_W_can(a);
    CHECK(print_path(cyclic_derivative(w, a->alpha(0))) ==
          "alpha_1*beta_1 + x*xi:x - xi:x*x + beta_1*alpha_1");
    CHECK(print_path(cyclic_derivative(w, a->find("x").value())) ==
          "-alpha_1*xi:x + xi:x*alpha_1");
  }
  // Odd d: the same formulas carry the Koszul signs of the rotations.
  auto a = one_vertex_alphabet(3, {{"x", 0}});
  auto w = build_W_can(a);
  CHECK(print_path(cyclic_derivative(w, a->alpha(0))) ==
        "alpha_1*beta_1 + x*xi:x - xi:x*x - beta_1*alpha_1");
  CHECK(print_path(cyclic_derivative(w, a->find("x").value())) ==
        "-alpha_1*xi:x - xi:x*alpha_1");
}

TEST_CASE("cyclic derivative examples") {
  auto a = one_vertex_alphabet(4, {{"x", 0}, {"y", 0}});
  const Letter x = a->find("x").value(), y = a->find("y").value();
  auto d1 = cyclic_derivative(parse(a, "alpha_1*alpha_1*beta_1"), a->alpha(0));
  CHECK(print_path(d1) == "alpha_1*beta_1 + beta_1*alpha_1");
  auto d2 = cyclic_derivative(parse(a, "alpha_1*x*xi:x - alpha_1*xi:x*x"), x);
  CHECK(print_path(d2) == "-alpha_1*xi:x + xi:x*alpha_1");
  auto d3 = cyclic_derivative(parse(a, "x*x*x"), x);
  CHECK(print_path(d3) == "3*x*x");
  CHECK(cyclic_derivative(parse(a, "x*x*x"), y).is_zero());
}

TEST_CASE("bracket examples") {
  auto a = one_vertex_alphabet(3, {{"x", 0}});
  CHECK(bracket(parse(a, "x*x*x"), parse(a, "xi:x")) == parse(a, "3*x*x"));
  auto p = parse(a, "alpha_1*alpha_1*beta_1");
  CHECK(bracket(p, p).is_zero());
  auto w = build_W_can(a);
  CHECK(print_potential(w) == "alpha_1*alpha_1*beta_1 + alpha_1*x*xi:x - alpha_1*xi:x*x");
  CHECK(bracket(w, w).is_zero());
}

TEST_CASE("W_can satisfies the master equation") {
  for (int d = 2; d <= 6; ++d) {
    auto a = full_loops(d);
    auto w = build_W_can(a);
    CHECK(w.homogeneous_degree() == 3 - d);
    CHECK(w.min_length() == 3);
    CHECK(check_master(w).pass);
  }
  CHECK(print_potential(build_W_can(one_vertex_alphabet(3, {}))) == "alpha_1*alpha_1*beta_1");

  GradedQuiver q{3, {"1", "2"}, {{"a", 0, 1, 0, -1, true}}, true};
  auto a = Alphabet::from_double_quiver(double_quiver(q));
  auto w = build_W_can(a);
  CHECK(w == parse(a, "alpha_1*alpha_1*beta_1 + alpha_2*alpha_2*beta_2 + alpha_1*a*xi:a - "
                      "alpha_2*xi:a*a"));
  CHECK(check_master(w).pass);
}

TEST_CASE("W_can on random multi-vertex quivers") {
  std::mt19937 rng(17);
  for (int d = 2; d <= 6; ++d) {
    for (int t = 0; t < 8; ++t) {
      auto table = random_ext_table(rng, d, 3, 2);
      auto a = Alphabet::from_double_quiver(double_quiver(quiver_from_ext_table(table)));
      CHECK(check_master(build_W_can(a)).pass);
    }
  }
}

TEST_CASE("graded antisymmetry, Jacobi and the degree law") {
  std::mt19937 rng(23);
  for (int d = 2; d <= 6; ++d) {
    auto a = full_loops(d);
    const auto letters = all_letters(*a);
    std::uniform_int_distribution<int> deg(-2 * d, 2);
    for (int t = 0; t < 12; ++t) {
      auto f = random_series(rng, a, letters, deg(rng), 1, 4, 3);
      auto g = random_series(rng, a, letters, deg(rng), 1, 4, 3);
      auto h = random_series(rng, a, letters, deg(rng), 1, 4, 3);
      const int cf = coh(f), cg = coh(g);
      auto fg = bracket(f, g);
      CHECK(fg == Rational(-koszul_sign(cf, cg)) * bracket(g, f));
      auto lhs = bracket(f, bracket(g, h));
      auto rhs = bracket(fg, h) + Rational(koszul_sign(cf, cg)) * bracket(g, bracket(f, h));
      CHECK(lhs == rhs);
      if (!fg.is_zero()) {
        CHECK(fg.homogeneous_degree() == f.homogeneous_degree().value() +
                                             g.homogeneous_degree().value() + d - 2);
      }
      for (const auto& [w, c] : fg.terms()) {
        bool found = false;
        for (const auto& [u, cu] : f.terms()) {
          for (const auto& [v, cv] : g.terms()) {
            found = found || w.letters.size() + 2 == u.letters.size() + v.letters.size();
          }
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("cyclic identity and the cross term") {
  std::mt19937 rng(29);
  for (int d = 2; d <= 6; ++d) {
    auto a = full_loops(d);
    for (int t = 0; t < 10; ++t) {
      auto p = random_series(rng, a, all_letters(*a), static_cast<int>(rng() % 5) - 3, 1, 6, 4);
      CHECK(all_zero(cyclic_identity_residual(p)));
    }
  }
  for (int d = 3; d <= 6; ++d) {
    auto a = full_loops(d);
    for (int t = 0; t < 10; ++t) {
      auto w0 = random_series(rng, a, w0_letters(*a), 3 - d, 3, 6, 4);
      CHECK(admissibility_issues(w0).empty());
      CHECK(bracket(build_W_can(a), w0).is_zero());
      auto w = lift_potential(w0);
      CHECK(bracket(w, w) == bracket(w0, w0));
    }
  }
}

TEST_CASE("lift and master-equation examples") {
  auto a = one_vertex_alphabet(3, {{"x", 0}});
  auto w = lift_potential(parse(a, "x*x*x"));
  CHECK(print_potential(w) ==
        "alpha_1*alpha_1*beta_1 + alpha_1*x*xi:x - alpha_1*xi:x*x + x*x*x");
  CHECK(check_master(w).pass);
  CHECK(lift_potential(CyclicSeries(a)) == build_W_can(a));

  auto b = one_vertex_alphabet(4, {{"x", 0}, {"y", -1}});
  auto w4 = lift_potential(parse(b, "x*x*y + x*x*xi:y"));
  auto report = check_master(w4);
  CHECK_FALSE(report.pass);
  REQUIRE(report.residual.size() == 1);
  const Letter x = b->find("x").value();
  CHECK(report.residual.terms().begin()->first.letters == Word{x, x, x, x});

  try {
    lift_potential(parse(a, "alpha_1*x*x*xi:x"));
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inadmissible_potential);
  }
  auto issues = admissibility_issues(parse(a, "x*x*xi:x"));
  REQUIRE(!issues.empty());
  CHECK(issues[0].reason.find("degree-impossible variable") != std::string::npos);
  CHECK(!admissibility_issues(parse(a, "x*x")).empty());
  CHECK_THROWS_AS(check_master(parse(a, "x*x*x + xi:x*x*x")), Error);

  // d = 2 admits no nonzero W0.
  auto c = one_vertex_alphabet(2, {{"x", 0}});
  CHECK(!admissibility_issues(parse(c, "x*x*x")).empty());
  CHECK(!admissibility_issues(parse(c, "x*x*xi:x")).empty());
  CHECK(lift_potential(CyclicSeries(c)) == build_W_can(c));
}

TEST_CASE("Maurer-Cartan check") {
  auto a = one_vertex_alphabet(3, {{"x", 0}});
  CHECK(maurer_cartan_check(parse(a, "x*x*x")).pass);
  CHECK(maurer_cartan_check(CyclicSeries(a)).pass);
  CHECK_THROWS_AS(maurer_cartan_check(parse(a, "x*xi:x")), Error);
  auto b = one_vertex_alphabet(4, {{"x", 0}, {"y", -1}});
  auto r = maurer_cartan_check(parse(b, "x*x*y + x*x*xi:y"));
  CHECK_FALSE(r.pass);
  CHECK(r.residual == Rational(1, 2) * check_master(lift_potential(parse(b, "x*x*y + x*x*xi:y"))).residual);
}

TEST_CASE("Hamiltonian derivation agrees with the bracket") {
  std::mt19937 rng(31);
  for (int d = 2; d <= 6; ++d) {
    auto a = full_loops(d);
    for (int t = 0; t < 10; ++t) {
      auto h = random_series(rng, a, all_letters(*a), static_cast<int>(rng() % 4) - 2 - d / 2, 1, 4, 3);
      auto p = random_series(rng, a, all_letters(*a), static_cast<int>(rng() % 4) - 2, 1, 4, 3);
      CHECK(apply_derivation(hamiltonian_derivation(h), p) == bracket(h, p));
    }
  }
}

TEST_CASE("Hamiltonian flows") {
  auto a = one_vertex_alphabet(3, {{"x", 0}});
  auto p = lift_potential(parse(a, "x*x*x"));
  // {x*x*xi, .} kills nothing here but the master equation survives the flow.
  auto h = parse(a, "x*x*xi:x");
  auto moved = hamiltonian_flow(h, p, 8);
  CHECK(moved.precision() == 8);
  CHECK(check_master(moved).residual.min_length() > 8);
  auto back = hamiltonian_flow(-h, moved, 8);
  auto expect = p;
  expect.truncate(8);
  CHECK(back == expect);

  CHECK_THROWS_AS(hamiltonian_flow(parse(a, "x*xi:x"), p), Error);
  CHECK_THROWS_AS(hamiltonian_flow(parse(a, "x*x*x"), p), Error);

  // {h, P} = 0 leaves P fixed.
  auto b = one_vertex_alphabet(3, {{"x", 0}, {"y", 0}});
  auto q = parse(b, "x*x*x");
  auto hq = parse(b, "x*x*xi:y");
  CHECK(bracket(hq, q).is_zero());
  CHECK(hamiltonian_flow(hq, q) == q);
}

TEST_CASE("automorphisms and gauge projection") {
  auto a = one_vertex_alphabet(3, {{"x", 0}});
  const Letter x = a->find("x").value(), xi = a->find("xi:x").value();
  auto p = lift_potential(parse(a, "x*x*x"));
  auto id = Automorphism::identity(a);
  CHECK(id.problems().empty());
  CHECK(id.apply(p) == p);

  auto images = id.images();
  images[x] = parse_path("2*x", a, 0, 0);
  images[xi] = parse_path("1/2*xi:x", a, 0, 0);
  Automorphism scale(a, images);
  CHECK(scale.problems().empty());
  CHECK(scale.apply(p) == lift_potential(parse(a, "8*x*x*x")));

  auto bad = id.images();
  bad[x] = parse_path("x - x", a, 0, 0);
  CHECK(!Automorphism(a, bad).problems().empty());
  bad = id.images();
  bad[x] = parse_path("xi:x", a, 0, 0);
  CHECK(!Automorphism(a, bad).problems().empty());
  CHECK_THROWS_AS(project_gauge(Automorphism(a, bad)), Error);

  auto nl = id.images();
  nl[x] = parse_path("x + x*x", a, 0, 0);
  auto proj = project_gauge(Automorphism(a, nl));
  CHECK(print_path(proj.image(x)) == "x + x*x");

  // Ideal generators must map into the ideal.
  auto off = id.images();
  off[a->alpha(0)] = parse_path("alpha_1 + alpha_1*x", a, 0, 0);
  off[x] = parse_path("x + alpha_1*xi:x", a, 0, 0);
  auto proj2 = project_gauge(Automorphism(a, off));
  CHECK(print_path(proj2.image(x)) == "x");
}

TEST_CASE("exp of a Hamiltonian derivation matches the flow") {
  std::mt19937 rng(37);
  for (int d = 3; d <= 5; ++d) {
    auto a = full_loops(d);
    for (int t = 0; t < 5; ++t) {
      auto h = random_series(rng, a, all_letters(*a), 2 - d, 3, 4, 2);
      auto phi = hamiltonian_automorphism(h, 6);
      CHECK(phi.problems().empty());
      auto p = lift_potential(random_series(rng, a, w0_letters(*a), 3 - d, 3, 4, 2));
      CHECK(phi.apply(p, 6) == hamiltonian_flow(h, p, 6));
    }
  }
}

TEST_CASE("gauge projection is functorial") {
  std::mt19937 rng(41);
  for (int d = 3; d <= 6; ++d) {
    auto a = full_loops(d);
    for (int t = 0; t < 6; ++t) {
      auto phi = random_gauge(rng, a, 3);
      auto psi = random_gauge(rng, a, 3);
      REQUIRE(phi.problems().empty());
      auto lhs = project_gauge(phi.compose(psi, 6));
      auto rhs = project_gauge(phi).compose(project_gauge(psi), 6);
      for (std::size_t z = 0; z < a->size(); ++z) {
        if (a->is_ideal_generator(static_cast<Letter>(z))) continue;
        CHECK(lhs.image(static_cast<Letter>(z)) == rhs.image(static_cast<Letter>(z)));
      }
    }
  }
}
