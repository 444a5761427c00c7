#include <doctest.h>

#include "fixtures.hpp"
#include "ltnn/compiler.hpp"
#include "ltnn/errors.hpp"
#include "ltnn/oracle.hpp"
#include "ltnn/random.hpp"

using namespace ltnn;
using fixtures::poly;
using fixtures::row;

namespace {

Rational eval(const CompileReport& r, const Vec& x) { return forward(r.network, x); }

const Polyhedron kUnitSquare = poly(2, {row({-1, 0}, 0), row({1, 0}, 1), row({0, -1}, 0), row({0, 1}, 1)});

}  // namespace

TEST_CASE("polyhedron indicator") {
  const auto net = compile_polyhedron_indicator(kUnitSquare);
  CHECK(net.widths() == std::vector<std::size_t>{4, 1});
  CHECK(forward_lt(net, {Rational(1, 2), Rational(1, 2)}).output == 1);
  CHECK(forward_lt(net, {2, 0}).output == 0);
  CHECK(forward_lt(net, {1, Rational(1, 2)}).output == 1);

  const auto everywhere = compile_polyhedron_indicator(Polyhedron::whole_space(3));
  CHECK(everywhere.size() == 1);
  CHECK(forward_lt(everywhere, {-4, 0, 9}).output == 1);

  const auto half = compile_polyhedron_indicator(poly(1, {row({-1}, 0)}));
  CHECK(half.size() == 2);
  CHECK(forward_lt(half, {0}).output == 1);
  CHECK(forward_lt(half, {Rational(-1, 100)}).output == 0);
}

TEST_CASE("relative interior as a signed sum of closed faces") {
  const auto step = fixtures::step_function();
  const auto terms = relint_terms(step.complex, 2);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].cell == 1);
  CHECK(terms[0].coefficient == -1);
  CHECK(terms[1].cell == 2);
  CHECK(terms[1].coefficient == 1);
  CHECK(terms[2].cell == 3);
  CHECK(terms[2].coefficient == -1);
  CHECK(eval_terms(step.complex, terms, {0}) == 0);
  CHECK(eval_terms(step.complex, terms, {Rational(1, 2)}) == 1);

  const auto point = relint_terms(step.complex, 1);
  REQUIRE(point.size() == 1);
  CHECK(point[0].coefficient == 1);

  const auto grid = fixtures::square_grid();
  const std::size_t square = locate(grid, {Rational(1, 2), Rational(1, 2)});
  const auto sq = relint_terms(grid.complex, square);
  CHECK(sq.size() == 9);
  CHECK(eval_terms(grid.complex, sq, {0, 0}) == 0);
  CHECK(eval_terms(grid.complex, sq, {Rational(1, 2), 1}) == 0);
  CHECK(eval_terms(grid.complex, sq, {Rational(1, 2), Rational(1, 2)}) == 1);
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const Vec x = rng.point(2, 2, 2);
    CHECK(eval_terms(grid.complex, sq, x) == (grid.complex.cell(square).in_relative_interior(x) ? 1 : 0));
  }

  const PolyhedralComplex missing(1, {poly(1, {row({-1}, 0), row({1}, 1)}), poly(1, {}, {row({1}, 0)})});
  try {
    relint_terms(missing, 0);
    FAIL("expected a missing-face error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("x1 = 1") != std::string::npos);
  }
}

TEST_CASE("exact compilation of the step function") {
  const auto spec = fixtures::step_function();
  const auto r = compile_pwc_exact(spec);
  CHECK(r.within_bound());
  CHECK(r.bound == 15);
  for (const Rational& x : {Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
    CHECK(eval(r, {x}) == eval_spec(spec, {x}));
  }
  CHECK(std::get<LtNetwork>(r.network).hidden.size() == 2);
}

TEST_CASE("exact compilation of a constant") {
  const auto r = compile_pwc_exact(fixtures::constant(2, Rational(-7, 2)));
  CHECK(r.size <= 3);
  CHECK(eval(r, {5, -5}) == Rational(-7, 2));
  const auto zero = compile_pwc_exact(fixtures::constant(1, 0));
  CHECK(eval(zero, {3}) == 0);
}

TEST_CASE("exact compilation of the unit square indicator") {
  const auto spec = fixtures::square_grid();
  const auto r = compile_pwc_exact(spec);
  CHECK(r.within_bound());
  const auto report = oracle::sample_equivalence(r.network, spec, 2000, 1);
  CHECK(report.ok());
}

TEST_CASE("exact compilation rejects an incomplete complex") {
  const PwcSpec spec{PolyhedralComplex(1, {poly(1, {row({1}, 0)}), poly(1, {row({-1}, 0)})}), {0, 1}};
  CHECK_THROWS_WITH_AS(compile_pwc_exact(spec), doctest::Contains("not a cell"), InputError);
}

TEST_CASE("a.e. compilation") {
  const auto step = fixtures::step_function();
  const auto r = compile_pwc_ae(step);
  CHECK(r.size <= 7);
  CHECK(r.bound == 7);
  for (const Rational& x : {Rational(-3), Rational(-1, 2), Rational(1, 2), Rational(3, 2), Rational(9)}) {
    CHECK(eval(r, {x}) == eval_spec(step, {x}));
  }

  const auto half = compile_pwc_ae(fixtures::halfplane_indicator());
  CHECK(half.size <= 4);
  CHECK(half.bound == 4);

  const auto diag = fixtures::diagonal_square();
  const auto d = compile_pwc_ae(diag);
  CHECK(d.size <= 16);
  CHECK(d.pieces == 5);
  const auto report = oracle::sample_equivalence(d.network, diag, 3000, 2, oracle::SampleMode::OpenCells);
  CHECK(report.total_samples == 3000);
  CHECK(report.ok());

  CHECK_THROWS_AS(compile_pwc_ae(fixtures::constant(2, 1)), RefusalError);
}

TEST_CASE("a.e. disagreements lie on facet hyperplanes") {
  const auto diag = fixtures::diagonal_square();
  const auto d = compile_pwc_ae(diag);
  const auto planes = facet_hyperplanes(diag.complex);
  const auto report = oracle::sample_equivalence(d.network, diag, 500, 3, oracle::SampleMode::AllCells, 8);
  for (const auto& m : report.mismatches) {
    CHECK(std::any_of(planes.begin(), planes.end(), [&](const Hyperplane& h) { return h.contains(m.point); }));
  }
}

TEST_CASE("shortcut compilation of piecewise linear functions") {
  const auto id = compile_pwl_slt(fixtures::identity_spec());
  for (long x : {-2, 0, 3}) CHECK(eval(id, {x}) == x);

  const auto jump = fixtures::jump_spec();
  const auto j = compile_pwl_slt(jump);
  CHECK(j.within_bound());
  CHECK(eval(j, {-1}) == 0);
  CHECK(eval(j, {0}) == 1);
  CHECK(eval(j, {2}) == 3);

  const auto abs = compile_pwl_slt(fixtures::abs_spec());
  CHECK(eval(abs, {-3}) == 3);
  CHECK(eval(abs, {0}) == 0);
  CHECK(eval(abs, {Rational(7, 2)}) == Rational(7, 2));
}

TEST_CASE("continuous shortcut compilation") {
  const auto abs = compile_cpwl_slt(fixtures::abs_spec());
  CHECK(abs.size <= 5);
  CHECK(eval(abs, {0}) == 0);
  CHECK(eval(abs, {-3}) == 3);

  const auto mx = compile_cpwl_slt(fixtures::max_spec());
  CHECK(mx.size <= 5);
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    const Rational t = rng.rational(5, 50);
    CHECK(eval(mx, {t, t}) == t);
    const Vec x = rng.point(2, 5, 50);
    CHECK(eval(mx, x) == std::max(x[0], x[1]));
  }

  const auto affine = compile_cpwl_slt(fixtures::identity_spec());
  CHECK(affine.size <= 2);
  CHECK(eval(affine, {5}) == 5);

  CHECK_THROWS_AS(compile_cpwl_slt(fixtures::jump_spec()), RefusalError);
  auto lying = fixtures::jump_spec();
  lying.continuous = true;
  CHECK_THROWS_AS(compile_cpwl_slt(lying), InputError);
}

TEST_CASE("parity network") {
  const auto p3 = generate_parity(3);
  CHECK(p3.widths() == std::vector<std::size_t>{3, 3, 1});
  CHECK(p3.size() == 7);
  CHECK(forward_lt(p3, {1, -1, -1}).output == 1);
  CHECK(forward_lt(p3, {1, 1, -1}).output == 0);

  Rng rng(12);
  for (std::size_t n : {2, 5, 8}) {
    const auto net = generate_parity(n);
    for (int i = 0; i < 300; ++i) {
      Vec x = rng.point(n, 3, 20);
      for (auto& q : x) {
        if (q == 0) q = 1;
      }
      CHECK(forward_lt(net, x).output == oracle::product_sign(x));
      // Flipping two signs keeps the product sign.
      Vec y = x;
      y[0] = -y[0];
      y[n - 1] = -y[n - 1];
      CHECK(forward_lt(net, y).output == forward_lt(net, x).output);
    }
  }
  CHECK_THROWS_AS(generate_parity(0), InputError);
}

TEST_CASE("braid network") {
  const auto b3 = generate_braid(3);
  CHECK(b3.size() == 7);
  CHECK(forward_lt(b3, {1, 2, 3}).output == 1);
  CHECK(forward_lt(b3, {2, 1, 3}).output == 0);

  Rng rng(21);
  for (std::size_t n : {2, 4, 5}) {
    const auto net = generate_braid(n);
    CHECK(net.size() == n * (n - 1) + 1);
    for (int i = 0; i < 300; ++i) {
      Vec x = rng.point(n, 10, 1000);
      CHECK(forward_lt(net, x).output == oracle::braid_sign(x));
      // A transposition flips the sign.
      Vec y = x;
      std::swap(y[0], y[1]);
      if (oracle::braid_sign(x) + oracle::braid_sign(y) == 1) {
        CHECK(forward_lt(net, y).output != forward_lt(net, x).output);
      }
    }
  }
  CHECK_THROWS_AS(generate_braid(1), InputError);
}

TEST_CASE("generator reports meet their bounds") {
  for (std::size_t n = 1; n <= 8; ++n) CHECK(report_parity(n).within_bound());
  for (std::size_t n = 2; n <= 6; ++n) CHECK(report_braid(n).within_bound());
  CHECK(parse_compile_mode("slt-cpwl") == CompileMode::SltCpwl);
  CHECK_THROWS_AS(parse_compile_mode("relu"), InputError);
}
