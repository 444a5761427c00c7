#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "ltnn/compiler.hpp"
#include "ltnn/errors.hpp"
#include "ltnn/oracle.hpp"
#include "ltnn/random.hpp"

using namespace ltnn;

TEST_CASE("brute_dichotomies examples") {
  CHECK(oracle::brute_dichotomies({{0, 0}, {1, 0}, {0, 1}, {1, 1}}).size() == 14);
  CHECK(oracle::brute_dichotomies({{0}, {1}}).size() == 4);
  CHECK(oracle::brute_dichotomies({{0}, {1}, {2}}).size() == 6);
  std::vector<Vec> many(21, Vec{0});
  CHECK_THROWS_AS(oracle::brute_dichotomies(many), InputError);
}

TEST_CASE("brute_erm examples") {
  const Dataset xr{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 1, 1, 0}};
  CHECK(oracle::brute_erm(xr, {2, {2, 1}}, Loss::Abs) == 0);
  const Dataset flat{{{0}, {1}, {2}}, {4, 4, 4}};
  CHECK(oracle::brute_erm(flat, {1, {1}}, Loss::Abs) == 0);
  const Dataset single{{{3, 1}}, {Rational(-2, 7)}};
  CHECK(oracle::brute_erm(single, {2, {1}}, Loss::Square) == 0);
  CHECK(oracle::brute_erm(single, {2, {2, 2}}, Loss::Abs) == 0);
}

TEST_CASE("sampling equivalence") {
  const auto grid = fixtures::square_grid();
  const auto exact = compile_pwc_exact(grid);
  const auto r = oracle::sample_equivalence(exact.network, grid, 10000, 9);
  CHECK(r.ok());
  CHECK(r.total_samples > 10000);
  CHECK(r.seed == 9);
  const auto again = oracle::sample_equivalence(exact.network, grid, 10000, 9);
  CHECK(again.total_samples == r.total_samples);

  const auto step = fixtures::step_function();
  const auto ae = compile_pwc_ae(step);
  CHECK(oracle::sample_equivalence(ae.network, step, 2000, 4, oracle::SampleMode::OpenCells).ok());

  // A wrong network is caught.
  const auto wrong = compile_pwc_exact(fixtures::constant(2, 1));
  CHECK_FALSE(oracle::sample_equivalence(wrong.network, grid, 200, 1).ok());
  CHECK_THROWS_AS(oracle::sample_equivalence(ae.network, grid, 10, 1), InputError);
}

TEST_CASE("parity network against the product-sign oracle") {
  const LtNetwork net = generate_parity(5);
  Rng rng(6);
  std::vector<Vec> pts;
  while (pts.size() < 1000) {
    Vec x = rng.point(5, 4, 100);
    if (std::any_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; })) continue;
    pts.push_back(std::move(x));
  }
  const auto r = oracle::compare_on_points(net, pts, [](const Vec& x) { return Rational(oracle::product_sign(x)); });
  CHECK(r.ok());
  CHECK(r.total_samples == 1000);
}

TEST_CASE("sign oracles") {
  CHECK(oracle::product_sign({1, -1, -1}) == 1);
  CHECK(oracle::product_sign({1, 0}) == 0);
  CHECK(oracle::product_sign({-2}) == 0);
  CHECK(oracle::braid_sign({1, 2, 3}) == 1);
  CHECK(oracle::braid_sign({2, 1, 3}) == 0);
  CHECK(oracle::braid_sign({1, 1, 3}) == 0);
  CHECK(oracle::braid_sign({3, 2, 1}) == 0);
}

TEST_CASE("cell sampling stays in the relative interior") {
  const auto diag = fixtures::diagonal_square();
  for (const auto& c : diag.complex.cells()) {
    const auto pts = oracle::sample_cell(c, 5, 1);
    CHECK(pts.size() == 5);
    for (const auto& x : pts) CHECK(in_relative_interior(c, x));
  }
}
