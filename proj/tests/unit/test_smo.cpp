#include <cmath>

#include "doctest.h"
#include "dual_oracle.hpp"
#include "problems.hpp"
#include "salesig/errors.hpp"
#include "salesig/svm/smo.hpp"

using namespace salesig;
using namespace salesig::svm;

TEST_CASE("two points: boundary at the midpoint, both are support vectors") {
  const std::vector<Point> pts{{-1.0}, {1.0}};
  const std::vector<int> y{-1, 1};
  const auto m = solve_binary(pts, y, {KernelKind::Linear}, 10.0);
  CHECK(m.support_vectors.size() == 2);
  CHECK(predict_decision(m, std::vector<double>{0.0}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(predict_decision(m, std::vector<double>{1.0}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(predict_decision(m, std::vector<double>{-1.0}) == doctest::Approx(-1.0).epsilon(1e-6));
  // alpha = 1/2 for each point: w = 1, margin 1
  for (double a : m.dual_coefs) CHECK(std::abs(a) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("xor with an rbf kernel is learned exactly and matches the oracle") {
  const std::vector<Point> pts{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  const std::vector<int> y{-1, -1, 1, 1};
  const KernelConfig rbf{KernelKind::Rbf, 1.0};
  const GramMatrix g(rbf, pts);
  SmoOptions opts;
  opts.tol = 1e-10;
  const auto r = smo_solve(g, pts, y, rbf, 10.0, opts);
  CHECK(r.converged);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(predict_decision(r.model, pts[i]) * y[i] > 0);

  problems::Binary p{pts, y, rbf, 10.0};
  const auto ref = oracle::solve(problems::kernel_rows(p), y, 10.0);
  CHECK(std::abs(r.objective - ref.objective) < 1e-6);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(oracle::decision(problems::kernel_rows(p), y, ref, i) * y[i] > 0);
}

TEST_CASE("returned models satisfy the equality constraint and box") {
  Rng rng(47);
  for (int t = 0; t < 100; ++t) {
    const auto p = problems::random_binary(rng, 30, 4, t % 2 == 0);
    const GramMatrix g(p.kernel, p.points);
    const auto r = smo_solve(g, p.points, p.labels, p.kernel, p.c);
    CHECK(problems::equality_residual(r.alpha, p.labels) <= 1e-8);
    for (std::size_t i = 0; i < r.alpha.size(); ++i) {
      CHECK(r.alpha[i] >= 0.0);
      CHECK(r.alpha[i] <= p.c);
    }
    CHECK(r.converged);
    CHECK(problems::max_kkt_violation(r, p) < 1e-3);
  }
}

TEST_CASE("the dual objective never decreases") {
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    const auto p = problems::random_binary(rng, 25, 3, t % 2 == 1);
    const GramMatrix g(p.kernel, p.points);
    SmoOptions opts;
    opts.tol = 1e-8;
    bool monotone = true;
    opts.observer = [&](const SmoStep& s) {
      if (s.objective_after < s.objective_before - 1e-12) monotone = false;
    };
    const auto r = smo_solve(g, p.points, p.labels, p.kernel, p.c, opts);
    CHECK(monotone);
    CHECK(r.objective == doctest::Approx(dual_objective(g, p.labels, r.alpha)).epsilon(1e-9));
  }
}

TEST_CASE("only points with positive alpha are kept") {
  Rng rng(59);
  const auto p = problems::random_binary(rng, 30, 2, true);
  const GramMatrix g(p.kernel, p.points);
  const auto r = smo_solve(g, p.points, p.labels, p.kernel, p.c);
  std::size_t positive = 0;
  for (double a : r.alpha) positive += a > 0.0;
  CHECK(r.model.support_vectors.size() == positive);
  for (double c : r.model.dual_coefs) CHECK(c != 0.0);
}

TEST_CASE("class weights scale the box per label") {
  const std::vector<Point> pts{{0.0}, {0.1}, {1.0}, {1.1}, {0.05}};
  const std::vector<int> y{-1, -1, 1, 1, 1};
  const KernelConfig lin{KernelKind::Linear};
  const GramMatrix g(lin, pts);
  const auto r = smo_solve(g, pts, y, lin, 1.0, {}, 2.0, 0.5);
  CHECK(r.bounds == std::vector<double>{0.5, 0.5, 2.0, 2.0, 2.0});
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(r.alpha[i] <= r.bounds[i]);
}

TEST_CASE("solver contract errors") {
  const KernelConfig lin{KernelKind::Linear};
  CHECK_THROWS_AS(solve_binary({{1.0}}, std::vector<int>{1}, lin, 1.0), ContractError);
  CHECK_THROWS_AS(solve_binary({{1.0}, {2.0}}, std::vector<int>{1, 1}, lin, 1.0), ContractError);
  CHECK_THROWS_AS(solve_binary({{1.0}, {2.0}}, std::vector<int>{1, 0}, lin, 1.0), ContractError);
  CHECK_THROWS_AS(solve_binary({{1.0}, {2.0}}, std::vector<int>{1}, lin, 1.0), ContractError);
  CHECK_THROWS_AS(solve_binary({{1.0}, {2.0}}, std::vector<int>{1, -1}, lin, 0.0), ConfigError);
}

TEST_CASE("identical inputs give bit-identical models") {
  Rng a(61), b(61);
  const auto p = problems::random_binary(a, 30, 3, true);
  const auto q = problems::random_binary(b, 30, 3, true);
  CHECK(solve_binary(p.points, p.labels, p.kernel, p.c) == solve_binary(q.points, q.labels, q.kernel, q.c));
}
