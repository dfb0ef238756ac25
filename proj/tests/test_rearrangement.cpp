// Copyright 2026 The ncerg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "ncerg/dynamics.hpp"
#include "ncerg/oracles.hpp"
#include "ncerg/random.hpp"
#include "ncerg/rearrangement.hpp"

using namespace ncerg;
using Catch::Approx;

TEST_CASE("distribution function") {
  const auto s3 = AlgebraShape::atoms({1.0, 1.0, 1.0});
  const Operator x = Operator::diagonal(s3, {3.0, 1.0, 2.0});
  CHECK(distribution(x, 1.5) == Approx(2.0));
  CHECK(distribution(x, 3.0) == Approx(0.0));  // strict inequality at the top
  CHECK(distribution(x, 0.0) == Approx(3.0));  // invertible: full trace
  CHECK_THROWS_AS(distribution(x, -1.0), std::invalid_argument);

  // non-increasing in lambda
  Rng rng(201);
  const auto shape = random_shape(rng);
  const Operator y = random_operator(shape, rng);
  double prev = distribution(y, 0.0);
  for (double l = 0.1; l < 5.0; l += 0.1) {
    const double d = distribution(y, l);
    CHECK(d <= prev + 1e-12);
    prev = d;
  }
}

TEST_CASE("mu step function") {
  const auto s3 = AlgebraShape::atoms({1.0, 1.0, 1.0});
  const StepFunction f = mu(Operator::diagonal(s3, {3.0, 1.0, 2.0}));
  REQUIRE(f.knots.size() == 3);
  CHECK(f(0.5) == Approx(3.0));
  CHECK(f(1.5) == Approx(2.0));
  CHECK(f(2.5) == Approx(1.0));
  CHECK(f(3.5) == 0.0);

  const auto sq = AlgebraShape::atoms({0.25});
  const StepFunction g = mu(Operator::diagonal(sq, {5.0}));
  REQUIRE(g.knots.size() == 1);
  CHECK(g.knots[0].first == Approx(0.25));
  CHECK(g.knots[0].second == Approx(5.0));
}

TEST_CASE("mu against the infimum-definition oracle") {
  Rng rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const auto shape = random_shape(rng, 3, 6);
    const Operator x = random_operator(shape, rng);
    const StepFunction f = mu(x);
    const double t_max = shape.total_trace() * 1.02;
    for (int k = 0; k < 200; ++k) {
      const double t = uniform(rng, 0.0, t_max);
      CHECK(std::abs(f(t) - oracles::mu_at(x, t)) < 1e-9);
    }
  }
}

TEST_CASE("partial integral") {
  const auto s3 = AlgebraShape::atoms({1.0, 1.0, 1.0});
  const Operator x = Operator::diagonal(s3, {3.0, 1.0, 2.0});
  const StepFunction f = mu(x);
  CHECK(partial_integral(f, 2.0) == Approx(5.0));
  CHECK(partial_integral(f, 0.0) == 0.0);
  CHECK(partial_integral(f, 100.0) == Approx(norm_tr(x)));
  CHECK_THROWS_AS(partial_integral(f, -0.5), std::invalid_argument);

  // concave and non-decreasing in s
  Rng rng(203);
  const StepFunction g = mu(random_operator(random_shape(rng), rng));
  double prev = 0.0, prev_inc = std::numeric_limits<double>::infinity();
  const double h = g.support_end() / 64.0;
  for (int i = 1; i <= 70; ++i) {
    const double v = partial_integral(g, i * h);
    const double inc = v - prev;
    CHECK(v >= prev - 1e-12);
    CHECK(inc <= prev_inc + 1e-12);
    prev = v;
    prev_inc = inc;
  }
}

TEST_CASE("submajorization checks") {
  Rng rng(204);
  const auto shape = random_shape(rng);
  const StepFunction f = mu(random_operator(shape, rng));
  CHECK(hl_leq(f, f));
  CHECK(hl_leq(StepFunction{}, f));

  // Dunford-Schwartz contraction submajorizes; the knot check agrees with a
  // dense-grid brute force
  Eigen::MatrixXd m(4, 4);
  m << 0.3, 0.2, 0.0, 0.1,
       0.1, 0.4, 0.2, 0.0,
       0.0, 0.1, 0.5, 0.2,
       0.2, 0.0, 0.1, 0.4;
  const auto s4 = AlgebraShape::atoms({1.0, 1.0, 1.0, 1.0});
  const Superoperator t = diagonal_action(s4, m);
  REQUIRE(verify_ds_plus(t).verdict);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> vals(4);
    for (auto& v : vals) v = uniform(rng, 0.0, 4.0);
    const Operator x = Operator::diagonal(s4, vals);
    const StepFunction a = mu(apply(t, x));
    const StepFunction b = mu(x);
    CHECK(hl_leq(a, b));
    CHECK(oracles::hl_leq_dense(a, b));
  }
}

TEST_CASE("rearrangement invariances") {
  Rng rng(205);
  for (int trial = 0; trial < 20; ++trial) {
    const auto shape = random_shape(rng, 2, 5);
    const Operator x = random_operator(shape, rng);

    // scaling, compared between knots (knot positions themselves carry
    // eigensolver-level fuzz)
    const double c = uniform(rng, 0.0, 3.0);
    const StepFunction sa = mu(c * x);
    const StepFunction sb = scale(mu(x), c);
    std::vector<double> cuts{0.0, std::max(sa.support_end(), sb.support_end()) + 0.1};
    for (const auto& [end, val] : sa.knots) cuts.push_back(end);
    for (const auto& [end, val] : sb.knots) cuts.push_back(end);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double t = 0.5 * (cuts[k] + cuts[k + 1]);
      if (cuts[k + 1] - cuts[k] < 1e-9) continue;
      CHECK(sa(t) == Approx(sb(t)).margin(1e-10 * (1.0 + c * norm_inf(x))));
    }

    // unitary conjugation leaves mu unchanged
    Operator u = Operator::zero(shape);
    for (std::size_t k = 0; k < shape.block_count(); ++k) {
      const Matrix a = random_operator(shape, rng).blocks[k];
      u.blocks[k] = Eigen::HouseholderQR<Matrix>(a).householderQ();
    }
    const StepFunction fa = mu(u * x * adjoint(u));
    const StepFunction fb = mu(x);
    REQUIRE(fa.knots.size() == fb.knots.size());
    for (std::size_t i = 0; i < fa.knots.size(); ++i) {
      CHECK(fa.knots[i].first == Approx(fb.knots[i].first).margin(1e-9));
      CHECK(fa.knots[i].second == Approx(fb.knots[i].second).margin(1e-9));
    }

    // total integral and value at 0+
    CHECK(total_integral(fb) == Approx(norm_tr(x)).margin(1e-10));
    CHECK(fb.sup_value() == Approx(norm_inf(x)).margin(1e-10));
  }
}

TEST_CASE("mu of a projection is a characteristic function") {
  // exact arithmetic on diagonal projections: exactly one knot at tau(e)
  const auto sw = AlgebraShape::atoms({1.0, 0.5, 2.0, 0.25});
  const StepFunction fd = mu(Operator::diagonal(sw, {1.0, 0.0, 1.0, 1.0}));
  REQUIRE(fd.knots.size() == 1);
  CHECK(fd.knots[0].second == 1.0);
  CHECK(fd.knots[0].first == 3.25);

  // conjugated projections carry eigensolver fuzz; the shape survives to 1e-9
  Rng rng(206);
  for (int trial = 0; trial < 20; ++trial) {
    const auto shape = random_shape(rng, 2, 5);
    const Operator e = random_projection(shape, rng);
    const double te = trace(e).real();
    const StepFunction f = mu(e);
    if (te < 1e-12) {
      CHECK(f.sup_value() < 1e-9);
    } else {
      CHECK(f.sup_value() == Approx(1.0).margin(1e-9));
      CHECK(f(te * 0.5) == Approx(1.0).margin(1e-9));
      CHECK(f(te + 1e-6) < 1e-9);  // numerically-zero singular values may trail
    }
  }
}

TEST_CASE("submajorization is a preorder") {
  Rng rng(207);
  Eigen::MatrixXd m(3, 3);
  m << 0.6, 0.2, 0.1,
       0.2, 0.5, 0.2,
       0.1, 0.2, 0.6;
  const auto s3 = AlgebraShape::atoms({1.0, 1.0, 1.0});
  const Superoperator t = diagonal_action(s3, m);
  REQUIRE(verify_ds_plus(t).verdict);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> vals(3);
    for (auto& v : vals) v = uniform(rng, 0.0, 2.0);
    const Operator x = Operator::diagonal(s3, vals);
    const StepFunction c = mu(x);
    const StepFunction b = mu(apply(t, x));
    const StepFunction a = mu(apply(t, apply(t, x)));
    CHECK(hl_leq(a, b));
    CHECK(hl_leq(b, c));
    CHECK(hl_leq(a, c));  // transitivity closes the chain
  }
}

TEST_CASE("step function canonical form") {
  // equal adjacent values merge, zero tail is dropped
  const StepFunction f = StepFunction::from_knots({{1.0, 2.0}, {2.0, 2.0}, {3.0, 1.0}, {4.0, 0.0}});
  REQUIRE(f.knots.size() == 2);
  CHECK(f.knots[0].first == Approx(2.0));
  CHECK(f.knots[0].second == Approx(2.0));
  CHECK(f.knots[1].first == Approx(3.0));

  CHECK_THROWS_AS(StepFunction::from_knots({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction::from_knots({{1.0, -1.0}}), std::invalid_argument);
}
