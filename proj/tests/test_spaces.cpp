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
#include "ncerg/spaces.hpp"

using namespace ncerg;
using Catch::Approx;

namespace {

std::vector<NormDescriptor> implemented_norms() {
  return {NormDescriptor::lp(1.0),
          NormDescriptor::lp(2.0),
          NormDescriptor::lp(kInf),
          NormDescriptor::l1_plus_linf(),
          NormDescriptor::l1_cap_linf(),
          NormDescriptor::orlicz(OrliczFunction::power(2.0)),
          NormDescriptor::orlicz(OrliczFunction::exp_minus_one()),
          NormDescriptor::lorentz(ConcavePhi::power(0.5)),
          NormDescriptor::marcinkiewicz(ConcavePhi::power(0.5))};
}

}  // namespace

TEST_CASE("p-norms") {
  const auto s2 = AlgebraShape::atoms({1.0, 1.0});
  const Operator x = Operator::diagonal(s2, {3.0, 4.0});
  CHECK(norm_p(x, 1.0) == Approx(7.0));
  CHECK(norm_p(x, 2.0) == Approx(5.0));
  CHECK(norm_p(x, kInf) == Approx(4.0));
  CHECK_THROWS_AS(norm_p(x, 0.5), std::invalid_argument);

  Rng rng(301);
  for (int trial = 0; trial < 20; ++trial) {
    const auto shape = random_shape(rng);
    const Operator y = random_operator(shape, rng);
    for (double p : {1.0, 2.0, 3.7, kInf})
      CHECK(norm_p(y, p) == Approx(norm_p(mu(y), p)).margin(1e-9));
    const Operator z = random_contraction(shape, rng);
    for (double p : {1.5, 2.0, 4.0})
      CHECK(norm_p(z, p) <= std::pow(norm_p(z, 1.0), 1.0 / p) + 1e-10);
  }
}

TEST_CASE("l1 + linf norm") {
  const auto s3 = AlgebraShape::atoms({1.0, 1.0, 1.0});
  CHECK(norm_l1_plus_linf(Operator::diagonal(s3, {3.0, 1.0, 2.0})) == Approx(3.0));
  CHECK(norm_l1_plus_linf(Operator::diagonal(s3, {1.0, 1.0, 0.0})) == Approx(1.0));

  Rng rng(302);
  for (int trial = 0; trial < 25; ++trial) {
    const auto shape = random_shape(rng);
    const Operator x = random_operator(shape, rng);
    CHECK(norm_l1_plus_linf(x) == Approx(oracles::l1_plus_linf_split(x)).margin(1e-9));
  }
}

TEST_CASE("l1 cap linf norm") {
  const auto s3 = AlgebraShape::atoms({1.0, 1.0, 1.0});
  CHECK(norm_l1_cap_linf(Operator::diagonal(s3, {3.0, 1.0, 2.0})) == Approx(6.0));
  const auto s1 = AlgebraShape::atoms({1.0});
  const Operator h = Operator::diagonal(s1, {0.5});
  CHECK(norm_l1_cap_linf(h) == Approx(0.5));
  CHECK(norm_l1_cap_linf(2.0 * h) == Approx(2.0 * norm_l1_cap_linf(h)));
}

TEST_CASE("Luxemburg norm") {
  const auto s2 = AlgebraShape::atoms({1.0, 1.0});
  const Operator x = Operator::diagonal(s2, {3.0, 4.0});
  CHECK(luxemburg_norm(x, OrliczFunction::power(2.0)) == Approx(5.0).margin(1e-8));

  const auto s1 = AlgebraShape::atoms({1.0});
  CHECK(luxemburg_norm(Operator::diagonal(s1, {1.0}), OrliczFunction::exp_minus_one()) ==
        Approx(1.0 / std::log(2.0)).margin(1e-8));

  CHECK(luxemburg_norm(Operator::zero(s2), OrliczFunction::exp_minus_one()) == 0.0);

  // step-function route agrees with the operator route
  CHECK(luxemburg_norm(mu(x), OrliczFunction::power(2.0)) == Approx(5.0).margin(1e-8));

  Rng rng(303);
  for (int trial = 0; trial < 10; ++trial) {
    const auto shape = random_shape(rng, 2, 4);
    const Operator a = random_positive(shape, rng);
    const Operator b = a + random_positive(shape, rng);  // 0 <= a <= b
    const auto phi = OrliczFunction::power(1.0 + uniform(rng, 0.0, 3.0));
    CHECK(luxemburg_norm(a, phi) <= luxemburg_norm(b, phi) + 1e-8);
    CHECK(luxemburg_norm(a, phi) == Approx(oracles::luxemburg_sweep(a, phi)).epsilon(1e-3));
  }
}

TEST_CASE("Lorentz norm") {
  const auto s2 = AlgebraShape::atoms({1.0, 1.0});
  CHECK(lorentz_norm(Operator::diagonal(s2, {1.0, 1.0}), ConcavePhi::power(0.5)) ==
        Approx(std::sqrt(2.0)));

  Rng rng(304);
  for (int trial = 0; trial < 20; ++trial) {
    const auto shape = random_shape(rng);
    const Operator x = random_operator(shape, rng);
    CHECK(lorentz_norm(x, ConcavePhi::power(1.0)) == Approx(norm_p(x, 1.0)).margin(1e-10));
    CHECK(lorentz_norm(x, ConcavePhi::min_t(1.0)) ==
          Approx(norm_l1_plus_linf(x)).margin(1e-10));
  }
}

TEST_CASE("Marcinkiewicz norm") {
  const auto s1 = AlgebraShape::atoms({1.0});
  CHECK(marcinkiewicz_norm(Operator::diagonal(s1, {1.0}), ConcavePhi::power(0.5)) ==
        Approx(1.0).margin(1e-8));

  Rng rng(305);
  for (int trial = 0; trial < 20; ++trial) {
    const auto shape = random_shape(rng);
    const Operator x = random_operator(shape, rng);
    CHECK(marcinkiewicz_norm(x, ConcavePhi::min_t(1.0)) ==
          Approx(norm_l1_cap_linf(x)).epsilon(1e-8));
    CHECK(marcinkiewicz_norm(x, ConcavePhi::power(1.0)) == Approx(norm_p(x, kInf)).epsilon(1e-8));
    const StepFunction f = mu(x);
    const auto phi = ConcavePhi::log1p_t();
    CHECK(marcinkiewicz_norm(f, phi) ==
          Approx(oracles::marcinkiewicz_dense(f, phi)).epsilon(1e-6));
  }
}

TEST_CASE("space traits") {
  const auto lp_traits = space_traits(NormDescriptor::lp(3.0));
  CHECK(lp_traits.order_continuous);
  CHECK_FALSE(lp_traits.contains_unit_when_trace_infinite);
  CHECK(lp_traits.subset_of_R_tau);

  const auto orlicz_pow = space_traits(NormDescriptor::orlicz(OrliczFunction::power(2.0)));
  CHECK(orlicz_pow.order_continuous);

  const auto orlicz_exp = space_traits(NormDescriptor::orlicz(OrliczFunction::exp_minus_one()));
  CHECK_FALSE(orlicz_exp.order_continuous);

  const auto lorentz_min = space_traits(NormDescriptor::lorentz(ConcavePhi::min_t(1.0)));
  CHECK(lorentz_min.contains_unit_when_trace_infinite);
  CHECK_FALSE(lorentz_min.subset_of_R_tau);
  CHECK_FALSE(lorentz_min.order_continuous);

  const auto lorentz_sqrt = space_traits(NormDescriptor::lorentz(ConcavePhi::power(0.5)));
  CHECK(lorentz_sqrt.order_continuous);
  CHECK(lorentz_sqrt.subset_of_R_tau);

  const auto marc_sqrt = space_traits(NormDescriptor::marcinkiewicz(ConcavePhi::power(0.5)));
  CHECK_FALSE(marc_sqrt.contains_unit_when_trace_infinite);
  CHECK(marc_sqrt.subset_of_R_tau);

  const auto marc_lin = space_traits(NormDescriptor::marcinkiewicz(ConcavePhi::power(1.0)));
  CHECK(marc_lin.contains_unit_when_trace_infinite);

  // subset_of_R_tau is always the negation of containing the unit
  for (const auto& nd : implemented_norms()) {
    const auto t = space_traits(nd);
    CHECK(t.subset_of_R_tau == !t.contains_unit_when_trace_infinite);
  }
}

TEST_CASE("R_tau membership") {
  const auto s2 = AlgebraShape::atoms({1.0, 1.0});
  CHECK(in_R_tau(mu(Operator::diagonal(s2, {1.0, 2.0}))));
  CHECK(in_R_tau(StepFunction{}));
  CHECK_FALSE(in_R_tau(SymbolicUnitFunction{}));
}

TEST_CASE("norm axioms hold for every implemented norm") {
  Rng rng(306);
  for (const auto& nd : implemented_norms()) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto shape = random_shape(rng, 2, 4);
      const Operator x = random_operator(shape, rng);
      const Operator y = random_operator(shape, rng);
      const double c = uniform(rng, 0.0, 3.0);
      CHECK(nd(c * x) == Approx(c * nd(x)).margin(1e-8 * (1.0 + nd(x))));
      CHECK(nd(x + y) <= nd(x) + nd(y) + 1e-8 * (1.0 + nd(x) + nd(y)));
      CHECK(nd(Operator::zero(shape)) == 0.0);
      if (norm_inf(x) > 1e-8) CHECK(nd(x) > 1e-9);

      // rearrangement invariance under block unitaries
      Operator u = Operator::zero(shape);
      for (std::size_t k = 0; k < shape.block_count(); ++k)
        u.blocks[k] = Eigen::HouseholderQR<Matrix>(random_operator(shape, rng).blocks[k])
                          .householderQ();
      CHECK(nd(u * x * adjoint(u)) == Approx(nd(x)).epsilon(1e-7));
    }
  }
}

TEST_CASE("full symmetry: submajorization dominates every norm") {
  Rng rng(307);
  Eigen::MatrixXd m(4, 4);
  m << 0.3, 0.2, 0.0, 0.1,
       0.1, 0.4, 0.2, 0.0,
       0.0, 0.1, 0.5, 0.2,
       0.2, 0.0, 0.1, 0.4;
  const auto s4 = AlgebraShape::atoms({1.0, 1.0, 1.0, 1.0});
  const Superoperator t = diagonal_action(s4, m);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<double> vals(4);
    for (auto& v : vals) v = uniform(rng, 0.0, 2.0);
    const Operator x = Operator::diagonal(s4, vals);
    const Operator y = apply(t, x);
    REQUIRE(hl_leq(mu(y), mu(x)));
    for (const auto& nd : implemented_norms()) CHECK(nd(y) <= nd(x) + 1e-9);
  }
}

TEST_CASE("projection norms depend only on the trace") {
  Rng rng(308);
  for (const auto& nd : implemented_norms()) {
    std::vector<std::pair<double, double>> samples;  // (tau(e), N(e))
    for (int trial = 0; trial < 10; ++trial) {
      const auto shape = random_shape(rng, 2, 4);
      const Operator e = random_projection(shape, rng);
      const double te = trace(e).real();
      if (te < 1e-9) continue;
      samples.emplace_back(te, nd(e));
    }
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      CHECK(samples[i].second <= samples[i + 1].second + 1e-8);
      if (std::abs(samples[i].first - samples[i + 1].first) < 1e-12)
        CHECK(samples[i].second == Approx(samples[i + 1].second).margin(1e-9));
    }
  }
}

TEST_CASE("interpolation sandwich") {
  Rng rng(309);
  for (int trial = 0; trial < 20; ++trial) {
    // keep tau(1) >= 1 so the sandwich applies
    auto shape = random_shape(rng, 2, 4);
    double tt = shape.total_trace();
    if (tt < 1.0)
      for (auto& b : shape.blocks) b.weight /= tt;
    const Operator x = random_operator(shape, rng);
    for (double p : {1.0, 1.7, 2.0, 5.0, kInf}) {
      CHECK(norm_l1_plus_linf(x) <= norm_p(x, p) + 1e-9);
      CHECK(norm_p(x, p) <= norm_l1_cap_linf(x) + 1e-9);
    }
  }
}

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(OrliczFunction::power(0.5), InvalidOrlicz);
  // concave-shaped piecewise data is not a valid Orlicz function
  CHECK_THROWS_AS(
      OrliczFunction::piecewise_linear({{0.0, 0.0}, {1.0, 2.0}, {2.0, 2.5}}, true, true),
      InvalidOrlicz);
  CHECK_NOTHROW(OrliczFunction::piecewise_linear({{0.0, 0.0}, {1.0, 1.0}, {2.0, 3.0}}, true, true));

  CHECK_THROWS_AS(ConcavePhi::power(1.5), InvalidPhi);
  CHECK_THROWS_AS(ConcavePhi::min_t(-1.0), InvalidPhi);
  // convex-shaped piecewise data is not a valid concave weight
  CHECK_THROWS_AS(ConcavePhi::piecewise_linear(0.0, {{1.0, 1.0}, {2.0, 3.0}}), InvalidPhi);
  CHECK_NOTHROW(ConcavePhi::piecewise_linear(0.0, {{1.0, 1.0}, {2.0, 1.5}}));
}

TEST_CASE("bounded Marcinkiewicz weight gives a norm equivalent to the trace norm") {
  // phi(0+) = 1 > 0 and phi(inf) = 2 < inf: the norm is within [1/phi(inf),
  // 1/phi(0+)] of ||.||_1; the empirical ratio is reported, not a constant.
  const auto phi = ConcavePhi::piecewise_linear(1.0, {{1.0, 2.0}, {2.0, 2.0}});
  CHECK(phi.phi_at_zero_plus() == Approx(1.0));
  CHECK(phi.phi_at_infinity() == Approx(2.0));
  const auto traits = space_traits(NormDescriptor::marcinkiewicz(phi));
  CHECK(traits.order_continuous);

  Rng rng(310);
  double lo = kInf, hi = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto shape = random_shape(rng, 2, 4);
    const Operator x = random_operator(shape, rng);
    const double ratio = marcinkiewicz_norm(x, phi) / norm_p(x, 1.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo >= 1.0 / 2.0 - 1e-9);
  CHECK(hi <= 1.0 + 1e-9);
}
