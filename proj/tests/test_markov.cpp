#include <doctest.h>

#include "rlstd/markov.hpp"
#include "test_support.hpp"

using namespace rlstd;
using namespace rlstd::testing;

TEST_CASE("hop chain structure matches the task description") {
  MarkovChain chain = hopworld();
  CHECK(chain.n_states == 13);
  CHECK(chain.transition(12, 11) == doctest::Approx(0.5));
  CHECK(chain.transition(12, 10) == doctest::Approx(0.5));
  CHECK(chain.transition(1, 0) == doctest::Approx(1.0));
  CHECK(chain.reward(1, 0) == doctest::Approx(-2.0));
  CHECK(chain.reward(5, 4) == doctest::Approx(-3.0));
  CHECK(chain.absorbing[0]);
  CHECK(chain.initial[12] == doctest::Approx(1.0));
}

TEST_CASE("hop chain true values are -2i") {
  Vec v = true_hopworld_values();
  CHECK(v[0] == 0.0);
  CHECK(v[12] == -24.0);
  CHECK(v[2] == -4.0);
  // One-step consistency with the analytic solver.
  CHECK(true_values(hopworld(), 1.0).isApprox(v, 1e-12));
}

TEST_CASE("trajectory sampling is deterministic given the seed") {
  MarkovChain chain = hopworld();
  Rng a(7), b(7);
  auto t1 = sample_trajectory(chain, a);
  auto t2 = sample_trajectory(chain, b);
  REQUIRE(t1.size() == t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i].from == t2[i].from);
    CHECK(t1[i].to == t2[i].to);
    CHECK(t1[i].reward == t2[i].reward);
  }
  CHECK(t1.back().terminal);
  CHECK(t1.back().to == 0);
}

TEST_CASE("hop chain trajectories have between 6 and 12 transitions") {
  MarkovChain chain = hopworld();
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto t = sample_trajectory(chain, rng);
    CHECK(t.size() >= 6);
    CHECK(t.size() <= 12);
  }
}

TEST_CASE("monte-carlo return matches the analytic start value") {
  MarkovChain chain = hopworld();
  Rng rng(3);
  double total = 0.0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    double episode = 0.0;
    for (const auto& tr : sample_trajectory(chain, rng)) episode += tr.reward;
    total += episode;
  }
  CHECK(total / samples == doctest::Approx(-24.0).epsilon(0.1 / 24.0));
}

TEST_CASE("empirical transition frequencies approach the transition matrix") {
  MarkovChain chain = hopworld();
  Rng rng(19);
  int down1 = 0, down2 = 0;
  for (int i = 0; i < 20000; ++i) {
    auto t = sample_trajectory(chain, rng);
    (t[0].to == 11 ? down1 : down2) += 1;
  }
  CHECK(down1 / 20000.0 == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("runaway chains hit the max-length guard") {
  MarkovChain chain = hopworld();
  // Make the absorbing state unreachable in few steps.
  Rng rng(1);
  CHECK_THROWS_AS(sample_trajectory(chain, rng, 3), std::runtime_error);
}

TEST_CASE("analytic fixed point is exact on the hop chain") {
  MarkovChain chain = hopworld();
  Mat phi = hopworld_feature_matrix();
  Vec expected{{-24, -16, -8, 0}};
  for (double lambda : {0.0, 0.3, 0.5, 1.0}) {
    FixedPoint fp = exact_fixed_point(chain, phi, lambda, 1.0);
    CHECK((fp.w - expected).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("tabular fixed point equals the true values for a 2-state chain") {
  Rng rng(5);
  MarkovChain chain = random_ergodic_chain(2, rng);
  Mat phi = Mat::Identity(2, 2);
  double gamma = 0.9;
  Vec v = true_values(chain, gamma);
  for (double lambda : {0.0, 0.4, 1.0}) {
    FixedPoint fp = exact_fixed_point(chain, phi, lambda, gamma);
    CHECK(fp.w.isApprox(v, 1e-10));
  }
}

TEST_CASE("tabular fixed point is independent of lambda") {
  Rng rng(23);
  MarkovChain chain = random_ergodic_chain(5, rng);
  Mat phi = Mat::Identity(5, 5);
  Vec w0 = exact_fixed_point(chain, phi, 0.0, 0.85).w;
  for (double lambda : {0.25, 0.5, 0.75, 1.0})
    CHECK(exact_fixed_point(chain, phi, lambda, 0.85).w.isApprox(w0, 1e-9));
}

TEST_CASE("rank-deficient features are reported with the rank") {
  MarkovChain chain = hopworld();
  Mat phi(13, 2);
  phi.col(0) = hopworld_feature_matrix().col(0);
  phi.col(1) = 2.0 * phi.col(0);  // dependent column
  CHECK_THROWS_WITH_AS(exact_fixed_point(chain, phi, 0.5, 1.0),
                       doctest::Contains("rank"), std::invalid_argument);
}

TEST_CASE("error bound requires a strict discount") {
  CHECK_THROWS_AS(error_bound_check(hopworld(), hopworld_feature_matrix(), 0.5, 1.0),
                  std::domain_error);
}

TEST_CASE("error bound is tight at lambda = 1 and zero for spanning features") {
  Rng rng(31);
  MarkovChain chain = random_ergodic_chain(4, rng);
  double gamma = 0.9;

  // Features spanning the value function: projection error vanishes.
  Mat phi_span(4, 2);
  phi_span.col(0) = true_values(chain, gamma);
  phi_span.col(1) = Vec::Ones(4);
  BoundCheck span = error_bound_check(chain, phi_span, 0.3, gamma);
  CHECK(span.lhs == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(span.holds);

  // At lambda = 1 the factor is exactly 1.
  Mat phi = random_features(4, 2, rng);
  BoundCheck at_one = error_bound_check(chain, phi, 1.0, gamma);
  Vec v = true_values(chain, gamma);
  FixedPoint fp = exact_fixed_point(chain, phi, 1.0, gamma);
  Mat d = fp.state_weights.asDiagonal();
  Mat proj = phi * (phi.transpose() * d * phi).partialPivLu().solve(phi.transpose() * d);
  Vec resid = proj * v - v;
  CHECK(at_one.rhs == doctest::Approx(std::sqrt(resid.dot(d * resid))).epsilon(1e-10));
  CHECK(at_one.holds);
}

TEST_CASE("chain validation rejects malformed inputs") {
  MarkovChain chain = hopworld();
  chain.transition(3, 2) = 0.7;  // breaks row stochasticity
  CHECK_THROWS_AS(chain.validate(), std::invalid_argument);

  MarkovChain bad_absorbing = hopworld();
  bad_absorbing.transition(0, 0) = 0.5;
  bad_absorbing.transition(0, 1) = 0.5;
  CHECK_THROWS_AS(bad_absorbing.validate(), std::invalid_argument);
}
