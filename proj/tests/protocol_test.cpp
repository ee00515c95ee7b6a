// Copyright 2026 The qadapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qadapt/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qadapt/estimator.hpp"
#include "qadapt/harness.hpp"

using namespace qadapt;

namespace {

constexpr double kPi = std::numbers::pi;

ProtocolConfig quick_config(const std::string &env, std::uint64_t seed, std::int64_t iterations,
                            std::int64_t shots = 32) {
  ProtocolConfig c;
  c.environment = env_library(env);
  c.seed = seed;
  c.iterations = iterations;
  c.shots = shots;
  return c;
}

EnvironmentSpec ground_env() { return {"zero", {}}; }

double relative_error(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(RewardParamsTest, FactorsAreReciprocal) {
  const RewardParams p(0.95);
  EXPECT_EQ(p.reward_factor(), 0.95);
  EXPECT_NEAR(p.reward_factor() * p.punish_factor(), 1.0, 1e-12);
  EXPECT_THROW(RewardParams(1.0), std::invalid_argument);
  EXPECT_THROW(RewardParams(0.0), std::invalid_argument);
  EXPECT_THROW(RewardParams(-0.5), std::invalid_argument);
}

TEST(ConfigTest, Validation) {
  ProtocolConfig c = quick_config("e1", 1, 10);
  EXPECT_NO_THROW(c.validate());
  c.iterations = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = quick_config("e1", 1, 10);
  c.shots = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = quick_config("e1", 1, 10);
  c.delta0 = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = quick_config("e1", 1, 10);
  c.epsilon = 1.2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = quick_config("e1", 1, 10);
  c.environment.label.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(DrawActionTest, ZeroRangeGivesZeroAngles) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const ActionDraw a = draw_action(rng, 0.0);
    EXPECT_EQ(a.alpha, 0.0);
    EXPECT_EQ(a.beta, 0.0);
  }
}

TEST(DrawActionTest, AnglesStayInsideHalfRange) {
  Rng rng(4);
  const double delta = 4 * kPi;
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const ActionDraw a = draw_action(rng, delta);
    ASSERT_GE(a.xi_alpha, -0.5);
    ASSERT_LE(a.xi_alpha, 0.5);
    ASSERT_GE(a.alpha, -2 * kPi);
    ASSERT_LE(a.alpha, 2 * kPi);
    ASSERT_GE(a.beta, -2 * kPi);
    ASSERT_LE(a.beta, 2 * kPi);
    EXPECT_EQ(a.alpha, a.xi_alpha * delta);
    EXPECT_EQ(a.beta, a.xi_beta * delta);
    sum += a.xi_alpha;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.005);
}

TEST(ConditionalUpdateTest, NoActionOnReward) {
  const Unitary2 u = partially_random_u(0.3, 0.9);
  const AgentState agent{u, u.dagger()};
  const AgentState same = conditional_update(agent, 0, 1.7, -2.2);
  EXPECT_EQ(same.u_acc.max_abs_diff(u), 0.0);
  const AgentState zero_angles = conditional_update(agent, 1, 0.0, 0.0);
  EXPECT_LT(zero_angles.u_acc.max_abs_diff(u), 1e-15);
}

TEST(ConditionalUpdateTest, PunishmentsComposeOnTheLeft) {
  const AgentState start{Unitary2::identity(), Unitary2::identity()};
  const double a1 = 0.8, b1 = -1.4, a2 = 2.5, b2 = 0.35;
  AgentState s = conditional_update(start, 1, a1, b1);
  s = conditional_update(s, 1, a2, b2);
  // Oracle: explicit RZ, RX products.
  const Unitary2 expected = gate_rz(a2) * gate_rx(b2) * gate_rz(a1) * gate_rx(b1);
  EXPECT_LT(s.u_acc.max_abs_diff(expected), 1e-12);
  EXPECT_LT(s.u_acc_dagger.max_abs_diff(expected.dagger()), 1e-12);
}

TEST(ConditionalUpdateTest, LongChainsStayUnitary) {
  Rng rng(12);
  AgentState s{Unitary2::identity(), Unitary2::identity()};
  for (int i = 0; i < 100000; ++i) {
    const ActionDraw a = draw_action(rng, 50.0);
    s = conditional_update(s, 1, a.alpha, a.beta);
  }
  EXPECT_LT(s.u_acc.unitarity_defect(), 1e-9);
  EXPECT_LT(s.u_acc_dagger.max_abs_diff(s.u_acc.dagger()), 1e-12);
}

TEST(RewardUpdateTest, Examples) {
  const RewardParams p(0.95);
  EXPECT_NEAR(reward_update(4 * kPi, 0, p), 3.8 * kPi, 1e-12);
  const double d = 2.345;
  EXPECT_LT(relative_error(reward_update(reward_update(d, 0, p), 1, p), d), 1e-12);

  double delta = 4 * kPi;
  for (int i = 0; i < 20; ++i) delta = reward_update(delta, 0, p);
  EXPECT_LT(relative_error(delta, 4 * kPi * std::pow(0.95, 20)), 1e-12);
  EXPECT_NEAR(delta, 4.505, 5e-4);

  EXPECT_THROW(reward_update(0.0, 0, p), std::invalid_argument);
  EXPECT_THROW(reward_update(-1.0, 1, p), std::invalid_argument);
}

TEST(RunIterationTest, FirstIterationProbabilities) {
  const AgentState fresh{Unitary2::identity(), Unitary2::identity()};
  Rng rng(1);
  Measurement m = run_iteration(fresh, env_library("e3"), rng, NoiseParams::ideal());
  EXPECT_NEAR(m.p0, 0.75, 1e-12);
  m = run_iteration(fresh, env_library("e2"), rng, NoiseParams::ideal());
  EXPECT_NEAR(m.p1, std::pow(std::sin(5 * kPi / 18), 2), 1e-12);
  EXPECT_NEAR(m.p1, 0.6, 0.015);
}

TEST(RunIterationTest, ConvergedAgentAlwaysRewarded) {
  const EnvironmentSpec env = env_library("e1");
  const Unitary2 u = env.unitary();
  const AgentState converged{u, u.dagger()};
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Measurement m = run_iteration(converged, env, rng, NoiseParams::ideal());
    EXPECT_NEAR(m.p0, 1.0, 1e-12);
    EXPECT_EQ(m.m, 0);
  }
}

TEST(RunProtocolTest, SingleIterationOnMatchingEnvironment) {
  ProtocolConfig c;
  c.environment = ground_env();
  c.iterations = 1;
  c.shots = 100;
  ProtocolRun run(c);
  const ProtocolRun::Step s = run.step();
  EXPECT_EQ(s.record.m, 0);
  EXPECT_EQ(s.agent.u_acc.max_abs_diff(Unitary2::identity()), 0.0);
  const Trace t = std::move(run).finish();
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_NEAR(t.final_delta, 0.95 * 4 * kPi, 1e-12);
  EXPECT_EQ(t.final_fidelity_exact, 1.0);
  EXPECT_EQ(t.final_fidelity_shot, 1.0);
}

TEST(RunProtocolTest, DeterministicGivenSeed) {
  const ProtocolConfig c = quick_config("e5", 99, 200, 256);
  EXPECT_EQ(run_protocol(c), run_protocol(c));
  ProtocolConfig other = c;
  other.seed = 100;
  EXPECT_NE(run_protocol(c).records, run_protocol(other).records);
}

TEST(RunProtocolTest, DisabledNoiseMatchesIdeal) {
  ProtocolConfig ideal = quick_config("e2", 5, 150, 128);
  ProtocolConfig disabled = ideal;
  disabled.noise = NoiseParams{0.2, 0.3, 0.4, false};
  EXPECT_EQ(run_protocol(ideal).records, run_protocol(disabled).records);
}

TEST(RunProtocolTest, TraceShapeAndRecordInvariants) {
  for (const std::string &env : env_labels()) {
    const Trace t = run_protocol(quick_config(env, 17, 120));
    ASSERT_EQ(t.records.size(), 120u);
    EXPECT_EQ(t.final_delta, t.records.back().delta_after);
    double delta_before = t.config.delta0;
    int previous_m = 0;
    for (const IterationRecord &r : t.records) {
      EXPECT_GE(r.xi_alpha, -0.5);
      EXPECT_LE(r.xi_alpha, 0.5);
      EXPECT_NEAR(r.alpha, r.xi_alpha * delta_before, 1e-12);
      EXPECT_NEAR(r.beta, r.xi_beta * delta_before, 1e-12);
      if (r.k == 1 || previous_m == 0) {
        EXPECT_EQ(r.alpha, 0.0);
        EXPECT_EQ(r.beta, 0.0);
      }
      const double expected = r.m == 0 ? delta_before * 0.95 : delta_before / 0.95;
      EXPECT_LT(relative_error(r.delta_after, expected), 1e-12);
      EXPECT_GE(r.fidelity_shot, 0.0);
      EXPECT_LE(r.fidelity_shot, 1.0);
      EXPECT_GE(r.fidelity_exact, 0.0);
      EXPECT_LE(r.fidelity_exact, 1.0);
      delta_before = r.delta_after;
      previous_m = r.m;
    }
  }
}

TEST(RunProtocolTest, ClosedFormDelta) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (const std::string &env : env_labels()) {
      const Trace t = run_protocol(quick_config(env, seed, 300, 8));
      int net = 0;
      for (const IterationRecord &r : t.records) net += r.m == 0 ? 1 : -1;
      EXPECT_LT(relative_error(t.final_delta, 4 * kPi * std::pow(0.95, net)), 1e-9);
    }
  }
}

TEST(RunProtocolTest, AccumulatedFrameIsProductOfActions) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ProtocolRun run(quick_config("e4", seed, 400, 8));
    Unitary2 oracle = Unitary2::identity();
    int previous_m = 0;
    while (!run.done()) {
      const ProtocolRun::Step s = run.step();
      if (s.record.k > 1 && previous_m == 1) {
        oracle = gate_rz(s.record.alpha) * gate_rx(s.record.beta) * oracle;
      }
      EXPECT_LT(s.agent.u_acc.max_abs_diff(oracle), 1e-8) << "k = " << s.record.k;
      previous_m = s.record.m;
    }
  }
}

TEST(RunProtocolTest, FirstIterationPurityAndProbabilityLaw) {
  std::mt19937_64 gen(1);
  for (const std::string &env : env_labels()) {
    ProtocolRun run(quick_config(env, 23, 200, 8));
    const EnvironmentSpec spec = env_library(env);
    while (!run.done()) {
      const ProtocolRun::Step s = run.step();
      if (s.record.k == 1) {
        EXPECT_EQ(s.record.alpha, 0.0);
        EXPECT_EQ(s.record.beta, 0.0);
        EXPECT_EQ(s.agent.u_acc.max_abs_diff(Unitary2::identity()), 0.0);
      }
      StateVector rotated = spec.state();
      rotated.apply_1q(s.agent.u_acc_dagger, 0);
      const BlochAngles b = bloch_angles(rotated);
      EXPECT_NEAR(s.measurement.p0, std::pow(std::cos(b.theta / 2), 2), 1e-9);
      EXPECT_NEAR(s.record.fidelity_exact, exact_fidelity(s.agent.u_acc, spec), 0.0);
    }
  }
}

TEST(RunProtocolTest, MostSeedsConvergeOnE1Within200Iterations) {
  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Trace t = run_protocol(quick_config("e1", seed, 500, 8));
    bool reached = false;
    for (const IterationRecord &r : t.records) {
      if (r.k > 200) break;
      if (r.delta_after < 0.5) {
        reached = true;
        break;
      }
    }
    converged += reached;
  }
  EXPECT_GT(converged, 50);
}

TEST(RunProtocolTest, DeltaOverflowAborts) {
  ProtocolConfig c;
  // |1> environment with an identity agent is punished with certainty.
  c.environment = {"one", {{GateKind::X, 0.0}}};
  c.epsilon = 0.5;
  c.delta0 = 1.5e308;
  c.iterations = 3;
  c.shots = 4;
  EXPECT_THROW(run_protocol(c), std::overflow_error);
}

TEST(RunProtocolTest, OptionalClamp) {
  ProtocolConfig c;
  c.environment = {"one", {{GateKind::X, 0.0}}};
  c.iterations = 50;
  c.shots = 4;
  c.delta_max = 5.0;
  const Trace t = run_protocol(c);
  for (const IterationRecord &r : t.records) EXPECT_LE(r.delta_after, 5.0);
}

TEST(ValueFunctionTest, Examples) {
  Trace t;
  t.config.delta0 = 4 * kPi;
  double d = 4 * kPi;
  for (int k = 1; k <= 100; ++k) {
    d *= 0.95;
    t.records.push_back({k, 0, 0, 0, 0, 0, d, 1.0, 1.0});
  }
  t.final_delta = d;
  EXPECT_LT(relative_error(value_function(t), 4 * kPi * std::pow(0.95, 100)), 1e-12);

  Trace balanced;
  d = 4 * kPi;
  for (int k = 1; k <= 60; ++k) {
    const int m = k % 2;
    d = reward_update(d, m, RewardParams(0.95));
    balanced.records.push_back({k, 0, 0, 0, 0, m, d, 0.5, 0.5});
  }
  balanced.final_delta = balanced.records.back().delta_after;
  EXPECT_LT(relative_error(value_function(balanced), 4 * kPi), 1e-9);

  EXPECT_THROW(value_function(Trace{}), std::invalid_argument);
}

TEST(NoiseIntegrationTest, MonotoneDegradationInGateNoise) {
  std::vector<double> means;
  for (double p : {0.0, 0.002, 0.01, 0.05}) {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      ProtocolConfig c = quick_config("e1", seed, 300, 8);
      c.noise = NoiseParams{p, 0.0, 0.0, true};
      total += run_protocol(c).final_fidelity_exact;
    }
    means.push_back(total / 100.0);
  }
  for (std::size_t i = 1; i < means.size(); ++i) {
    EXPECT_LE(means[i], means[i - 1] + 0.03) << "step " << i;
  }
}
