"""Bandit environments, index policies, and the regret harness."""

import math

import numpy as np
import pytest

import subgnorm as sg


class TestEnv:
    def test_make_env_defaults(self):
        env = sg.make_env(sg.EG1, 10, seed=3)
        assert env.n_arms == 10
        assert env.best_arm == int(np.argmax(env.means))
        assert np.all(env.means > 0)  # Exp(1) draws

    def test_make_env_deterministic(self):
        a = sg.make_env(sg.EG1, 5, seed=11)
        b = sg.make_env(sg.EG1, 5, seed=11)
        c = sg.make_env(sg.EG1, 5, seed=12)
        assert np.array_equal(a.means, b.means)
        assert not np.array_equal(a.means, c.means)

    def test_pinned_means(self):
        env = sg.make_env(sg.EG1, 3, means=(0.5, 1.5, 1.0))
        assert env.best_arm == 1

    def test_needs_two_arms(self):
        with pytest.raises(ValueError):
            sg.make_env(sg.EG1, 1)

    def test_eg2_needs_weights(self):
        with pytest.raises(ValueError):
            sg.BanditEnv(sg.EG2, np.array([1.0, 2.0]), None, 0.0, 0.01, 0)

    def test_eg1_rejects_weights(self):
        with pytest.raises(ValueError):
            sg.BanditEnv(sg.EG1, np.array([1.0, 2.0]), np.array([0.1, 0.2]), 0.0, 0.01, 0)

    def test_weight_range(self):
        with pytest.raises(ValueError):
            sg.make_env(sg.EG2, 2, means=(1.0, 2.0), mix_p=(0.1, 0.7))

    def test_contamination_range(self):
        with pytest.raises(ValueError):
            sg.make_env(sg.EG1, 2, contamination_prob=1.0)
        with pytest.raises(ValueError):
            sg.make_env(sg.EG1, 2, cauchy_scale=0.0)

    def test_eg1_reward_mean(self):
        env = sg.make_env(sg.EG1, 2, contamination_prob=0.0, means=(3.0, 5.0))
        rng = np.random.default_rng(0)
        draws = [sg.draw_reward(env, 1, rng) for _ in range(4000)]
        assert np.mean(draws) == pytest.approx(5.0, abs=0.1)

    def test_eg2_reward_mean(self):
        env = sg.make_env(
            sg.EG2, 2, contamination_prob=0.0, means=(1.0, 2.0), mix_p=(0.3, 0.4)
        )
        rng = np.random.default_rng(1)
        draws = [sg.draw_reward(env, 0, rng) for _ in range(8000)]
        assert np.mean(draws) == pytest.approx(1.0, abs=0.1)

    def test_contamination_replaces_reward(self):
        # with mu = 100 and tiny Cauchy scale, contaminated draws cluster
        # near zero while clean ones cluster near 100
        env = sg.make_env(sg.EG1, 2, contamination_prob=0.5, cauchy_scale=0.01, means=(100.0, 100.0))
        rng = np.random.default_rng(2)
        draws = np.array([sg.draw_reward(env, 0, rng) for _ in range(2000)])
        near_zero = np.abs(draws) < 50.0
        assert 0.4 < near_zero.mean() < 0.6


class TestPolicySpec:
    def test_defaults(self):
        assert sg.PolicySpec(sg.BEUCB).min_pulls == 2
        assert sg.PolicySpec(sg.THOMPSON).min_pulls == 0
        assert sg.PolicySpec(sg.CLT_UCB).label == sg.CLT_UCB

    def test_theorem_alpha(self):
        spec = sg.PolicySpec(sg.BEUCB, alpha_rule="theorem")
        assert spec.resolve_alpha(100) == pytest.approx(4e-4)
        fixed = sg.PolicySpec(sg.BEUCB, alpha=0.2)
        assert fixed.resolve_alpha(100) == 0.2

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.PolicySpec("egreedy")
        with pytest.raises(ValueError):
            sg.PolicySpec(sg.BEUCB, alpha_rule="adaptive")
        with pytest.raises(ValueError):
            sg.PolicySpec(sg.BEUCB, alpha=0.0)
        with pytest.raises(ValueError):
            sg.PolicySpec(sg.BEUCB, bootstrap_reps=50)
        with pytest.raises(ValueError):
            sg.PolicySpec(sg.BEUCB, min_pulls=1)
        with pytest.raises(ValueError):
            sg.PolicySpec(sg.THOMPSON, prior_var=0.0)


class TestBootstrapQuantile:
    def test_constant_data(self):
        assert sg.bootstrap_quantile(np.full(8, 2.5), 0.05) == 0.0

    def test_deterministic_in_seed(self):
        x = np.random.default_rng(5).normal(size=30)
        assert sg.bootstrap_quantile(x, 0.1, seed=9) == sg.bootstrap_quantile(x, 0.1, seed=9)
        assert sg.bootstrap_quantile(x, 0.1, seed=9) != sg.bootstrap_quantile(x, 0.1, seed=10)

    def test_two_point_enumeration(self):
        # replicates of {-1, 1} live on {-1, 0, 1} with probs 1/4, 1/2, 1/4,
        # so the alpha = 0.2 quantile is 1 (exceedance of 0 is 0.25 > 0.2)
        q = sg.bootstrap_quantile(np.array([-1.0, 1.0]), 0.2, n_boot=10_000, seed=0)
        assert q == 1.0

    def test_monotone_in_alpha(self):
        x = np.random.default_rng(6).normal(size=25)
        qs = [sg.bootstrap_quantile(x, a, n_boot=2000, seed=1) for a in (0.01, 0.1, 0.5, 0.9)]
        assert all(a >= b for a, b in zip(qs, qs[1:]))

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.bootstrap_quantile(np.array([]), 0.1)
        with pytest.raises(ValueError):
            sg.bootstrap_quantile(np.array([1.0, np.inf]), 0.1)
        with pytest.raises(ValueError):
            sg.bootstrap_quantile(np.array([1.0, 2.0]), 1.5)


class TestIndices:
    def test_underexplored_arm_is_infinite(self):
        assert sg.beucb_index(sg.ArmState(np.array([1.0])), 0.05) == math.inf
        four = sg.ArmState(np.array([1.0, 2.0, 1.5, 0.5]))
        assert sg.beucb_index(four, 0.05, min_pulls=5) == math.inf
        assert math.isfinite(sg.beucb_index(four, 0.05))

    def test_constant_rewards_collapse_to_mean(self):
        arm = sg.ArmState(np.full(10, 3.0))
        assert sg.beucb_index(arm, 0.05) == 3.0

    def test_index_at_least_mean(self):
        arm = sg.ArmState(np.random.default_rng(3).normal(1.0, 1.0, 50))
        assert sg.beucb_index(arm, 0.05, seed=2) >= float(arm.rewards.mean())

    def test_hoeffding_width(self):
        arm = sg.ArmState(np.array([0.0, 1.0]))
        want = 1.0 * math.sqrt(math.log(2.0 / 0.05) / 4.0)
        assert sg.baseline_phi(arm, sg.HOEFFDING_UCB, 0.05) == pytest.approx(want, rel=1e-12)

    def test_clt_width(self):
        arm = sg.ArmState(np.array([0.0, 1.0]))
        want = 0.5 * sg.inverse_normal_cdf(0.975) / math.sqrt(2.0)
        assert sg.baseline_phi(arm, sg.CLT_UCB, 0.05) == pytest.approx(want, rel=1e-12)

    def test_constant_rewards_zero_width(self):
        arm = sg.ArmState(np.full(6, 2.0))
        for kind in (sg.OP_UCB, sg.CLT_UCB, sg.HOEFFDING_UCB):
            assert sg.baseline_phi(arm, kind, 0.05) == 0.0

    def test_baseline_validation(self):
        arm = sg.ArmState(np.array([0.0, 1.0]))
        with pytest.raises(ValueError):
            sg.baseline_phi(arm, sg.BEUCB, 0.05)
        with pytest.raises(ValueError):
            sg.baseline_phi(sg.ArmState(np.array([1.0])), sg.CLT_UCB, 0.05)


class TestThompson:
    def test_data_dominates_with_many_pulls(self):
        counts = np.array([10**6, 10**6])
        sums = np.array([0.1 * 10**6, 0.9 * 10**6])
        rng = np.random.default_rng(0)
        picks = [sg.thompson_step(counts, sums, 1.0, rng) for _ in range(20)]
        assert all(p == 1 for p in picks)

    def test_single_arm(self):
        assert sg.thompson_step([5.0], [2.0], 1.0, np.random.default_rng(1)) == 0

    def test_accepts_seed(self):
        assert sg.thompson_step([1.0, 1.0], [0.0, 0.0], 1.0, 7) in (0, 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.thompson_step([1.0], [1.0, 2.0], 1.0, 0)
        with pytest.raises(ValueError):
            sg.thompson_step([1.0], [1.0], -1.0, 0)


class TestEpisode:
    def setup_method(self):
        self.env = sg.make_env(
            sg.EG1, 3, contamination_prob=0.0, means=(0.0, 2.0, 0.5)
        )

    def test_zero_gap_means_zero_regret(self):
        env = sg.make_env(sg.EG1, 3, contamination_prob=0.0, means=(1.0, 1.0, 1.0))
        for kind in (sg.BEUCB, sg.CLT_UCB, sg.THOMPSON):
            trace = sg.run_episode(env, sg.PolicySpec(kind), horizon=40, seed=0)
            assert np.all(trace.cumulative_regret == 0.0)

    def test_trace_shape_and_monotonicity(self):
        trace = sg.run_episode(self.env, sg.PolicySpec(sg.HOEFFDING_UCB), horizon=60, seed=1)
        assert trace.cumulative_regret.size == 60
        assert trace.pulls_per_arm.sum() == 60
        assert np.all(np.diff(trace.cumulative_regret) >= 0)

    def test_deterministic_in_seed(self):
        spec = sg.PolicySpec(sg.BEUCB, bootstrap_reps=100)
        a = sg.run_episode(self.env, spec, horizon=50, seed=4)
        b = sg.run_episode(self.env, spec, horizon=50, seed=4)
        c = sg.run_episode(self.env, spec, horizon=50, seed=5)
        assert np.array_equal(a.cumulative_regret, b.cumulative_regret)
        assert not np.array_equal(a.cumulative_regret, c.cumulative_regret)

    def test_every_policy_kind_runs(self):
        for kind in (sg.BEUCB, sg.OP_UCB, sg.CLT_UCB, sg.HOEFFDING_UCB, sg.THOMPSON):
            spec = sg.PolicySpec(kind, bootstrap_reps=100)
            trace = sg.run_episode(self.env, spec, horizon=30, seed=2)
            assert trace.pulls_per_arm.sum() == 30

    def test_min_pulls_round_robin(self):
        trace = sg.run_episode(self.env, sg.PolicySpec(sg.CLT_UCB, min_pulls=5), horizon=15, seed=3)
        assert np.all(trace.pulls_per_arm == 5)

    def test_easy_instance_concentrates(self):
        trace = sg.run_episode(self.env, sg.PolicySpec(sg.BEUCB, bootstrap_reps=100), horizon=200, seed=0)
        assert trace.pulls_per_arm[1] > 120

    def test_horizon_too_small(self):
        with pytest.raises(ValueError):
            sg.run_episode(self.env, sg.PolicySpec(sg.CLT_UCB, min_pulls=10), horizon=20)

    def test_eg2_runs(self):
        env = sg.make_env(sg.EG2, 2, contamination_prob=0.1, seed=6)
        trace = sg.run_episode(env, sg.PolicySpec(sg.CLT_UCB), horizon=25, seed=0)
        assert trace.cumulative_regret.size == 25


class TestExperiment:
    @staticmethod
    def config(policies, reps=2, horizon=40):
        return sg.ExperimentConfig(
            env_kind=sg.EG1,
            n_arms=3,
            horizon=horizon,
            policies=policies,
            replications=reps,
            master_seed=0,
        )

    def test_deterministic(self):
        cfg = self.config((sg.PolicySpec(sg.CLT_UCB), sg.PolicySpec(sg.HOEFFDING_UCB)))
        a = sg.run_experiment(cfg)
        b = sg.run_experiment(cfg)
        for label in a.curves:
            assert np.array_equal(a.curves[label].mean_regret, b.curves[label].mean_regret)

    def test_policy_order_invariance(self):
        fwd = self.config((sg.PolicySpec(sg.CLT_UCB), sg.PolicySpec(sg.HOEFFDING_UCB)))
        rev = self.config((sg.PolicySpec(sg.HOEFFDING_UCB), sg.PolicySpec(sg.CLT_UCB)))
        a, b = sg.run_experiment(fwd), sg.run_experiment(rev)
        for label in a.curves:
            assert np.array_equal(a.curves[label].mean_regret, b.curves[label].mean_regret)

    def test_single_rep_has_zero_se(self):
        res = sg.run_experiment(self.config((sg.PolicySpec(sg.CLT_UCB),), reps=1))
        assert np.all(res.curves[sg.CLT_UCB].se_regret == 0.0)

    def test_rounds_axis(self):
        res = sg.run_experiment(self.config((sg.PolicySpec(sg.CLT_UCB),), reps=1, horizon=12))
        assert np.array_equal(res.rounds, np.arange(1, 13))

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            self.config((sg.PolicySpec(sg.CLT_UCB), sg.PolicySpec(sg.CLT_UCB, alpha=0.1)))

    def test_mean_regret_nondecreasing(self):
        res = sg.run_experiment(self.config((sg.PolicySpec(sg.HOEFFDING_UCB),)))
        assert np.all(np.diff(res.curves[sg.HOEFFDING_UCB].mean_regret) >= -1e-12)
