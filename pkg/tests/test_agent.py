"""
Tests de la couche de décision de l'agent
"""
import numpy as np
import pytest
from scipy import stats

from app.core.rng import make_rng, RunStreams
from app.models.agent import (
    AgentKind, AgentState, EpsilonSchedule, PolicyKind, PolicyMode, permutation_cycle
)
from app.services.agent_service import AgentService
from app.services.qnetwork_service import QNetworkService
from tests.factories import SimConfigFactory

GREEDY = EpsilonSchedule(start=0.0, floor=0.0)
EXPLORE = EpsilonSchedule(start=1.0, floor=1.0)
EPS_GREEDY = PolicyMode()


class TestStateEncoding:

    def test_first_and_last_channel(self):
        np.testing.assert_array_equal(AgentService.encode_state(0), np.eye(16)[0])
        np.testing.assert_array_equal(AgentService.encode_state(15), np.eye(16)[15])

    def test_round_trip(self):
        assert all(AgentService.decode_state(AgentService.encode_state(k)) == k for k in range(16))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            AgentService.encode_state(16)
        with pytest.raises(ValueError):
            AgentService.encode_state(-1)


class TestSelectAction:

    def test_pure_greedy(self):
        q = np.zeros(16)
        q[7] = 1.0
        rng = make_rng(30)
        assert all(AgentService.select_action(q, GREEDY, EPS_GREEDY, rng) == 7 for _ in range(200))

    def test_greedy_ties_to_lowest_index(self):
        q = np.zeros(16)
        q[[3, 11]] = 2.0
        assert AgentService.select_action(q, GREEDY, EPS_GREEDY, make_rng(31)) == 3

    def test_greedy_is_invariant_under_positive_affine_maps(self):
        rng = make_rng(32)
        for _ in range(50):
            q = rng.normal(size=16)
            expected = AgentService.select_action(q, GREEDY, EPS_GREEDY, rng)
            assert AgentService.select_action(3.5 * q - 2.0, GREEDY, EPS_GREEDY, rng) == expected

    def test_full_exploration_is_uniform(self):
        q = np.arange(16, dtype=float)
        rng = make_rng(33)
        draws = [AgentService.select_action(q, EXPLORE, EPS_GREEDY, rng) for _ in range(10**5)]
        assert stats.chisquare(np.bincount(draws, minlength=16)).pvalue > 1e-3

    def test_softmax_equal_values(self):
        probabilities = AgentService.softmax_probabilities(np.full(16, 0.7), 1.0)
        np.testing.assert_allclose(probabilities, np.full(16, 1 / 16))

    def test_softmax_is_stable_and_normalized(self):
        rng = make_rng(34)
        for temperature in (0.05, 1.0, 10.0):
            probabilities = AgentService.softmax_probabilities(rng.normal(scale=500, size=16), temperature)
            assert probabilities.sum() == pytest.approx(1.0, abs=1e-12)
            assert np.isfinite(probabilities).all()
        probabilities = AgentService.softmax_probabilities(rng.normal(size=16), 1.0)
        assert (probabilities > 0).all()

    def test_softmax_sampling(self):
        q = np.zeros(16)
        q[5] = np.log(15.0)
        mode = PolicyMode(kind=PolicyKind.SOFTMAX, temperature=1.0)
        rng = make_rng(35)
        draws = np.array([AgentService.select_action(q, GREEDY, mode, rng) for _ in range(20_000)])
        # p_5 = 15 / (15 + 15) = 0.5
        assert np.mean(draws == 5) == pytest.approx(0.5, abs=0.015)

    def test_rejects_non_finite_values(self):
        q = np.zeros(16)
        q[0] = np.nan
        with pytest.raises(ValueError):
            AgentService.select_action(q, GREEDY, EPS_GREEDY, make_rng(36))

    def test_rejects_non_positive_temperature(self):
        with pytest.raises(ValueError):
            PolicyMode(kind=PolicyKind.SOFTMAX, temperature=0.0)


class TestEpsilonDecay:

    @staticmethod
    def decay(times):
        schedule = EpsilonSchedule()
        for _ in range(times):
            schedule = AgentService.decay_epsilon(schedule)
        return schedule

    def test_after_200_decays(self):
        assert self.decay(200).epsilon == pytest.approx(0.330, abs=0.001)

    def test_after_400_decays(self):
        assert self.decay(400).epsilon == pytest.approx(0.121, abs=0.001)

    def test_clamped_after_600_decays(self):
        assert self.decay(600).epsilon == 0.05
        assert self.decay(1400).epsilon == 0.05

    def test_closed_form_and_monotonicity(self):
        schedule = EpsilonSchedule()
        previous = schedule.epsilon
        for episode in range(1, 1501):
            schedule = AgentService.decay_epsilon(schedule)
            assert schedule.epsilon == max(0.05, 0.9 * 0.995**episode)
            assert 0.05 <= schedule.epsilon <= previous <= 0.9
            previous = schedule.epsilon


class TestBaselines:

    def test_uniform_frequencies(self):
        rng = make_rng(37)
        draws = [AgentService.baseline_uniform(rng) for _ in range(10**5)]
        counts = np.bincount(draws, minlength=16)
        sigma = np.sqrt(10**5 * (1 / 16) * (15 / 16))
        assert np.all(np.abs(counts - 10**5 / 16) < 4 * sigma)

    def test_fixed_sequence_is_periodic(self):
        sequence = permutation_cycle(16, make_rng(38))
        for step in range(64):
            assert AgentService.baseline_fixed_sequence(sequence, step) == \
                AgentService.baseline_fixed_sequence(sequence, step + 16)

    def test_fixed_sequence_visits_every_channel(self):
        sequence = permutation_cycle(16, make_rng(39))
        for start in range(20):
            window = {AgentService.baseline_fixed_sequence(sequence, start + k) for k in range(16)}
            assert window == set(range(16))


class TestBuildAgent:

    def test_dqn_agent_has_networks(self):
        config = SimConfigFactory()
        agent = AgentService.build_agent(config, RunStreams.from_seed(config.seed))
        assert agent.learns
        assert agent.policy_net.layer_sizes == (16, 128, 128, 16)
        assert agent.target_net.same_architecture(agent.policy_net)
        assert agent.buffer.capacity == 10_000

    def test_baselines_do_not_learn(self):
        for kind in (AgentKind.UNIFORM, AgentKind.FIXED_SEQUENCE):
            config = SimConfigFactory(agent_kind=kind)
            agent = AgentService.build_agent(config, RunStreams.from_seed(config.seed))
            assert not agent.learns
            assert agent.policy_net is None

    def test_same_seed_same_network(self):
        config = SimConfigFactory(seed=5)
        first = AgentService.build_agent(config, RunStreams.from_seed(5))
        second = AgentService.build_agent(config, RunStreams.from_seed(5))
        for a, b in zip(first.policy_net.parameters(), second.policy_net.parameters()):
            np.testing.assert_array_equal(a, b)


class TestAgentState:

    def test_encode(self):
        np.testing.assert_array_equal(AgentState(9).encode(), np.eye(16)[9])
        assert AgentService.decode_state(AgentState(0).encode()) == 0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            AgentState(16)
        with pytest.raises(ValueError):
            AgentState(-1)


class TestHopSelection:

    @staticmethod
    def greedy_agent(**policy):
        config = SimConfigFactory(
            epsilon=EpsilonSchedule(start=0.0, floor=0.0), policy=PolicyMode(**policy)
        )
        return AgentService.build_agent(config, RunStreams.from_seed(config.seed))

    def test_scores_subtract_penalty_per_hop(self):
        q = np.linspace(0.0, 1.5, 16)
        row = np.zeros(16)
        row[[2, 4]] = [1, 3]
        scores = AgentService.selection_scores(q, row, 10.0)
        assert scores[2] == pytest.approx(q[2] - 10.0)
        assert scores[4] == pytest.approx(q[4] - 30.0)
        np.testing.assert_array_equal(np.delete(scores, [2, 4]), np.delete(q, [2, 4]))

    def test_zero_penalty_keeps_q_values(self):
        q = np.arange(16, dtype=float)
        np.testing.assert_array_equal(AgentService.selection_scores(q, np.full(16, 5), 0.0), q)

    def test_scores_reject_shape_mismatch(self):
        with pytest.raises(ValueError):
            AgentService.selection_scores(np.zeros(16), np.zeros(15), 1.0)

    def test_rejects_negative_penalty(self):
        with pytest.raises(ValueError):
            PolicyMode(repeat_penalty=-0.5)

    def test_record_hop(self):
        agent = self.greedy_agent()
        AgentService.record_hop(agent, 3, 7)
        AgentService.record_hop(agent, 3, 7)
        assert agent.hop_counts[3, 7] == 2
        assert agent.hop_counts.sum() == 2

    def test_greedy_takes_least_used_successor(self):
        agent = self.greedy_agent()
        agent.hop_counts[3] = 2
        agent.hop_counts[3, 9] = 0
        rng = make_rng(40)
        assert all(AgentService.choose_channel(agent, AgentState(3), rng) == 9 for _ in range(50))

    def test_most_used_successor_is_never_greedy(self):
        agent = self.greedy_agent()
        rng = make_rng(41)
        for _ in range(200):
            row = agent.hop_counts[5]
            chosen = AgentService.choose_channel(agent, AgentState(5), rng)
            assert row[chosen] == row.min()
            if row.min() < row.max():
                assert chosen != int(np.argmax(row))
            AgentService.record_hop(agent, 5, chosen)
        # 200 sauts répartis à égalité entre les 16 successeurs, à une unité près
        assert agent.hop_counts[5].max() - agent.hop_counts[5].min() <= 1

    def test_softmax_prefers_least_used_successor(self):
        agent = self.greedy_agent(kind=PolicyKind.SOFTMAX, temperature=1.0)
        agent.hop_counts[0] = 2
        agent.hop_counts[0, 12] = 0
        rng = make_rng(42)
        assert all(AgentService.choose_channel(agent, AgentState(0), rng) == 12 for _ in range(500))

    def test_penalty_off_follows_q_values(self):
        agent = self.greedy_agent(repeat_penalty=0.0)
        qvalues = QNetworkService.forward(agent.policy_net, AgentState(4).encode())
        agent.hop_counts[4, int(np.argmax(qvalues))] = 100
        assert AgentService.choose_channel(agent, AgentState(4), make_rng(43)) == int(np.argmax(qvalues))
