"""
Tests du brouilleur markovien
"""
import numpy as np
import pytest
from scipy import stats

from app.core.rng import make_rng
from app.models.jammer import JammerMode, JammerSettings, JammerState
from app.services.jammer_service import JammerService
from tests.factories import JammerStateFactory


class TestObserveTransition:

    def test_single_observation(self):
        state = JammerStateFactory()
        JammerService.observe_transition(state, 3, 7)
        assert state.counts[3, 7] == 1
        assert state.total_observations == 1
        assert state.last_agent_channel == 7

    def test_repeated_observation(self):
        state = JammerStateFactory()
        for _ in range(3):
            JammerService.observe_transition(state, 3, 7)
        assert state.counts[3, 7] == 3

    def test_row_conservation(self):
        state = JammerStateFactory()
        rng = make_rng(1)
        for _ in range(25):
            JammerService.observe_transition(state, 3, int(rng.integers(16)))
        assert state.counts[3].sum() == 25
        assert state.total_observations == 25

    def test_rejects_out_of_range(self):
        state = JammerStateFactory()
        with pytest.raises(ValueError):
            JammerService.observe_transition(state, 16, 0)
        with pytest.raises(ValueError):
            JammerService.observe_transition(state, 0, -1)


class TestTransitionProbabilities:

    def test_fresh_state_is_uniform(self):
        row = JammerService.transition_probabilities(JammerStateFactory(), 0)
        np.testing.assert_allclose(row, np.full(16, 0.0625))

    def test_dirichlet_smoothing(self):
        state = JammerStateFactory()
        state.counts[0, 5] = 3
        row = JammerService.transition_probabilities(state, 0)
        assert row[5] == pytest.approx(4 / 19)
        assert row[0] == pytest.approx(1 / 19)

    def test_rows_stay_stochastic_under_random_updates(self):
        state = JammerStateFactory()
        rng = make_rng(2)
        for step in range(2000):
            prev, curr = rng.integers(16, size=2)
            JammerService.observe_transition(state, int(prev), int(curr))
            if step % 100 == 0:
                matrix = JammerService.transition_matrix(state)
                np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-12)
                assert (matrix > 0).all()
        for channel in range(16):
            assert JammerService.transition_probabilities(state, channel).sum() == pytest.approx(1.0, abs=1e-12)


class TestPredict:

    def test_fresh_state_tie_goes_to_channel_zero(self):
        state = JammerStateFactory()
        assert all(JammerService.predict(state, c) == 0 for c in range(16))

    def test_unique_argmax(self):
        state = JammerStateFactory()
        state.counts[2, 9] = 5
        assert JammerService.predict(state, 2) == 9

    def test_tie_goes_to_lowest_index(self):
        state = JammerStateFactory()
        state.counts[2, 9] = 5
        state.counts[2, 4] = 5
        assert JammerService.predict(state, 2) == 4

    def test_invariant_under_row_rescaling(self):
        rng = make_rng(3)
        for _ in range(50):
            state = JammerStateFactory()
            state.counts[6] = rng.integers(0, 20, size=16)
            before = JammerService.predict(state, 6)
            state.counts[6] *= int(rng.integers(2, 10))
            assert JammerService.predict(state, 6) == before


class TestChooseJam:

    def test_full_follow_is_deterministic(self):
        state = JammerStateFactory(follow_probability=1.0)
        state.counts[2, 9] = 5
        rng = make_rng(4)
        assert all(JammerService.choose_jam(state, 2, rng) == 9 for _ in range(500))

    def test_zero_follow_is_uniform(self):
        state = JammerStateFactory(follow_probability=0.0)
        state.counts[2, 9] = 50
        rng = make_rng(5)
        draws = [JammerService.choose_jam(state, 2, rng) for _ in range(10**5)]
        counts = np.bincount(draws, minlength=16)
        expected = 10**5 / 16
        sigma = np.sqrt(10**5 * (1 / 16) * (15 / 16))
        assert np.all(np.abs(counts - expected) < 4 * sigma)
        assert stats.chisquare(counts).pvalue > 1e-3

    def test_uniform_agent_is_hit_one_time_in_sixteen(self):
        state = JammerStateFactory()
        jammer_rng, agent_rng = make_rng(6), make_rng(7)
        current, hits, slots = 0, 0, 10**5
        for _ in range(slots):
            chosen = int(agent_rng.integers(16))
            hits += JammerService.choose_jam(state, current, jammer_rng) == chosen
            JammerService.observe_transition(state, current, chosen)
            current = chosen
        assert hits / slots == pytest.approx(0.0625, abs=0.004)

    def test_learns_a_cycling_agent(self):
        state = JammerStateFactory()
        rng = make_rng(8)
        current, hits = 0, []
        for _ in range(1000):
            chosen = (current + 1) % 16
            hits.append(JammerService.choose_jam(state, current, rng) == chosen)
            JammerService.observe_transition(state, current, chosen)
            current = chosen
        assert np.mean(hits[500:]) > 0.7

    def test_previous_channel_mode(self):
        state = JammerStateFactory(mode=JammerMode.PREVIOUS_CHANNEL, follow_probability=1.0)
        rng = make_rng(9)
        assert all(JammerService.choose_jam(state, c, rng) == c for c in range(16))

    def test_sample_row_mode_follows_smoothed_row(self):
        state = JammerStateFactory(mode=JammerMode.SAMPLE_ROW, follow_probability=1.0)
        state.counts[1, 3] = 84
        rng = make_rng(10)
        draws = np.array([JammerService.choose_jam(state, 1, rng) for _ in range(20_000)])
        # (84 + 1) / (84 + 16) = 0.85
        assert np.mean(draws == 3) == pytest.approx(0.85, abs=0.01)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            JammerService.choose_jam(JammerStateFactory(), 16, make_rng(0))


class TestSettings:

    def test_from_settings(self):
        settings = JammerSettings(mode='sample_row', follow_probability=0.5, dirichlet_prior=2.0)
        state = JammerState.from_settings(settings, 8)
        assert state.mode == JammerMode.SAMPLE_ROW
        assert state.counts.shape == (8, 8)
        assert state.dirichlet_prior == 2.0

    def test_rejects_invalid_probability(self):
        with pytest.raises(ValueError):
            JammerSettings(follow_probability=1.5)

    def test_counts_csv(self, tmp_path):
        state = JammerStateFactory()
        JammerService.observe_transition(state, 1, 2)
        path = JammerService.dump_counts_csv(state, tmp_path / 'counts.csv')
        lines = path.read_text().splitlines()
        assert lines[0].startswith('from_channel,to_0')
        assert len(lines) == 17
