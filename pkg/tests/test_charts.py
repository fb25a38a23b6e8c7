"""
Tests des graphiques SVG
"""
import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd
import pytest

from app.models.training import SimConfig
from app.services.chart_service import ChartService, CHART_NAMES
from app.services.training_service import TrainingService
from tests.factories import SimConfigFactory

EXPECTED_SERIES = {
    'cumulative_reward': {'series_cumulative_reward'},
    'ber_snr': {'series_ber', 'series_snr_db'},
    'entropy_epsilon': {'series_entropy', 'series_epsilon'},
    'channel_usage': {'series_usage'},
    'plr_vs_size': {f'series_plr_t{t}' for t in (0, 1, 2, 5, 10)}
}


def svg_ids(path):
    root = ET.parse(path).getroot()
    return [element.get('id') for element in root.iter() if element.get('id')]


@pytest.fixture(scope='module')
def chart_trace():
    return TrainingService.run_training(SimConfigFactory.build(seed=21))


@pytest.fixture
def charts(chart_trace, tmp_path):
    return ChartService.emit_charts(chart_trace, tmp_path / 'charts')


class TestEmitCharts:

    def test_all_charts_written(self, charts):
        assert [path.stem for path in charts] == list(CHART_NAMES)
        for path in charts:
            assert path.suffix == '.svg'
            assert path.with_suffix('.csv').exists()

    def test_svg_parse_and_carry_one_id_per_series(self, charts):
        for path in charts:
            ids = svg_ids(path)
            series = [i for i in ids if i.startswith('series_')]
            assert sorted(series) == sorted(EXPECTED_SERIES[path.stem])

    def test_reference_lines(self, charts):
        by_name = {path.stem: set(svg_ids(path)) for path in charts}
        assert 'reference_max_entropy' in by_name['entropy_epsilon']
        assert 'reference_uniform' in by_name['channel_usage']

    def test_cumulative_reward_data(self, chart_trace, charts):
        frame = pd.read_csv(charts[0].with_suffix('.csv'))
        np.testing.assert_allclose(frame['cumulative_reward'], chart_trace.cumulative_reward)

    def test_usage_fractions_sum_to_one(self, charts):
        frame = pd.read_csv(charts[3].with_suffix('.csv'))
        assert frame['fraction'].sum() == pytest.approx(1.0)
        assert len(frame) == 16

    def test_plr_decreases_with_t(self, charts):
        frame = pd.read_csv(charts[4].with_suffix('.csv'))
        columns = [f'plr_t{t}' for t in (0, 1, 2, 5, 10)]
        for _, row in frame.iterrows():
            values = [row[c] for c in columns]
            assert all(a >= b for a, b in zip(values, values[1:]))

    def test_rejects_empty_trace(self, tmp_path):
        empty = TrainingService.run_training(SimConfig(episodes=0))
        with pytest.raises(ValueError):
            ChartService.emit_charts(empty, tmp_path)

    def test_unwritable_directory(self, chart_trace, tmp_path):
        blocker = tmp_path / 'blocker'
        blocker.write_text('not a directory')
        with pytest.raises(OSError) as excinfo:
            ChartService.emit_charts(chart_trace, blocker / 'charts')
        assert str(blocker) in str(excinfo.value)


class TestChannelUsage:

    def test_uniform_histogram(self):
        trace = TrainingService.run_training(SimConfigFactory.build(agent_kind='uniform', episodes=1600, seed=22))
        _, frame = ChartService.channel_usage_chart(trace)
        assert frame['fraction'].max() < 0.1
        assert frame['uniform'].iloc[0] == pytest.approx(1 / 16)
