"""
Tests de la ligne de commande et des codes de sortie
"""
import json
from pathlib import Path

import pytest

from app.app import EXIT_OK, EXIT_USAGE, EXIT_RUNTIME
from app.cli import parse_cli, UsageError
from app.config import TestingConfig
from app.models.agent import AgentKind, PolicyKind
from app.models.jammer import JammerMode
from app.models.qnetwork import OptimizerKind


class TestParseCli:

    def test_defaults(self):
        spec = parse_cli([], TestingConfig)
        assert spec.jamming_powers == (0.5,)
        assert spec.seeds == (2024,)
        assert spec.agent_kind == AgentKind.DQN
        assert spec.jammer_mode == JammerMode.MARKOV_PREDICT
        assert spec.base_config.episodes == 1500
        assert spec.output_dir == Path('results')
        assert not spec.validate_fec
        assert spec.base_config.training.optimizer == OptimizerKind.SGD
        assert spec.base_config.policy.repeat_penalty == 10.0

    def test_run_matrix(self):
        spec = parse_cli(['--jsr', '0.5,1.2', '--seeds', '1,2,3'], TestingConfig)
        configs = spec.run_configs()
        assert len(spec) == 6
        assert [(c.jamming_power, c.seed) for c in configs] == [
            (0.5, 1), (0.5, 2), (0.5, 3), (1.2, 1), (1.2, 2), (1.2, 3)
        ]

    def test_flags(self):
        spec = parse_cli([
            '--agent', 'uniform', '--jammer-mode', 'sample_row', '--policy', 'softmax',
            '--tau', '0.5', '--repeat-penalty', '0', '--optimizer', 'adam', '--out', 'elsewhere', '--dump-weights'
        ], TestingConfig)
        config = spec.run_configs()[0]
        assert config.agent_kind == AgentKind.UNIFORM
        assert config.jammer.mode == JammerMode.SAMPLE_ROW
        assert config.policy.kind == PolicyKind.SOFTMAX
        assert config.policy.temperature == 0.5
        assert config.policy.repeat_penalty == 0.0
        assert config.training.optimizer == OptimizerKind.ADAM
        assert spec.output_dir == Path('elsewhere')
        assert spec.dump_weights

    def test_short_run_shrinks_milestones(self):
        config = parse_cli(['--episodes', '50'], TestingConfig).base_config
        assert config.episodes == 50
        assert config.milestone_period == 50
        assert config.milestone_window == 50

    def test_config_file(self, tmp_path):
        path = tmp_path / 'lab.json'
        path.write_text(json.dumps({'jamming_power': 0.8, 'jammer': {'follow_probability': 0.6}}))
        spec = parse_cli(['--config', str(path), '--seeds', '7'], TestingConfig)
        config = spec.run_configs()[0]
        assert config.jamming_power == 0.8
        assert config.jammer.follow_probability == 0.6
        assert config.seed == 7

    @pytest.mark.parametrize('args', [
        ['--episodes', '0'],
        ['--episodes', 'many'],
        ['--unknown'],
        ['--jsr', ''],
        ['--jsr', '0.5,abc'],
        ['--seeds', '1,1'],
        ['--agent', 'oracle'],
        ['--policy', 'softmax', '--tau', '0'],
        ['--repeat-penalty', '-1'],
        ['--workers', '0'],
    ])
    def test_usage_errors(self, args):
        with pytest.raises(UsageError):
            parse_cli(args, TestingConfig)

    def test_malformed_config_file(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('[1, 2]')
        with pytest.raises(UsageError):
            parse_cli(['--config', str(path)], TestingConfig)


class TestExitCodes:

    def test_success(self, app, out_dir):
        code = app.run(['--episodes', '80', '--seeds', '5', '--out', str(out_dir)])
        assert code == EXIT_OK
        run_dir = out_dir / 'run_0.5_5'
        for name in ('trace.csv', 'summary.json', 'jammer_counts.csv'):
            assert (run_dir / name).exists()
        assert len(list((run_dir / 'charts').glob('*.svg'))) == 5
        for name in ('training_progress', 'plr_no_fec', 'plr_fec', 'jsr_comparison'):
            assert (out_dir / 'tables' / f'{name}.csv').exists()
            assert (out_dir / 'tables' / f'{name}.txt').exists()

    def test_fec_validation_and_weights(self, app, out_dir):
        code = app.run([
            '--episodes', '80', '--seeds', '6', '--out', str(out_dir), '--validate-fec', '--dump-weights'
        ])
        assert code == EXIT_OK
        assert (out_dir / 'tables' / 'fec_oracle.csv').exists()
        assert (out_dir / 'run_0.5_6' / 'policy_weights.npz').exists()

    def test_usage_error(self, app, out_dir, capsys):
        assert app.run(['--episodes', '0', '--out', str(out_dir)]) == EXIT_USAGE
        assert 'usage' in capsys.readouterr().err
        assert not out_dir.exists()

    def test_missing_config_file(self, app, tmp_path):
        assert app.run(['--config', str(tmp_path / 'absent.json')]) == EXIT_RUNTIME

    def test_unwritable_output(self, app, tmp_path):
        blocker = tmp_path / 'blocker'
        blocker.write_text('')
        assert app.run(['--episodes', '80', '--out', str(blocker / 'out')]) == EXIT_RUNTIME
