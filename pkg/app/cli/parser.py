"""
Analyse des arguments - Construction d'une ExperimentSpec
"""
import argparse
import json
from dataclasses import replace

from marshmallow import ValidationError

from app.config import Config
from app.core.utils import parse_list
from app.models.agent import PolicyMode
from app.models.experiment import ExperimentSpec
from app.models.training import SimConfig
from app.schemas.config import SimConfigSchema, ExperimentOptionsSchema


class UsageError(Exception):
    """Entrée malformée sur la ligne de commande (code de sortie 1)."""

    def __init__(self, message, usage=''):
        super().__init__(message)
        self.usage = usage


class LabArgumentParser(argparse.ArgumentParser):
    """argparse qui lève UsageError au lieu de quitter le processus."""

    def error(self, message):
        raise UsageError(message, self.format_usage())


def build_parser():
    parser = LabArgumentParser(
        prog='python -m app',
        description="Laboratoire anti-brouillage : DQN à saut de fréquence contre brouilleur markovien",
        allow_abbrev=False
    )
    parser.add_argument('--jsr', help="Puissances de brouillage, séparées par des virgules (ex. 0.5,1.2)")
    parser.add_argument('--seeds', help="Graines, séparées par des virgules (ex. 1,2,3)")
    parser.add_argument('--episodes', type=int, help="Nombre d'épisodes par run")
    parser.add_argument('--agent', help="dqn | uniform | fixed_sequence")
    parser.add_argument('--jammer-mode', dest='jammer_mode',
                        help="markov_predict | previous_channel | sample_row")
    parser.add_argument('--out', help="Répertoire de sortie")
    parser.add_argument('--config', help="Fichier JSON de configuration (noms des champs de SimConfig)")
    parser.add_argument('--policy', help="eps_greedy | softmax")
    parser.add_argument('--tau', type=float, help="Température de la politique softmax")
    parser.add_argument('--repeat-penalty', dest='repeat_penalty', type=float,
                        help="Pénalité par saut déjà emprunté depuis le canal courant (0 : sélection sur Q seul)")
    parser.add_argument('--optimizer', help="adam | sgd")
    parser.add_argument('--workers', type=int, help="Nombre de processus pour la matrice de runs")
    parser.add_argument('--validate-fec', dest='validate_fec', action='store_true',
                        help="Valide le modèle FEC par Monte-Carlo (tables/fec_oracle.*)")
    parser.add_argument('--dump-weights', dest='dump_weights', action='store_true',
                        help="Sauvegarde les poids du réseau politique (.npz)")
    parser.add_argument('--log-level', dest='log_level', help="DEBUG | INFO | WARNING | ERROR")
    return parser


def load_sim_config(path=None, default_seed=None):
    """
    SimConfig des valeurs par défaut, surchargées par le fichier JSON s'il est fourni.
    Les erreurs de lecture du fichier (OSError) sont propagées telles quelles.
    """
    data = {}
    if path:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
        if not isinstance(data, dict):
            raise ValueError(f"Le fichier {path} doit contenir un objet JSON")
    if default_seed is not None and 'seed' not in data:
        data['seed'] = default_seed
    if not data:
        return SimConfig()
    return SimConfigSchema().load(data)


def _apply_overrides(base, options):
    overrides = {}

    if 'episodes' in options:
        episodes = options['episodes']
        overrides['episodes'] = episodes
        # Jalons ramenés à la durée du run quand elle est plus courte
        if episodes < base.milestone_period:
            overrides['milestone_period'] = episodes
            overrides['milestone_window'] = min(base.milestone_window, episodes)

    if 'optimizer' in options:
        overrides['training'] = replace(base.training, optimizer=options['optimizer'])

    if any(key in options for key in ('policy', 'tau', 'repeat_penalty')):
        overrides['policy'] = PolicyMode(
            kind=options.get('policy', base.policy.kind),
            temperature=options.get('tau', base.policy.temperature),
            repeat_penalty=options.get('repeat_penalty', base.policy.repeat_penalty)
        )

    return replace(base, **overrides) if overrides else base


def parse_cli(args, settings=Config):
    """
    Construit l'ExperimentSpec : valeurs par défaut < fichier --config < drapeaux.
    Toute entrée malformée lève UsageError.
    """
    parser = build_parser()
    namespace = parser.parse_args(args)
    usage = parser.format_usage()

    raw = {key: value for key, value in vars(namespace).items() if value is not None}
    try:
        if 'jsr' in raw:
            raw['jsr'] = parse_list(raw['jsr'], float)
        if 'seeds' in raw:
            raw['seeds'] = parse_list(raw['seeds'], int)
        options = ExperimentOptionsSchema().load(raw)

        base = load_sim_config(options.get('config'), settings.DEFAULT_SEED)
        base = _apply_overrides(base, options)

        return ExperimentSpec(
            base_config=base,
            seeds=tuple(options.get('seeds', [base.seed])),
            jamming_powers=tuple(options.get('jsr', [base.jamming_power])),
            agent_kind=options.get('agent', base.agent_kind),
            jammer_mode=options.get('jammer_mode', base.jammer.mode),
            output_dir=options.get('out', settings.OUTPUT_DIR),
            workers=options.get('workers', settings.MAX_WORKERS),
            validate_fec=options['validate_fec'],
            dump_weights=options['dump_weights'],
            log_level=options.get('log_level')
        )
    except ValidationError as exc:
        raise UsageError(_format_messages(exc.messages), usage) from exc
    except ValueError as exc:
        raise UsageError(str(exc), usage) from exc


def _format_messages(messages, prefix=''):
    """Aplatit les messages marshmallow : 'champ: message'."""
    if isinstance(messages, dict):
        parts = []
        for key, value in messages.items():
            label = f'{prefix}.{key}' if prefix else str(key)
            parts.append(_format_messages(value, label))
        return '; '.join(parts)
    if isinstance(messages, list):
        text = ' '.join(str(m) for m in messages if not isinstance(m, (dict, list)))
        nested = [_format_messages(m, prefix) for m in messages if isinstance(m, (dict, list))]
        return '; '.join(filter(None, [f'{prefix}: {text}' if text else '', *nested]))
    return f'{prefix}: {messages}'
