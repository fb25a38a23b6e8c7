"""
Modèles Entraînement - Configuration de simulation, épisodes, traces
"""
import math
from dataclasses import dataclass, field, asdict
from typing import List, Optional, Tuple

import numpy as np

from app.models.agent import AgentKind, EpsilonSchedule, PolicyMode
from app.models.jammer import JammerSettings
from app.models.qnetwork import TrainingHyperparams
from app.models.spectrum import LinkParams, DEFAULT_PARITY_BITS_PER_T

DEFAULT_PACKET_SIZES = (10, 100, 1000, 10_000, 100_000)
DEFAULT_FEC_LEVELS = (0, 1, 2, 5, 10)


@dataclass(frozen=True)
class SimConfig:
    """Tous les paramètres physiques et d'apprentissage d'un run."""
    num_channels: int = 16
    episodes: int = 1500
    jamming_power: float = 0.5
    signal_power: float = 1.0
    noise_power: float = 0.05
    fading_scale: float = 0.8
    fading_floor: float = 0.3
    diversity_bonus: float = 0.02
    jam_penalty: float = -2.0
    packet_sizes: Tuple[int, ...] = DEFAULT_PACKET_SIZES
    fec_levels: Tuple[int, ...] = DEFAULT_FEC_LEVELS
    parity_bits_per_t: int = DEFAULT_PARITY_BITS_PER_T
    milestone_period: int = 200
    milestone_window: int = 100
    seed: int = 2024
    agent_kind: AgentKind = AgentKind.DQN
    training: TrainingHyperparams = field(default_factory=TrainingHyperparams)
    epsilon: EpsilonSchedule = field(default_factory=EpsilonSchedule)
    jammer: JammerSettings = field(default_factory=JammerSettings)
    policy: PolicyMode = field(default_factory=PolicyMode)

    def __post_init__(self):
        object.__setattr__(self, 'agent_kind', AgentKind(self.agent_kind))
        object.__setattr__(self, 'packet_sizes', tuple(int(s) for s in self.packet_sizes))
        object.__setattr__(self, 'fec_levels', tuple(int(t) for t in self.fec_levels))
        self.validate()

    def validate(self):
        """Vérifie les invariants ; lève ValueError."""
        if self.num_channels < 2:
            raise ValueError(f"num_channels doit être >= 2 (reçu {self.num_channels})")
        if self.episodes < 0:
            raise ValueError(f"episodes doit être >= 0 (reçu {self.episodes})")
        if self.milestone_window < 1 or self.milestone_window > self.milestone_period:
            raise ValueError(
                f"Il faut 1 <= milestone_window <= milestone_period "
                f"(window={self.milestone_window}, period={self.milestone_period})"
            )
        if self.episodes > 0 and self.milestone_period > self.episodes:
            raise ValueError(
                f"milestone_period ({self.milestone_period}) dépasse episodes ({self.episodes})"
            )
        if not self.packet_sizes or min(self.packet_sizes) < 1:
            raise ValueError("packet_sizes doit contenir des tailles >= 1")
        if not self.fec_levels or min(self.fec_levels) < 0:
            raise ValueError("fec_levels doit contenir des niveaux >= 0")
        # Construit LinkParams pour valider les puissances
        self.link_params

    @property
    def link_params(self):
        return LinkParams(
            signal_power=self.signal_power,
            noise_power=self.noise_power,
            jamming_power=self.jamming_power,
            fading_scale=self.fading_scale,
            fading_floor=self.fading_floor
        )

    @property
    def layer_sizes(self):
        return (self.num_channels, *self.training.hidden_sizes, self.num_channels)

    @property
    def milestone_episodes(self):
        if self.episodes == 0:
            return []
        return list(range(self.milestone_period, self.episodes + 1, self.milestone_period))

    @property
    def max_entropy(self):
        return math.log(self.num_channels)

    def to_dict(self):
        return {
            'num_channels': self.num_channels,
            'episodes': self.episodes,
            'jamming_power': self.jamming_power,
            'signal_power': self.signal_power,
            'noise_power': self.noise_power,
            'fading_scale': self.fading_scale,
            'fading_floor': self.fading_floor,
            'diversity_bonus': self.diversity_bonus,
            'jam_penalty': self.jam_penalty,
            'packet_sizes': list(self.packet_sizes),
            'fec_levels': list(self.fec_levels),
            'parity_bits_per_t': self.parity_bits_per_t,
            'milestone_period': self.milestone_period,
            'milestone_window': self.milestone_window,
            'seed': self.seed,
            'agent_kind': self.agent_kind.value,
            'training': self.training.to_dict(),
            'epsilon': self.epsilon.to_dict(),
            'jammer': self.jammer.to_dict(),
            'policy': self.policy.to_dict()
        }


@dataclass
class UsageCounter:
    """Compteur de visites par canal sur tout le run."""
    counts: np.ndarray

    @classmethod
    def empty(cls, num_channels=16):
        return cls(np.zeros(num_channels, dtype=np.int64))

    @property
    def total(self):
        return int(self.counts.sum())

    def record(self, channel):
        self.counts[channel] += 1

    def fractions(self):
        total = self.total
        if total == 0:
            return np.zeros_like(self.counts, dtype=float)
        return self.counts / total


@dataclass(frozen=True)
class EpisodeOutcome:
    """Enregistrement d'un créneau (un saut)."""
    episode: int
    prev_channel: int
    chosen_channel: int
    jam_channel: int
    jammed: bool
    fading: float
    snr_linear: float
    snr_db: float
    ber: float
    reward: float
    usage_entropy_nats: float
    plr_by_size_and_t: Tuple[Tuple[float, ...], ...]
    epsilon: float = float('nan')
    loss: Optional[float] = None

    def to_row(self, packet_sizes, fec_levels):
        row = {
            'episode': self.episode,
            'prev_channel': self.prev_channel,
            'chosen_channel': self.chosen_channel,
            'jam_channel': self.jam_channel,
            'jammed': int(self.jammed),
            'fading': self.fading,
            'snr_linear': self.snr_linear,
            'snr_db': self.snr_db,
            'ber': self.ber,
            'reward': self.reward,
            'usage_entropy_nats': self.usage_entropy_nats,
            'epsilon': self.epsilon,
            'loss': self.loss
        }
        for i, size in enumerate(packet_sizes):
            for j, level in enumerate(fec_levels):
                row[plr_column(size, level)] = self.plr_by_size_and_t[i][j]
        return row


def plr_column(size, level):
    return f'plr_L{size}_t{level}'


@dataclass(frozen=True)
class MilestoneRow:
    """Ligne du tableau de progression."""
    episode: int
    mean_ber: float
    mean_snr_db: float
    entropy: float
    success_rate: float
    window_success_rate: float
    epsilon: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class FinalMetrics:
    """Métriques finales sur la dernière fenêtre (et succès cumulé)."""
    final_ber: float
    final_snr_db: float
    clean_snr_db: float
    final_entropy: float
    success_rate: Optional[float]
    window_success_rate: Optional[float]
    mean_episode_reward: float
    cumulative_reward: float
    total_jams: int
    final_plr: Tuple[float, ...]
    final_plr_fec: Tuple[Tuple[float, ...], ...]
    success_defined: bool = True

    def to_dict(self):
        data = asdict(self)
        data['final_plr'] = list(self.final_plr)
        data['final_plr_fec'] = [list(row) for row in self.final_plr_fec]
        return data


@dataclass
class TrainingTrace:
    """Trace complète d'un run : épisodes, récompense cumulée, jalons, métriques finales."""
    run_id: str
    config: SimConfig
    outcomes: List[EpisodeOutcome] = field(default_factory=list)
    cumulative_reward: List[float] = field(default_factory=list)
    milestones: List[MilestoneRow] = field(default_factory=list)
    finals: Optional[FinalMetrics] = None
    usage_counts: Tuple[int, ...] = ()
    jammer_counts: Optional[np.ndarray] = None

    @property
    def episodes(self):
        return len(self.outcomes)

    @property
    def total_jams(self):
        return sum(1 for o in self.outcomes if o.jammed)

    def series(self, name):
        return np.array([getattr(o, name) for o in self.outcomes], dtype=float)

    def usage_fractions(self):
        counts = np.asarray(self.usage_counts, dtype=float)
        total = counts.sum()
        return counts / total if total else counts

    def to_rows(self):
        rows = []
        for outcome, cumulative in zip(self.outcomes, self.cumulative_reward):
            row = outcome.to_row(self.config.packet_sizes, self.config.fec_levels)
            row['cumulative_reward'] = cumulative
            rows.append(row)
        return rows

    def __repr__(self):
        return f'<TrainingTrace {self.run_id} episodes={self.episodes}>'
