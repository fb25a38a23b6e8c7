"""
Modèle Brouilleur - Brouilleur réactif markovien d'ordre 1
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np


class JammerMode(str, Enum):
    """Stratégies de choix du canal brouillé"""
    MARKOV_PREDICT = 'markov_predict'
    PREVIOUS_CHANNEL = 'previous_channel'
    SAMPLE_ROW = 'sample_row'


@dataclass(frozen=True)
class JammerSettings:
    """Réglages du brouilleur portés par SimConfig."""
    mode: JammerMode = JammerMode.MARKOV_PREDICT
    follow_probability: float = 0.8
    dirichlet_prior: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'mode', JammerMode(self.mode))
        if not 0.0 <= self.follow_probability <= 1.0:
            raise ValueError(f"follow_probability hors de [0, 1]: {self.follow_probability}")
        if self.dirichlet_prior <= 0:
            raise ValueError(f"dirichlet_prior doit être > 0: {self.dirichlet_prior}")

    def to_dict(self):
        return {
            'mode': self.mode.value,
            'follow_probability': self.follow_probability,
            'dirichlet_prior': self.dirichlet_prior
        }


@dataclass
class JammerState:
    """
    Compteurs de transitions count(i -> k) observés chez l'agent.
    Possédé par un seul run ; les compteurs ne font que croître de 1.
    """
    num_channels: int = 16
    dirichlet_prior: float = 1.0
    follow_probability: float = 0.8
    mode: JammerMode = JammerMode.MARKOV_PREDICT
    counts: np.ndarray = field(default=None)
    last_agent_channel: Optional[int] = None

    def __post_init__(self):
        self.mode = JammerMode(self.mode)
        if self.counts is None:
            self.counts = np.zeros((self.num_channels, self.num_channels), dtype=np.int64)

    @classmethod
    def from_settings(cls, settings, num_channels=16):
        return cls(
            num_channels=num_channels,
            dirichlet_prior=settings.dirichlet_prior,
            follow_probability=settings.follow_probability,
            mode=settings.mode
        )

    @property
    def total_observations(self):
        return int(self.counts.sum())

    def __repr__(self):
        return f'<JammerState mode={self.mode.value} obs={self.total_observations}>'
