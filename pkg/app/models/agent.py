"""
Modèles Agent - État, exploration, politiques de saut
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from app.models.qnetwork import QNetwork, ReplayBuffer


class AgentKind(str, Enum):
    """Types d'agents émetteurs"""
    DQN = 'dqn'
    UNIFORM = 'uniform'
    FIXED_SEQUENCE = 'fixed_sequence'


class PolicyKind(str, Enum):
    """Règles de sélection d'action"""
    EPS_GREEDY = 'eps_greedy'
    SOFTMAX = 'softmax'


@dataclass(frozen=True)
class PolicyMode:
    """
    Règle de sélection d'action. repeat_penalty est retranché des valeurs Q
    une fois par saut déjà effectué de l'état courant vers chaque canal ;
    0 rend la sélection purement fondée sur Q.
    """
    kind: PolicyKind = PolicyKind.EPS_GREEDY
    temperature: float = 1.0
    repeat_penalty: float = 10.0

    def __post_init__(self):
        object.__setattr__(self, 'kind', PolicyKind(self.kind))
        if self.kind == PolicyKind.SOFTMAX and self.temperature <= 0:
            raise ValueError(f"La température doit être > 0 (reçu {self.temperature})")
        if self.repeat_penalty < 0:
            raise ValueError(f"repeat_penalty doit être >= 0 (reçu {self.repeat_penalty})")

    def to_dict(self):
        return {'kind': self.kind.value, 'temperature': self.temperature, 'repeat_penalty': self.repeat_penalty}


@dataclass(frozen=True)
class EpsilonSchedule:
    """
    Décroissance géométrique de epsilon, bornée par floor.
    La valeur est recalculée depuis le nombre de décroissances
    (forme close max(floor, start * decay_factor ** steps)).
    """
    start: float = 0.9
    floor: float = 0.05
    decay_factor: float = 0.995
    steps: int = 0

    def __post_init__(self):
        if not 0.0 <= self.floor <= self.start <= 1.0:
            raise ValueError(f"Il faut 0 <= floor <= start <= 1 (floor={self.floor}, start={self.start})")
        if not 0.0 < self.decay_factor <= 1.0:
            raise ValueError(f"decay_factor hors de ]0, 1]: {self.decay_factor}")

    @property
    def epsilon(self):
        return max(self.floor, self.start * self.decay_factor ** self.steps)

    def decayed(self):
        return replace(self, steps=self.steps + 1)

    def to_dict(self):
        return {'start': self.start, 'floor': self.floor, 'decay_factor': self.decay_factor}


@dataclass(frozen=True)
class AgentState:
    """Canal courant vu par l'agent (entrée du réseau)."""
    current_channel: int
    num_channels: int = 16

    def __post_init__(self):
        if not 0 <= self.current_channel < self.num_channels:
            raise ValueError(f"Canal {self.current_channel} hors de [0, {self.num_channels - 1}]")

    def encode(self):
        return one_hot(self.current_channel, self.num_channels)


@dataclass
class HoppingAgent:
    """
    Émetteur d'un run. Seul le type DQN porte des réseaux et un tampon ;
    les références (uniforme, séquence fixe) n'apprennent pas.
    """
    kind: AgentKind
    num_channels: int = 16
    schedule: EpsilonSchedule = field(default_factory=EpsilonSchedule)
    policy_mode: PolicyMode = field(default_factory=PolicyMode)
    policy_net: Optional[QNetwork] = None
    target_net: Optional[QNetwork] = None
    buffer: Optional[ReplayBuffer] = None
    optimizer: object = None
    sequence: Optional[Tuple[int, ...]] = None
    hop_counts: Optional[np.ndarray] = None
    step: int = 0

    def __post_init__(self):
        self.kind = AgentKind(self.kind)
        if self.hop_counts is None:
            self.hop_counts = np.zeros((self.num_channels, self.num_channels), dtype=np.int64)

    @property
    def learns(self):
        return self.kind == AgentKind.DQN

    def __repr__(self):
        return f'<HoppingAgent {self.kind.value} step={self.step} eps={self.schedule.epsilon:.3f}>'


def permutation_cycle(num_channels, rng):
    """Permutation seedée fixée à la construction (période num_channels)."""
    return tuple(int(c) for c in rng.permutation(num_channels))


def one_hot(channel, num_channels):
    vector = np.zeros(num_channels)
    vector[channel] = 1.0
    return vector
