"""
Modèles Réseau Q - MLP, transitions, tampon de rejeu, optimiseurs
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

import numpy as np


class OptimizerKind(str, Enum):
    """Optimiseurs disponibles pour l'étape TD"""
    SGD = 'sgd'
    ADAM = 'adam'


@dataclass(frozen=True)
class TrainingHyperparams:
    """Hyperparamètres de l'apprentissage par différence temporelle."""
    learning_rate: float = 1e-3
    discount: float = 0.9
    batch_size: int = 64
    buffer_capacity: int = 10_000
    target_update_period: int = 100
    hidden_sizes: Tuple[int, ...] = (128, 128)
    optimizer: OptimizerKind = OptimizerKind.SGD
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, 'optimizer', OptimizerKind(self.optimizer))
        object.__setattr__(self, 'hidden_sizes', tuple(int(h) for h in self.hidden_sizes))
        if not 0.0 < self.discount < 1.0:
            raise ValueError(f"discount doit être dans ]0, 1[ (reçu {self.discount})")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate doit être > 0 (reçu {self.learning_rate})")
        if self.batch_size < 1 or self.batch_size > self.buffer_capacity:
            raise ValueError(
                f"batch_size doit être dans [1, {self.buffer_capacity}] (reçu {self.batch_size})"
            )
        if self.target_update_period < 1:
            raise ValueError(f"target_update_period doit être >= 1 (reçu {self.target_update_period})")

    def to_dict(self):
        return {
            'learning_rate': self.learning_rate,
            'discount': self.discount,
            'batch_size': self.batch_size,
            'buffer_capacity': self.buffer_capacity,
            'target_update_period': self.target_update_period,
            'hidden_sizes': list(self.hidden_sizes),
            'optimizer': self.optimizer.value,
            'adam_beta1': self.adam_beta1,
            'adam_beta2': self.adam_beta2,
            'adam_epsilon': self.adam_epsilon
        }


@dataclass
class QNetwork:
    """
    Perceptron multicouche : affine-ReLU-...-affine.
    weights[i] a la forme (fan_in, fan_out) ; biases[i] la forme (fan_out,).
    """
    layer_sizes: Tuple[int, ...]
    weights: List[np.ndarray]
    biases: List[np.ndarray]

    @classmethod
    def initialize(cls, layer_sizes, rng):
        """Initialisation uniforme dans ±1/sqrt(fan_in), seedée."""
        layer_sizes = tuple(int(s) for s in layer_sizes)
        weights, biases = [], []
        for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
            bound = 1.0 / np.sqrt(fan_in)
            weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            biases.append(rng.uniform(-bound, bound, size=fan_out))
        return cls(layer_sizes, weights, biases)

    @classmethod
    def zeros(cls, layer_sizes):
        layer_sizes = tuple(int(s) for s in layer_sizes)
        weights = [np.zeros((a, b)) for a, b in zip(layer_sizes[:-1], layer_sizes[1:])]
        biases = [np.zeros(b) for b in layer_sizes[1:]]
        return cls(layer_sizes, weights, biases)

    @property
    def input_size(self):
        return self.layer_sizes[0]

    @property
    def output_size(self):
        return self.layer_sizes[-1]

    def parameters(self):
        """Liste à plat [W0, b0, W1, b1, ...] (références, pas de copie)."""
        params = []
        for w, b in zip(self.weights, self.biases):
            params.extend([w, b])
        return params

    def copy(self):
        return QNetwork(
            self.layer_sizes,
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases]
        )

    def same_architecture(self, other):
        return self.layer_sizes == other.layer_sizes

    def __repr__(self):
        return f"<QNetwork {'->'.join(str(s) for s in self.layer_sizes)}>"


@dataclass(frozen=True, eq=False)
class Transition:
    """Transition (s, a, r, s') ; s et s' sont des vecteurs one-hot."""
    state: np.ndarray
    action: int
    reward: float
    next_state: np.ndarray

    def __post_init__(self):
        for name in ('state', 'next_state'):
            vector = getattr(self, name)
            if np.count_nonzero(vector) != 1 or vector.max() != 1.0:
                raise ValueError(f"{name} doit être un vecteur one-hot")


@dataclass
class ReplayBuffer:
    """Tampon circulaire : les entrées les plus anciennes sont évincées en premier."""
    capacity: int = 10_000
    items: list = field(default_factory=list)
    cursor: int = 0

    def __post_init__(self):
        if self.capacity < 1:
            raise ValueError(f"capacity doit être >= 1 (reçu {self.capacity})")

    def __len__(self):
        return len(self.items)

    def is_ready(self, batch_size):
        return len(self.items) >= batch_size


class SgdOptimizer:
    """Descente de gradient simple : theta <- theta - lr * grad."""
    kind = OptimizerKind.SGD

    def __init__(self, learning_rate):
        self.learning_rate = learning_rate

    def step(self, params, grads):
        for param, grad in zip(params, grads):
            param -= self.learning_rate * grad


class AdamOptimizer:
    """Adam avec correction de biais, état par paramètre."""
    kind = OptimizerKind.ADAM

    def __init__(self, learning_rate, beta1=0.9, beta2=0.999, epsilon=1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.steps = 0
        self.first_moments = None
        self.second_moments = None

    def step(self, params, grads):
        if self.first_moments is None:
            self.first_moments = [np.zeros_like(p) for p in params]
            self.second_moments = [np.zeros_like(p) for p in params]

        self.steps += 1
        correction1 = 1.0 - self.beta1 ** self.steps
        correction2 = 1.0 - self.beta2 ** self.steps

        for param, grad, m, v in zip(params, grads, self.first_moments, self.second_moments):
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad * grad
            param -= self.learning_rate * (m / correction1) / (np.sqrt(v / correction2) + self.epsilon)
