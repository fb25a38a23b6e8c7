"""
Flux aléatoires déterministes par run
"""
from dataclasses import dataclass

import numpy as np


@dataclass
class RunStreams:
    """Générateurs indépendants dérivés d'une seule graine."""
    init: np.random.Generator
    agent: np.random.Generator
    jammer: np.random.Generator
    physics: np.random.Generator
    replay: np.random.Generator

    @classmethod
    def from_seed(cls, seed):
        """
        Dérive cinq flux enfants via SeedSequence.spawn.
        Chaque consommateur possède son flux : modifier l'un ne perturbe pas les autres.
        """
        children = np.random.SeedSequence(seed).spawn(5)
        return cls(*(np.random.default_rng(child) for child in children))


def make_rng(seed):
    """Générateur numpy seedé."""
    return np.random.default_rng(seed)
