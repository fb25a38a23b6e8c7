"""
Service Brouilleur - Apprentissage des transitions de l'agent et choix du canal brouillé
"""
import logging

import numpy as np
import pandas as pd

from app.models.jammer import JammerMode

logger = logging.getLogger(__name__)


class JammerService:
    """Service du brouilleur réactif markovien"""

    @staticmethod
    def _check_channel(state, channel):
        if not 0 <= channel < state.num_channels:
            raise ValueError(
                f"Canal {channel} hors de [0, {state.num_channels - 1}]"
            )

    @staticmethod
    def observe_transition(state, prev_channel, curr_channel):
        """
        Enregistre la transition prev -> curr de l'agent.
        Seule la case counts[prev][curr] change, de +1.
        """
        JammerService._check_channel(state, prev_channel)
        JammerService._check_channel(state, curr_channel)

        state.counts[prev_channel, curr_channel] += 1
        state.last_agent_channel = curr_channel
        return state

    @staticmethod
    def transition_probabilities(state, from_channel):
        """Ligne lissée P[i, k] = (count(i->k) + alpha) / somme_m (count(i->m) + alpha)."""
        JammerService._check_channel(state, from_channel)
        row = state.counts[from_channel].astype(float) + state.dirichlet_prior
        return row / row.sum()

    @staticmethod
    def transition_matrix(state):
        smoothed = state.counts.astype(float) + state.dirichlet_prior
        return smoothed / smoothed.sum(axis=1, keepdims=True)

    @staticmethod
    def predict(state, curr_channel):
        """Canal suivant le plus probable ; à égalité, le plus petit indice."""
        row = JammerService.transition_probabilities(state, curr_channel)
        return int(np.argmax(row))

    @staticmethod
    def choose_jam(state, curr_channel, rng):
        """
        Canal brouillé au créneau suivant, à partir de l'historique jusqu'à curr_channel.
        Avec probabilité follow_probability le brouilleur suit sa stratégie,
        sinon il brouille un canal uniforme.
        """
        JammerService._check_channel(state, curr_channel)

        if rng.random() >= state.follow_probability:
            return int(rng.integers(state.num_channels))

        if state.mode == JammerMode.PREVIOUS_CHANNEL:
            return curr_channel
        if state.mode == JammerMode.SAMPLE_ROW:
            row = JammerService.transition_probabilities(state, curr_channel)
            return int(rng.choice(state.num_channels, p=row))
        return JammerService.predict(state, curr_channel)

    @staticmethod
    def counts_frame(state):
        channels = range(state.num_channels)
        frame = pd.DataFrame(
            state.counts,
            index=pd.Index(list(channels), name='from_channel'),
            columns=[f'to_{k}' for k in channels]
        )
        return frame

    @staticmethod
    def dump_counts_csv(state, path):
        """Écrit la matrice de comptage (diagnostic)."""
        JammerService.counts_frame(state).to_csv(path)
        logger.debug("Compteurs du brouilleur écrits dans %s", path)
        return path
