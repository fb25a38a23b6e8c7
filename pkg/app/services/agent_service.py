"""
Service Agent - Encodage d'état, sélection d'action, politiques de référence
"""
import numpy as np
from scipy import special

from app.models.agent import (
    AgentKind, PolicyKind, HoppingAgent, permutation_cycle, one_hot
)
from app.models.qnetwork import QNetwork, ReplayBuffer
from app.services.qnetwork_service import QNetworkService


class AgentService:
    """Service de décision de l'émetteur"""

    @staticmethod
    def encode_state(channel, num_channels=16):
        """Vecteur one-hot du canal courant."""
        if not 0 <= channel < num_channels:
            raise ValueError(f"Canal {channel} hors de [0, {num_channels - 1}]")
        return one_hot(channel, num_channels)

    @staticmethod
    def decode_state(vector):
        vector = np.asarray(vector)
        if np.count_nonzero(vector) != 1 or vector.max() != 1.0:
            raise ValueError("L'état doit être un vecteur one-hot")
        return int(np.argmax(vector))

    @staticmethod
    def softmax_probabilities(qvalues, temperature=1.0):
        """p_i = exp(q_i / tau) / somme_j exp(q_j / tau), stabilisé par soustraction du max."""
        if temperature <= 0:
            raise ValueError(f"La température doit être > 0 (reçu {temperature})")
        return special.softmax(np.asarray(qvalues, dtype=float) / temperature)

    @staticmethod
    def select_action(qvalues, schedule, mode, rng):
        """
        epsilon-greedy : canal uniforme avec probabilité epsilon, sinon argmax
        (égalités vers le plus petit indice). softmax : tirage selon softmax(q / tau).
        """
        qvalues = np.asarray(qvalues, dtype=float)
        if not np.all(np.isfinite(qvalues)):
            raise ValueError("Les valeurs Q doivent être finies")

        if mode.kind == PolicyKind.SOFTMAX:
            probabilities = AgentService.softmax_probabilities(qvalues, mode.temperature)
            return int(rng.choice(len(qvalues), p=probabilities))

        if rng.random() < schedule.epsilon:
            return int(rng.integers(len(qvalues)))
        return int(np.argmax(qvalues))

    @staticmethod
    def decay_epsilon(schedule):
        """epsilon <- max(floor, epsilon * decay_factor)."""
        return schedule.decayed()

    @staticmethod
    def baseline_uniform(rng, num_channels=16):
        return int(rng.integers(num_channels))

    @staticmethod
    def baseline_fixed_sequence(sequence, step):
        """Cycle de permutation de période len(sequence)."""
        return int(sequence[step % len(sequence)])

    @staticmethod
    def build_agent(config, streams):
        """
        Construit l'agent d'un run. Les réseaux sont initialisés sur le flux `init`,
        la permutation de séquence fixe aussi.
        """
        agent = HoppingAgent(
            kind=config.agent_kind,
            num_channels=config.num_channels,
            schedule=config.epsilon,
            policy_mode=config.policy
        )

        if agent.kind == AgentKind.DQN:
            agent.policy_net = QNetwork.initialize(config.layer_sizes, streams.init)
            agent.target_net = agent.policy_net.copy()
            agent.buffer = ReplayBuffer(capacity=config.training.buffer_capacity)
            agent.optimizer = QNetworkService.build_optimizer(config.training)
        elif agent.kind == AgentKind.FIXED_SEQUENCE:
            agent.sequence = permutation_cycle(config.num_channels, streams.init)

        return agent

    @staticmethod
    def selection_scores(qvalues, hop_row, repeat_penalty):
        """
        Valeurs Q diminuées de repeat_penalty par saut déjà fait vers chaque canal
        depuis l'état courant. Avec une pénalité dominante, l'argmax est le
        successeur le moins emprunté ; Q départage les égalités.
        """
        qvalues = np.asarray(qvalues, dtype=float)
        hop_row = np.asarray(hop_row, dtype=float)
        if qvalues.shape != hop_row.shape:
            raise ValueError(f"Formes incompatibles: {qvalues.shape} / {hop_row.shape}")
        return qvalues - repeat_penalty * hop_row

    @staticmethod
    def record_hop(agent, prev_channel, chosen_channel):
        agent.hop_counts[prev_channel, chosen_channel] += 1
        return agent

    @staticmethod
    def choose_channel(agent, state, rng):
        """Prochain canal de l'agent depuis l'état courant (AgentState)."""
        if agent.kind == AgentKind.UNIFORM:
            return AgentService.baseline_uniform(rng, agent.num_channels)
        if agent.kind == AgentKind.FIXED_SEQUENCE:
            return AgentService.baseline_fixed_sequence(agent.sequence, agent.step)

        qvalues = QNetworkService.forward(agent.policy_net, state.encode())
        scores = AgentService.selection_scores(
            qvalues, agent.hop_counts[state.current_channel], agent.policy_mode.repeat_penalty
        )
        return AgentService.select_action(scores, agent.schedule, agent.policy_mode, rng)
