"""
Service Entraînement - Boucle des épisodes, récompense, jalons et métriques finales
"""
import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy import stats

from app.core.rng import RunStreams
from app.core.utils import run_id
from app.models.agent import AgentState, HoppingAgent
from app.models.jammer import JammerState
from app.models.qnetwork import Transition
from app.models.spectrum import LinkParams
from app.models.training import (
    SimConfig, UsageCounter, EpisodeOutcome, MilestoneRow, FinalMetrics, TrainingTrace
)
from app.services.agent_service import AgentService
from app.services.jammer_service import JammerService
from app.services.qnetwork_service import QNetworkService
from app.services.spectrum_service import SpectrumService

logger = logging.getLogger(__name__)


@dataclass
class TrainingSession:
    """État mutable d'un run : agent, brouilleur, physique, compteur d'usage, flux aléatoires."""
    config: SimConfig
    agent: HoppingAgent
    jammer: JammerState
    link: LinkParams
    usage: UsageCounter
    streams: RunStreams
    current_channel: int = 0
    episode: int = 0
    last_loss: Optional[float] = None

    @classmethod
    def start(cls, config, initial_channel=0):
        streams = RunStreams.from_seed(config.seed)
        return cls(
            config=config,
            agent=AgentService.build_agent(config, streams),
            jammer=JammerState.from_settings(config.jammer, config.num_channels),
            link=config.link_params,
            usage=UsageCounter.empty(config.num_channels),
            streams=streams,
            current_channel=initial_channel
        )


class TrainingService:
    """Service de la boucle d'entraînement"""

    @staticmethod
    def compute_reward(jammed, ber, usage_entropy, config):
        """
        Brouillé : jam_penalty (valeur plate).
        Sinon : 1 / (1 + ber) + diversity_bonus * entropie d'usage.
        """
        if jammed:
            return config.jam_penalty
        return 1.0 / (1.0 + ber) + config.diversity_bonus * usage_entropy

    @staticmethod
    def usage_entropy(counter):
        """Entropie de Shannon (nats) des fréquences d'usage ; 0 si aucun créneau."""
        if counter.total == 0:
            return 0.0
        return float(stats.entropy(counter.counts))

    @staticmethod
    def run_episode(session):
        """
        Un créneau (un saut), dans l'ordre strict :
        choix de l'agent, choix du brouilleur, collision, physique, PLR,
        usage et entropie, récompense, rejeu, pas TD, puis observation du brouilleur.
        """
        config = session.config
        agent = session.agent
        streams = session.streams
        current = session.current_channel
        episode = session.episode + 1

        state = AgentState(current, config.num_channels)
        chosen = AgentService.choose_channel(agent, state, streams.agent)
        # Le brouilleur ne connaît que l'historique jusqu'au canal courant
        jam_channel = JammerService.choose_jam(session.jammer, current, streams.jammer)
        jammed = chosen == jam_channel

        fading = SpectrumService.sample_fading(streams.physics, session.link)
        sample = SpectrumService.compute_snr_ber(fading, jammed, session.link)
        plr = SpectrumService.plr_matrix(
            sample.ber, config.packet_sizes, config.fec_levels, config.parity_bits_per_t
        )

        session.usage.record(chosen)
        AgentService.record_hop(agent, current, chosen)
        entropy = TrainingService.usage_entropy(session.usage)
        reward = TrainingService.compute_reward(jammed, sample.ber, entropy, config)

        loss = None
        if agent.learns:
            QNetworkService.buffer_push(agent.buffer, Transition(
                state=state.encode(),
                action=chosen,
                reward=reward,
                next_state=AgentService.encode_state(chosen, config.num_channels)
            ))
            batch = QNetworkService.buffer_sample(
                agent.buffer, config.training.batch_size, streams.replay
            )
            if batch is not None:
                _, loss = QNetworkService.td_train_step(
                    agent.policy_net, agent.target_net, batch, config.training, agent.optimizer
                )

        JammerService.observe_transition(session.jammer, current, chosen)

        session.current_channel = chosen
        session.episode = episode
        session.last_loss = loss
        agent.step += 1

        return EpisodeOutcome(
            episode=episode,
            prev_channel=current,
            chosen_channel=chosen,
            jam_channel=jam_channel,
            jammed=jammed,
            fading=float(fading),
            snr_linear=sample.snr_linear,
            snr_db=sample.snr_db,
            ber=sample.ber,
            reward=reward,
            usage_entropy_nats=entropy,
            plr_by_size_and_t=tuple(tuple(float(v) for v in row) for row in plr),
            epsilon=agent.schedule.epsilon,
            loss=loss
        )

    @staticmethod
    def train(config):
        """
        Exécute un run complet et retourne (trace, session).
        epsilon décroît une fois par épisode ; la cible est synchronisée
        toutes les target_update_period épisodes.
        """
        session = TrainingSession.start(config)
        agent = session.agent
        trace = TrainingTrace(run_id=run_id(config.jamming_power, config.seed), config=config)

        logger.info(
            "Début du run %s (%s, %d épisodes, brouilleur %s)",
            trace.run_id, config.agent_kind.value, config.episodes, config.jammer.mode.value
        )

        cumulative = 0.0
        period = config.training.target_update_period
        for _ in range(config.episodes):
            outcome = TrainingService.run_episode(session)
            agent.schedule = AgentService.decay_epsilon(agent.schedule)
            outcome = replace(outcome, epsilon=agent.schedule.epsilon)

            if agent.learns and outcome.episode % period == 0:
                QNetworkService.sync_target(agent.policy_net, agent.target_net)
                logger.debug("Réseau cible synchronisé à l'épisode %d", outcome.episode)

            cumulative += outcome.reward
            trace.outcomes.append(outcome)
            trace.cumulative_reward.append(cumulative)

        trace.usage_counts = tuple(int(c) for c in session.usage.counts)
        trace.jammer_counts = session.jammer.counts.copy()

        for episode in config.milestone_episodes:
            row = TrainingService.milestone_summary(trace, episode, config.milestone_window)
            trace.milestones.append(row)
            logger.info(
                "Épisode %d : BER %.3e, SNR %.2f dB, H %.3f, succès %.2f %%, eps %.3f",
                row.episode, row.mean_ber, row.mean_snr_db, row.entropy,
                100.0 * row.success_rate, row.epsilon
            )

        trace.finals = TrainingService.final_metrics(trace)
        if trace.finals.success_defined:
            logger.info(
                "Fin du run %s : succès %.2f %%, %d brouillages",
                trace.run_id, 100.0 * trace.finals.success_rate, trace.finals.total_jams
            )
        else:
            logger.warning("Run %s sans épisode : taux de succès indéfini", trace.run_id)

        return trace, session

    @staticmethod
    def run_training(config):
        """Run complet : retourne la TrainingTrace."""
        trace, _ = TrainingService.train(config)
        return trace

    @staticmethod
    def milestone_summary(trace, episode, window):
        """
        Moyennes BER / SNR sur la fenêtre qui se termine à `episode` ;
        entropie et epsilon à l'épisode ; succès cumulé depuis l'épisode 1.
        """
        if window < 1 or episode < window:
            raise ValueError(f"Jalon {episode} inférieur à la fenêtre {window}")
        if episode > trace.episodes:
            raise ValueError(f"Jalon {episode} au-delà de la trace ({trace.episodes} épisodes)")

        outcomes = trace.outcomes[:episode]
        recent = outcomes[-window:]
        jams_total = sum(1 for o in outcomes if o.jammed)
        jams_recent = sum(1 for o in recent if o.jammed)
        last = outcomes[-1]

        return MilestoneRow(
            episode=episode,
            mean_ber=float(np.mean([o.ber for o in recent])),
            mean_snr_db=float(np.mean([o.snr_db for o in recent])),
            entropy=last.usage_entropy_nats,
            success_rate=1.0 - jams_total / episode,
            window_success_rate=1.0 - jams_recent / window,
            epsilon=last.epsilon
        )

    @staticmethod
    def final_metrics(trace):
        """Métriques finales sur la dernière fenêtre, succès cumulé sur tout le run."""
        config = trace.config
        if trace.episodes == 0:
            nan = float('nan')
            return FinalMetrics(
                final_ber=nan,
                final_snr_db=nan,
                clean_snr_db=nan,
                final_entropy=0.0,
                success_rate=None,
                window_success_rate=None,
                mean_episode_reward=nan,
                cumulative_reward=0.0,
                total_jams=0,
                final_plr=(),
                final_plr_fec=(),
                success_defined=False
            )

        window = min(config.milestone_window, trace.episodes)
        recent = trace.outcomes[-window:]
        clean = [o.snr_db for o in trace.outcomes if not o.jammed]
        window_plr = np.mean([o.plr_by_size_and_t for o in recent], axis=0)
        final_ber = float(np.mean([o.ber for o in recent]))

        return FinalMetrics(
            final_ber=final_ber,
            final_snr_db=float(np.mean([o.snr_db for o in recent])),
            clean_snr_db=float(np.mean(clean)) if clean else float('nan'),
            final_entropy=trace.outcomes[-1].usage_entropy_nats,
            success_rate=1.0 - trace.total_jams / trace.episodes,
            window_success_rate=1.0 - sum(1 for o in recent if o.jammed) / window,
            mean_episode_reward=float(np.mean([o.reward for o in trace.outcomes])),
            cumulative_reward=trace.cumulative_reward[-1],
            total_jams=trace.total_jams,
            final_plr=TrainingService.window_plr_without_fec(trace, window_plr),
            final_plr_fec=tuple(tuple(float(v) for v in row) for row in window_plr)
        )

    @staticmethod
    def window_plr_without_fec(trace, window_plr):
        """
        PLR sans FEC par taille de paquet, moyenné sur la dernière fenêtre.
        Reprend la colonne t = 0 quand elle existe.
        """
        config = trace.config
        if 0 in config.fec_levels:
            column = config.fec_levels.index(0)
            return tuple(float(v) for v in window_plr[:, column])

        window = min(config.milestone_window, trace.episodes)
        recent = trace.outcomes[-window:]
        return tuple(
            float(np.mean([SpectrumService.packet_loss_rate(o.ber, size) for o in recent]))
            for size in config.packet_sizes
        )
