"""
Service Graphiques - Figures SVG d'un run et CSV des séries tracées
"""
import logging
from pathlib import Path

import numpy as np
import pandas as pd
from matplotlib.collections import PatchCollection
from matplotlib.figure import Figure
from matplotlib.patches import Rectangle

logger = logging.getLogger(__name__)

CHART_NAMES = (
    'cumulative_reward', 'ber_snr', 'entropy_epsilon', 'channel_usage', 'plr_vs_size'
)


class ChartService:
    """
    Service de génération des graphiques.
    Chaque série porte un identifiant SVG (gid) préfixé par 'series_'.
    """

    @staticmethod
    def _save(fig, frame, charts_dir, name):
        svg_path = charts_dir / f'{name}.svg'
        csv_path = charts_dir / f'{name}.csv'
        try:
            fig.savefig(svg_path, format='svg', metadata={'Date': None})
            frame.to_csv(csv_path, index=False)
        except OSError as exc:
            raise OSError(f"Écriture impossible dans {charts_dir}: {exc.strerror or exc}") from exc
        return svg_path

    @staticmethod
    def cumulative_reward_chart(trace):
        episodes = np.arange(1, trace.episodes + 1)
        rewards = np.asarray(trace.cumulative_reward)

        fig = Figure(figsize=(8, 4.5))
        ax = fig.subplots()
        ax.plot(episodes, rewards, color='tab:blue', gid='series_cumulative_reward')
        ax.set_xlabel('Episode')
        ax.set_ylabel('Cumulative reward')
        ax.set_title('Cumulative reward over training')
        ax.grid(alpha=0.3)

        frame = pd.DataFrame({'episode': episodes, 'cumulative_reward': rewards})
        return fig, frame

    @staticmethod
    def ber_snr_chart(trace):
        episodes = np.arange(1, trace.episodes + 1)
        ber = trace.series('ber')
        snr_db = trace.series('snr_db')

        fig = Figure(figsize=(8, 4.5))
        ax = fig.subplots()
        ax.plot(episodes, ber, color='tab:red', linewidth=0.8, gid='series_ber')
        ax.set_yscale('log')
        ax.set_xlabel('Episode')
        ax.set_ylabel('BER')

        twin = ax.twinx()
        twin.plot(episodes, snr_db, color='tab:green', linewidth=0.8, gid='series_snr_db')
        twin.set_ylabel('SNR (dB)')
        ax.set_title('BER and SNR per episode')

        frame = pd.DataFrame({'episode': episodes, 'ber': ber, 'snr_db': snr_db})
        return fig, frame

    @staticmethod
    def entropy_epsilon_chart(trace):
        episodes = np.arange(1, trace.episodes + 1)
        entropy = trace.series('usage_entropy_nats')
        epsilon = trace.series('epsilon')
        max_entropy = trace.config.max_entropy

        fig = Figure(figsize=(8, 4.5))
        ax = fig.subplots()
        ax.plot(episodes, entropy, color='tab:purple', gid='series_entropy')
        ax.axhline(max_entropy, color='red', linestyle=':', gid='reference_max_entropy')
        ax.set_xlabel('Episode')
        ax.set_ylabel('Usage entropy (nats)')

        twin = ax.twinx()
        twin.plot(episodes, epsilon, color='tab:orange', gid='series_epsilon')
        twin.set_ylabel('ε')
        ax.set_title(f'Channel usage entropy (max ln {trace.config.num_channels} = {max_entropy:.3f}) and ε')

        frame = pd.DataFrame({
            'episode': episodes,
            'usage_entropy_nats': entropy,
            'epsilon': epsilon,
            'max_entropy': max_entropy
        })
        return fig, frame

    @staticmethod
    def channel_usage_chart(trace):
        fractions = trace.usage_fractions()
        channels = np.arange(len(fractions))
        uniform = 1.0 / len(fractions)

        fig = Figure(figsize=(8, 4.5))
        ax = fig.subplots()
        bars = PatchCollection(
            [Rectangle((c - 0.4, 0.0), 0.8, f) for c, f in zip(channels, fractions)],
            facecolor='tab:blue', edgecolor='black', linewidth=0.5
        )
        bars.set_gid('series_usage')
        ax.add_collection(bars)
        ax.axhline(uniform, color='red', linestyle='--', gid='reference_uniform')
        ax.set_xlim(-0.6, len(fractions) - 0.4)
        ax.set_ylim(0.0, max(float(fractions.max()), uniform) * 1.2)
        ax.set_xticks(channels)
        ax.set_xlabel('Channel')
        ax.set_ylabel('Usage fraction')
        ax.set_title('Channel usage over the run')

        frame = pd.DataFrame({'channel': channels, 'fraction': fractions, 'uniform': uniform})
        return fig, frame

    @staticmethod
    def plr_vs_size_chart(trace):
        config = trace.config
        sizes = np.asarray(config.packet_sizes)
        matrix = np.asarray(trace.finals.final_plr_fec)

        fig = Figure(figsize=(8, 4.5))
        ax = fig.subplots()
        frame = pd.DataFrame({'packet_size': sizes})
        for j, level in enumerate(config.fec_levels):
            ax.plot(sizes, matrix[:, j], marker='o', label=f't={level}', gid=f'series_plr_t{level}')
            frame[f'plr_t{level}'] = matrix[:, j]
        ax.set_xscale('log')
        ax.set_yscale('log')
        ax.set_xlabel('Packet size (bits)')
        ax.set_ylabel('PLR (last window)')
        ax.set_title('Packet loss rate vs packet size')
        ax.legend()
        ax.grid(alpha=0.3, which='both')
        return fig, frame

    @staticmethod
    def emit_charts(trace, out_dir):
        """
        Écrit les cinq graphiques SVG (et leurs CSV) dans out_dir.
        Retourne la liste des SVG.
        """
        if trace.episodes == 0:
            raise ValueError("Impossible de tracer une trace vide")

        charts_dir = Path(out_dir)
        try:
            charts_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise OSError(f"Création impossible de {charts_dir}: {exc.strerror or exc}") from exc

        builders = {
            'cumulative_reward': ChartService.cumulative_reward_chart,
            'ber_snr': ChartService.ber_snr_chart,
            'entropy_epsilon': ChartService.entropy_epsilon_chart,
            'channel_usage': ChartService.channel_usage_chart,
            'plr_vs_size': ChartService.plr_vs_size_chart
        }

        paths = []
        for name in CHART_NAMES:
            fig, frame = builders[name](trace)
            paths.append(ChartService._save(fig, frame, charts_dir, name))

        logger.info("%d graphiques écrits dans %s", len(paths), charts_dir)
        return paths
