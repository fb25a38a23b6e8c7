"""
Service Rapport - Traces CSV, résumés JSON et tableaux agrégés
"""
import json
import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd

from app.core.utils import format_sci, format_fixed, format_percent, jsr_label
from app.models.training import plr_column
from app.schemas.trace import TraceSummarySchema
from app.services.spectrum_service import SpectrumService

logger = logging.getLogger(__name__)

TRACE_COLUMNS = [
    'episode', 'prev_channel', 'chosen_channel', 'jam_channel', 'jammed',
    'fading', 'snr_linear', 'snr_db', 'ber', 'reward', 'cumulative_reward',
    'usage_entropy_nats', 'epsilon', 'loss'
]

JSR_METRICS = [
    'Success Rate', 'Final BER', 'Final SNR (dB)', 'Normalized Entropy',
    'Mean Episode Reward', 'Cumulative Reward'
]


class ReportService:
    """Service de génération des fichiers de résultats"""

    # ------------------------------------------------------------------
    # Fichiers d'un run
    # ------------------------------------------------------------------

    @staticmethod
    def trace_columns(config):
        columns = list(TRACE_COLUMNS)
        for size in config.packet_sizes:
            for level in config.fec_levels:
                columns.append(plr_column(size, level))
        return columns

    @staticmethod
    def trace_frame(trace):
        """Une ligne par épisode, colonnes dans l'ordre documenté."""
        return pd.DataFrame(trace.to_rows(), columns=ReportService.trace_columns(trace.config))

    @staticmethod
    def write_trace_csv(trace, path):
        ReportService.trace_frame(trace).to_csv(path, index=False)
        logger.info("Trace écrite dans %s", path)
        return path

    @staticmethod
    def read_trace_csv(path):
        return pd.read_csv(path)

    @staticmethod
    def write_summary_json(trace, path):
        summary = TraceSummarySchema().dump(trace)
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(summary, handle, indent=2)
        logger.info("Résumé écrit dans %s", path)
        return path

    # ------------------------------------------------------------------
    # Tableaux agrégés
    # ------------------------------------------------------------------

    @staticmethod
    def write_table(frame, text, tables_dir, name):
        """Écrit <name>.csv et <name>.txt ; retourne les deux chemins."""
        tables_dir = Path(tables_dir)
        tables_dir.mkdir(parents=True, exist_ok=True)
        csv_path = tables_dir / f'{name}.csv'
        txt_path = tables_dir / f'{name}.txt'
        frame.to_csv(csv_path, index=False)
        txt_path.write_text(text + '\n', encoding='utf-8')
        logger.info("Tableau %s écrit dans %s", name, tables_dir)
        return [csv_path, txt_path]

    @staticmethod
    def emit_training_table(traces):
        """
        Progression de l'entraînement : une ligne par jalon et par run.
        Retourne (frame numérique, texte formaté).
        """
        records = []
        for trace in traces:
            for row in trace.milestones:
                records.append({
                    'run_id': trace.run_id,
                    'Episode': row.episode,
                    'BER': row.mean_ber,
                    'SNR (dB)': row.mean_snr_db,
                    'Entropy': row.entropy,
                    'Success Rate (%)': 100.0 * row.success_rate,
                    'Window Success (%)': 100.0 * row.window_success_rate,
                    'ε': row.epsilon
                })

        columns = ['run_id', 'Episode', 'BER', 'SNR (dB)', 'Entropy',
                   'Success Rate (%)', 'Window Success (%)', 'ε']
        frame = pd.DataFrame(records, columns=columns)

        text = frame.to_string(index=False, formatters={
            'BER': format_sci,
            'SNR (dB)': format_fixed,
            'Entropy': lambda v: format_fixed(v, 3),
            'Success Rate (%)': format_fixed,
            'Window Success (%)': format_fixed,
            'ε': lambda v: format_fixed(v, 3)
        })
        return frame, text

    @staticmethod
    def emit_plr_tables(final_ber, config, window_plr=None, run_id=''):
        """
        Tableau sans FEC (Packet Size | PLR | ≈ L × BER) et tableau FEC
        (PLR par t puis surcoût par t > 0).
        window_plr : (plr sans FEC par taille, matrice taille x t) moyennés
        sur la dernière fenêtre ; à défaut, évaluation au BER final.
        Retourne ((frame, texte) sans FEC, (frame, texte) avec FEC).
        """
        if not 0.0 <= final_ber <= 0.5:
            raise ValueError(f"BER final hors de [0, 0.5]: {final_ber}")

        sizes = config.packet_sizes
        levels = config.fec_levels
        schemes = [SpectrumService.fec_scheme(t, config.parity_bits_per_t) for t in levels]

        if window_plr is None:
            plain = [SpectrumService.packet_loss_rate(final_ber, size) for size in sizes]
            coded = [
                [SpectrumService.fec_packet_loss_rate(final_ber, size, scheme) for scheme in schemes]
                for size in sizes
            ]
        else:
            plain, coded = window_plr

        no_fec = pd.DataFrame({
            'run_id': run_id,
            'Packet Size': list(sizes),
            'PLR': [float(v) for v in plain],
            # Approximation au premier ordre, non bornée à 1
            '≈ L × BER': [size * final_ber for size in sizes]
        })
        no_fec_text = no_fec.to_string(index=False, formatters={
            'PLR': format_sci,
            '≈ L × BER': format_sci
        })

        fec = pd.DataFrame({'run_id': run_id, 'Packet Size': list(sizes)})
        formatters = {}
        for j, level in enumerate(levels):
            name = f'PLR t={level}'
            fec[name] = [float(coded[i][j]) for i in range(len(sizes))]
            formatters[name] = format_sci
        for level, scheme in zip(levels, schemes):
            if level == 0:
                continue
            name = f'Overhead t={level} %'
            fec[name] = [SpectrumService.fec_overhead_percent(size, scheme) for size in sizes]
            formatters[name] = format_fixed
        fec_text = fec.to_string(index=False, formatters=formatters)

        return (no_fec, no_fec_text), (fec, fec_text)

    @staticmethod
    def emit_jsr_comparison(traces):
        """
        Comparaison par niveau de brouillage : moyenne des runs de chaque niveau,
        colonnes par JSR décroissant, différence = plus faible JSR - plus fort JSR.
        Retourne (frame numérique, texte formaté).
        """
        groups = {}
        for trace in traces:
            if trace.finals is None or not trace.finals.success_defined:
                continue
            groups.setdefault(trace.config.jamming_power, []).append(trace)
        if not groups:
            raise ValueError("Aucun run exploitable pour la comparaison JSR")

        levels = sorted(groups, reverse=True)
        values = {}
        for level in levels:
            runs = groups[level]
            finals = [t.finals for t in runs]
            values[level] = [
                100.0 * np.mean([f.success_rate for f in finals]),
                float(np.mean([f.final_ber for f in finals])),
                float(np.mean([f.final_snr_db for f in finals])),
                float(np.mean([100.0 * f.final_entropy / t.config.max_entropy for f, t in zip(finals, runs)])),
                float(np.mean([f.mean_episode_reward for f in finals])),
                float(np.mean([f.cumulative_reward for f in finals]))
            ]

        frame = pd.DataFrame({'Metric': JSR_METRICS})
        for level in levels:
            frame[f'JSR {jsr_label(level)}'] = values[level]
        frame['Difference'] = np.subtract(values[levels[-1]], values[levels[0]])
        frame['run_ids'] = ';'.join(t.run_id for level in levels for t in groups[level])

        text_frame = frame.drop(columns='run_ids').copy()
        for column in text_frame.columns[1:]:
            signed = column == 'Difference'
            text_frame[column] = [
                ReportService._format_metric(metric, value, signed)
                for metric, value in zip(JSR_METRICS, frame[column])
            ]
        return frame, text_frame.to_string(index=False)

    @staticmethod
    def _format_metric(metric, value, signed=False):
        if value is None or math.isnan(value):
            return 'n/a'
        sign = '+' if signed and value > 0 else ''
        if metric in ('Success Rate', 'Normalized Entropy'):
            return sign + format_percent(value)
        if metric == 'Final BER':
            return sign + format_sci(value)
        if metric == 'Cumulative Reward':
            return sign + format_fixed(value, 1)
        if metric == 'Mean Episode Reward':
            return sign + format_fixed(value, 3)
        return sign + format_fixed(value)

    @staticmethod
    def emit_tables(traces, tables_dir):
        """Écrit les quatre tableaux agrégés ; retourne {nom: [csv, txt]}."""
        written = {}

        frame, text = ReportService.emit_training_table(traces)
        written['training_progress'] = ReportService.write_table(
            frame, text, tables_dir, 'training_progress'
        )

        no_fec_frames, no_fec_texts, fec_frames, fec_texts = [], [], [], []
        for trace in traces:
            finals = trace.finals
            if finals is None or not finals.success_defined:
                continue
            (no_fec, no_fec_text), (fec, fec_text) = ReportService.emit_plr_tables(
                finals.final_ber, trace.config,
                window_plr=(finals.final_plr, finals.final_plr_fec),
                run_id=trace.run_id
            )
            no_fec_frames.append(no_fec)
            no_fec_texts.append(f'[{trace.run_id}]\n{no_fec_text}')
            fec_frames.append(fec)
            fec_texts.append(f'[{trace.run_id}]\n{fec_text}')

        if no_fec_frames:
            written['plr_no_fec'] = ReportService.write_table(
                pd.concat(no_fec_frames, ignore_index=True), '\n\n'.join(no_fec_texts),
                tables_dir, 'plr_no_fec'
            )
            written['plr_fec'] = ReportService.write_table(
                pd.concat(fec_frames, ignore_index=True), '\n\n'.join(fec_texts),
                tables_dir, 'plr_fec'
            )
            frame, text = ReportService.emit_jsr_comparison(traces)
            written['jsr_comparison'] = ReportService.write_table(
                frame, text, tables_dir, 'jsr_comparison'
            )

        return written
