"""
Service Expérience - Exécution de la matrice (jsr x graine) et écriture des livrables
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from app.core.rng import make_rng
from app.extensions import init_matplotlib
from app.models.experiment import RunFiles, ReportBundle
from app.services.chart_service import ChartService
from app.services.fec_oracle_service import FecOracleService
from app.services.jammer_service import JammerService
from app.services.qnetwork_service import QNetworkService
from app.services.report_service import ReportService
from app.services.training_service import TrainingService

logger = logging.getLogger(__name__)


def execute_run(config, output_dir, dump_weights=False, svg_hashsalt=None):
    """
    Entraîne un run et écrit ses fichiers dans <out>/run_<jsr>_<seed>/.
    Fonction de module pour pouvoir être envoyée à un processus de travail.
    """
    if svg_hashsalt is not None:
        init_matplotlib(svg_hashsalt)

    trace, session = TrainingService.train(config)

    files = RunFiles.for_run(output_dir, config.jamming_power, config.seed)
    files.directory.mkdir(parents=True, exist_ok=True)
    ReportService.write_trace_csv(trace, files.trace_csv)
    ReportService.write_summary_json(trace, files.summary_json)
    JammerService.dump_counts_csv(session.jammer, files.jammer_counts_csv)

    if trace.episodes > 0:
        files.charts = ChartService.emit_charts(trace, files.directory / 'charts')
    if dump_weights and session.agent.learns:
        files.weights = QNetworkService.save_snapshot(
            session.agent.policy_net, files.directory / 'policy_weights.npz'
        )

    return trace, files


class ExperimentService:
    """Service d'orchestration des expériences"""

    @staticmethod
    def run(spec, settings):
        """
        Exécute tous les runs de la matrice puis agrège les tableaux.
        Retourne (traces dans l'ordre de la matrice, ReportBundle).
        """
        output_dir = Path(spec.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        configs = spec.run_configs()
        workers = min(spec.workers, len(configs))

        logger.info("Matrice de %d runs, %d processus, sortie %s", len(configs), workers, output_dir)

        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [
                    executor.submit(execute_run, config, output_dir, spec.dump_weights, settings.SVG_HASHSALT)
                    for config in configs
                ]
                results = [future.result() for future in futures]
        else:
            results = [
                execute_run(config, output_dir, spec.dump_weights)
                for config in configs
            ]

        bundle = ReportBundle(output_dir=output_dir)
        traces = []
        for trace, files in results:
            traces.append(trace)
            bundle.runs[files.run_id] = files

        tables_dir = output_dir / 'tables'
        bundle.tables = ReportService.emit_tables(traces, tables_dir)

        if spec.validate_fec:
            bundle.tables['fec_oracle'] = ExperimentService.run_fec_oracle(
                tables_dir, settings.FEC_ORACLE_PACKETS, settings.FEC_ORACLE_SEED,
                spec.base_config.parity_bits_per_t
            )

        return traces, bundle

    @staticmethod
    def run_fec_oracle(tables_dir, packets, seed, parity_bits_per_t):
        frame = FecOracleService.validate_fec_oracle(
            FecOracleService.default_grid(), packets, make_rng(seed), parity_bits_per_t
        )
        failures = int((~frame['passed']).sum())
        logger.info("Oracle FEC : %d cellules, %d hors tolérance", len(frame), failures)
        return ReportService.write_table(
            frame, FecOracleService.format_report(frame), tables_dir, 'fec_oracle'
        )
