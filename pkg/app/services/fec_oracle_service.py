"""
Service Oracle FEC - Validation Monte-Carlo du modèle binomial de perte de paquets
"""
import itertools
import logging
import math

import pandas as pd

from app.core.utils import format_sci, format_fixed
from app.services.spectrum_service import SpectrumService

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_BERS = (1e-2, 1e-3)
DEFAULT_ORACLE_SIZES = (10, 100, 1000)
DEFAULT_ORACLE_LEVELS = (0, 1, 2)
PASS_THRESHOLD = 3.0


class FecOracleService:
    """Service de validation du PLR analytique contre des tirages de paquets"""

    @staticmethod
    def default_grid():
        return list(itertools.product(DEFAULT_ORACLE_BERS, DEFAULT_ORACLE_SIZES, DEFAULT_ORACLE_LEVELS))

    @staticmethod
    def simulate_cell(ber, payload_bits, scheme, packets, rng):
        """
        PLR empirique : nombre d'erreurs par paquet tiré selon B(n, ber),
        paquet perdu si plus de t erreurs.
        """
        block = scheme.block_length(payload_bits)
        if ber == 0.0:
            return 0.0
        errors = rng.binomial(block, ber, size=packets)
        return float((errors > scheme.correctable_errors).mean())

    @staticmethod
    def validate_fec_oracle(grid, packets, rng, parity_bits_per_t=10):
        """
        Compare PLR analytique et empirique pour chaque cellule (ber, sz, t).
        Une cellule passe si l'écart reste sous 3 erreurs standard.
        """
        if packets < 1:
            raise ValueError(f"packets doit être >= 1 (reçu {packets})")

        records = []
        for ber, size, level in grid:
            scheme = SpectrumService.fec_scheme(level, parity_bits_per_t)
            analytic = SpectrumService.fec_packet_loss_rate(ber, size, scheme)
            empirical = FecOracleService.simulate_cell(ber, size, scheme, packets, rng)
            std_error = math.sqrt(analytic * (1.0 - analytic) / packets)

            if std_error > 0:
                z_score = (empirical - analytic) / std_error
                passed = abs(z_score) <= PASS_THRESHOLD
            else:
                z_score = 0.0 if empirical == analytic else float('inf')
                passed = empirical == analytic

            if not passed:
                logger.warning(
                    "Oracle FEC hors tolérance : ber=%g sz=%d t=%d (z=%.2f)", ber, size, level, z_score
                )

            records.append({
                'ber': ber,
                'packet_size': size,
                't': level,
                'packets': packets,
                'analytic_plr': analytic,
                'empirical_plr': empirical,
                'std_error': std_error,
                'z_score': z_score,
                'passed': passed
            })

        return pd.DataFrame(records)

    @staticmethod
    def format_report(frame):
        return frame.to_string(index=False, formatters={
            'ber': format_sci,
            'analytic_plr': format_sci,
            'empirical_plr': format_sci,
            'std_error': format_sci,
            'z_score': format_fixed
        })
