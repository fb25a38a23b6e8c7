"""
Service Spectre - Physique de liaison (évanouissement, SNR, BER, PLR, FEC)
"""
import math

import numpy as np
from scipy import special

from app.models.spectrum import FadingGain, LinkSample, FecScheme, DEFAULT_PARITY_BITS_PER_T


class SpectrumService:
    """Fonctions pures de la liaison ; le générateur aléatoire appartient à l'appelant."""

    @staticmethod
    def sample_fading(rng, params):
        """
        Tire un gain d'évanouissement : e * fading_scale + fading_floor,
        avec e exponentielle de moyenne 1.
        """
        draw = rng.exponential(1.0)
        return FadingGain(draw * params.fading_scale + params.fading_floor)

    @staticmethod
    def sample_fading_batch(rng, params, size):
        draws = rng.exponential(1.0, size=size)
        return draws * params.fading_scale + params.fading_floor

    @staticmethod
    def compute_snr_ber(fading, jammed, params):
        """
        SNR = P_s * g / (P_n + P_j * g si brouillé) ; BER = erfc(sqrt(SNR)) / 2.
        """
        gain = float(fading)
        if gain <= 0:
            raise ValueError(f"Le gain d'évanouissement doit être > 0 (reçu {gain})")

        signal = params.signal_power * gain
        noise = params.noise_power + (params.jamming_power * gain if jammed else 0.0)
        snr_linear = signal / noise

        return LinkSample(
            snr_linear=snr_linear,
            snr_db=10.0 * math.log10(snr_linear),
            ber=float(0.5 * special.erfc(math.sqrt(snr_linear)))
        )

    @staticmethod
    def packet_loss_rate(ber, packet_bits):
        """
        PLR = 1 - (1 - ber)^L, évalué via log1p/expm1 pour les très petits BER.
        """
        if packet_bits < 1:
            raise ValueError(f"La taille de paquet doit être >= 1 (reçu {packet_bits})")
        if not 0.0 <= ber <= 1.0:
            raise ValueError(f"BER hors de [0, 1]: {ber}")

        if ber == 0.0:
            return 0.0
        if ber == 1.0:
            return 1.0
        return -math.expm1(packet_bits * math.log1p(-ber))

    @staticmethod
    def fec_packet_loss_rate(ber, payload_bits, scheme):
        """
        Probabilité de plus de t erreurs dans un bloc de n = sz + r bits.
        t = 0 équivaut exactement à packet_loss_rate(ber, sz).
        """
        if payload_bits < 1:
            raise ValueError(f"La charge utile doit être >= 1 bit (reçu {payload_bits})")

        t = scheme.correctable_errors
        if t == 0:
            return SpectrumService.packet_loss_rate(ber, payload_bits)
        if not 0.0 <= ber <= 1.0:
            raise ValueError(f"BER hors de [0, 1]: {ber}")

        block = scheme.block_length(payload_bits)
        if ber == 0.0 or t >= block:
            return 0.0
        # Queue binomiale P(X > t), X ~ B(n, ber), par la bêta incomplète
        return float(special.bdtrc(t, block, ber))

    @staticmethod
    def fec_overhead_percent(payload_bits, scheme):
        """Surcoût de redondance : 100 * r / sz."""
        if payload_bits < 1:
            raise ValueError(f"La charge utile doit être >= 1 bit (reçu {payload_bits})")
        return 100.0 * scheme.parity_bits / payload_bits

    @staticmethod
    def plr_matrix(ber, packet_sizes, fec_levels, parity_bits_per_t=DEFAULT_PARITY_BITS_PER_T):
        """
        Matrice PLR [taille][t] pour un BER.
        Les cellules t = 0 passent par packet_loss_rate, les autres par un seul appel vectorisé.
        """
        sizes = np.asarray(packet_sizes, dtype=np.int64)
        levels = np.asarray(fec_levels, dtype=np.int64)
        matrix = np.zeros((len(sizes), len(levels)))

        coded = levels > 0
        if coded.any() and ber > 0.0:
            t_grid = np.broadcast_to(levels[coded], (len(sizes), int(coded.sum())))
            n_grid = sizes[:, None] + parity_bits_per_t * t_grid
            tails = special.bdtrc(t_grid, n_grid, ber)
            matrix[:, coded] = np.where(t_grid >= n_grid, 0.0, tails)

        for j in np.flatnonzero(~coded):
            for i, size in enumerate(sizes):
                matrix[i, j] = SpectrumService.packet_loss_rate(ber, int(size))

        return matrix

    @staticmethod
    def fec_scheme(correctable_errors, parity_bits_per_t=DEFAULT_PARITY_BITS_PER_T):
        return FecScheme(correctable_errors=correctable_errors, parity_bits_per_t=parity_bits_per_t)
