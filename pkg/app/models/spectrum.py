"""
Modèles Spectre - Paramètres de liaison, évanouissement, FEC
"""
from dataclasses import dataclass, asdict

# Bits de parité par erreur corrigible (BCH sur GF(2^10))
DEFAULT_PARITY_BITS_PER_T = 10


@dataclass(frozen=True)
class LinkParams:
    """
    Puissances linéaires de la liaison et transformation de l'évanouissement.
    Toute réalisation de l'évanouissement vaut au moins fading_floor.
    """
    signal_power: float = 1.0
    noise_power: float = 0.05
    jamming_power: float = 0.5
    fading_scale: float = 0.8
    fading_floor: float = 0.3

    def __post_init__(self):
        if self.signal_power <= 0:
            raise ValueError(f"signal_power doit être > 0 (reçu {self.signal_power})")
        if self.noise_power <= 0:
            raise ValueError(f"noise_power doit être > 0 (reçu {self.noise_power})")
        if self.jamming_power < 0:
            raise ValueError(f"jamming_power doit être >= 0 (reçu {self.jamming_power})")
        if self.fading_scale <= 0:
            raise ValueError(f"fading_scale doit être > 0 (reçu {self.fading_scale})")
        if self.fading_floor < 0:
            raise ValueError(f"fading_floor doit être >= 0 (reçu {self.fading_floor})")

    @property
    def jammed_snr_bound(self):
        """Limite supérieure du SNR brouillé quand l'évanouissement tend vers l'infini."""
        if self.jamming_power == 0:
            return float('inf')
        return self.signal_power / self.jamming_power

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class FadingGain:
    """Gain de puissance |h|^2 d'un créneau."""
    value: float

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class LinkSample:
    """SNR et BER instantanés d'un créneau."""
    snr_linear: float
    snr_db: float
    ber: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class FecScheme:
    """
    Code BCH modélisé analytiquement : corrige jusqu'à t erreurs
    dans un bloc de n = payload + parity_bits_per_t * t bits.
    """
    correctable_errors: int = 0
    parity_bits_per_t: int = DEFAULT_PARITY_BITS_PER_T

    def __post_init__(self):
        if self.correctable_errors < 0:
            raise ValueError(f"t doit être >= 0 (reçu {self.correctable_errors})")
        if self.parity_bits_per_t < 0:
            raise ValueError(f"parity_bits_per_t doit être >= 0 (reçu {self.parity_bits_per_t})")

    @property
    def parity_bits(self):
        return self.parity_bits_per_t * self.correctable_errors

    def block_length(self, payload_bits):
        return payload_bits + self.parity_bits

    def __repr__(self):
        return f'<FecScheme t={self.correctable_errors} r={self.parity_bits}>'
