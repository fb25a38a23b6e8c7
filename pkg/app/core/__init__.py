"""
Core module - Flux aléatoires et utilitaires
"""
from .rng import RunStreams, make_rng
from .utils import parse_list, format_sci, format_fixed, format_percent, jsr_label, run_id

__all__ = [
    'RunStreams',
    'make_rng',
    'parse_list',
    'format_sci',
    'format_fixed',
    'format_percent',
    'jsr_label',
    'run_id'
]
