"""
Extensions - Initialisation centralisée (logging, matplotlib)
"""
import logging

import matplotlib

# Backend sans affichage : les graphiques sont uniquement écrits en SVG
matplotlib.use('Agg')

LOGGER_NAME = 'app'


def init_logging(level='INFO', fmt=None):
    """
    Configure le logger racine du laboratoire.
    Idempotent : un seul handler est installé.
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)

    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(fmt or '%(levelname)s: %(message)s'))
        logger.addHandler(handler)

    return logger


def init_matplotlib(hashsalt):
    """Rend la sortie SVG déterministe (ids et métadonnées stables)."""
    matplotlib.rcParams['svg.hashsalt'] = hashsalt
    matplotlib.rcParams['svg.fonttype'] = 'none'
    matplotlib.rcParams['font.family'] = 'DejaVu Sans'
