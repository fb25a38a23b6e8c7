"""
Utilitaires communs
"""
import math


def parse_list(raw, cast=float):
    """
    Convertit une liste CSV ("0.5,1.2") en liste typée.
    Lève ValueError si un élément est invalide ou si la liste est vide.
    """
    if raw is None:
        return []
    if isinstance(raw, (list, tuple)):
        return [cast(x) for x in raw]

    items = [item.strip() for item in str(raw).split(',') if item.strip()]
    if not items:
        raise ValueError(f"Liste vide: '{raw}'")
    try:
        return [cast(item) for item in items]
    except ValueError:
        raise ValueError(f"Liste invalide: '{raw}'")


def format_sci(value, digits=3):
    """Notation scientifique à `digits` chiffres significatifs (ex. 1.37e-04)."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return 'n/a'
    return f'{value:.{digits - 1}e}'


def format_fixed(value, decimals=2):
    """Notation fixe (ex. 12.33)."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return 'n/a'
    return f'{value:.{decimals}f}'


def format_percent(value, decimals=2):
    """Pourcentage avec espace avant le symbole (ex. 99.71 %)."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return 'n/a'
    return f'{value:.{decimals}f} %'


def jsr_label(value):
    """Libellé stable d'un niveau de brouillage pour les noms de fichiers."""
    return f'{value:g}'


def run_id(jamming_power, seed):
    """Identifiant de run, utilisé comme colonne de provenance."""
    return f'run_{jsr_label(jamming_power)}_{seed}'
