"""
Interface en ligne de commande
"""
from .parser import UsageError, parse_cli, load_sim_config, build_parser
from .main import main

__all__ = ['UsageError', 'parse_cli', 'load_sim_config', 'build_parser', 'main']
