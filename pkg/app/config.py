"""
Configuration du laboratoire anti-brouillage
"""
import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Configuration de base"""
    # Sorties
    OUTPUT_DIR = os.getenv('LAB_OUTPUT_DIR', 'results')

    # Logging
    LOG_LEVEL = os.getenv('LAB_LOG_LEVEL', 'INFO')
    LOG_FORMAT = os.getenv('LAB_LOG_FORMAT', '%(asctime)s %(levelname)s [%(name)s] %(message)s')

    # Exécution
    MAX_WORKERS = int(os.getenv('LAB_MAX_WORKERS', 1))
    DEFAULT_SEED = int(os.getenv('LAB_DEFAULT_SEED', 2024))

    # Oracle Monte-Carlo FEC
    FEC_ORACLE_PACKETS = int(os.getenv('LAB_FEC_ORACLE_PACKETS', 1_000_000))
    FEC_ORACLE_SEED = int(os.getenv('LAB_FEC_ORACLE_SEED', 12345))

    # Graphiques (SVG reproductibles)
    SVG_HASHSALT = os.getenv('LAB_SVG_HASHSALT', 'fh-lab')


class DevelopmentConfig(Config):
    """Configuration de développement"""
    LOG_LEVEL = os.getenv('LAB_LOG_LEVEL', 'DEBUG')


class ProductionConfig(Config):
    """Configuration de production"""
    MAX_WORKERS = int(os.getenv('LAB_MAX_WORKERS', os.cpu_count() or 1))


class TestingConfig(Config):
    """Configuration de test"""
    TESTING = True
    LOG_LEVEL = 'WARNING'
    MAX_WORKERS = 1
    FEC_ORACLE_PACKETS = 1_000_000


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
