"""
Services - Logique métier
"""
from .spectrum_service import SpectrumService
from .jammer_service import JammerService
from .qnetwork_service import QNetworkService
from .agent_service import AgentService
from .training_service import TrainingService, TrainingSession
from .report_service import ReportService
from .chart_service import ChartService
from .fec_oracle_service import FecOracleService
from .experiment_service import ExperimentService

__all__ = [
    'SpectrumService',
    'JammerService',
    'QNetworkService',
    'AgentService',
    'TrainingService',
    'TrainingSession',
    'ReportService',
    'ChartService',
    'FecOracleService',
    'ExperimentService'
]
