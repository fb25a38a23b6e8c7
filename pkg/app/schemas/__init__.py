"""
Schemas Marshmallow - Chargement de configuration et sérialisation des résumés
"""
from .config import (
    SimConfigSchema, TrainingHyperparamsSchema, EpsilonScheduleSchema,
    JammerSettingsSchema, PolicyModeSchema, ExperimentOptionsSchema
)
from .trace import MilestoneRowSchema, FinalMetricsSchema, TraceSummarySchema

__all__ = [
    'SimConfigSchema', 'TrainingHyperparamsSchema', 'EpsilonScheduleSchema',
    'JammerSettingsSchema', 'PolicyModeSchema', 'ExperimentOptionsSchema',
    'MilestoneRowSchema', 'FinalMetricsSchema', 'TraceSummarySchema'
]
