"""
Modèles - Types du domaine
"""
from .spectrum import LinkParams, FadingGain, LinkSample, FecScheme
from .jammer import JammerMode, JammerSettings, JammerState
from .qnetwork import (
    OptimizerKind, TrainingHyperparams, QNetwork, Transition, ReplayBuffer,
    SgdOptimizer, AdamOptimizer
)
from .agent import AgentKind, PolicyKind, PolicyMode, EpsilonSchedule, AgentState, HoppingAgent
from .training import (
    SimConfig, UsageCounter, EpisodeOutcome, MilestoneRow, FinalMetrics, TrainingTrace
)
from .experiment import ExperimentSpec, RunFiles, ReportBundle

__all__ = [
    'LinkParams', 'FadingGain', 'LinkSample', 'FecScheme',
    'JammerMode', 'JammerSettings', 'JammerState',
    'OptimizerKind', 'TrainingHyperparams', 'QNetwork', 'Transition', 'ReplayBuffer',
    'SgdOptimizer', 'AdamOptimizer',
    'AgentKind', 'PolicyKind', 'PolicyMode', 'EpsilonSchedule', 'AgentState', 'HoppingAgent',
    'SimConfig', 'UsageCounter', 'EpisodeOutcome', 'MilestoneRow', 'FinalMetrics', 'TrainingTrace',
    'ExperimentSpec', 'RunFiles', 'ReportBundle'
]
