"""
Modèles Expérience - Matrice de runs et livrables de rapport
"""
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from app.core.utils import run_id
from app.models.agent import AgentKind
from app.models.jammer import JammerMode
from app.models.training import SimConfig


@dataclass(frozen=True)
class ExperimentSpec:
    """Matrice (jsr x graine) construite par la ligne de commande."""
    base_config: SimConfig
    seeds: Tuple[int, ...]
    jamming_powers: Tuple[float, ...]
    agent_kind: AgentKind = AgentKind.DQN
    jammer_mode: JammerMode = JammerMode.MARKOV_PREDICT
    output_dir: Path = Path('results')
    workers: int = 1
    validate_fec: bool = False
    dump_weights: bool = False
    log_level: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'agent_kind', AgentKind(self.agent_kind))
        object.__setattr__(self, 'jammer_mode', JammerMode(self.jammer_mode))
        object.__setattr__(self, 'output_dir', Path(self.output_dir))
        if not self.seeds:
            raise ValueError("Au moins une graine est requise")
        if not self.jamming_powers:
            raise ValueError("Au moins un niveau de brouillage est requis")

    def run_configs(self):
        """Produit cartésien jamming_power x seed, dans l'ordre des listes."""
        configs = []
        jammer = replace(self.base_config.jammer, mode=self.jammer_mode)
        for power in self.jamming_powers:
            for seed in self.seeds:
                configs.append(replace(
                    self.base_config,
                    jamming_power=power,
                    seed=seed,
                    agent_kind=self.agent_kind,
                    jammer=jammer
                ))
        return configs

    def __len__(self):
        return len(self.seeds) * len(self.jamming_powers)


@dataclass
class RunFiles:
    """Fichiers d'un run."""
    run_id: str
    directory: Path
    trace_csv: Path
    summary_json: Path
    jammer_counts_csv: Path
    charts: List[Path] = field(default_factory=list)
    weights: Path = None

    @classmethod
    def for_run(cls, output_dir, jamming_power, seed):
        rid = run_id(jamming_power, seed)
        directory = Path(output_dir) / rid
        return cls(
            run_id=rid,
            directory=directory,
            trace_csv=directory / 'trace.csv',
            summary_json=directory / 'summary.json',
            jammer_counts_csv=directory / 'jammer_counts.csv'
        )


@dataclass
class ReportBundle:
    """Ensemble des fichiers produits par une expérience."""
    output_dir: Path
    runs: Dict[str, RunFiles] = field(default_factory=dict)
    tables: Dict[str, List[Path]] = field(default_factory=dict)

    def all_paths(self):
        paths = []
        for files in self.runs.values():
            paths.extend([files.trace_csv, files.summary_json, files.jammer_counts_csv, *files.charts])
        for table_paths in self.tables.values():
            paths.extend(table_paths)
        return paths
