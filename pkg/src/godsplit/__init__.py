"""Detect God Header Files in C projects and split them into acyclic parts."""

from .clusterer import ClusterParams
from .detector import Thresholds, detect_god_headers
from .errors import AlgorithmError, GodsplitError, ParseFailure, UsageError
from .ingest import IngestConfig, ProjectModel, scan_project
from .pipeline import decompose, decompose_range
from .plan import DecompositionPlan, emit_subfiles

__version__ = "0.1.0"

__all__ = [
    "AlgorithmError", "ClusterParams", "DecompositionPlan", "GodsplitError", "IngestConfig",
    "ParseFailure", "ProjectModel", "Thresholds", "UsageError", "decompose", "decompose_range",
    "detect_god_headers", "emit_subfiles", "scan_project",
]
