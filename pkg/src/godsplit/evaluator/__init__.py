from .metrics import (
    MetricsReport,
    acc,
    ari,
    contingency,
    f1,
    max_mno,
    mno,
    modularity,
    modularity_matrix,
    mojofm,
    nmi,
    report,
)
from .synth import (
    SynthResult,
    cohesion,
    header_cohesion,
    project_cohesion,
    synth_merge,
    write_synthetic_project,
)

__all__ = [
    "MetricsReport", "SynthResult", "acc", "ari", "cohesion", "contingency", "f1",
    "header_cohesion", "max_mno", "mno", "modularity", "modularity_matrix", "mojofm",
    "nmi", "project_cohesion", "report", "synth_merge", "write_synthetic_project",
]
