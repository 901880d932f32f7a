"""Response-surface canonical analysis."""

from rsmkit._core import (
    CanonicalModel,
    EigenSystem,
    Error,
    QuadraticModel,
    box_cox,
    crossover,
    decompose,
    jacobi_eigen,
    load_model,
    magnitude_report,
    normality_test,
    region_points,
    regions,
    trade,
)


def load_model_file(path):
    with open(path, encoding="utf-8") as f:
        return load_model(f.read())


__all__ = [
    "CanonicalModel",
    "EigenSystem",
    "Error",
    "QuadraticModel",
    "box_cox",
    "crossover",
    "decompose",
    "jacobi_eigen",
    "load_model",
    "load_model_file",
    "magnitude_report",
    "normality_test",
    "region_points",
    "regions",
    "trade",
]
