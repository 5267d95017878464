"""Locate a body-force source in a clamped elastic beam from sensor readings."""

from ._core import (
    ConfigError,
    DisplacementField,
    Divisions,
    InvalidArgument,
    IoError,
    OutOfDomain,
    Pipeline,
    SolverFailure,
    average_predictions,
    evaluate,
    feature_names,
    generate,
    grid_search,
    load_dataset,
    mse,
    per_coordinate_mse,
    run,
    solve,
)

FAMILIES = ("linear", "tree", "forest", "gbt", "knn", "ensemble")

__all__ = [
    "ConfigError",
    "DisplacementField",
    "Divisions",
    "FAMILIES",
    "InvalidArgument",
    "IoError",
    "OutOfDomain",
    "Pipeline",
    "SolverFailure",
    "average_predictions",
    "evaluate",
    "feature_names",
    "generate",
    "grid_search",
    "load_dataset",
    "mse",
    "per_coordinate_mse",
    "run",
    "solve",
]
