"""Order relations, single-shot entropies and axiomatic entropy searches."""

from ._core import (
    LythermError,
    build_witness,
    compare,
    eigen_spectrum,
    entropy,
    free_energies,
    lorenz,
    precedes,
    run_axioms,
    s_tilde_minus,
    s_tilde_plus,
)

__all__ = [
    "LythermError",
    "build_witness",
    "compare",
    "eigen_spectrum",
    "entropy",
    "free_energies",
    "lorenz",
    "precedes",
    "run_axioms",
    "s_tilde_minus",
    "s_tilde_plus",
]
