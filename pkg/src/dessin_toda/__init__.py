"""Exact enumeration of dessins d'enfants, LUE correlators and their Toda
lattice / Frobenius-manifold structure.

Submodules:

* ``algebra``     exact rings, truncated series, 1/lambda tails, cyclic sums
* ``partitions``  partitions, characters, Schur functions, permutations
* ``dessins``     connected dessin correlators and N_{k,l}
* ``oracles``     cut-and-join, Schur expansion, Virasoro operators
* ``lue``         Laguerre resolvent, LUE correlators, large-n coefficients
* ``hurwitz``     strictly monotone double Hurwitz numbers
* ``toda``        Toda jet ring, matrix resolvent, tau structure, wave functions
* ``barnes``      Bernoulli numbers, Barnes G asymptotics, constant term
* ``genus``       genus zero/one reconstruction on the P^1 Frobenius manifold
* ``checks``      the verification registry used by the CLI and tests
"""
from __future__ import annotations

from .dessins import correlator, genus_parts, n_kl
from .hurwitz import HurwitzQuery, strictly_monotone_hurwitz
from .lue import lue_correlator

__all__ = [
    "__version__",
    "correlator",
    "genus_parts",
    "n_kl",
    "lue_correlator",
    "HurwitzQuery",
    "strictly_monotone_hurwitz",
]

__version__ = "0.1.0"
