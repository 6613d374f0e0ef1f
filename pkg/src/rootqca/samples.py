"""Named seeds used by the CLI, the acceptance suite and the demos."""

from __future__ import annotations

from .seeds import ExchangeMatrix, Seed
from .torus import SkewForm

RANK_TWO = {
    "A2": ([[0, 1], [-1, 0]], [[0, 1], [-1, 0]]),
    "B2": ([[0, 2], [-1, 0]], [[0, 1], [-1, 0]]),
    "G2": ([[0, 3], [-1, 0]], [[0, 1], [-1, 0]]),
}


def finite_type_seed(name: str, ell: int = 5) -> Seed:
    """Initial seed of type A2, B2, G2 or A1xA1 (two frozen positions) at order ``ell``."""
    if name == "A1xA1":
        lam = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
        rows = [[0, 0], [0, 0], [1, 0], [0, 1]]
        return Seed.initial(SkewForm.from_integer(ell, lam), ExchangeMatrix(4, (0, 1), rows))
    if name not in RANK_TWO:
        raise KeyError(f"unknown seed type {name!r}")
    bmat, lam = RANK_TWO[name]
    return Seed.initial(SkewForm.from_integer(ell, lam), ExchangeMatrix.square(bmat))


FINITE_TYPES = ("A1xA1", "A2", "B2", "G2")
GRAPH_SIZES = {"A1xA1": 4, "A2": 5, "B2": 6, "G2": 8}


def non_coprime_seed(ell: int) -> Seed:
    """The rank-two seed with ``d = (3, 1)``; at ``l = 9`` and ``l = 4`` the l-th power exchange identity fails."""
    form = SkewForm.from_integer(ell, [[0, 1], [-1, 0]])
    return Seed.initial(form, ExchangeMatrix.square([[0, 1], [-3, 0]]))


def single_exchange_seed(ell: int = 5) -> Seed:
    """Rank two with one mutable position and exchange column ``(0, 1)``."""
    form = SkewForm.from_integer(ell, [[0, -1], [1, 0]])
    return Seed.initial(form, ExchangeMatrix(2, (0,), [[0], [1]]))
