"""Cartan data, Weyl group combinatorics and the cluster seed of a quantum unipotent cell.

Weights are vectors in the fundamental-weight basis. Root-lattice elements
are vectors in the simple-root basis. Word letters are 1-based (as Cartan
indices are usually written) while seed positions are 0-based.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .discriminant import (
    DiscriminantResult,
    FrozenFactor,
    cluster_discriminant,
    compare_up_to_unit,
    pbw_presentation,
    scalar_power,
    torus_presentation,
)
from .errors import CompatibilityFailed, CoprimeViolated, NotInRootLattice, NotReduced, UnsupportedWord
from .seeds import ExchangeMatrix, Seed
from .torus import SkewForm, TorusElement


@dataclass(frozen=True)
class CartanDatum:
    """A symmetrizable generalized Cartan matrix ``A`` with symmetrizers ``d`` (``d_i a_ij = d_j a_ji``)."""

    A: tuple
    d: tuple

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.A)
        d = tuple(int(x) for x in self.d)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "d", d)
        r = len(a)
        if any(len(row) != r for row in a) or len(d) != r:
            raise ValueError("Cartan matrix must be square with one symmetrizer per row")
        if any(x <= 0 for x in d):
            raise ValueError("symmetrizers must be positive")
        for i in range(r):
            if a[i][i] != 2:
                raise ValueError(f"diagonal entry a_{i + 1}{i + 1} must be 2")
            for j in range(r):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise ValueError(f"off-diagonal entry a_{i + 1}{j + 1} must be non-positive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError(f"a_{i + 1}{j + 1} and a_{j + 1}{i + 1} must vanish together")
                if d[i] * a[i][j] != d[j] * a[j][i]:
                    raise ValueError(f"d does not symmetrize A at ({i + 1}, {j + 1})")

    @property
    def rank(self) -> int:
        return len(self.A)

    @classmethod
    def from_json(cls, data) -> "CartanDatum":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["A"], data["d"])

    def to_json(self) -> dict:
        return {"A": [list(r) for r in self.A], "d": list(self.d)}

    # -- weights and roots --------------------------------------------------

    def coroot(self, i: int, gamma) -> int:
        """``<h_i, gamma>`` for ``gamma`` in the root lattice (simple-root coordinates)."""
        return sum(self.A[i][j] * gamma[j] for j in range(self.rank))

    def simple_root(self, i: int) -> tuple:
        """``alpha_i`` in fundamental-weight coordinates (column ``i`` of ``A``)."""
        return tuple(self.A[j][i] for j in range(self.rank))

    def root_to_weight(self, gamma) -> tuple:
        return tuple(sum(self.A[j][i] * gamma[i] for i in range(self.rank)) for j in range(self.rank))

    def weight_to_root(self, mu) -> tuple:
        """Solve ``A gamma = mu`` over the integers, raising when ``mu`` is outside the root lattice."""
        r = self.rank
        mat = [[Fraction(self.A[i][j]) for j in range(r)] + [Fraction(mu[i])] for i in range(r)]
        row, pivots = 0, []
        for col in range(r):
            piv = next((i for i in range(row, r) if mat[i][col]), None)
            if piv is None:
                continue
            mat[row], mat[piv] = mat[piv], mat[row]
            mat[row] = [x / mat[row][col] for x in mat[row]]
            for i in range(r):
                if i != row and mat[i][col]:
                    mat[i] = [a - mat[i][col] * b for a, b in zip(mat[i], mat[row])]
            pivots.append(col)
            row += 1
        if any(mat[i][-1] for i in range(row, r)):
            raise NotInRootLattice(f"{tuple(mu)} is not in the span of the simple roots")
        gamma = [Fraction(0)] * r
        for i, col in enumerate(pivots):
            gamma[col] = mat[i][-1]
        if any(x.denominator != 1 for x in gamma):
            raise NotInRootLattice(f"{tuple(mu)} has non-integral simple-root coordinates")
        return tuple(int(x) for x in gamma)

    def reflect_weight(self, i: int, mu) -> tuple:
        """``s_i(mu) = mu - mu_i alpha_i`` in fundamental-weight coordinates."""
        alpha = self.simple_root(i)
        return tuple(m - mu[i] * a for m, a in zip(mu, alpha))

    def reflect_root(self, i: int, gamma) -> tuple:
        """``s_i(gamma) = gamma - <h_i, gamma> alpha_i`` in simple-root coordinates."""
        out = list(gamma)
        out[i] -= self.coroot(i, gamma)
        return tuple(out)

    def shift(self, letters, k: int) -> tuple:
        """``(w - 1) varpi_k`` in simple-root coordinates for ``w = s_{letters[0]} ... s_{letters[-1]}``.

        Uses ``s_i(varpi_k + gamma) = varpi_k + gamma - (delta_ik + <h_i, gamma>) alpha_i``.
        """
        gamma = [0] * self.rank
        for i in reversed(list(letters)):
            gamma[i] -= int(i == k) + self.coroot(i, gamma)
        return tuple(gamma)

    def pair(self, mu, gamma) -> int:
        """``(mu, gamma)`` for a weight ``mu`` and a root-lattice element ``gamma``.

        Equals ``sum_j gamma_j d_j <h_j, mu>``, so no inverse Cartan matrix is needed.
        """
        return sum(gamma[j] * self.d[j] * mu[j] for j in range(self.rank))

    def root_pair(self, gamma, delta) -> int:
        """``(gamma, delta)`` for two root-lattice elements: ``gamma^T D A delta``."""
        r = self.rank
        return sum(gamma[i] * self.d[i] * self.A[i][j] * delta[j] for i in range(r) for j in range(r))


def pair_with_root_lattice(datum: CartanDatum, mu, gamma_weight) -> int:
    """``(mu, gamma)`` with ``gamma`` given in fundamental-weight coordinates; it must lie in the root lattice."""
    return datum.pair(mu, datum.weight_to_root(gamma_weight))


def sl(n: int) -> CartanDatum:
    """Type A_{n-1}."""
    a = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n - 1)] for i in range(n - 1)]
    return CartanDatum(a, [1] * (n - 1))


def cartan_b2() -> CartanDatum:
    """B2 with the short root first: ``d = (1, 2)``."""
    return CartanDatum([[2, -2], [-1, 2]], [1, 2])


def affine_a1() -> CartanDatum:
    return CartanDatum([[2, -2], [-2, 2]], [1, 1])


# -- reduced words ------------------------------------------------------------


@dataclass
class ReducedWordData:
    """Combinatorics of a reduced word ``i_1 ... i_N`` (letters stored 0-based in ``letters``).

    ``pred`` and ``succ`` are the predecessor and successor maps on positions,
    with ``None`` standing for minus and plus infinity.
    """

    datum: CartanDatum
    letters: tuple
    roots: list
    pred: list
    succ: list
    ex: tuple
    support: tuple

    @property
    def length(self) -> int:
        return len(self.letters)

    def prefix_shift(self, k: int) -> tuple:
        """``(w_{<=k} - 1) varpi_{i_k}`` for position ``k`` (0-based)."""
        return self.datum.shift(self.letters[: k + 1], self.letters[k])

    def interval_shift(self, j: int, k: int) -> tuple:
        """``(w_{[j,k]} - 1) varpi_{i_k}``."""
        return self.datum.shift(self.letters[j : k + 1], self.letters[k])


def reduced_word_data(datum: CartanDatum, word) -> ReducedWordData:
    """Validate ``word`` (1-based letters) by root positivity and record its combinatorics."""
    letters = tuple(int(i) - 1 for i in word)
    if any(not 0 <= i < datum.rank for i in letters):
        raise ValueError(f"word {tuple(word)} uses letters outside 1..{datum.rank}")
    roots = []
    for k, i in enumerate(letters):
        beta = tuple(int(j == i) for j in range(datum.rank))
        for t in reversed(letters[:k]):
            beta = datum.reflect_root(t, beta)
        if any(x < 0 for x in beta):
            raise NotReduced(f"word {tuple(word)} is not reduced: root {k + 1} is negative")
        roots.append(beta)
    n = len(letters)
    pred = [max((j for j in range(k) if letters[j] == letters[k]), default=None) for k in range(n)]
    succ = [min((j for j in range(k + 1, n) if letters[j] == letters[k]), default=None) for k in range(n)]
    ex = tuple(k for k in range(n) if succ[k] is not None)
    support = tuple(sorted(set(letters)))
    if len(ex) != n - len(support):
        raise AssertionError("mutable count differs from length minus support size")
    return ReducedWordData(datum, letters, roots, pred, succ, ex, support)


@dataclass
class UnipotentSeedData:
    """The integer compatible pair attached to a reduced word.

    ``lam`` is read off the quantum-minor commutation rule
    ``D_j D_k = q^{lam[j][k]} D_k D_j``; ``lam_closed_form`` is the closed form
    ``-((w_{<=j} + 1) varpi_{i_j}, (w_{<=k} - 1) varpi_{i_k})`` kept for
    comparison. ``kappa`` is the constant with ``lam^T B = kappa [D; 0]``.
    ``a_doubled[(j, k)]`` holds ``2 a[j, k]`` for ``j <= k`` with ``i_j = i_k``.
    """

    word: ReducedWordData
    lam: list
    lam_closed_form: list
    bmatrix: list
    d: tuple
    kappa: int | None
    a_doubled: dict
    product: list = field(default_factory=list)
    closed_form_product: list = field(default_factory=list)

    @property
    def ex(self) -> tuple:
        return self.word.ex

    @property
    def strictly_compatible(self) -> bool:
        """``lam^T B == [D; 0]`` exactly."""
        return _compatibility_constant(self.product, self.ex, self.d) == 1

    @property
    def closed_form_kappa(self) -> int | None:
        return _compatibility_constant(self.closed_form_product, self.ex, self.d)

    def exchange_matrix(self) -> ExchangeMatrix:
        return ExchangeMatrix(self.word.length, self.ex, self.bmatrix)

    def seed(self, ell: int) -> Seed:
        """The initial seed at order ``l``; its symmetrizer is ``kappa D`` reduced to a positive representative."""
        return Seed.initial(SkewForm.from_integer(ell, self.lam), self.exchange_matrix())


def _bmatrix_entry(data: ReducedWordData, j: int, k: int) -> int:
    inf = data.length + 1
    s = [inf if x is None else x for x in data.succ]
    a = data.datum.A[data.letters[j]][data.letters[k]]
    if j == data.pred[k]:
        return 1
    if j == data.succ[k]:
        return -1
    if j < k < s[j] < s[k]:
        return a
    if k < j < s[k] < s[j]:
        return -a
    return 0


def _compatibility_constant(product: list, ex: tuple, d: tuple) -> int | None:
    """The integer ``kappa`` with ``product == kappa [D; 0]``, or ``None``."""
    kappa = None
    for i, row in enumerate(product):
        for c, k in enumerate(ex):
            if i != k:
                if row[c]:
                    return None
                continue
            if row[c] % d[c]:
                return None
            value = row[c] // d[c]
            if value == 0 or (kappa is not None and value != kappa):
                return None
            kappa = value
    return kappa


def _lambda_from_minors(datum: CartanDatum, data: ReducedWordData, shifts: list) -> list:
    # D_k x = q^{((w_{<=k} + 1) varpi, gamma)} x D_k for x of weight gamma = -shift_j, j < k
    n = data.length
    lam = [[0] * n for _ in range(n)]
    for k in range(n):
        mu = [2 * int(t == data.letters[k]) + datum.coroot(t, shifts[k]) for t in range(datum.rank)]
        for j in range(k):
            lam[j][k] = datum.pair(mu, shifts[j])
            lam[k][j] = -lam[j][k]
    return lam


def _lambda_closed_form(datum: CartanDatum, data: ReducedWordData, shifts: list) -> list:
    n = data.length
    lam = [[0] * n for _ in range(n)]
    for j in range(n):
        mu = [2 * int(t == data.letters[j]) + datum.coroot(t, shifts[j]) for t in range(datum.rank)]
        for k in range(j + 1, n):
            lam[j][k] = -datum.pair(mu, shifts[k])
            lam[k][j] = -lam[j][k]
    return lam


def _transpose_product(lam: list, bmatrix: list, ncols: int) -> list:
    n = len(lam)
    return [[sum(lam[t][i] * bmatrix[t][c] for t in range(n)) for c in range(ncols)] for i in range(n)]


def build_unipotent_seed_data(datum: CartanDatum, word) -> UnipotentSeedData:
    """Build ``(Lambda_w, B_w, D)`` and check ``Lambda_w^T B_w = kappa [D; 0]`` over the integers.

    Raises :class:`CompatibilityFailed` when no single non-zero ``kappa`` works.
    """
    data = reduced_word_data(datum, word)
    n = data.length
    shifts = [data.prefix_shift(k) for k in range(n)]
    lam = _lambda_from_minors(datum, data, shifts)
    closed_form = _lambda_closed_form(datum, data, shifts)
    bmatrix = [[_bmatrix_entry(data, j, k) for k in data.ex] for j in range(n)]
    d = tuple(datum.d[data.letters[k]] for k in data.ex)
    product = _transpose_product(lam, bmatrix, len(data.ex))
    kappa = _compatibility_constant(product, data.ex, d)
    if data.ex and kappa is None:
        raise CompatibilityFailed(f"Lambda^T B = {product} is not a multiple of [D; 0] with D = {d}")
    a_doubled = {}
    for k in range(n):
        for j in range(k + 1):
            if data.letters[j] != data.letters[k]:
                continue
            gamma = data.interval_shift(j, k)
            norm = datum.root_pair(gamma, gamma)
            if norm % 2:
                raise CompatibilityFailed(f"odd squared length {norm} at ({j}, {k})")
            a_doubled[(j, k)] = norm // 2
    closed_form_product = _transpose_product(closed_form, bmatrix, len(data.ex))
    return UnipotentSeedData(data, lam, closed_form, bmatrix, d, kappa, a_doubled, product, closed_form_product)


def degree_identity_check(datum: CartanDatum, word) -> bool:
    """``beta_1 + ... + beta_N == sum over the support of (1 - w) varpi_i``."""
    data = reduced_word_data(datum, word)
    left = [sum(beta[t] for beta in data.roots) for t in range(datum.rank)]
    right = [0] * datum.rank
    for i in data.support:
        gamma = datum.shift(data.letters, i)
        right = [r - g for r, g in zip(right, gamma)]
    return left == right


def reduced_words(datum: CartanDatum, max_length: int):
    """All reduced words of length ``1..max_length`` (1-based letters), by depth-first extension."""
    out = []

    def extend(word):
        for i in range(1, datum.rank + 1):
            cand = word + (i,)
            try:
                reduced_word_data(datum, cand)
            except NotReduced:
                continue
            out.append(cand)
            if len(cand) < max_length:
                extend(cand)

    extend(())
    return out


# -- discriminants --------------------------------------------------------------


@dataclass
class UnipotentDiscriminant:
    """Outcome of the discriminant check for a quantum unipotent cell.

    ``expected_exponent`` is the claimed power ``l^N (l - 1)`` of each frozen
    minor; ``observed_exponents`` are the powers actually found.
    """

    word: tuple
    ell: int
    case: str
    result: DiscriminantResult
    expected: TorusElement
    verdict: bool
    expected_exponent: int
    observed_exponents: dict
    seconds: float
    reason: str = ""


def _is_sl3_stretch(datum: CartanDatum, letters: tuple) -> bool:
    if len(letters) != 3 or letters[0] != letters[2] or letters[0] == letters[1]:
        return False
    i, j = letters[0], letters[1]
    return datum.A[i][j] == -1 and datum.A[j][i] == -1


def theorem_c_check(datum: CartanDatum, word, ell: int, allow_stretch: bool = False) -> UnipotentDiscriminant:
    """Discriminant of ``A_eps(n_+(w))`` over its l-th power centre against ``l^(N l^N) prod D_i^(l^N (l-1))``.

    Supported words have distinct letters (the algebra is a skew-polynomial
    ring on the initial cluster) or have the shape ``(i, j, i)`` in a simply
    laced rank-2 block, which needs ``allow_stretch``.
    """
    if ell % 2 == 0 or ell < 3:
        raise ValueError("l must be odd and at least 3")
    data = build_unipotent_seed_data(datum, word)
    letters = data.word.letters
    if any(gcd(ell, datum.d[i]) != 1 for i in data.word.support):
        raise CoprimeViolated(f"l={ell} shares a factor with a symmetrizer on the support")
    start = time.perf_counter()
    n = data.word.length
    seed = data.seed(ell)
    if len(set(letters)) == n:
        case = "skew-polynomial"
        presentation = torus_presentation(seed.form, frozen=range(n), label=f"unipotent {tuple(word)}")
        result = cluster_discriminant(presentation, seeds=[seed])
        frozen = list(range(n))
    elif _is_sl3_stretch(datum, letters):
        if not allow_stretch:
            raise UnsupportedWord("the (i, j, i) discriminant is long-running; pass allow_stretch")
        case = "pbw"
        mutated = seed.mutate(0)
        generators = [seed.frame[0], seed.frame[1], mutated.frame[0]]
        frozen = [k for k in range(n) if k not in seed.ex]
        factors = [FrozenFactor(f"D{k + 1}", TorusElement.monomial(seed.form, _scaled_unit(n, k, ell))) for k in frozen]
        presentation = pbw_presentation(generators, factors, nonneg=frozen, label=f"unipotent {tuple(word)}")
        result = cluster_discriminant(presentation, seeds=[seed, mutated])
    else:
        raise UnsupportedWord(f"no discriminant pipeline for the word {tuple(word)}")
    exponent = ell ** n * (ell - 1)
    expected = TorusElement.constant(seed.form, scalar_power(ell, n))
    for k in frozen:
        expected = expected * TorusElement.monomial(seed.form, _scaled_unit(n, k, exponent))
    verdict = compare_up_to_unit(result.discriminant, expected)
    observed = result.total_exponents(ell)
    return UnipotentDiscriminant(
        tuple(word), ell, case, result, expected, verdict.ok, exponent, observed,
        time.perf_counter() - start, verdict.reason,
    )


def _scaled_unit(n: int, k: int, scale: int) -> list:
    return [scale * int(i == k) for i in range(n)]
