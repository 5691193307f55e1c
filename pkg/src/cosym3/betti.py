"""Betti-number arithmetic and the rank bounds for the horizontal sector.

The full Betti numbers of a model of rank n are the (1, 3, 3, 1)-convolution
of the horizontal ones (equivalently, multiplication of the Poincare series
by (1+t)^3, the three Reeb circles).  Constraint checks carry margins rather
than bare booleans: the torus saturates several of the bounds and it is
useful to see by how much everything else clears them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

from . import contact
from .exterior import Blade, ModelDims, Multivector, leading_blade, wedge_all
from .linalg import sparse_rank

REEB_KERNEL = (1, 3, 3, 1)


@dataclass(frozen=True)
class HorizontalBettiSequence:
    """Dimensions of the eta-free sector by degree: length 4n + 1."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("rank must be nonnegative")
        if len(self.values) != 4 * self.n + 1:
            raise ValueError(
                f"expected {4 * self.n + 1} horizontal values, got {len(self.values)}"
            )
        if any(v < 0 for v in self.values):
            raise ValueError("Betti numbers are nonnegative")

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "HorizontalBettiSequence":
        vals = tuple(int(v) for v in values)
        if (len(vals) - 1) % 4:
            raise ValueError("horizontal sequence length must be 4n + 1")
        return cls((len(vals) - 1) // 4, vals)

    @classmethod
    def from_sector_counts(cls, dims: ModelDims) -> "HorizontalBettiSequence":
        """The torus model: C(4n, k) eta-free blades in degree k."""
        return cls(dims.n, tuple(comb(dims.horizontal_dim, k) for k in range(dims.horizontal_dim + 1)))

    def get(self, k: int) -> int:
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0

    def is_palindromic(self) -> bool:
        return self.values == self.values[::-1]


@dataclass(frozen=True)
class BettiSequence:
    """Full Betti numbers b_0 .. b_{4n+3}."""

    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) < 4 or len(self.values) % 4:
            raise ValueError("full sequence length must be 4n + 4")
        if any(v < 0 for v in self.values):
            raise ValueError("Betti numbers are nonnegative")

    @property
    def n(self) -> int:
        return len(self.values) // 4 - 1

    def get(self, k: int) -> int:
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0


def betti_from_horizontal(bh: HorizontalBettiSequence) -> BettiSequence:
    """Convolve the horizontal sequence with (1, 3, 3, 1)."""
    length = 4 * bh.n + 4
    values = tuple(
        sum(REEB_KERNEL[i] * bh.get(k - i) for i in range(4)) for k in range(length)
    )
    return BettiSequence(values)


@dataclass(frozen=True)
class PoincareSeries:
    """Integer polynomial in t, as a coefficient tuple."""

    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "PoincareSeries":
        vals = list(int(c) for c in coeffs)
        while len(vals) > 1 and vals[-1] == 0:
            vals.pop()
        return cls(tuple(vals) or (0,))

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def series_product(a: PoincareSeries, b: PoincareSeries) -> PoincareSeries:
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca:
            for j, cb in enumerate(b.coeffs):
                out[i + j] += ca * cb
    return PoincareSeries.from_coeffs(out)


REEB_SERIES = PoincareSeries.from_coeffs((1, 3, 3, 1))  # (1 + t)^3


@dataclass
class ConstraintItem:
    name: str
    ok: bool
    margin: int | None = None
    warning: bool = False
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "margin": self.margin,
            "warning": self.warning,
            "detail": self.detail,
        }


@dataclass
class ConstraintReport:
    name: str
    items: list[ConstraintItem]

    def passed(self, strict: bool = False) -> bool:
        return all(item.ok for item in self.items if strict or not item.warning)

    def warnings(self) -> list[ConstraintItem]:
        return [item for item in self.items if item.warning and not item.ok]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "items": [item.to_dict() for item in self.items],
            "passed": self.passed(),
        }


def _sequence_values(b) -> tuple[int, ...]:
    if isinstance(b, BettiSequence):
        return b.values
    if isinstance(b, HorizontalBettiSequence):
        return b.values
    return tuple(int(v) for v in b)


def check_divisibility(b) -> ConstraintReport:
    """b_{k-1} + b_k must be divisible by four for every odd k."""
    values = _sequence_values(b)
    items = []
    for k in range(1, len(values), 2):
        total = values[k - 1] + values[k]
        remainder = total % 4
        items.append(
            ConstraintItem(
                name=f"b{k - 1} + b{k} divisible by 4",
                ok=remainder == 0,
                margin=None,
                detail=f"sum={total}, remainder={remainder}",
            )
        )
    return ConstraintReport("divisibility", items)


def check_bounds(b, n: int) -> ConstraintReport:
    """b_k >= C(k+2, 2) for 0 <= k <= 2n + 1, with margins."""
    values = _sequence_values(b)
    items = []
    for k in range(0, min(2 * n + 1, len(values) - 1) + 1):
        bound = comb(k + 2, 2)
        margin = values[k] - bound
        items.append(
            ConstraintItem(
                name=f"b{k} >= {bound}",
                ok=margin >= 0,
                margin=margin,
                detail=f"b{k}={values[k]}",
            )
        )
    return ConstraintReport("lower bounds", items)


def check_horizontal_constraints(bh: HorizontalBettiSequence) -> ConstraintReport:
    """Odd horizontal numbers divisible by four; even ones bounded below.

    Palindromy of the horizontal sequence is reported as a warning item: it
    is expected of the models treated here but is not one of the hard
    constraints, so only strict mode escalates it.
    """
    items = []
    for k in range(1, len(bh.values), 2):
        remainder = bh.values[k] % 4
        items.append(
            ConstraintItem(
                name=f"bh{k} divisible by 4",
                ok=remainder == 0,
                detail=f"bh{k}={bh.values[k]}, remainder={remainder}",
            )
        )
    for p in range(0, bh.n + 1):
        bound = comb(p + 2, 2)
        margin = bh.get(2 * p) - bound
        items.append(
            ConstraintItem(
                name=f"bh{2 * p} >= {bound}",
                ok=margin >= 0,
                margin=margin,
                detail=f"bh{2 * p}={bh.get(2 * p)}",
            )
        )
    items.append(
        ConstraintItem(
            name="bh palindromic",
            ok=bh.is_palindromic(),
            warning=True,
            detail=f"values={list(bh.values)}",
        )
    )
    return ConstraintReport("horizontal constraints", items)


# ---------------------------------------------------------------------------
# Rank of the power products of the horizontal two-forms
# ---------------------------------------------------------------------------


def _xi_power_product(dims: ModelDims, powers: tuple[int, int, int]) -> Multivector:
    factors = []
    for alpha, power in zip(contact.ALPHAS, powers):
        factors.extend(contact.xi_form(dims, alpha) for _ in range(power))
    return wedge_all(factors)


def predicted_leading_blade(dims: ModelDims, powers: tuple[int, int, int]) -> Blade:
    """First blade (in coframe order) of the power product Xi_1^k1 Xi_2^k2 Xi_3^k3.

    The leading term pairs zeta_t with phi_1*zeta_t for the first k1 values
    of t, then with phi_2*zeta_t, then phi_3*zeta_t.
    """
    k1, k2, k3 = powers
    indices: list[int] = []
    for offset, (start, count) in enumerate(((0, k1), (k1, k2), (k1 + k2, k3))):
        for t in range(start + 1, start + count + 1):
            indices.append(contact.zeta_index(dims, t))
            indices.append(contact.phi_zeta_index(dims, offset + 1, t))
    return tuple(sorted(indices))


@dataclass
class PowerProductRank:
    n: int
    k: int
    rank: int
    expected: int
    leading_blades: list[Blade]
    leading_distinct: bool
    leading_match_predicted: bool

    @property
    def passed(self) -> bool:
        return (
            self.rank == self.expected
            and self.leading_distinct
            and self.leading_match_predicted
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "rank": self.rank,
            "expected": self.expected,
            "leading_distinct": self.leading_distinct,
            "leading_match_predicted": self.leading_match_predicted,
            "passed": self.passed,
        }


def s_k_rank(n: int, k: int) -> PowerProductRank:
    """Exact rank of {Xi_1^k1 ^ Xi_2^k2 ^ Xi_3^k3 : k1 + k2 + k3 = k}.

    Also verifies the supporting mechanism: the lexicographically leading
    blades of the C(k+2, 2) products are pairwise distinct and equal the
    predicted interleavings.  Requires k <= n, where the products are
    nonzero and the leading-term argument applies.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > n:
        raise ValueError(f"k = {k} exceeds the rank n = {n}")
    dims = ModelDims(n)
    vectors = []
    leading: list[Blade] = []
    predicted_ok = True
    for k1 in range(k, -1, -1):
        for k2 in range(k - k1, -1, -1):
            powers = (k1, k2, k - k1 - k2)
            product = _xi_power_product(dims, powers)
            vectors.append(dict(product.terms))
            lead = leading_blade(product)
            if lead is None:
                lead = ()
                predicted_ok = False
            elif lead != predicted_leading_blade(dims, powers):
                predicted_ok = False
            leading.append(lead)
    expected = comb(k + 2, 2)
    return PowerProductRank(
        n=n,
        k=k,
        rank=sparse_rank(vectors),
        expected=expected,
        leading_blades=leading,
        leading_distinct=len(set(leading)) == len(leading),
        leading_match_predicted=predicted_ok,
    )
