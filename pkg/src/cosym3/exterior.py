"""Exact exterior algebra over an ordered orthonormal coframe.

A blade is a strictly increasing tuple of coframe indices in ``[0, dim)``;
a form is a sparse map from blades to nonzero rational coefficients.  All
coefficients are exact rationals: the identities verified downstream are
algebraic, and rounding would weaken them to approximations.

Orientation convention: the volume form is the full blade ``(0, ..., dim-1)``
with coefficient +1.  The blade order follows the coframe index order, so the
lexicographic order used for leading-blade arguments is plain tuple order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .linalg import det

Blade = tuple[int, ...]
Evaluation = Callable[[int, int], Fraction]


@dataclass(frozen=True)
class ModelDims:
    """Coframe bookkeeping for quaternionic rank ``n``: total size 4n + 3."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("rank n must be nonnegative")

    @property
    def dim(self) -> int:
        return 4 * self.n + 3

    @property
    def horizontal_dim(self) -> int:
        return 4 * self.n


def _as_blade(indices: Iterable[int]) -> Blade:
    blade = tuple(indices)
    if any(nxt <= prev for nxt, prev in zip(blade[1:], blade)):
        raise ValueError(f"blade indices must be strictly increasing: {blade}")
    if blade and blade[0] < 0:
        raise ValueError(f"blade indices must be nonnegative: {blade}")
    return blade


class Multivector:
    """Sparse form with exact rational coefficients.

    Instances are treated as immutable values; no operation mutates its
    operands, which keeps everything safe for concurrent use.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Blade, Fraction | int] | None = None):
        data: dict[Blade, Fraction] = {}
        if terms:
            for blade, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    data[_as_blade(blade)] = c
        self.terms = data

    @classmethod
    def zero(cls) -> "Multivector":
        return cls()

    @classmethod
    def scalar(cls, value: Fraction | int) -> "Multivector":
        return cls({(): Fraction(value)})

    @classmethod
    def blade(cls, indices: Iterable[int], coeff: Fraction | int = 1) -> "Multivector":
        return cls({tuple(indices): Fraction(coeff)})

    def coefficient(self, blade: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(blade), Fraction(0))

    def degrees(self) -> set[int]:
        return {len(b) for b in self.terms}

    def degree(self) -> int | None:
        """Degree of a homogeneous form, None for zero, error when mixed."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def graded_parts(self) -> dict[int, "Multivector"]:
        parts: dict[int, dict[Blade, Fraction]] = {}
        for blade, coeff in self.terms.items():
            parts.setdefault(len(blade), {})[blade] = coeff
        return {k: Multivector(v) for k, v in sorted(parts.items())}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "Multivector") -> "Multivector":
        acc = dict(self.terms)
        for blade, coeff in other.terms.items():
            acc[blade] = acc.get(blade, Fraction(0)) + coeff
        return Multivector(acc)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector({b: -c for b, c in self.terms.items()})

    def __rmul__(self, scalar) -> "Multivector":
        c = Fraction(scalar)
        return Multivector({b: c * v for b, v in self.terms.items()})

    def __iter__(self) -> Iterator[tuple[Blade, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for blade, coeff in sorted(self.terms.items()):
            name = "^".join(str(i) for i in blade) if blade else "1"
            bits.append(f"{coeff}*{name}")
        return " + ".join(bits)


def _merge_sign(a: Blade, b: Blade) -> tuple[int, Blade]:
    """Merge two blades; sign is the parity of the shuffle, 0 on overlap."""
    out: list[int] = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, ()
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product; bilinear, associative, graded-anticommutative."""
    acc: dict[Blade, Fraction] = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            sign, merged = _merge_sign(ba, bb)
            if sign:
                acc[merged] = acc.get(merged, Fraction(0)) + sign * ca * cb
    return Multivector(acc)


def wedge_all(factors: Iterable[Multivector]) -> Multivector:
    result = Multivector.scalar(1)
    for f in factors:
        result = wedge(result, f)
    return result


def interior(v: int, omega: Multivector) -> Multivector:
    """Contraction with the vector dual to coframe slot ``v``.

    Antiderivation of degree -1; anticommutes with itself to zero, and
    ``{blade(v) ^ -, interior(v, -)} = id`` on the whole algebra.
    """
    if v < 0:
        raise ValueError("coframe index must be nonnegative")
    acc: dict[Blade, Fraction] = {}
    for blade, coeff in omega.terms.items():
        try:
            pos = blade.index(v)
        except ValueError:
            continue
        sign = -1 if pos % 2 else 1
        rest = blade[:pos] + blade[pos + 1 :]
        acc[rest] = acc.get(rest, Fraction(0)) + sign * coeff
    return Multivector(acc)


def complement_sign(blade: Blade, dim: int) -> int:
    """Parity of the shuffle placing ``blade`` before its complement."""
    inversions = sum(a - pos for pos, a in enumerate(blade))
    return -1 if inversions % 2 else 1


def hodge_star(omega: Multivector, dims: ModelDims) -> Multivector:
    """Hodge star for the orthonormal coframe, volume = the full blade.

    Requires homogeneous input; in odd total dimension the square of the
    star is the identity.
    """
    omega.degree()  # raises on non-homogeneous input
    dim = dims.dim
    acc: dict[Blade, Fraction] = {}
    for blade, coeff in omega.terms.items():
        if blade and blade[-1] >= dim:
            raise ValueError(f"blade {blade} exceeds coframe size {dim}")
        in_blade = set(blade)
        comp = tuple(i for i in range(dim) if i not in in_blade)
        acc[comp] = acc.get(comp, Fraction(0)) + complement_sign(blade, dim) * coeff
    return Multivector(acc)


def kronecker_evaluation(i: int, j: int) -> Fraction:
    return Fraction(1) if i == j else Fraction(0)


def pairing(
    omega: Multivector,
    kvector: Multivector,
    evaluation: Evaluation = kronecker_evaluation,
) -> Fraction:
    """Natural pairing of a k-form with a k-vector.

    For decomposables this is ``det[rho_i(V_j)] / k!`` where the slotwise
    evaluation ``rho_i(V_j)`` is supplied by ``evaluation``; the 1/k! weight
    is the normalization that makes the unit coframe/frame pairs evaluate to
    1/2 in degree two.
    """
    if not omega or not kvector:
        return Fraction(0)
    k = omega.degree()
    if k != kvector.degree():
        raise ValueError("pairing requires equal degrees")
    k_factorial = 1
    for i in range(2, k + 1):
        k_factorial *= i
    total = Fraction(0)
    for fb, fc in omega.terms.items():
        for vb, vc in kvector.terms.items():
            matrix = [[evaluation(i, j) for j in vb] for i in fb]
            d = det(matrix)
            if d:
                total += fc * vc * d / k_factorial
    return total


def leading_blade(omega: Multivector) -> Blade | None:
    """Lexicographically first blade with nonzero coefficient; None for 0."""
    if not omega.terms:
        return None
    return min(omega.terms)


def lex_sorted(blades: Iterable[Blade]) -> list[Blade]:
    """Blades in the lexicographic order induced by the coframe order."""
    return sorted(blades)
