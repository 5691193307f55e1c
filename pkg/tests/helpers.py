"""Shared hypothesis strategies for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from cosym3.exterior import Multivector


def blades(dim: int, degree: int | None = None):
    if degree is None:
        return st.sets(st.integers(0, dim - 1), max_size=dim).map(
            lambda s: tuple(sorted(s))
        )
    return st.sets(st.integers(0, dim - 1), min_size=degree, max_size=degree).map(
        lambda s: tuple(sorted(s))
    )


def coefficients():
    return st.integers(-4, 4).filter(bool).map(Fraction)


def multivectors(dim: int = 7, max_terms: int = 4):
    return st.dictionaries(blades(dim), coefficients(), max_size=max_terms).map(
        Multivector
    )


def homogeneous(dim: int = 7, degree: int = 2, max_terms: int = 4):
    return st.dictionaries(
        blades(dim, degree), coefficients(), max_size=max_terms
    ).map(Multivector)
