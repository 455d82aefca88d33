"""Equation datatypes shared by the solvers and the brute-force references.

Keeping the types separate lets the reference implementations in
:mod:`ddsolve.oracle` validate the real solvers without importing any of
their code paths.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import CycleSum

__all__ = [
    "CardMonomial",
    "CardEquation",
    "AMonomial",
    "AEquation",
    "BasicEquation",
]


def _check_dense_vars(variables: set[int], var_count: int) -> None:
    if var_count < 0:
        raise ValueError(f"var_count must be >= 0, got {var_count}")
    expected = set(range(1, var_count + 1))
    if variables != expected:
        raise ValueError(
            f"variable ids must be exactly 1..{var_count}, got {sorted(variables)}"
        )


@dataclass(frozen=True)
class CardMonomial:
    """One term coeff * x_var ** exp of a cardinality equation."""

    coeff: int
    var: int
    exp: int

    def __post_init__(self) -> None:
        if self.coeff < 1:
            raise ValueError(f"coefficient must be >= 1, got {self.coeff}")
        if self.var < 1:
            raise ValueError(f"variable id must be >= 1, got {self.var}")
        if self.exp < 0:
            raise ValueError(f"exponent must be >= 0, got {self.exp}")


@dataclass(frozen=True)
class CardEquation:
    """coeff_1 * x_1 ** w_1 + ... = rhs over non-negative integers.

    Variable ids are dense in 1..var_count; duplicated (var, exp) pairs
    are permitted and simply add.
    """

    monomials: tuple[CardMonomial, ...]
    rhs: int
    var_count: int

    def __post_init__(self) -> None:
        if self.rhs < 0:
            raise ValueError(f"rhs must be >= 0, got {self.rhs}")
        _check_dense_vars({m.var for m in self.monomials}, self.var_count)


@dataclass(frozen=True)
class AMonomial:
    """One term coeff ⊙ x_var ** exp of an asymptotic equation."""

    coeff: CycleSum
    var: int
    exp: int

    def __post_init__(self) -> None:
        if self.coeff.is_zero:
            raise ValueError("coefficient cycle sum must be nonempty")
        if self.var < 1:
            raise ValueError(f"variable id must be >= 1, got {self.var}")
        if self.exp < 1:
            raise ValueError(f"exponent must be >= 1, got {self.exp}")


@dataclass(frozen=True)
class AEquation:
    """Sum of coeff ⊙ x_var ** exp terms equal to a cycle-sum rhs."""

    monomials: tuple[AMonomial, ...]
    rhs: CycleSum
    var_count: int

    def __post_init__(self) -> None:
        _check_dense_vars({m.var for m in self.monomials}, self.var_count)


@dataclass(frozen=True)
class BasicEquation:
    """The atomic asymptotic subproblem: one p-cycle times X equals n
    cycles of length q."""

    p: int
    q: int
    n: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1 or self.n < 1:
            raise ValueError(f"p, q, n must all be >= 1, got {self}")
