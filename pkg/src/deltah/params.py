"""Parameter vectors of the gamma ratio and their derived scalar constants.

The function family is defined by two weight/shift pairs ``(A, a)`` and
``(B, b)``: the numerator carries gamma factors ``Gamma(A_k s + a_k)`` and the
denominator ``Gamma(B_j s + b_j)``.  Only the balanced case
``sum(B) == sum(A)`` is supported; it is the one with compact support.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DeltaNeutralityError, ParameterError

#: relative tolerance on the weight balance sum(B) - sum(A)
DELTA_TOL = 1e-12


@dataclass(frozen=True)
class ParameterSet:
    """Weight/shift vectors (A, a; B, b); immutable and hashable.

    ``A`` and ``B`` are strictly positive gamma argument scales, ``a`` and
    ``b`` arbitrary real shifts.  ``len(A) == len(a) == p`` and
    ``len(B) == len(b) == q``.
    """

    A: tuple[float, ...]
    a: tuple[float, ...]
    B: tuple[float, ...]
    b: tuple[float, ...]

    def __init__(self, A: Iterable[float], a: Iterable[float],
                 B: Iterable[float], b: Iterable[float]):
        object.__setattr__(self, "A", tuple(float(v) for v in A))
        object.__setattr__(self, "a", tuple(float(v) for v in a))
        object.__setattr__(self, "B", tuple(float(v) for v in B))
        object.__setattr__(self, "b", tuple(float(v) for v in b))

    @property
    def p(self) -> int:
        return len(self.A)

    @property
    def q(self) -> int:
        return len(self.B)

    @property
    def is_g_case(self) -> bool:
        """True when all weights are unity (classical G-function case)."""
        return (self.p == self.q
                and all(v == 1.0 for v in self.A)
                and all(v == 1.0 for v in self.B))

    def to_dict(self) -> dict:
        return {"A": list(self.A), "a": list(self.a),
                "B": list(self.B), "b": list(self.b)}

    @classmethod
    def from_dict(cls, obj: dict) -> "ParameterSet":
        try:
            return cls(obj["A"], obj["a"], obj["B"], obj["b"])
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"parameter object needs A, a, B, b arrays: {exc}")

    @classmethod
    def from_json(cls, text: str) -> "ParameterSet":
        return cls.from_dict(json.loads(text))

    @classmethod
    def g_case(cls, a: Iterable[float], b: Iterable[float]) -> "ParameterSet":
        """Unit-weight construction from shift vectors alone."""
        a = tuple(float(v) for v in a)
        b = tuple(float(v) for v in b)
        return cls((1.0,) * len(a), a, (1.0,) * len(b), b)


@dataclass(frozen=True)
class DerivedConstants:
    """Scalar constants derived from a validated :class:`ParameterSet`.

    delta       weight imbalance sum(B) - sum(A) (tiny by validation)
    mu          sum(b) - sum(a) + (p - q)/2, local exponent is mu - 1
    rho         support radius prod A^A / prod B^B
    nu          Stirling prefactor (2*pi)^((p-q)/2) prod A^(a-1/2) prod B^(1/2-b)
    gamma_pole  rightmost integrand pole, -min_k(a_k / A_k)
    is_g_case   all weights unity
    """

    delta: float
    mu: float
    rho: float
    nu: float
    gamma_pole: float
    is_g_case: bool


def validate(params: ParameterSet) -> ParameterSet:
    """Check positivity, lengths and weight balance; return the set unchanged.

    Raises
    ------
    ParameterError
        length mismatch or non-positive weight entry
    DeltaNeutralityError
        sum(B) - sum(A) exceeds ``DELTA_TOL`` relative to max(1, sum(A));
        unbalanced sets are rejected, never repaired
    """
    if len(params.A) != len(params.a):
        raise ParameterError(f"len(A)={len(params.A)} != len(a)={len(params.a)}")
    if len(params.B) != len(params.b):
        raise ParameterError(f"len(B)={len(params.B)} != len(b)={len(params.b)}")
    if len(params.A) == 0 or len(params.B) == 0:
        raise ParameterError("empty weight vector")
    if any(v <= 0.0 for v in params.A) or any(v <= 0.0 for v in params.B):
        raise ParameterError("entries of A and B must be strictly positive")
    if any(not math.isfinite(v) for vec in (params.A, params.a, params.B, params.b)
           for v in vec):
        raise ParameterError("non-finite parameter entry")
    sum_a = math.fsum(params.A)
    delta = math.fsum(params.B) - sum_a
    if abs(delta) > DELTA_TOL * max(1.0, sum_a):
        raise DeltaNeutralityError(
            f"weights are not balanced: sum(B) - sum(A) = {delta:.3e}")
    return params


def derive(params: ParameterSet) -> DerivedConstants:
    """Compute all derived scalars for a validated set.

    ``rho`` and ``nu`` are assembled in log space so large weights cannot
    overflow the intermediate products.
    """
    validate(params)
    delta = math.fsum(params.B) - math.fsum(params.A)
    p, q = params.p, params.q
    mu = math.fsum(params.b) - math.fsum(params.a) + 0.5 * (p - q)
    log_rho = (math.fsum(w * math.log(w) for w in params.A)
               - math.fsum(w * math.log(w) for w in params.B))
    rho = math.exp(log_rho)
    log_nu = (0.5 * (p - q) * math.log(2.0 * math.pi)
              + math.fsum((sh - 0.5) * math.log(w)
                          for w, sh in zip(params.A, params.a))
              + math.fsum((0.5 - sh) * math.log(w)
                          for w, sh in zip(params.B, params.b)))
    nu = math.exp(log_nu)
    gamma_pole = -min(sh / w for w, sh in zip(params.A, params.a))
    return DerivedConstants(delta=delta, mu=mu, rho=rho, nu=nu,
                            gamma_pole=gamma_pole, is_g_case=params.is_g_case)


def rho_product_form(params: ParameterSet) -> float:
    """Support radius by direct products, the overflow-prone route.

    Kept as an independent cross-check of the log-space computation.
    """
    out = 1.0
    for w in params.A:
        out *= w ** w
    for w in params.B:
        out *= w ** (-w)
    return out
