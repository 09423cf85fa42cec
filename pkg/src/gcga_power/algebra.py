"""Complex-coefficient Clifford algebra over a Euclidean basis.

Blades are stored as strictly ascending tuples of basis indices; the empty
tuple is the scalar unit.  Multivectors are sparse mappings from blades to
complex coefficients, so only blades that actually occur are materialised,
which keeps high harmonic orders (n of 50 or more) cheap.

Besides the classic geometric product this module implements the
generalized product used for harmonic power analysis.  It multiplies two
grade-1 vector-phasors and rotates every like-frequency cross term below the
diagonal by ``exp(-2j(alpha_p - alpha_q))``, with ``alpha`` the phase of the
voltage harmonic carried by a :class:`PhasorTag`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from numbers import Number
from typing import Iterable, Mapping

from .errors import (
    ConsistencyError,
    DimensionMismatchError,
    GradeError,
    MissingPhasorTagError,
)

Blade = tuple  # strictly ascending basis indices; () is the scalar unit

SCALAR: Blade = ()

#: Coefficients smaller than this fraction of the largest one are dropped.
PRUNE_RTOL = 1e-12


def blade(*indices: int) -> Blade:
    """Build a canonical blade from distinct positive basis indices."""
    if len(set(indices)) != len(indices):
        raise ValueError(f"repeated basis index in {indices}")
    if any(i < 1 for i in indices):
        raise ValueError(f"basis indices must be >= 1, got {indices}")
    return tuple(sorted(indices))


def blade_mul(a: Blade, b: Blade) -> tuple[Blade, int]:
    """Product of two canonical blades.

    Returns the resulting blade (symmetric difference of the index sets) and
    the sign picked up by reordering.  Each index of ``b`` has to hop over
    every larger index of ``a``; equal indices contract to one.
    """
    swaps = 0
    for j in b:
        swaps += sum(1 for i in a if i > j)
    result = tuple(sorted(set(a).symmetric_difference(b)))
    return result, -1 if swaps % 2 else 1


def reverse_sign(grade: int) -> int:
    return -1 if (grade * (grade - 1) // 2) % 2 else 1


def wrap_angle(angle: float) -> float:
    """Map an angle in radians onto (-pi, pi]."""
    wrapped = math.remainder(angle, 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2 * math.pi
    return wrapped


@dataclass(frozen=True)
class PhasorTag:
    """Phase of the voltage harmonic of a given order, in radians."""

    order: int
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", wrap_angle(self.alpha))


def _pruned(terms: Mapping[Blade, complex]) -> dict[Blade, complex]:
    if not terms:
        return {}
    largest = max(abs(c) for c in terms.values())
    if largest == 0.0:
        return {}
    cutoff = PRUNE_RTOL * largest
    return {b: complex(c) for b, c in terms.items() if abs(c) > cutoff}


@dataclass(frozen=True, eq=False)
class Multivector:
    """Sparse complex multivector in ``n`` dimensions.

    ``terms`` maps canonical blades to complex coefficients.  Instances are
    immutable; every operation returns a new, pruned multivector.
    """

    terms: Mapping[Blade, complex] = field(default_factory=dict)
    n: int = 0

    def __post_init__(self):
        clean = {}
        for b, c in self.terms.items():
            canon = blade(*b)
            if canon and canon[-1] > self.n:
                raise DimensionMismatchError(
                    f"blade {canon} does not fit in dimension {self.n}")
            if canon != tuple(b):
                raise ValueError(f"blade {b} is not in canonical ascending order")
            clean[canon] = clean.get(canon, 0j) + complex(c)
        object.__setattr__(self, "terms", _pruned(clean))

    @classmethod
    def vector(cls, coefficients: Mapping[int, complex], n: int | None = None) -> "Multivector":
        """Grade-1 multivector ``sum_k c_k sigma_k``."""
        if n is None:
            n = max(coefficients, default=0)
        return cls({(k,): c for k, c in coefficients.items()}, n)

    @classmethod
    def scalar(cls, value: complex, n: int = 0) -> "Multivector":
        return cls({SCALAR: value}, n)

    def __getitem__(self, b: Blade) -> complex:
        return self.terms.get(tuple(b), 0j)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"Multivector(0, n={self.n})"
        parts = []
        for b in sorted(self.terms, key=lambda x: (len(x), x)):
            name = "s" + "_".join(map(str, b)) if b else "1"
            parts.append(f"({self.terms[b]:.6g})*{name}")
        return f"Multivector({' + '.join(parts)}, n={self.n})"

    def _check(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            raise TypeError(f"expected Multivector, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatchError(f"dimension {self.n} vs {other.n}")

    def with_dimension(self, n: int) -> "Multivector":
        return Multivector(self.terms, n)

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, 0j) + c
        return Multivector(out, self.n)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, c: complex) -> "Multivector":
        return Multivector({b: c * v for b, v in self.terms.items()}, self.n)

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def grade(self, k: int) -> "Multivector":
        return Multivector({b: c for b, c in self.terms.items() if len(b) == k}, self.n)

    @property
    def grades(self) -> set[int]:
        return {len(b) for b in self.terms}

    @property
    def scalar_part(self) -> complex:
        return self.terms.get(SCALAR, 0j)

    def reverse(self) -> "Multivector":
        return reverse(self)

    def conjugate(self) -> "Multivector":
        return conjugate(self)

    def norm(self) -> float:
        return norm(self)

    def isclose(self, other: "Multivector", rel_tol: float = 1e-12, abs_tol: float = 0.0) -> bool:
        """Coefficient-wise comparison relative to the larger operand's scale."""
        self._check(other)
        scale = max([abs(c) for c in self.terms.values()]
                    + [abs(c) for c in other.terms.values()] + [0.0])
        tol = max(rel_tol * scale, abs_tol)
        keys = set(self.terms) | set(other.terms)
        return all(abs(self[b] - other[b]) <= tol for b in keys)


def geometric_product(z: Multivector, w: Multivector) -> Multivector:
    """Bilinear extension of :func:`blade_mul` to multivectors."""
    z._check(w)
    out: dict[Blade, complex] = {}
    for a, ca in z.terms.items():
        for b, cb in w.terms.items():
            res, sign = blade_mul(a, b)
            out[res] = out.get(res, 0j) + sign * ca * cb
    return Multivector(out, z.n)


def rotation(p: int, q: int, alphas: Mapping[int, float], common: Iterable[int]) -> complex:
    """Phase correction applied to the ``(p, q)`` term of the generalized product."""
    common = set(common)
    if p > q and p in common and q in common:
        return cmath.exp(-2j * (alphas[p] - alphas[q]))
    return 1.0 + 0j


def generalized_product(
    z: Multivector,
    w: Multivector,
    tags: Iterable[PhasorTag],
    common: Iterable[int],
) -> Multivector:
    """Generalized complex geometric product of two grade-1 vector-phasors.

    Each term pair ``z_p s_p`` and ``w_q s_q`` contributes
    ``R(p, q) z_p w_q s_p s_q`` where ``R`` is :func:`rotation`.  ``common``
    is the set of harmonic orders present in both voltage and current; a tag
    is required for each of them.  When all tagged phases over ``common``
    coincide this reduces to :func:`geometric_product`.
    """
    z._check(w)
    for operand in (z, w):
        if operand.terms and operand.grades != {1}:
            raise GradeError(f"generalized product needs grade-1 operands, got grades {sorted(operand.grades)}")
    common = set(common)
    alphas = {t.order: t.alpha for t in tags}
    missing = sorted(common - set(alphas))
    if missing:
        raise MissingPhasorTagError(f"no phasor tag for harmonic orders {missing}")

    out: dict[Blade, complex] = {}
    for (p,), zp in z.terms.items():
        for (q,), wq in w.terms.items():
            res, sign = blade_mul((p,), (q,))
            out[res] = out.get(res, 0j) + sign * rotation(p, q, alphas, common) * zp * wq
    return Multivector(out, z.n)


def reverse(z: Multivector) -> Multivector:
    return Multivector({b: reverse_sign(len(b)) * c for b, c in z.terms.items()}, z.n)


def conjugate(z: Multivector) -> Multivector:
    return Multivector({b: c.conjugate() for b, c in z.terms.items()}, z.n)


NORM_TOL = 1e-9


def norm(z: Multivector) -> float:
    """Magnitude from the scalar part of ``z`` times its conjugated reverse."""
    sq = geometric_product(z, conjugate(reverse(z))).scalar_part
    scale = sum(abs(c) ** 2 for c in z.terms.values())
    if abs(sq.imag) > NORM_TOL * max(scale, 1.0) or sq.real < -NORM_TOL * max(scale, 1.0):
        raise ConsistencyError(f"squared norm {sq} is not a nonnegative real")
    return math.sqrt(max(sq.real, 0.0))
