"""Sphere representability for classes of square at least -1.

On non-minimal rational and ruled models a class is represented by a
smoothly embedded sphere exactly when its symplectic genus vanishes, or
when it is a multiple p*e' of a square-zero class with eta(e') = 0 (tube
parallel copies of the sphere for e').  Minimal models carry short
explicit lists instead:

- CP^2: only +-H and +-2H,
- minimal ruled: only the fiber multiples +-kT,
- S^2 x S^2: +-(x + l*y), +-(l*x + y), and the square-zero multiples
  +-k*x, +-k*y (the multiple clause applied to the factor spheres).
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    KIND_RATIONAL,
    KIND_RULED,
    KIND_S2XS2,
    CohClass,
    divisibility,
    format_class,
    square,
)

ETA_ZERO = "eta-zero"
MULTIPLE_OF_ETA_ZERO = "multiple-of-eta-zero"
MINIMAL_LIST = "minimal-list"
NOT_SPHERICAL = "not-spherical"


@dataclass(frozen=True)
class SphericalVerdict:
    spherical: bool
    reason: str
    eta: int | None
    p: int
    base: CohClass | None

    def to_json(self) -> dict:
        return {
            "spherical": self.spherical,
            "reason": self.reason,
            "eta": str(self.eta) if self.eta is not None else None,
            "divisibility": str(self.p),
            "primitive_part": format_class(self.base) if self.base is not None else None,
        }


def spherical_verdict(e: CohClass) -> SphericalVerdict:
    if e.is_zero:
        raise ValueError("sphere representability undefined for the zero class")
    sq = square(e)
    if sq < -1:
        raise ValueError(f"sphere representability is decided for square >= -1, got {sq}")
    model = e.model
    p = divisibility(e)
    base = e // p

    if model.kind == KIND_S2XS2:
        a, b = e.coeffs
        ok = min(abs(a), abs(b)) <= 1  # pq >= 0 already forced by square >= -1
        reason = MINIMAL_LIST if ok else NOT_SPHERICAL
        return SphericalVerdict(ok, reason, None, p, base)

    if model.kind == KIND_RATIONAL and model.n == 0:
        d = e.coeffs[0]
        ok = abs(d) in (1, 2)
        eta = (abs(d) - 1) * (abs(d) - 2) // 2
        return SphericalVerdict(ok, MINIMAL_LIST if ok else NOT_SPHERICAL, eta, p, base)

    if model.kind == KIND_RULED and model.n == 0:
        ok = e.coeffs[0] == 0  # +-kT; the lattice has no square -1 class
        eta = None
        if not ok:
            from .genus import symplectic_genus

            eta = symplectic_genus(e).eta
        return SphericalVerdict(ok, MINIMAL_LIST if ok else NOT_SPHERICAL, eta, p, base)

    from .genus import symplectic_genus

    res = symplectic_genus(e)
    if res.eta == 0:
        return SphericalVerdict(True, ETA_ZERO, 0, p, base)
    if sq == 0 and p >= 2:
        base_eta = symplectic_genus(base).eta
        if base_eta == 0:
            return SphericalVerdict(True, MULTIPLE_OF_ETA_ZERO, res.eta, p, base)
    return SphericalVerdict(False, NOT_SPHERICAL, res.eta, p, base)


def is_spherical(e: CohClass) -> bool:
    return spherical_verdict(e).spherical
