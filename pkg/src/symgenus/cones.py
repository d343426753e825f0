"""Bounded enumeration of K0-exceptional classes and cone membership.

The K0-exceptional classes are the sphere classes F of square -1 with
K0.F = -1.  On a ruled model the set is exactly {E1..En, T-E1..T-En}.
On a rational model F = tH - sum si Ei must satisfy

    sum si = 3t - 1,     sum si^2 = t^2 + 1,     0 <= si <= t  (t >= 1),

plus the t = 0 family F = Ei; the enumeration walks t upward, solving the
two constraints by a descending partition search and expanding each
multiset over all index assignments.  The set is infinite for rational
n >= 3, so every verdict carries the leading-coefficient bound it used.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lattice import (
    KIND_RATIONAL,
    KIND_RULED,
    CohClass,
    Model,
    canonical_k0,
    e_class,
    format_class,
    pair,
    square,
)
from .reduction import is_reduced

IN_UP_TO_BOUND = "in-up-to-bound"
VIOLATED_BY = "violated-by"
NEGATIVE_ON_MINUS_K0 = "negative-on-minus-k0"


def _partitions(total: int, sq_total: int, max_part: int, slots: int):
    """Descending tuples of positive parts <= max_part filling <= slots,
    with the given sum and sum of squares."""
    if total == 0:
        if sq_total == 0:
            yield ()
        return
    if slots == 0 or max_part == 0 or sq_total <= 0:
        return
    # feasibility: slots parts of size <= max_part must reach the sum,
    # and the squares cannot overshoot or undershoot Cauchy-Schwarz.
    if total > max_part * slots or sq_total > max_part * total:
        return
    if sq_total * slots < total * total:
        return
    for part in range(min(max_part, total), 0, -1):
        if part * part > sq_total:
            continue
        for rest in _partitions(total - part, sq_total - part * part, part, slots - 1):
            yield (part,) + rest


def _distinct_assignments(parts: tuple[int, ...], n: int):
    """All length-n tuples using the multiset `parts` (padded with zeros),
    in deterministic order without duplicates."""
    counts: dict[int, int] = {0: n - len(parts)}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1

    values = sorted(counts, reverse=True)

    def rec(slots_left: int):
        if slots_left == 0:
            yield ()
            return
        for v in values:
            if counts[v] == 0:
                continue
            counts[v] -= 1
            for rest in rec(slots_left - 1):
                yield (v,) + rest
            counts[v] += 1

    yield from rec(n)


@lru_cache(maxsize=None)
def exceptional_k0_classes(model: Model, t_max: int | None = None) -> tuple[CohClass, ...]:
    """The K0-exceptional classes, exact on ruled models, bounded by the
    leading coefficient t <= t_max on rational ones."""
    if model.kind == KIND_RULED:
        if model.n < 1:
            return ()
        t_minus = []
        for i in range(1, model.n + 1):
            coeffs = [0, 1] + [0] * model.n
            coeffs[1 + i] = 1
            t_minus.append(CohClass(model, tuple(coeffs)))  # T - Ei
        return tuple(e_class(model, i) for i in range(1, model.n + 1)) + tuple(t_minus)
    if model.kind != KIND_RATIONAL:
        raise ValueError(f"K0-exceptional enumeration is unsupported on {model}")
    if t_max is None or t_max < 0:
        raise ValueError("rational enumeration needs t_max >= 0")
    n = model.n
    out: list[CohClass] = [e_class(model, i) for i in range(1, n + 1)]
    for t in range(1, t_max + 1):
        for parts in _partitions(3 * t - 1, t * t + 1, t, n):
            for assignment in _distinct_assignments(parts, n):
                out.append(CohClass(model, (t,) + assignment))
    return tuple(sorted(out, key=lambda f: f.coeffs))


@dataclass(frozen=True)
class PairingCheck:
    passed: bool
    violator: CohClass | None
    t_max: int | None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violator": format_class(self.violator) if self.violator else None,
            "t_max": str(self.t_max) if self.t_max is not None else None,
        }


def reduced_pairing_check(e: CohClass, t_max: int | None = 20) -> PairingCheck:
    """A reduced class pairs non-negatively with every K0-exceptional
    class; check it against the (bounded) enumeration."""
    if not is_reduced(e):
        raise ValueError(f"reduced_pairing_check needs a reduced class, "
                         f"got {format_class(e)}")
    bound = None if e.model.kind == KIND_RULED else t_max
    for f in exceptional_k0_classes(e.model, bound):
        if pair(e, f) < 0:
            return PairingCheck(False, f, bound)
    return PairingCheck(True, None, bound)


@dataclass(frozen=True)
class PcellVerdict:
    status: str
    witness: CohClass | None
    t_max: int | None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": format_class(self.witness) if self.witness else None,
            "t_max": str(self.t_max) if self.t_max is not None else None,
        }


def in_pcell_k0(e: CohClass, t_max: int | None = 20) -> PcellVerdict:
    """Membership of a positive-square class in the K0 P-cell: pairing
    >= 0 against -K0 and against every K0-exceptional class found within
    the bound.  No completeness is claimed beyond t_max."""
    if square(e) <= 0:
        raise ValueError(f"P-cell membership needs positive square, got {square(e)}")
    k0 = canonical_k0(e.model)
    bound = None if e.model.kind == KIND_RULED else t_max
    if pair(e, -k0) < 0:
        return PcellVerdict(NEGATIVE_ON_MINUS_K0, None, bound)
    for f in exceptional_k0_classes(e.model, bound):
        if pair(e, f) < 0:
            return PcellVerdict(VIOLATED_BY, f, bound)
    return PcellVerdict(IN_UP_TO_BOUND, None, bound)
