"""Diffeomorphism orbits of sphere classes of square at least -1.

The group action preserves square, divisibility and type (ordinary vs
characteristic), and on sphere classes of square >= -1 it is transitive
on each stratum, so the triple decides orbit equivalence and a canonical
representative can be written down per stratum:

rational (n >= 1):
    square -1:   E1, or H-E1-E2 for the characteristic orbit at b^- = 2
    square 0:    k(H-E1), one orbit per divisibility k
    odd s >= 1:  ((s+1)/2)H - ((s-1)/2)E1
    s = 4, div 2: 2H
    even s >= 2 otherwise: ((s+2)/2)H - (s/2)E1 - E2 (needs n >= 2)
ruled:   kT for square 0; E1 / T-E1 at square -1 (two orbits at b^- = 2)
CP^2:    H and 2H
S^2xS^2: x + l*y for square 2l > 0; k*x for square 0, one per divisibility
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    KIND_RATIONAL,
    KIND_RULED,
    KIND_S2XS2,
    CohClass,
    Model,
    class_type,
    divisibility,
    format_class,
    square,
)
from .reduction import (
    EXC_E1,
    EXC_H_E1_E2,
    EXC_T_E1,
    EXCEPTIONAL,
    reduce_class,
)
from .spheres import spherical_verdict


@dataclass(frozen=True)
class OrbitRep:
    rep: CohClass
    square: int
    divisibility: int
    type: str

    def to_json(self) -> dict:
        return {
            "rep": format_class(self.rep),
            "square": str(self.square),
            "divisibility": str(self.divisibility),
            "type": self.type,
        }


def invariant_triple(e: CohClass) -> tuple[int, int, str]:
    """(square, divisibility, type): a complete orbit invariant on sphere
    classes of square >= -1."""
    return square(e), divisibility(e), class_type(e)


def _stored(model: Model, lead: tuple[int, ...], e: tuple[int, ...] = ()) -> CohClass:
    head = list(lead) + [0] * (model.e_offset - len(lead))
    tail = list(e) + [0] * (model.n - len(e))
    return CohClass(model, tuple(head + tail))


def canonical_rep(e: CohClass) -> OrbitRep:
    """The canonical representative of the orbit of a sphere class."""
    verdict = spherical_verdict(e)
    if not verdict.spherical:
        raise ValueError(f"{format_class(e)} is not spherically representable")
    model = e.model
    s, p, typ = invariant_triple(e)

    if model.kind == KIND_S2XS2:
        if s == 0:
            rep = CohClass(model, (p, 0))
        else:
            rep = CohClass(model, (1, s // 2))
    elif model.kind == KIND_RATIONAL and model.n == 0:
        rep = CohClass(model, (1,)) if s == 1 else CohClass(model, (2,))
    elif model.kind == KIND_RULED:
        if s >= 0:
            rep = _stored(model, (0, p))  # kT with k the divisibility
        else:
            kind = reduce_class(e).exceptional
            rep = (_stored(model, (0, 1), (1,)) if kind == EXC_T_E1
                   else _stored(model, (0, 0), (-1,)))
    else:  # rational, n >= 1
        rep = _rational_rep(model, e, s, p)

    out = OrbitRep(rep, s, p, typ)
    assert invariant_triple(rep) == (s, p, typ), \
        f"representative {format_class(rep)} has a different invariant triple"
    return out


def _rational_rep(model: Model, e: CohClass, s: int, p: int) -> CohClass:
    if s == -1:
        kind = reduce_class(e).exceptional
        if kind == EXC_H_E1_E2:
            return CohClass(model, (1, 1, 1))
        assert kind == EXC_E1
        return _stored(model, (0,), (-1,))
    if s == 0:
        return _stored(model, (p,), (p,))
    if s % 2 == 1:
        return _stored(model, ((s + 1) // 2,), ((s - 1) // 2,))
    if s == 4 and p == 2:
        return _stored(model, (2,))
    if model.n < 2:
        raise ValueError(
            f"the square {s} representative needs two blow-ups, {model} has {model.n}")
    return _stored(model, ((s + 2) // 2,), (s // 2, 1))


def same_orbit(e1: CohClass, e2: CohClass) -> bool:
    """Orbit equivalence of two sphere classes of square >= -1: the
    invariant triples agree."""
    if e1.model != e2.model:
        raise ValueError(f"model mismatch: {e1.model} vs {e2.model}")
    for e in (e1, e2):
        if not spherical_verdict(e).spherical:
            raise ValueError(f"{format_class(e)} is not spherically representable")
    return invariant_triple(e1) == invariant_triple(e2)


@dataclass(frozen=True)
class OrbitCensus:
    """Orbit count, with representatives, for one square on one model.

    ``count`` is None for the countably infinite square-zero family; the
    representatives then sample the family described by ``family``.
    """

    model: Model
    square: int
    count: int | None
    representatives: tuple[CohClass, ...]
    family: str | None = None
    note: str | None = None

    def to_json(self) -> dict:
        return {
            "model": self.model.spec(),
            "square": str(self.square),
            "orbit_count": "infinite" if self.count is None else str(self.count),
            "representatives": [format_class(r) for r in self.representatives],
            "family": self.family,
            "note": self.note,
        }


def orbit_census(model: Model, s: int) -> OrbitCensus:
    """How many orbits of sphere classes have square s, with representatives."""
    if s < -1:
        raise ValueError(f"the census covers squares >= -1, got {s}")

    def census(count, reps, family=None, note=None):
        return OrbitCensus(model, s, count, tuple(reps), family, note)

    if model.kind == KIND_S2XS2:
        if s % 2 == 1 or s == -1:
            return census(0, [], note="the S2xS2 lattice is even")
        if s == 0:
            return census(None, [CohClass(model, (k, 0)) for k in (1, 2, 3)],
                          family="kx, one orbit per divisibility k >= 1")
        return census(1, [CohClass(model, (1, s // 2))])

    if model.kind == KIND_RATIONAL and model.n == 0:
        if s == 1:
            return census(1, [CohClass(model, (1,))])
        if s == 4:
            return census(1, [CohClass(model, (2,))])
        return census(0, [], note="CP^2 carries only +-H and +-2H")

    if model.kind == KIND_RULED:
        if s == -1:
            if model.n == 0:
                return census(0, [], note="the minimal ruled lattice has no "
                                          "square -1 class")
            if model.b_minus == 2:
                return census(2, [_stored(model, (0, 0), (-1,)),
                                  _stored(model, (0, 1), (1,))],
                              note="one ordinary and one characteristic orbit")
            return census(1, [_stored(model, (0, 0), (-1,))])
        if s == 0:
            return census(None, [_stored(model, (0, k)) for k in (1, 2, 3)],
                          family="kT, one orbit per divisibility k >= 1")
        return census(0, [], note="only +-kT is spherically representable "
                                  "with non-negative square")

    # rational, n >= 1
    if s == -1:
        if model.b_minus == 2:
            return census(2, [_stored(model, (0,), (-1,)), CohClass(model, (1, 1, 1))],
                          note="one ordinary and one characteristic orbit")
        return census(1, [_stored(model, (0,), (-1,))])
    if s == 0:
        return census(None, [_stored(model, (k,), (k,)) for k in (1, 2, 3)],
                      family="k(H-E1), one orbit per divisibility k >= 1")
    if s % 2 == 1:
        return census(1, [_stored(model, ((s + 1) // 2,), ((s - 1) // 2,))])
    if s == 4:
        if model.n >= 2:
            return census(2, [_stored(model, (2,)),
                              _stored(model, (3,), (2, 1))],
                          note="divisibility 2 and divisibility 1")
        return census(1, [_stored(model, (2,))])
    if model.n >= 2:
        return census(1, [_stored(model, ((s + 2) // 2,), (s // 2, 1))])
    return census(0, [], note=f"square {s} sphere classes need two blow-ups")
