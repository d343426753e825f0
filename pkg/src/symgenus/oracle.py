"""Brute-force verification: breadth-first search over generator words.

The BFS generator set equals the word whitelist, so every orbit it finds
is realized by diffeomorphisms; it is a sound lower bound on the true
orbits (possibly incomplete within its bounds), which is the right
direction for validating positive reachability claims.  Negative claims
(two classes are in different orbits) are validated by the invariant
triple instead.

``verify_reduction`` re-derives every reduction on a coefficient box from
first principles: the word must be an isometry, must transport the input
to the normal form, the normal form must be genuinely reduced or a
genuine exceptional form, the invariants must be preserved, and the
normal form must be reachable by exhaustive search.  ``verify_orbit_reps``
does the same for canonical orbit representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

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
from .moves import (
    FLIP,
    NEGID,
    REFLECT,
    SWAP,
    Move,
    apply_word,
    flip_e,
    neg_id,
    reflection,
    swap_e,
    verify_isometry,
)
from .orbits import canonical_rep, invariant_triple
from .reduction import (
    EXCEPTIONAL,
    LOCALLY_REDUCED,
    REDUCED,
    exceptional_class,
    is_reduced,
    reduce_class,
)
from .spheres import spherical_verdict


def generator_inventory(model: Model, r_max: int = 4) -> tuple[Move, ...]:
    """The finite generator set used for search: all whitelisted moves,
    with the ruled rT+-Ei family truncated at r <= r_max."""
    moves: list[Move] = [neg_id()]
    n = model.n
    if model.kind == KIND_S2XS2:
        moves.append(reflection(model, CohClass(model, (1, -1))))
        return tuple(moves)
    moves.extend(flip_e(i) for i in range(1, n + 1))
    moves.extend(swap_e(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    if model.kind == KIND_RATIONAL:
        for i, j in itertools.combinations(range(1, n + 1), 2):
            coeffs = [1] + [0] * n
            coeffs[i] = coeffs[j] = 1
            moves.append(reflection(model, CohClass(model, tuple(coeffs))))
        for i, j, k in itertools.combinations(range(1, n + 1), 3):
            coeffs = [1] + [0] * n
            coeffs[i] = coeffs[j] = coeffs[k] = 1
            moves.append(reflection(model, CohClass(model, tuple(coeffs))))
    else:
        for i in range(1, n + 1):
            for r in range(0, r_max + 1):
                for eps in (1, -1):
                    coeffs = [0, r] + [0] * n
                    coeffs[1 + i] = -eps
                    moves.append(reflection(model, CohClass(model, tuple(coeffs))))
        for i, j in itertools.permutations(range(1, n + 1), 2):
            coeffs = [0, 1] + [0] * n
            coeffs[1 + i] = -1
            coeffs[1 + j] = 1
            moves.append(reflection(model, CohClass(model, tuple(coeffs))))
    return tuple(moves)


def _move_fn(model: Model, move: Move):
    """Compile one move to a tuple -> tuple closure (stored coordinates)."""
    rank = model.rank
    if move.kind == NEGID:
        return lambda t: tuple(-c for c in t)
    if move.kind == FLIP:
        k = model.e_offset + move.i - 1
        return lambda t: t[:k] + (-t[k],) + t[k + 1:]
    if move.kind == SWAP:
        a = model.e_offset + move.i - 1
        b = model.e_offset + move.j - 1

        def do_swap(t, a=a, b=b):
            lst = list(t)
            lst[a], lst[b] = lst[b], lst[a]
            return tuple(lst)

        return do_swap
    g = move.gamma.coeffs
    denom = -square(move.gamma)
    if model.kind == KIND_RATIONAL:
        def pairing(t, g=g):
            return g[0] * t[0] - sum(p * q for p, q in zip(g[1:], t[1:]))
    else:
        def pairing(t, g=g):
            return g[0] * t[1] + g[1] * t[0] - sum(p * q for p, q in zip(g[2:], t[2:]))

    def do_reflect(t, g=g, denom=denom, rank=rank):
        k = 2 * pairing(t) // denom
        return tuple(t[idx] + k * g[idx] for idx in range(rank))

    return do_reflect


def bfs_orbit(e: CohClass, coeff_bound: int, depth: int,
              r_max: int | None = None) -> frozenset[CohClass]:
    """All classes reachable from e by at most `depth` generator moves
    whose intermediate coefficients stay within coeff_bound."""
    if coeff_bound <= 0 or depth <= 0:
        raise ValueError("bfs_orbit needs positive bounds")
    model = e.model
    tuples = _bfs_tuples(model, e.coeffs, coeff_bound, depth,
                         r_max if r_max is not None else coeff_bound)
    return frozenset(CohClass(model, t) for t in tuples)


def _bfs_tuples(model: Model, start: tuple[int, ...], coeff_bound: int,
                depth: int, r_max: int) -> set[tuple[int, ...]]:
    fns = [_move_fn(model, m) for m in generator_inventory(model, r_max)]
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        new: list[tuple[int, ...]] = []
        for state in frontier:
            for fn in fns:
                out = fn(state)
                if out in seen or any(abs(c) > coeff_bound for c in out):
                    continue
                seen.add(out)
                new.append(out)
        if not new:
            break
        frontier = sorted(new)
    return seen


def _word_trajectory(e: CohClass, moves) -> tuple[int, int]:
    """(max |coefficient| along the path, max ruled reflection r used)."""
    from .moves import apply_move

    cur = e
    peak = max(abs(c) for c in e.coeffs)
    r_peak = 0
    for m in moves:
        if m.kind == REFLECT and e.model.kind == KIND_RULED:
            r_peak = max(r_peak, abs(m.gamma.coeffs[1]))
        cur = apply_move(m, cur)
        peak = max(peak, max(abs(c) for c in cur.coeffs))
    return peak, r_peak


def iter_classes(model: Model, coeff_bound: int):
    """All nonzero classes with every |coefficient| <= coeff_bound, in
    deterministic order."""
    ranges = [range(-coeff_bound, coeff_bound + 1)] * model.rank
    for coeffs in itertools.product(*ranges):
        if any(coeffs):
            yield CohClass(model, coeffs)


@dataclass(frozen=True)
class OracleReport:
    model: Model
    description: str
    checked: int
    failures: tuple[str, ...]
    orbit_counts: dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "model": self.model.spec(),
            "description": self.description,
            "checked": str(self.checked),
            "failures": list(self.failures),
            "orbit_counts": {str(k): str(v) for k, v in sorted(self.orbit_counts.items())},
            "passed": self.passed,
        }


def verify_reduction(model: Model, coeff_bound: int, min_depth: int = 1) -> OracleReport:
    """Exhaustively re-check reduce_class on every class of square >= -2
    within the coefficient box."""
    failures: list[str] = []
    checked = 0
    groups: dict[tuple[int, ...], list[tuple[CohClass, int, int, int]]] = {}

    for e in iter_classes(model, coeff_bound):
        if square(e) < -2:
            continue
        checked += 1
        name = format_class(e)
        res = reduce_class(e)
        if not verify_isometry(res.word):
            failures.append(f"{name}: word is not an isometry")
            continue
        if apply_word(res.word, e) != res.normal_form:
            failures.append(f"{name}: word does not transport to the normal form")
            continue
        if res.kind == LOCALLY_REDUCED:
            failures.append(f"{name}: square >= -2 ended only locally reduced")
            continue
        if res.kind == REDUCED and not is_reduced(res.normal_form):
            failures.append(f"{name}: claimed reduced form is not reduced")
            continue
        if res.kind == EXCEPTIONAL and \
                res.normal_form != exceptional_class(model, res.exceptional):
            failures.append(f"{name}: claimed exceptional form is off-pattern")
            continue
        if (square(e), divisibility(e), class_type(e)) != \
                (square(res.normal_form), divisibility(res.normal_form),
                 class_type(res.normal_form)):
            failures.append(f"{name}: reduction changed an invariant")
            continue
        peak, r_peak = _word_trajectory(e, res.word.moves)
        groups.setdefault(res.normal_form.coeffs, []).append(
            (e, peak, len(res.word.moves), r_peak))

    for nf_coeffs, items in sorted(groups.items()):
        box = max(peak for _, peak, _, _ in items)
        depth = max(min_depth, 1, max(ln for _, _, ln, _ in items))
        r_max = max(r for _, _, _, r in items)
        orbit = _bfs_tuples(model, nf_coeffs, box, depth, max(r_max, 1))
        for e, _, _, _ in items:
            if e.coeffs not in orbit:
                failures.append(
                    f"{format_class(e)}: BFS cannot reach its normal form "
                    f"{format_class(CohClass(model, nf_coeffs))}")

    return OracleReport(model, f"verify_reduction bound={coeff_bound}",
                        checked, tuple(failures))


def verify_orbit_reps(model: Model, coeff_bound: int, min_depth: int = 8) -> OracleReport:
    """Exhaustively re-check canonical representatives on every spherical
    class of square >= -1 within the coefficient box."""
    failures: list[str] = []
    checked = 0
    groups: dict[tuple[int, ...], list[CohClass]] = {}
    rep_by_triple: dict[tuple, tuple[int, ...]] = {}
    traj: dict[tuple[int, ...], tuple[int, int, int]] = {}

    for e in iter_classes(model, coeff_bound):
        if square(e) < -1 or not spherical_verdict(e).spherical:
            continue
        checked += 1
        name = format_class(e)
        rep = canonical_rep(e)
        triple = invariant_triple(e)
        if (rep.square, rep.divisibility, rep.type) != triple:
            failures.append(f"{name}: representative changes the invariant triple")
            continue
        if not spherical_verdict(rep.rep).spherical:
            failures.append(f"{name}: representative is not spherical")
            continue
        prev = rep_by_triple.setdefault(triple, rep.rep.coeffs)
        if prev != rep.rep.coeffs:
            failures.append(f"{name}: two representatives for one triple")
            continue
        res = reduce_class(e) if model.n >= 1 and model.kind != KIND_S2XS2 else None
        peak, r_peak = (_word_trajectory(e, res.word.moves) if res is not None
                        else (max(abs(c) for c in e.coeffs), 0))
        key = rep.rep.coeffs
        groups.setdefault(key, []).append(e)
        old = traj.get(key, (0, 0, 0))
        traj[key] = (max(old[0], peak, max(abs(c) for c in key)),
                     max(old[1], (len(res.word.moves) if res is not None else 0)),
                     max(old[2], r_peak))

    orbit_sets: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
    for rep_coeffs, members in sorted(groups.items()):
        peak, wordlen, r_peak = traj[rep_coeffs]
        box = peak + 2
        depth = max(wordlen + 4, min_depth)
        orbit = _bfs_tuples(model, rep_coeffs, box, depth, max(r_peak, 2))
        orbit_sets[rep_coeffs] = orbit
        rep_cls = CohClass(model, rep_coeffs)
        for e in members:
            if e.coeffs not in orbit:
                failures.append(f"{format_class(e)}: BFS cannot reach the "
                                f"representative {format_class(rep_cls)}")
        triple = invariant_triple(rep_cls)
        for state in orbit:
            cls = CohClass(model, state)
            if invariant_triple(cls) != triple:
                failures.append(f"{format_class(cls)}: orbit member with a "
                                f"different invariant triple")
                break
            if not spherical_verdict(cls).spherical:
                failures.append(f"{format_class(cls)}: orbit member is not spherical")
                break
            if canonical_rep(cls).rep.coeffs != rep_coeffs:
                failures.append(f"{format_class(cls)}: canonical_rep is not "
                                f"constant on the BFS orbit")
                break

    reps = list(orbit_sets)
    for a, b in itertools.combinations(reps, 2):
        if orbit_sets[a] & orbit_sets[b]:
            failures.append(
                f"orbits of {format_class(CohClass(model, a))} and "
                f"{format_class(CohClass(model, b))} intersect")

    counts: dict[int, int] = {}
    for triple in rep_by_triple:
        counts[triple[0]] = counts.get(triple[0], 0) + 1

    return OracleReport(model, f"verify_orbit_reps bound={coeff_bound}",
                        checked, tuple(failures), counts)
