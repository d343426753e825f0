"""Realizable lattice automorphisms: generator moves and words.

Every move here denotes an automorphism realized by an orientation-
preserving diffeomorphism: permutations and sign flips of the Ei, -Id,
and reflections along classes certified to be represented by embedded
spheres of square -1 or -2.  A word is an ordered sequence of moves and
acts left-to-right (the first move is applied first); its matrix acts on
stored coefficient column vectors, so matrix(word) = M_k ... M_1.

``reflect`` is available as raw arithmetic for any class of square -1 or
-2, but only whitelisted reflection classes may enter a word: a word is a
certificate of diffeomorphism realizability, and for rational models with
n >= 10 not every isometry is realized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    KIND_RATIONAL,
    KIND_RULED,
    KIND_S2XS2,
    CohClass,
    Model,
    format_class,
    gram_matrix,
    pair,
    parse_class,
    square,
)

SWAP = "swap"
FLIP = "flip"
NEGID = "negid"
REFLECT = "reflect"

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Move:
    kind: str
    i: int = 0
    j: int = 0
    gamma: CohClass | None = None

    def __str__(self) -> str:
        if self.kind == SWAP:
            return f"swap({self.i},{self.j})"
        if self.kind == FLIP:
            return f"flip({self.i})"
        if self.kind == NEGID:
            return "negid"
        return f"reflect({format_class(self.gamma)})"


def swap_e(i: int, j: int) -> Move:
    if i == j or i < 1 or j < 1:
        raise ValueError(f"swap needs two distinct indices >= 1, got ({i}, {j})")
    return Move(SWAP, min(i, j), max(i, j))


def flip_e(i: int) -> Move:
    if i < 1:
        raise ValueError(f"flip needs an index >= 1, got {i}")
    return Move(FLIP, i)


def neg_id() -> Move:
    return Move(NEGID)


def is_realizable_reflection(model: Model, gamma: CohClass) -> bool:
    """Whether gamma is in the certified sphere-class inventory.

    Rational: Ei, H-Ei-Ej, H-Ei-Ej-Ek.  Ruled: rT+eps*Ei (any r, eps) and
    T+Ei-Ej.  S2xS2: x-y (the factor swap).  Signs are immaterial since
    R(-gamma) = R(gamma).
    """
    if gamma.model != model:
        return False
    if square(gamma) not in (-1, -2):
        return False
    c = gamma.coeffs
    if model.kind == KIND_RATIONAL:
        a, bs = c[0], c[1:]
        if a == 0:
            return sum(abs(b) == 1 for b in bs) == 1 and sum(abs(b) for b in bs) == 1
        if abs(a) == 1:
            k = sum(1 for b in bs if b == a)
            return k in (2, 3) and all(b in (0, a) for b in bs)
        return False
    if model.kind == KIND_RULED:
        a, cs = c[0], c[2:]
        if a != 0:
            return False
        nonzero = [x for x in cs if x != 0]
        if len(nonzero) == 1 and abs(nonzero[0]) == 1:
            return True  # rT + eps*Ei family, any T coefficient
        if len(nonzero) == 2 and sorted(nonzero) == [-1, 1] and abs(c[1]) == 1:
            return True  # T + Ei - Ej family
        return False
    return tuple(c) in ((1, -1), (-1, 1))


def reflection(model: Model, gamma: CohClass | str) -> Move:
    """A whitelisted reflection move; raises if gamma is not certified."""
    if isinstance(gamma, str):
        gamma = parse_class(gamma, model)
    if square(gamma) not in (-1, -2):
        raise ValueError(
            f"reflections need square -1 or -2, got {square(gamma)} for {gamma}")
    if not is_realizable_reflection(model, gamma):
        raise ValueError(
            f"{gamma} is not in the certified sphere-class inventory for {model}")
    return Move(REFLECT, gamma=gamma)


def reflect(gamma: CohClass, beta: CohClass) -> CohClass:
    """Raw reflection arithmetic: beta + (2(gamma.beta)/|gamma.gamma|) gamma."""
    sq = square(gamma)
    if sq not in (-1, -2):
        raise ValueError(f"reflections need square -1 or -2, got {sq}")
    k = 2 * pair(gamma, beta) // (-sq)
    return beta + k * gamma


def apply_move(move: Move, x: CohClass) -> CohClass:
    model = x.model
    if move.kind == NEGID:
        return -x
    if move.kind == REFLECT:
        if move.gamma.model != model:
            raise ValueError("reflection class belongs to a different model")
        return reflect(move.gamma, x)
    off = model.e_offset
    if move.kind == FLIP:
        if move.i > model.n:
            raise ValueError(f"flip index {move.i} out of range for {model}")
        raw = list(x.coeffs)
        raw[off + move.i - 1] = -raw[off + move.i - 1]
        return CohClass(model, tuple(raw))
    if move.kind == SWAP:
        if move.j > model.n:
            raise ValueError(f"swap index {move.j} out of range for {model}")
        raw = list(x.coeffs)
        a, b = off + move.i - 1, off + move.j - 1
        raw[a], raw[b] = raw[b], raw[a]
        return CohClass(model, tuple(raw))
    raise ValueError(f"unknown move kind {move.kind!r}")


def move_matrix(model: Model, move: Move) -> Matrix:
    """Matrix of the move acting on stored coefficient columns."""
    r = model.rank
    cols = []
    for k in range(r):
        unit = CohClass(model, tuple(1 if t == k else 0 for t in range(r)))
        cols.append(apply_move(move, unit).coeffs)
    return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class AutoWord:
    """A composable word of realizable moves with its composite matrix."""

    model: Model
    moves: tuple[Move, ...]
    matrix: Matrix

    def __len__(self) -> int:
        return len(self.moves)

    def __str__(self) -> str:
        return " ".join(str(m) for m in self.moves) if self.moves else "identity"


def make_word(model: Model, moves: list[Move] | tuple[Move, ...]) -> AutoWord:
    """Build a word, validating every move against the realizability whitelist."""
    mat = _identity(model.rank)
    for m in moves:
        if m.kind == REFLECT and not is_realizable_reflection(model, m.gamma):
            raise ValueError(f"{m.gamma} cannot enter a word on {model}")
        if m.kind in (SWAP, FLIP):
            top = m.j if m.kind == SWAP else m.i
            if top > model.n:
                raise ValueError(f"{m} is out of range for {model}")
        mat = _mat_mul(move_matrix(model, m), mat)
    return AutoWord(model, tuple(moves), mat)


def identity_word(model: Model) -> AutoWord:
    return AutoWord(model, (), _identity(model.rank))


def compose(w1: AutoWord, w2: AutoWord) -> AutoWord:
    """The word doing w1 first, then w2."""
    if w1.model != w2.model:
        raise ValueError(f"model mismatch: {w1.model} vs {w2.model}")
    return AutoWord(w1.model, w1.moves + w2.moves, _mat_mul(w2.matrix, w1.matrix))


def invert(w: AutoWord) -> AutoWord:
    """Every generator move is an involution, so reversing the moves inverts."""
    return make_word(w.model, tuple(reversed(w.moves)))


def apply_word(w: AutoWord, x: CohClass) -> CohClass:
    if w.model != x.model:
        raise ValueError(f"model mismatch: {w.model} vs {x.model}")
    m = w.matrix
    return CohClass(x.model, tuple(
        sum(m[i][j] * x.coeffs[j] for j in range(len(x.coeffs)))
        for i in range(len(x.coeffs))))


def verify_isometry(w: AutoWord) -> bool:
    """True iff the word's matrix preserves the Gram matrix: M^T G M = G."""
    g = gram_matrix(w.model)
    m = w.matrix
    n = len(m)
    mt = tuple(tuple(m[j][i] for j in range(n)) for i in range(n))
    return _mat_mul(_mat_mul(mt, g), m) == g


def move_to_json(move: Move) -> dict:
    if move.kind == SWAP:
        return {"swap": [move.i, move.j]}
    if move.kind == FLIP:
        return {"flip": move.i}
    if move.kind == NEGID:
        return {"negid": True}
    return {"reflect": format_class(move.gamma)}


def word_to_json(w: AutoWord) -> list[dict]:
    return [move_to_json(m) for m in w.moves]


def word_from_json(model: Model, data: list[dict]) -> AutoWord:
    moves = []
    for entry in data:
        if "swap" in entry:
            moves.append(swap_e(*entry["swap"]))
        elif "flip" in entry:
            moves.append(flip_e(entry["flip"]))
        elif "negid" in entry:
            moves.append(neg_id())
        elif "reflect" in entry:
            moves.append(reflection(model, entry["reflect"]))
        else:
            raise ValueError(f"unknown move entry {entry!r}")
    return make_word(model, moves)
