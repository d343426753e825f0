"""Reduction to normal form under realizable automorphisms.

Every class on a non-minimal rational or ruled model is transported by an
explicit word of generator moves to either

- a *reduced* class (rational: b1 >= ... >= bn >= 0 and a >= b1+b2+b3;
  ruled: a >= 0, c1 >= ... >= cn >= 0 and a >= ci), or
- one of six *exceptional* normal forms of square -1 or -2:
  E1, H-E1-E2 (rational, b^- = 2), T-E1 (ruled, b^- = 2), E1+E2,
  H-E1-E2-E3 (rational, b^- = 3), T-E1-E2 (ruled, b^- = 3).

The rational engine is the Cremona move, reflection along H-E1-E2-E3,
which maps the leading coefficient a to 2a - (b1+b2+b3); it is applied
while |a| strictly decreases, which forces termination.  On Rational(2)
the reflection along H-E1-E2 plays the same role with measure
3a - 2(b1+b2).  On ruled models a single reflection along rT+eps*Ei per
index brings |ci| <= a.

Classes of square < -2 are outside the guarantee; the loop stops at a
normalized class once no move decreases the measure and reports it as
locally reduced.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    KIND_RATIONAL,
    KIND_RULED,
    CohClass,
    Model,
    format_class,
    square,
)
from .moves import (
    AutoWord,
    Move,
    apply_move,
    flip_e,
    identity_word,
    make_word,
    neg_id,
    reflection,
    swap_e,
    word_to_json,
)

REDUCED = "reduced"
EXCEPTIONAL = "exceptional"
LOCALLY_REDUCED = "locally-reduced"

EXC_E1 = "E1"
EXC_H_E1_E2 = "H-E1-E2"
EXC_T_E1 = "T-E1"
EXC_E1_E2 = "E1+E2"
EXC_H_E1_E2_E3 = "H-E1-E2-E3"
EXC_T_E1_E2 = "T-E1-E2"

EXCEPTIONAL_KINDS = (
    EXC_E1, EXC_H_E1_E2, EXC_T_E1, EXC_E1_E2, EXC_H_E1_E2_E3, EXC_T_E1_E2,
)


@dataclass(frozen=True)
class ReductionResult:
    input: CohClass
    normal_form: CohClass
    kind: str
    exceptional: str | None
    word: AutoWord

    def to_json(self) -> dict:
        return {
            "input": format_class(self.input),
            "normal_form": format_class(self.normal_form),
            "kind": self.kind,
            "exceptional": self.exceptional,
            "word": word_to_json(self.word),
        }


def _require_reducible_model(model: Model) -> None:
    if model.kind not in (KIND_RATIONAL, KIND_RULED) or model.n < 1:
        raise ValueError(
            f"reduction needs a non-minimal rational or ruled model, got {model}")


def is_reduced(e: CohClass) -> bool:
    """Definition of a reduced class; see the module docstring."""
    _require_reducible_model(e.model)
    c = e.coeffs
    if e.model.kind == KIND_RATIONAL:
        a, bs = c[0], c[1:]
        if any(bs[i] < bs[i + 1] for i in range(len(bs) - 1)) or bs[-1] < 0:
            return False
        padded = bs + (0, 0, 0)
        return a >= padded[0] + padded[1] + padded[2]
    a, cs = c[0], c[2:]
    if a < 0:
        return False
    if any(cs[i] < cs[i + 1] for i in range(len(cs) - 1)) or cs[-1] < 0:
        return False
    return a >= cs[0]


def normalize(e: CohClass) -> tuple[CohClass, AutoWord]:
    """Arrange a >= 0 (via -Id) and the exceptional part sorted descending
    and non-negative (via flips and swaps).  Emits no moves when already
    in shape."""
    _require_reducible_model(e.model)
    moves: list[Move] = []
    cur = e

    def emit(m: Move) -> None:
        nonlocal cur
        cur = apply_move(m, cur)
        moves.append(m)

    if cur.coeffs[0] < 0:
        emit(neg_id())
    off = cur.model.e_offset
    for i in range(1, cur.model.n + 1):
        if cur.coeffs[off + i - 1] < 0:
            emit(flip_e(i))
    # selection sort, recording transpositions
    for i in range(1, cur.model.n + 1):
        tail = cur.coeffs[off + i - 1:]
        best = max(range(len(tail)), key=lambda k: tail[k])
        if tail[best] > tail[0]:
            emit(swap_e(i, i + best))
    return cur, make_word(e.model, moves)


def exceptional_class(model: Model, kind: str) -> CohClass:
    """The literal normal-form class for an exceptional kind, if it is a
    normal form on this model (the characteristic forms only exist at the
    matching b^-)."""
    _require_reducible_model(model)
    n = model.n
    rat = model.kind == KIND_RATIONAL
    if kind == EXC_E1:
        return CohClass(model, _stored(model, e=(-1,)))
    if kind == EXC_E1_E2 and n >= 2:
        return CohClass(model, _stored(model, e=(-1, -1)))
    if rat and kind == EXC_H_E1_E2 and n == 2:
        return CohClass(model, (1, 1, 1))
    if rat and kind == EXC_H_E1_E2_E3 and n == 3:
        return CohClass(model, (1, 1, 1, 1))
    if not rat and kind == EXC_T_E1 and n == 1:
        return CohClass(model, (0, 1, 1))
    if not rat and kind == EXC_T_E1_E2 and n == 2:
        return CohClass(model, (0, 1, 1, 1))
    raise ValueError(f"{kind} is not an exceptional normal form on {model}")


def _stored(model: Model, e: tuple[int, ...] = (), lead: tuple[int, ...] = ()) -> tuple[int, ...]:
    head = list(lead) + [0] * (model.e_offset - len(lead))
    tail = list(e) + [0] * (model.n - len(e))
    return tuple(head + tail)


def _exact_exceptional(e: CohClass) -> str | None:
    model = e.model
    for kind in EXCEPTIONAL_KINDS:
        try:
            nf = exceptional_class(model, kind)
        except ValueError:
            continue
        if e == nf:
            return kind
    return None


def cremona_step(e: CohClass) -> tuple[CohClass, Move]:
    """One reflection along H-E1-E2-E3 on a normalized Rational(n >= 3)
    class with a < b1+b2+b3.  The leading coefficient becomes
    2a - (b1+b2+b3) < a."""
    model = e.model
    if model.kind != KIND_RATIONAL or model.n < 3:
        raise ValueError(f"cremona_step needs Rational(n >= 3), got {model}")
    a, bs = e.coeffs[0], e.coeffs[1:]
    if a >= bs[0] + bs[1] + bs[2]:
        raise ValueError(f"cremona_step precondition violated on {format_class(e)}: "
                         "a >= b1 + b2 + b3")
    gamma = CohClass(model, (1, 1, 1, 1) + (0,) * (model.n - 3))
    move = reflection(model, gamma)
    return apply_move(move, e), move


def ruled_step(e: CohClass, i: int) -> tuple[CohClass, Move]:
    """One reflection along mu = rT + eps*Ei bringing |ci| <= a.

    With m = r*eps an integer in [-1/2 - c/(2a), 1/2 - c/(2a)] the new
    coefficient is c' = -c - 2am, and |c'| <= a.  The interval has length
    one; when it contains two integers the one of smaller magnitude is
    chosen (on a further tie, positive eps).
    """
    model = e.model
    if model.kind != KIND_RULED:
        raise ValueError(f"ruled_step needs a ruled model, got {model}")
    a = e.coeffs[0]
    c = e.coeffs[model.e_offset + i - 1]
    if a <= 0:
        raise ValueError(f"ruled_step needs a > 0, got a = {a}")
    if abs(c) <= a:
        raise ValueError(f"ruled_step needs |c{i}| > a, got |{c}| <= {a}")
    # integers m with -a - c <= 2am <= a - c
    lo = -(a + c)
    hi = a - c
    m_lo = -((-lo) // (2 * a))  # ceil(lo / 2a)
    m_hi = hi // (2 * a)        # floor(hi / 2a)
    candidates = range(m_lo, m_hi + 1)
    if not candidates:
        raise AssertionError("empty reflection interval")
    m = min(candidates, key=lambda v: (abs(v), -v))
    r, eps = abs(m), (1 if m > 0 else -1)
    gamma = CohClass(model, _stored(model, lead=(0, r),
                                    e=tuple(-eps if k == i - 1 else 0
                                            for k in range(model.n))))
    move = reflection(model, gamma)
    out = apply_move(move, e)
    assert abs(out.coeffs[model.e_offset + i - 1]) <= a
    return out, move


def reduce_class(e: CohClass) -> ReductionResult:
    """Transport e to a reduced or exceptional normal form with a word
    certificate.  Termination is guaranteed for square >= -2; below that
    the result may be only locally reduced."""
    model = e.model
    _require_reducible_model(model)
    if e.is_zero:
        raise ValueError("cannot reduce the zero class")

    moves: list[Move] = []
    cur = e

    def emit(m: Move) -> None:
        nonlocal cur
        cur = apply_move(m, cur)
        moves.append(m)

    def done(kind: str, exc: str | None = None) -> ReductionResult:
        return ReductionResult(e, cur, kind, exc, make_word(model, moves))

    exact = _exact_exceptional(cur)
    if exact is not None:
        return done(EXCEPTIONAL, exact)

    cap = 10 * (sum(abs(c) for c in e.coeffs) + model.rank)
    for _ in range(cap):
        normed, word = normalize(cur)
        cur = normed
        moves.extend(word.moves)
        if is_reduced(cur):
            return done(REDUCED)
        if model.kind == KIND_RATIONAL:
            res = _rational_iteration(cur, emit, done)
        else:
            res = _ruled_iteration(cur, emit, done)
        if res is not None:
            return res
    raise RuntimeError(
        f"internal error: reduction iteration cap exceeded for {format_class(e)}")


def _rational_iteration(cur: CohClass, emit, done) -> ReductionResult | None:
    """One pass of the rational loop body on a normalized, non-reduced
    class.  Returns a result to stop, or None to keep looping."""
    model = cur.model
    n = model.n
    a, bs = cur.coeffs[0], cur.coeffs[1:]

    # terminal small patterns (square >= -2 funnels into these)
    if a == 0 and bs[0] == 1 and all(b == 0 for b in bs[1:]):
        emit(flip_e(1))
        return done(EXCEPTIONAL, EXC_E1)
    if a == 0 and n >= 2 and bs[0] == 1 and bs[1] == 1 and all(b == 0 for b in bs[2:]):
        emit(flip_e(1))
        emit(flip_e(2))
        return done(EXCEPTIONAL, EXC_E1_E2)
    if a == 1 and n == 2 and bs == (1, 1):
        return done(EXCEPTIONAL, EXC_H_E1_E2)
    if a == 1 and n >= 3 and bs[0] == bs[1] == bs[2] == 1 and all(b == 0 for b in bs[3:]):
        if n == 3:
            return done(EXCEPTIONAL, EXC_H_E1_E2_E3)
        # H-E1-E2-E3 is equivalent to E1+E2 once a fourth blow-up exists
        gamma = CohClass(model, (1, 0, 1, 1, 1) + (0,) * (n - 4))
        emit(reflection(model, gamma))
        return None

    # step while |a'| < a; for square >= -2 the terminal patterns above
    # fire before this can stop the loop
    if n >= 3:
        if abs(2 * a - (bs[0] + bs[1] + bs[2])) < a:
            _, move = cremona_step(cur)
            emit(move)
            return None
        return done(LOCALLY_REDUCED)
    if n == 2:
        if abs(3 * a - 2 * (bs[0] + bs[1])) < a:
            _, move = cremona2_step(cur)
            emit(move)
            return None
        return done(LOCALLY_REDUCED)
    return done(LOCALLY_REDUCED)  # n == 1, square < -2


def _ruled_iteration(cur: CohClass, emit, done) -> ReductionResult | None:
    model = cur.model
    n = model.n
    a, b = cur.coeffs[0], cur.coeffs[1]

    if a > 0:
        out, move = ruled_step(cur, 1)  # c1 is the largest, and c1 > a
        emit(move)
        return None

    # a == 0; normalize made every ci >= 0, and square = -sum(ci^2)
    sq = square(cur)
    if sq == -1:
        if b < 0:
            emit(neg_id())
            emit(flip_e(1))
            b = -b
        emit(reflection(model, _mu(model, b // 2, -1, 1)))
        if b % 2 == 0:
            return done(EXCEPTIONAL, EXC_E1)
        # landed on T+E1
        if n >= 2:
            emit(reflection(model, _t_move(model, 1, 2)))
            emit(swap_e(1, 2))
            return done(EXCEPTIONAL, EXC_E1)
        emit(flip_e(1))
        return done(EXCEPTIONAL, EXC_T_E1)
    if sq == -2:
        if b < 0:
            emit(neg_id())
            emit(flip_e(1))
            emit(flip_e(2))
            b = -b
        if b % 2 == 0:
            emit(reflection(model, _mu(model, b // 2, -1, 1)))
            emit(flip_e(2))
            return done(EXCEPTIONAL, EXC_E1_E2)
        if n == 2:
            emit(reflection(model, _mu(model, (b - 1) // 2, -1, 1)))
            emit(flip_e(1))
            return done(EXCEPTIONAL, EXC_T_E1_E2)
        emit(reflection(model, _t_move(model, 1, 3)))
        emit(reflection(model, _mu(model, (b + 1) // 2, -1, 2)))
        emit(flip_e(3))
        emit(swap_e(1, 3))
        return done(EXCEPTIONAL, EXC_E1_E2)
    return done(LOCALLY_REDUCED)  # square < -2 with a = 0


def _mu(model: Model, r: int, eps: int, i: int) -> CohClass:
    """The class rT + eps*Ei in stored coordinates."""
    return CohClass(model, _stored(
        model, lead=(0, r),
        e=tuple(-eps if k == i - 1 else 0 for k in range(model.n))))


def _t_move(model: Model, i: int, j: int) -> CohClass:
    """The class T + Ei - Ej in stored coordinates."""
    es = [0] * model.n
    es[i - 1] = -1
    es[j - 1] = 1
    return CohClass(model, _stored(model, lead=(0, 1), e=tuple(es)))


def classify_exceptional(e: CohClass) -> str | None:
    """Shallow pattern match of normalize(e) against the six exceptional
    normal forms, respecting the b^- conditions.  Returns None when the
    normalized class matches none of them; reduce_class decides the orbit."""
    if square(e) not in (-1, -2):
        raise ValueError(f"classify_exceptional needs square -1 or -2, got {square(e)}")
    normed, _ = normalize(e)
    model = e.model
    n = model.n
    if model.kind == KIND_RATIONAL:
        a, bs = normed.coeffs[0], normed.coeffs[1:]
        if a == 0 and bs[0] == 1 and all(b == 0 for b in bs[1:]):
            return EXC_E1
        if a == 0 and n >= 2 and bs[:2] == (1, 1) and all(b == 0 for b in bs[2:]):
            return EXC_E1_E2
        if n == 2 and normed.coeffs == (1, 1, 1):
            return EXC_H_E1_E2
        if n == 3 and normed.coeffs == (1, 1, 1, 1):
            return EXC_H_E1_E2_E3
        return None
    a, b = normed.coeffs[0], normed.coeffs[1]
    cs = normed.coeffs[2:]
    if a == 0 and cs[0] == 1 and all(c == 0 for c in cs[1:]):
        if b == 0:
            return EXC_E1
        if n == 1 and abs(b) == 1:
            return EXC_T_E1
        return None
    if a == 0 and n >= 2 and cs[:2] == (1, 1) and all(c == 0 for c in cs[2:]):
        if b == 0:
            return EXC_E1_E2
        if n == 2 and abs(b) == 1:
            return EXC_T_E1_E2
        return None
    return None


def cremona2_step(e: CohClass) -> tuple[CohClass, Move]:
    """One reflection along H-E1-E2 on a normalized Rational(2) class with
    a < b1 + b2.  The leading coefficient becomes 3a - 2(b1+b2)."""
    model = e.model
    if model.kind != KIND_RATIONAL or model.n != 2:
        raise ValueError(f"cremona2_step needs Rational(2), got {model}")
    a, bs = e.coeffs[0], e.coeffs[1:]
    if a < bs[0] + bs[1]:
        move = reflection(model, CohClass(model, (1, 1, 1)))
        return apply_move(move, e), move
    raise ValueError(f"{format_class(e)} is already reduced at the top: "
                     f"a >= b1 + b2")
