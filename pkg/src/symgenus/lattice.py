"""Intersection lattices of rational and ruled 4-manifolds.

Three lattice models are supported, each with its standard basis:

- ``rational(n)``: basis (H, E1, ..., En), form diag(1, -1, ..., -1).
- ``ruled(g, n)``: basis (U, T, E1, ..., En) with U.U = T.T = 0, U.T = 1,
  Ei.Ei = -1 and all cross pairings zero.  ``g >= 1`` is the base genus.
- ``S2XS2``: basis (x, y) with x.x = y.y = 0, x.y = 1.

Coefficient convention (important): a class is stored as the tuple of
coefficients in the *signed* expansion

    rational:  (a; b1, ..., bn)   meaning  a*H  - sum_i bi*Ei
    ruled:     (a, b; c1, ..., cn) meaning  a*U + b*T - sum_i ci*Ei
    S2xS2:     (p, q)             meaning  p*x + q*y

so the stored b/c entries are the coefficients of -Ei.  Sign flips of
basis vectors do not change the Gram matrix, so the bilinear form has the
same matrix in stored coordinates as in raw ones.  Formatters always print
the signed expansion, e.g. ``(3; 2, 1)`` prints as ``3H-2E1-E2``.

All arithmetic is exact: plain Python integers, no overflow anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

KIND_RATIONAL = "rational"
KIND_RULED = "ruled"
KIND_S2XS2 = "s2xs2"

ORDINARY = "ordinary"
CHARACTERISTIC = "characteristic"


class ClassSyntaxError(ValueError):
    """Raised by parse_class, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Model:
    """One of the three supported lattice models.

    ``n`` is the number of blow-ups (exceptional basis vectors).  Note that
    ``n`` and ``b_minus`` differ on ruled models: the ruled lattice has
    b^- = n + 1, and several orbit statements are keyed on b^- rather than
    on the blow-up count.  Both are exposed so callers cite the right one.
    """

    kind: str
    g: int = 0
    n: int = 0

    @property
    def rank(self) -> int:
        if self.kind == KIND_RATIONAL:
            return self.n + 1
        if self.kind == KIND_RULED:
            return self.n + 2
        return 2

    @property
    def b_minus(self) -> int:
        if self.kind == KIND_RATIONAL:
            return self.n
        if self.kind == KIND_RULED:
            return self.n + 1
        return 1

    @property
    def e_offset(self) -> int:
        """Index of the first exceptional slot in the coefficient tuple."""
        if self.kind == KIND_RATIONAL:
            return 1
        if self.kind == KIND_RULED:
            return 2
        raise ValueError("s2xs2 has no exceptional basis vectors")

    @property
    def is_minimal(self) -> bool:
        return self.kind == KIND_S2XS2 or self.n == 0

    def basis_names(self) -> tuple[str, ...]:
        es = tuple(f"E{i}" for i in range(1, self.n + 1))
        if self.kind == KIND_RATIONAL:
            return ("H",) + es
        if self.kind == KIND_RULED:
            return ("U", "T") + es
        return ("x", "y")

    def spec(self) -> str:
        if self.kind == KIND_RATIONAL:
            return f"rational:{self.n}"
        if self.kind == KIND_RULED:
            return f"ruled:{self.g}:{self.n}"
        return "s2xs2"

    def __str__(self) -> str:
        return self.spec()


def rational(n: int) -> Model:
    if n < 0:
        raise ValueError(f"rational model needs n >= 0, got {n}")
    return Model(KIND_RATIONAL, 0, n)


def ruled(g: int, n: int) -> Model:
    if g < 1:
        raise ValueError(f"ruled model needs base genus g >= 1, got {g}")
    if n < 0:
        raise ValueError(f"ruled model needs n >= 0, got {n}")
    return Model(KIND_RULED, g, n)


S2XS2 = Model(KIND_S2XS2)


def model_from_spec(text: str) -> Model:
    """Parse a manifold spec string: ``rational:<n>``, ``ruled:<g>:<n>``, ``s2xs2``."""
    parts = text.strip().lower().split(":")
    try:
        if parts[0] == "rational" and len(parts) == 2:
            return rational(int(parts[1]))
        if parts[0] == "ruled" and len(parts) == 3:
            return ruled(int(parts[1]), int(parts[2]))
        if parts[0] == "s2xs2" and len(parts) == 1:
            return S2XS2
    except ValueError as err:
        if "model needs" in str(err):
            raise
        raise ValueError(f"bad manifold spec {text!r}") from None
    raise ValueError(f"bad manifold spec {text!r} "
                     "(expected rational:<n>, ruled:<g>:<n> or s2xs2)")


@dataclass(frozen=True)
class CohClass:
    """An integral second-cohomology class in stored (signed) coordinates."""

    model: Model
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.model.rank:
            raise ValueError(
                f"rank mismatch: model {self.model} has rank {self.model.rank}, "
                f"got {len(self.coeffs)} coefficients")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise ValueError("coefficients must be exact integers")

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def e_part(self) -> tuple[int, ...]:
        """The stored b/c coefficients (of -Ei)."""
        return self.coeffs[self.model.e_offset:]

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check_same_model(other)
        return CohClass(self.model, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CohClass") -> "CohClass":
        self._check_same_model(other)
        return CohClass(self.model, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CohClass":
        return CohClass(self.model, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> "CohClass":
        if not isinstance(k, int):
            raise TypeError("classes scale by exact integers only")
        return CohClass(self.model, tuple(k * a for a in self.coeffs))

    def __floordiv__(self, k: int) -> "CohClass":
        if any(c % k for c in self.coeffs):
            raise ValueError(f"{k} does not divide {self}")
        return CohClass(self.model, tuple(c // k for c in self.coeffs))

    def _check_same_model(self, other: "CohClass") -> None:
        if self.model != other.model:
            raise ValueError(f"model mismatch: {self.model} vs {other.model}")

    def __str__(self) -> str:
        return format_class(self)

    def __repr__(self) -> str:
        return f"CohClass({self.model}, {format_class(self)!r})"


def coh(model: Model, *coeffs: int) -> CohClass:
    """Build a class from stored coefficients."""
    return CohClass(model, tuple(coeffs))


def basis_class(model: Model, index: int) -> CohClass:
    """The index-th standard basis vector as a class (E slots store -1)."""
    raw = [0] * model.rank
    raw[index] = -1 if index >= (model.e_offset if model.kind != KIND_S2XS2 else 2) else 1
    return CohClass(model, tuple(raw))


def e_class(model: Model, i: int) -> CohClass:
    """The class Ei (1-based)."""
    off = model.e_offset
    if not 1 <= i <= model.n:
        raise ValueError(f"E{i} is not a basis symbol of {model}")
    raw = [0] * model.rank
    raw[off + i - 1] = -1
    return CohClass(model, tuple(raw))


def gram_matrix(model: Model) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of the intersection form in stored coordinates."""
    r = model.rank
    rows = [[0] * r for _ in range(r)]
    if model.kind == KIND_RATIONAL:
        rows[0][0] = 1
        for i in range(1, r):
            rows[i][i] = -1
    else:
        rows[0][1] = rows[1][0] = 1
        for i in range(2, r):
            rows[i][i] = -1
    return tuple(tuple(row) for row in rows)


def pair(x: CohClass, y: CohClass) -> int:
    """The intersection pairing, exact."""
    x._check_same_model(y)
    a, b = x.coeffs, y.coeffs
    if x.model.kind == KIND_RATIONAL:
        return a[0] * b[0] - sum(p * q for p, q in zip(a[1:], b[1:]))
    return a[0] * b[1] + a[1] * b[0] - sum(p * q for p, q in zip(a[2:], b[2:]))


def square(x: CohClass) -> int:
    return pair(x, x)


def divisibility(x: CohClass) -> int:
    """gcd of the coefficients; x // divisibility(x) is primitive."""
    if x.is_zero:
        raise ValueError("divisibility undefined for zero class")
    d = 0
    for c in x.coeffs:
        d = gcd(d, abs(c))
    return d


def is_characteristic(x: CohClass) -> bool:
    """True iff pair(x, v) = pair(v, v) mod 2 for every basis vector v.

    Checking on a basis suffices by bilinearity.  Concretely: rational
    classes are characteristic iff a and every bi are odd; ruled iff a, b
    are even and every ci is odd; on S2xS2 iff p and q are even.
    """
    c = x.coeffs
    if x.model.kind == KIND_RATIONAL:
        return c[0] % 2 == 1 and all(b % 2 == 1 for b in c[1:])
    if x.model.kind == KIND_RULED:
        return c[0] % 2 == 0 and c[1] % 2 == 0 and all(b % 2 == 1 for b in c[2:])
    return c[0] % 2 == 0 and c[1] % 2 == 0


def class_type(x: CohClass) -> str:
    """"ordinary" or "characteristic".  The zero class counts as ordinary."""
    if x.is_zero:
        import warnings

        warnings.warn("class_type of the zero class defaults to ordinary")
        return ORDINARY
    return CHARACTERISTIC if is_characteristic(x) else ORDINARY


def canonical_k0(model: Model) -> CohClass:
    """The distinguished symplectic canonical class K0.

    Rational: K0 = -3H + sum Ei, stored (-3; -1, ..., -1).
    Ruled:    K0 = -2U + (2g-2)T + sum Ei, stored (-2, 2g-2; -1, ..., -1).
    """
    if model.kind == KIND_RATIONAL:
        return CohClass(model, (-3,) + (-1,) * model.n)
    if model.kind == KIND_RULED:
        return CohClass(model, (-2, 2 * model.g - 2) + (-1,) * model.n)
    raise ValueError("canonical_k0 is unsupported on s2xs2")


def _ext_gcd_combination(values: tuple[int, ...]) -> tuple[int, ...]:
    """Coefficients u with sum(u_i * values_i) == gcd(values)."""
    us = [0] * len(values)
    g = 0
    for idx, v in enumerate(values):
        if v == 0:
            continue
        sign = 1 if v > 0 else -1
        vv = abs(v)
        if g == 0:
            g = vv
            us[idx] = sign
            continue
        # extended gcd of (g, vv), both positive: old_s*g + old_t*vv = old_r
        old_r, r = g, vv
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r != 0:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        us = [u * old_s for u in us]
        us[idx] = old_t * sign
        g = old_r
    return tuple(us)


def hyperbolic_complement(y: CohClass) -> CohClass:
    """For primitive y with y.y = 0 on a rational model, a class xt with
    pair(y, xt) = 1 and xt.xt = 1.

    pair(y, .) = 1 is solvable by extended gcd because the form is
    unimodular and y is primitive.  If the solution x has even square, it
    is shifted by a y-orthogonal vector of odd square (one always exists
    in that case, because the whole lattice is odd); the remaining odd
    square is then corrected by a multiple of y.
    """
    model = y.model
    if model.kind != KIND_RATIONAL:
        raise ValueError("hyperbolic_complement is defined on rational models")
    if y.is_zero or divisibility(y) != 1:
        raise ValueError("y must be primitive and nonzero")
    if square(y) != 0:
        raise ValueError(f"y must have square 0, got {square(y)}")

    # Solve a*c - sum(bi*di) = 1 via u0*a + sum(ui*bi) = 1, x = (u0; -u1, ...).
    a_and_b = y.coeffs
    us = _ext_gcd_combination(a_and_b)
    x = CohClass(model, (us[0],) + tuple(-u for u in us[1:]))
    assert pair(y, x) == 1

    if square(x) % 2 == 0:
        # Projections of the basis vectors span the orthogonal complement
        # of y; at least one has odd square when square(x) is even.
        for k in range(model.rank):
            v = basis_class(model, k)
            w = v - pair(y, v) * x
            if square(w) % 2 == 1:
                x = x + w
                break
        else:
            raise AssertionError("no odd-square vector orthogonal to y found")

    t = square(x)
    xt = x - ((t - 1) // 2) * y
    assert pair(y, xt) == 1 and square(xt) == 1
    return xt


_TERM_RE = re.compile(r"([+-]?)(\d+)?([A-Za-z]\d*)")


def parse_class(text: str, model: Model) -> CohClass:
    """Parse the ASCII class grammar for the given model.

    Terms over the model's basis symbols with optional integer
    coefficients and +/- separators; whitespace is insignificant.  The
    literal ``0`` denotes the zero class.  Remember the sign convention:
    ``H+E1`` stores as (1; -1).
    """
    compact = "".join(text.split())
    if compact == "" :
        raise ClassSyntaxError("empty class expression", 0)
    if compact == "0":
        return CohClass(model, (0,) * model.rank)

    names = model.basis_names()
    slot = {name: i for i, name in enumerate(names)}
    raw = [0] * model.rank
    pos = 0
    first = True
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if not m:
            raise ClassSyntaxError(f"cannot read a term in {text!r}", pos)
        sign_s, coeff_s, symbol = m.groups()
        if not first and sign_s == "":
            raise ClassSyntaxError("missing +/- between terms", pos)
        if symbol not in slot:
            raise ClassSyntaxError(
                f"basis symbol {symbol!r} is not valid for {model}", m.start(3))
        coeff = int(coeff_s) if coeff_s else 1
        if sign_s == "-":
            coeff = -coeff
        idx = slot[symbol]
        if model.kind != KIND_S2XS2 and idx >= model.e_offset:
            raw[idx] -= coeff  # stored entry is the coefficient of -Ei
        else:
            raw[idx] += coeff
        pos = m.end()
        first = False
    return CohClass(model, tuple(raw))


def format_class(x: CohClass) -> str:
    """Render the signed expansion, e.g. (3; 2, 1) -> ``3H-2E1-E2``."""
    names = x.model.basis_names()
    off = x.model.e_offset if x.model.kind != KIND_S2XS2 else x.model.rank
    parts: list[str] = []
    for idx, stored in enumerate(x.coeffs):
        coeff = -stored if idx >= off else stored
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = names[idx] if mag == 1 else f"{mag}{names[idx]}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{sign}{body}")
    return "".join(parts) if parts else "0"
