"""Symplectic genus and minimal-genus certificates.

The symplectic genus of a class e is (K.e + e.e)/2 + 1, maximized over
symplectic canonical classes K whose cone pairs positively with e.  On a
reduced class the maximum is attained by the distinguished K0, so the
computation is: split off the divisibility, reduce the primitive part,
evaluate the K0 formula (exceptional normal forms have genus 0), and
recombine with the multiple formula

    eta(p e) = p eta(e) - (p - 1) + (p^2 - p)/2 * e.e.

The K0 formula is certified for reduced classes of non-negative square
and for exceptional classes; reduced classes of square -1 get the same
value with a weaker "formula-extended" status, as do minimal models
(n = 0), where reduction is unavailable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    KIND_RATIONAL,
    KIND_RULED,
    CohClass,
    canonical_k0,
    divisibility,
    format_class,
    pair,
    square,
)
from .moves import AutoWord, compose, identity_word, make_word, neg_id, word_to_json
from .reduction import EXCEPTIONAL, REDUCED, is_reduced, reduce_class

CERTIFIED = "certified"
FORMULA_EXTENDED = "formula-extended"

CERT_SPHERE = "sphere"
CERT_SYMPLECTIC_SURFACE = "symplectic-surface"
CERT_LARGE_MULTIPLE = "large-multiple"
CERT_NONE = "none"

SIGN_ZERO = "zero"
SIGN_POSITIVE = "positive"


def _require_genus_model(e: CohClass) -> None:
    if e.model.kind not in (KIND_RATIONAL, KIND_RULED):
        raise ValueError(f"symplectic genus is computed on rational and ruled "
                         f"models only, got {e.model}")


def eta_k0(e: CohClass) -> int:
    """(K0.e + e.e)/2 + 1 for a reduced class.

    The numerator is always even because K0 is characteristic.  On
    minimal models (n = 0), where reducedness is undefined, the same
    formula is evaluated on a sign-normalized class.
    """
    _require_genus_model(e)
    if e.model.n >= 1:
        if not is_reduced(e):
            raise ValueError(f"eta_k0 needs a reduced class, got {format_class(e)}")
    num = pair(canonical_k0(e.model), e) + square(e)
    assert num % 2 == 0, "K0 is characteristic, so the numerator is even"
    return num // 2 + 1


@dataclass(frozen=True)
class EtaResult:
    """Symplectic genus of a class, with its certification status and the
    word that reduced the primitive part."""

    eta: int
    status: str
    p: int
    base: CohClass
    base_normal_form: CohClass | None
    word: AutoWord | None

    def to_json(self) -> dict:
        return {
            "eta": str(self.eta),
            "status": self.status,
            "divisibility": str(self.p),
            "primitive_part": format_class(self.base),
            "normal_form": (format_class(self.base_normal_form)
                            if self.base_normal_form is not None else None),
            "word": word_to_json(self.word) if self.word is not None else None,
        }


def multiple_genus(eta_e: int, p: int, sq_e: int) -> int:
    """eta(p*e) from eta(e), by the multiple formula."""
    if p <= 0:
        raise ValueError(f"multiple_genus needs p >= 1, got {p}")
    return p * eta_e - (p - 1) + ((p * p - p) // 2) * sq_e


def symplectic_genus(e: CohClass) -> EtaResult:
    """Compute the symplectic genus of a class of square >= -1."""
    _require_genus_model(e)
    if e.is_zero:
        raise ValueError("symplectic genus undefined for the zero class")
    sq = square(e)
    if sq < -1:
        raise ValueError(
            f"square {sq} < -1: use genus_sign_sq_minus2 for square -2 classes")

    p = divisibility(e)
    base = e // p
    model = e.model

    if model.n == 0:
        base, word = _normalize_minimal(base)
        eta_base = eta_k0(base)
        status = FORMULA_EXTENDED
        nf = base
    else:
        res = reduce_class(base)
        word = res.word
        nf = res.normal_form
        if res.kind == EXCEPTIONAL:
            eta_base = 0
            status = CERTIFIED
        else:
            assert res.kind == REDUCED, "square >= -1 never ends locally reduced"
            if model.kind == KIND_RULED and nf.coeffs[0] == 0 and nf.coeffs[1] < 0:
                # bT with b < 0 is reduced but sits in the backward cone;
                # the K0 formula needs the forward representative and the
                # genus is sign-symmetric.
                nf = -nf
                word = compose(word, make_word(model, [neg_id()]))
            eta_base = eta_k0(nf)
            status = CERTIFIED if square(base) >= 0 else FORMULA_EXTENDED

    eta = multiple_genus(eta_base, p, square(base))
    return EtaResult(eta, status, p, base, nf, word)


def _normalize_minimal(base: CohClass) -> tuple[CohClass, AutoWord]:
    """Sign normalization on a minimal model (only -Id is available)."""
    c = base.coeffs
    if c[0] < 0 or (c[0] == 0 and c[1] < 0):
        return -base, make_word(base.model, [neg_id()])
    return base, identity_word(base.model)


def genus_sign_sq_minus2(e: CohClass) -> str:
    """Sign of the symplectic genus of a square -2 class: "zero" exactly
    when the class is not equivalent to a reduced one."""
    _require_genus_model(e)
    if square(e) != -2:
        raise ValueError(f"genus_sign_sq_minus2 needs square -2, got {square(e)}")
    if e.model.n < 1:
        raise ValueError("square -2 sign classification needs a non-minimal model")
    res = reduce_class(e)
    return SIGN_ZERO if res.kind == EXCEPTIONAL else SIGN_POSITIVE


@dataclass(frozen=True)
class GenusReport:
    """Symplectic genus plus the minimal-genus decision for one class."""

    eta: int
    eta_status: str
    minimal_genus: int | None
    certificate: str
    square: int
    divisibility: int
    word: AutoWord | None

    def eta_of_multiple(self, n: int) -> int:
        """eta(N e) as a function of N, for the large-multiple route."""
        return multiple_genus(self.eta, n, self.square)

    def to_json(self) -> dict:
        return {
            "eta": str(self.eta),
            "eta_status": self.eta_status,
            "minimal_genus": (str(self.minimal_genus)
                              if self.minimal_genus is not None else "unknown"),
            "certificate": self.certificate,
            "square": str(self.square),
            "divisibility": str(self.divisibility),
            "word": word_to_json(self.word) if self.word is not None else None,
        }


def minimal_genus(e: CohClass) -> GenusReport:
    """Decision cascade for the minimal genus of a class of square >= -1.

    Sphere-representable classes have minimal genus 0.  Otherwise, on a
    non-minimal model, a class of positive square (or primitive of square
    zero) with e.e >= eta(e) - 1 is represented by a connected symplectic
    surface, so its minimal genus equals its symplectic genus.  Everything
    else is reported unknown; for positive square the genus of large
    multiples is still available through eta_of_multiple.
    """
    from .spheres import spherical_verdict

    _require_genus_model(e)
    sq = square(e)
    if sq < -1:
        raise ValueError(f"minimal_genus needs square >= -1, got {sq}")
    verdict = spherical_verdict(e)
    res = symplectic_genus(e)
    p = res.p

    if verdict.spherical:
        mg: int | None = 0
        cert = CERT_SPHERE
    elif (e.model.n >= 1 and (sq > 0 or (sq == 0 and p == 1))
          and sq >= res.eta - 1):
        mg = res.eta
        cert = CERT_SYMPLECTIC_SURFACE
    else:
        mg = None
        cert = CERT_LARGE_MULTIPLE if sq > 0 else CERT_NONE
    return GenusReport(res.eta, res.status, mg, cert, sq, p, res.word)
