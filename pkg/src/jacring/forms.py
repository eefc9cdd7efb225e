"""Monomials, homogeneous forms and the text grammar for forms."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .errors import FormSyntaxError, InhomogeneousForm, InvalidParameter, UnknownVariable
from .linalg import RATIONAL, FieldMode

Exponent = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(degree: int, nvars: int) -> tuple[Exponent, ...]:
    """All exponent vectors of ``degree`` in ``nvars`` variables, grlex-descending.

    With x0 > x1 > ... this is lexicographically descending order of the tuples.
    """
    if degree < 0 or nvars < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(degree - a, nvars - 1):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def capped_monomials(degree: int, caps: tuple[int, ...]) -> tuple[Exponent, ...]:
    """Exponent vectors of ``degree`` with entry ``i`` at most ``caps[i]``, grlex-descending."""
    if degree < 0:
        return ()
    if not caps:
        return ((),) if degree == 0 else ()
    if degree > sum(caps):
        return ()
    out = []
    for a in range(min(degree, caps[0]), -1, -1):
        for rest in capped_monomials(degree - a, caps[1:]):
            out.append((a,) + rest)
    return tuple(out)


def count_monomials(degree: int, nvars: int) -> int:
    return comb(degree + nvars - 1, nvars - 1) if degree >= 0 else 0


def add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def format_monomial(e: Exponent) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Form:
    """Homogeneous polynomial with coefficients in ``field`` (internal representation)."""

    nvars: int
    degree: int
    terms: Mapping[Exponent, object]
    field: FieldMode = RATIONAL

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != self.nvars or any(a < 0 for a in e):
                raise InvalidParameter(f"exponent {e} does not fit {self.nvars} variables")
            if sum(e) != self.degree:
                raise InhomogeneousForm(
                    f"term {format_monomial(e)} has degree {sum(e)}, expected {self.degree}")
            c = self.field.element(c)
            if c != 0:
                clean[e] = c
        if not clean:
            raise InvalidParameter("form has no nonzero term")
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    def partial(self, i: int) -> dict[Exponent, object]:
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                v = f.mul(c, f.element(e[i]))
                if v != 0:
                    out[e2] = v
        return out

    def partials(self) -> list[dict[Exponent, object]]:
        return [self.partial(i) for i in range(self.nvars)]

    def with_field(self, field: FieldMode) -> "Form":
        src = self.field
        return Form(self.nvars, self.degree,
                    {e: field.element(src.export(c)) for e, c in self.terms.items()}, field)

    def adjoin_power(self) -> "Form":
        """The form ``F + y^d`` with ``y`` appended as the last variable."""
        terms = {e + (0,): c for e, c in self.terms.items()}
        top = (0,) * self.nvars + (self.degree,)
        terms[top] = self.field.add(terms.get(top, self.field.zero), self.field.one)
        return Form(self.nvars + 1, self.degree, terms, self.field)

    def is_diagonal(self) -> bool:
        """True iff every term is a pure power and each variable has one."""
        seen = set()
        for e in self.terms:
            nz = [i for i, a in enumerate(e) if a]
            if len(nz) != 1:
                return False
            seen.add(nz[0])
        return len(seen) == self.nvars

    def __str__(self) -> str:
        out = []
        for e, c in self.terms.items():
            c = self.field.export(c)
            mono = format_monomial(e)
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            coef = "" if mag == 1 else f"{mag}*"
            out.append((sign, coef + mono))
        text = " ".join(f"{s} {t}" for s, t in out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def fermat_form(d: int, nvars: int, field: FieldMode = RATIONAL) -> Form:
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = d
        terms[tuple(e)] = 1
    return Form(nvars, d, terms, field)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_]\w*)|(?P<op>[-+*^]))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)
    yield "end", None


def parse_polynomial(text: str, nvars: int | None = None,
                     field: FieldMode = RATIONAL) -> tuple[int, dict[Exponent, Fraction]]:
    """Parse a sum of terms into ``(nvars, {exponent: coefficient})``.

    Coefficients are returned as Fractions; homogeneity is not checked.
    """
    toks = list(_tokens(text))
    i = 0
    raw: list[tuple[Fraction, dict[int, int], str]] = []

    def peek():
        return toks[i]

    def take(kind=None):
        nonlocal i
        k, v = toks[i]
        if kind and k != kind:
            raise FormSyntaxError(f"expected {kind}, found {v!r}")
        i += 1
        return k, v

    def var_index(name: str) -> int:
        m = re.fullmatch(r"x(\d+)", name)
        if not m:
            raise UnknownVariable(f"unknown variable {name!r}; use x0, x1, ...")
        return int(m.group(1))

    def factor(powers: dict[int, int]):
        _, name = take("var")
        idx = var_index(name)
        exp = 1
        if peek() == ("op", "^"):
            take()
            k, v = take()
            if k != "num" or "/" in v:
                raise FormSyntaxError(f"bad exponent {v!r}")
            exp = int(v)
        powers[idx] = powers.get(idx, 0) + exp

    if peek()[0] == "end":
        raise FormSyntaxError("empty input")
    while True:
        sign = 1
        start = i
        while peek()[0] == "op" and peek()[1] in "+-":
            if peek()[1] == "-":
                sign = -sign
            take()
        coef = Fraction(1)
        powers: dict[int, int] = {}
        k, v = peek()
        if k == "num":
            take()
            try:
                coef = Fraction(v)
            except ZeroDivisionError:
                raise FormSyntaxError(f"zero denominator in {v!r}") from None
            if peek() == ("op", "*"):
                take()
            if peek()[0] != "var":
                raise FormSyntaxError("a term needs at least one variable factor")
        elif k != "var":
            raise FormSyntaxError(f"expected a term, found {v!r}")
        factor(powers)
        while peek() == ("op", "*"):
            take()
            factor(powers)
        text_term = " ".join(str(t[1]) for t in toks[start:i])
        raw.append((sign * coef, powers, text_term.strip()))
        k, v = peek()
        if k == "end":
            break
        if not (k == "op" and v in "+-"):
            raise FormSyntaxError(f"expected '+' or '-', found {v!r}")

    top = max((max(p) for _, p, _ in raw if p), default=-1) + 1
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise UnknownVariable(f"variable x{top - 1} exceeds nvars={nvars}")
    terms: dict[Exponent, Fraction] = {}
    first_deg: dict[int, str] = {}
    for c, powers, label in raw:
        e = tuple(powers.get(j, 0) for j in range(nvars))
        terms[e] = terms.get(e, Fraction(0)) + c
        first_deg.setdefault(sum(e), label)
    if len(first_deg) > 1:
        (d1, t1), (d2, t2) = list(first_deg.items())[:2]
        raise InhomogeneousForm(f"terms '{t1}' (degree {d1}) and '{t2}' (degree {d2}) differ in degree")
    return nvars, {e: c for e, c in terms.items() if c != 0}


def parse_form(text: str, field: FieldMode = RATIONAL, nvars: int | None = None) -> Form:
    """Parse a homogeneous form such as ``"3*x0^2*x1 - x2^3"``."""
    nv, terms = parse_polynomial(text, nvars, field)
    if not terms:
        raise InvalidParameter("form is identically zero")
    deg = sum(next(iter(terms)))
    return Form(nv, deg, terms, field)
