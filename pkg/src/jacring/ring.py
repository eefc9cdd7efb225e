"""Jacobian rings R = S/J of homogeneous forms, graded piece by graded piece.

Standard monomials are the non-pivot columns of the RREF of J_mu with columns in
grlex order (x0 > x1 > ...).  A form whose trailing variables occur only in pure
d-th power terms, ``F(x0..x_{k-1}) + c_k x_k^d + ...``, has Jacobian ideal
``J_F + (x_k^{d-1}, ...)``, so its ring is ``R_F (x) k[x_k, ...]/(x_j^{d-1})``.
Such rings (Fermat forms, iterated cyclic covers) are handled as a linear-algebra
*core* tensored with capped monomials; the core is empty for Fermat forms, which
makes every computation combinatorial.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InhomogeneousForm,
    InvalidParameter,
    NotSmooth,
    RingMismatch,
    SmoothnessNotFound,
)
from .forms import Exponent, Form, add_exp, capped_monomials, fermat_form, monomials, parse_polynomial
from .linalg import RATIONAL, Block, FieldMode


@dataclass(frozen=True)
class _CorePiece:
    basis: tuple[Exponent, ...]
    # monomial -> {basis position: coefficient}; standard monomials map to themselves
    nf: Mapping[Exponent, Mapping[int, object]]


class _Core:
    """Linear-algebra part of a Jacobian ring: the form in its leading variables."""

    def __init__(self, form: Form):
        self.form = form
        self.field = form.field
        self.nvars = form.nvars
        self.d = form.degree
        self.partials = form.partials()
        self.socle = self.nvars * (self.d - 2)
        self._pieces: dict[int, _CorePiece] = {}
        self._lock = threading.Lock()
        self._smooth: bool | None = None

    def piece(self, mu: int) -> _CorePiece:
        got = self._pieces.get(mu)
        if got is not None:
            return got
        if mu > self.socle and self._smooth:
            built = _CorePiece((), {})
        else:
            built = self._build(mu)
        with self._lock:
            return self._pieces.setdefault(mu, built)

    def _build(self, mu: int) -> _CorePiece:
        f = self.field
        mons = monomials(mu, self.nvars)
        if mu < self.d - 1:
            return _CorePiece(mons, {m: {i: f.one} for i, m in enumerate(mons)})
        col = {m: j for j, m in enumerate(mons)}
        rows = []
        for s in monomials(mu - self.d + 1, self.nvars):
            for part in self.partials:
                if part:
                    rows.append({col[add_exp(s, e)]: c for e, c in part.items()})
        red, pivots = Block.from_sparse(f, rows, len(mons)).rref()
        pivset = set(pivots)
        free = [j for j in range(len(mons)) if j not in pivset]
        pos = {j: k for k, j in enumerate(free)}
        nf: dict[Exponent, dict[int, object]] = {mons[j]: {pos[j]: f.one} for j in free}
        for r, row in zip(pivots, red.rows()):
            nf[mons[r]] = {pos[j]: f.neg(row[j]) for j in free if row[j] != 0}
        return _CorePiece(tuple(mons[j] for j in free), nf)

    def certify(self) -> bool:
        if self._smooth is None:
            self._smooth = len(self._build(self.socle + 1).basis) == 0
        return self._smooth


@dataclass(frozen=True)
class DegreePiece:
    """Standard-monomial basis of R_mu with its position index."""

    mu: int
    basis: tuple[Exponent, ...]
    index: Mapping[Exponent, int]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _split_point(form: Form) -> int:
    """Index k such that variables k.. occur only in their own pure d-th power term."""
    d, nv = form.degree, form.nvars
    k = nv
    for j in range(nv - 1, -1, -1):
        involving = [e for e in form.terms if e[j]]
        if len(involving) == 1 and involving[0][j] == d:
            k = j
        else:
            break
    return k


class JacobianRing:
    """Graded Jacobian ring of a form; pieces are computed lazily and cached."""

    def __init__(self, form: Form, _core: _Core | None = None):
        if form.degree < 2:
            raise InvalidParameter("Jacobian rings need degree d >= 2")
        if form.nvars < 1:
            raise InvalidParameter("need at least one variable")
        self.form = form
        self.field = form.field
        self.nvars = form.nvars
        self.d = form.degree
        self.n = form.nvars - 1
        self.socle = self.nvars * (self.d - 2)
        self.ncore = _split_point(form)
        self.ncapped = self.nvars - self.ncore
        if self.ncore:
            if _core is None:
                core_form = Form(self.ncore, self.d,
                                 {e[:self.ncore]: c for e, c in form.terms
                                  .items() if any(e[:self.ncore])}, self.field)
                _core = _Core(core_form)
            self._core = _core
        else:
            self._core = None
        self.caps = (self.d - 2,) * self.ncapped
        self._pieces: dict[int, DegreePiece] = {}
        self._lock = threading.Lock()
        self._smooth: bool | None = None

    def __repr__(self) -> str:
        kind = "monomial" if self.is_capped else f"core={self.ncore}"
        return f"JacobianRing(d={self.d}, nvars={self.nvars}, {kind}, field={self.field})"

    @property
    def is_capped(self) -> bool:
        """True when J is generated by pure powers, i.e. R is spanned by capped monomials."""
        return self._core is None

    @property
    def partials(self) -> list[dict]:
        return self.form.partials()

    # -- graded pieces --------------------------------------------------------

    def piece(self, mu: int) -> DegreePiece:
        got = self._pieces.get(mu)
        if got is not None:
            return got
        built = self._build_piece(mu)
        with self._lock:
            return self._pieces.setdefault(mu, built)

    def _core_basis(self, mu: int) -> tuple[Exponent, ...]:
        if self._core is None:
            return ((),) if mu == 0 else ()
        return self._core.piece(mu).basis

    def _build_piece(self, mu: int) -> DegreePiece:
        if mu < 0:
            return DegreePiece(mu, (), {})
        if mu > self.socle and self._smooth:
            return DegreePiece(mu, (), {})
        out = []
        top = min(mu, self.ncapped * (self.d - 2))
        for e in range(top + 1):
            core = self._core_basis(mu - e)
            if not core:
                continue
            for b in capped_monomials(e, self.caps):
                out.extend(a + b for a in core)
        out.sort(reverse=True)
        basis = tuple(out)
        return DegreePiece(mu, basis, {m: i for i, m in enumerate(basis)})

    def nf_monomial(self, e: Exponent) -> dict[int, object]:
        """Normal form of a monomial as ``{basis position: coefficient}``."""
        k = self.ncore
        b = e[k:]
        if any(x > c for x, c in zip(b, self.caps)):
            return {}
        mu = sum(e)
        piece = self.piece(mu)
        if self._core is None:
            return {piece.index[e]: self.field.one}
        a = e[:k]
        cp = self._core.piece(sum(a))
        red = cp.nf.get(a)
        if red is None:
            return {}
        return {piece.index[cp.basis[i] + b]: c for i, c in red.items()}

    def certify(self) -> bool:
        if self._smooth is None:
            self._smooth = True if self._core is None else self._core.certify()
        return self._smooth

    def require_smooth(self) -> None:
        if not self.certify():
            raise NotSmooth(f"form {self.form} is singular (Jacobian ring not Artinian)")

    # -- elements ---------------------------------------------------------------

    def element(self, poly) -> "RingClass":
        """Class of a homogeneous polynomial (text, Form or {exponent: coeff})."""
        terms = _as_terms(self, poly)
        if not terms:
            raise InvalidParameter("cannot infer the degree of the zero polynomial")
        degs = {sum(e) for e in terms}
        if len(degs) > 1:
            raise InhomogeneousForm(f"polynomial mixes degrees {sorted(degs)}")
        mu = degs.pop()
        return RingClass(self, mu, self._reduce(mu, terms))

    def _reduce(self, mu: int, terms: Mapping[Exponent, object]) -> tuple:
        f = self.field
        acc = [f.zero] * self.piece(mu).dim
        for e, c in terms.items():
            for i, v in self.nf_monomial(e).items():
                acc[i] = f.add(acc[i], f.mul(c, v))
        return tuple(acc)

    def unit(self, mu: int, e: Exponent) -> "RingClass":
        return RingClass(self, mu, self._reduce(mu, {e: self.field.one}))

    def one(self) -> "RingClass":
        return RingClass(self, 0, (self.field.one,))

    def product_rows(self, mu: int, nu: int, left: Sequence[Exponent] | None = None,
                     right: Sequence[Exponent] | None = None) -> list[dict[int, object]]:
        """Normal forms of all products ``s * t`` of basis monomials of R_mu and R_nu."""
        left = self.piece(mu).basis if left is None else left
        right = self.piece(nu).basis if right is None else right
        return [self.nf_monomial(add_exp(s, t)) for s in left for t in right]

    def mult_block(self, mu: int, t: Exponent) -> Block:
        """Matrix of multiplication by the monomial ``t`` from R_mu to R_{mu+deg t}."""
        target = mu + sum(t)
        rows = [self.nf_monomial(add_exp(s, t)) for s in self.piece(mu).basis]
        return Block.from_sparse(self.field, rows, self.piece(target).dim)


@dataclass(frozen=True)
class RingClass:
    """An element of R_mu in standard-monomial coordinates (internal field elements)."""

    ring: JacobianRing
    mu: int
    vec: tuple

    @property
    def coords(self) -> tuple:
        return tuple(self.ring.field.export(x) for x in self.vec)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.vec)

    def __mul__(self, other: "RingClass") -> "RingClass":
        return multiply(self.ring, self, other)

    def __str__(self) -> str:
        basis = self.ring.piece(self.mu).basis
        parts = [f"({c})*{_fmt(e)}" for c, e in zip(self.coords, basis) if c != 0]
        return " + ".join(parts) if parts else "0"


def _fmt(e: Exponent) -> str:
    from .forms import format_monomial

    return format_monomial(e)


def _as_terms(ring: JacobianRing, poly) -> dict[Exponent, object]:
    f = ring.field
    if isinstance(poly, str):
        _, raw = parse_polynomial(poly, ring.nvars, f)
        return {e: f.element(c) for e, c in raw.items()}
    if isinstance(poly, Form):
        if poly.nvars != ring.nvars:
            raise DimensionMismatch("form lives in a different polynomial ring")
        return {e: f.element(poly.field.export(c)) for e, c in poly.terms.items()}
    out = {}
    for e, c in dict(poly).items():
        e = tuple(e)
        if len(e) != ring.nvars:
            raise DimensionMismatch(f"exponent {e} has wrong length")
        out[e] = f.element(c)
    return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def make_ring(form: Form) -> JacobianRing:
    return JacobianRing(form)


def make_fermat(d: int, nvars: int, field: FieldMode = RATIONAL) -> JacobianRing:
    """Jacobian ring of ``x0^d + ... + x_{nvars-1}^d``."""
    if d < 2 or nvars < 2:
        raise InvalidParameter(f"need d >= 2 and nvars >= 2, got d={d}, nvars={nvars}")
    return JacobianRing(fermat_form(d, nvars, field))


def random_form(d: int, nvars: int, field: FieldMode, seed: int, attempt: int = 0) -> Form | None:
    """Integer coefficients in [-9, 9] drawn from a stream keyed by (seed, d, nvars, attempt)."""
    ss = np.random.SeedSequence([int(seed), d, nvars])
    child = ss.spawn(attempt + 1)[attempt]
    rng = np.random.default_rng(child)
    mons = monomials(d, nvars)
    coeffs = rng.integers(-9, 10, size=len(mons))
    terms = {m: int(c) for m, c in zip(mons, coeffs) if c}
    if not terms:
        return None
    try:
        return Form(nvars, d, terms, field)
    except InvalidParameter:
        return None


def make_random_smooth(d: int, nvars: int, field: FieldMode = RATIONAL, seed: int = 0,
                       max_tries: int = 20) -> JacobianRing:
    """Ring of a seeded random form with small integer coefficients that is certified smooth."""
    if d < 2 or nvars < 2:
        raise InvalidParameter(f"need d >= 2 and nvars >= 2, got d={d}, nvars={nvars}")
    for attempt in range(max_tries):
        form = random_form(d, nvars, field, seed, attempt)
        if form is None:
            continue
        ring = JacobianRing(form)
        if ring.certify():
            return ring
    raise SmoothnessNotFound(f"no smooth form found for d={d}, nvars={nvars}, seed={seed} "
                             f"in {max_tries} tries")


def root_extension(ring: JacobianRing) -> JacobianRing:
    """Ring of ``F + y^d`` (the d-th root cover), with ``y`` appended last."""
    ring.require_smooth()
    return JacobianRing(ring.form.adjoin_power(), _core=ring._core)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def socle_degree(ring: JacobianRing) -> int:
    return ring.socle


def dim_R(ring: JacobianRing, mu: int) -> int:
    if mu < 0:
        return 0
    return ring.piece(mu).dim


def degree_basis(ring: JacobianRing, mu: int) -> tuple[Exponent, ...]:
    return ring.piece(mu).basis


def smoothness_certificate(ring: JacobianRing) -> bool:
    """True iff R_{sigma+1} = 0.

    J is generated in degree d-1 and R in degree 1, so R_{sigma+1} = 0 forces
    R_mu = 0 for every mu > sigma.  For a core-times-capped ring the capped
    factor is Artinian, so only the core needs checking.
    """
    return ring.certify()


def normal_form(ring: JacobianRing, poly) -> tuple:
    """Coordinates of the class of a homogeneous polynomial in the basis of R_mu."""
    return ring.element(poly).coords


def multiply(ring: JacobianRing, a: RingClass, b: RingClass) -> RingClass:
    if a.ring is not ring or b.ring is not ring:
        raise RingMismatch("classes belong to different rings")
    f = ring.field
    ba, bb = ring.piece(a.mu).basis, ring.piece(b.mu).basis
    acc = [f.zero] * ring.piece(a.mu + b.mu).dim
    for s, x in zip(ba, a.vec):
        if x == 0:
            continue
        for t, y in zip(bb, b.vec):
            if y == 0:
                continue
            xy = f.mul(x, y)
            for i, v in ring.nf_monomial(add_exp(s, t)).items():
                acc[i] = f.add(acc[i], f.mul(xy, v))
    return RingClass(ring, a.mu + b.mu, tuple(acc))


def pairing_block(ring: JacobianRing, mu: int) -> Block:
    """Matrix of R_mu x R_{sigma-mu} -> R_sigma in socle coordinates."""
    sigma = ring.socle
    if not 0 <= mu <= sigma:
        raise InvalidParameter(f"mu={mu} outside [0, {sigma}]")
    if ring.piece(sigma).dim != 1:
        raise NotSmooth("R_sigma is not one-dimensional")
    left, right = ring.piece(mu).basis, ring.piece(sigma - mu).basis
    f = ring.field
    rows = []
    for s in left:
        rows.append({j: ring.nf_monomial(add_exp(s, t)).get(0, f.zero) for j, t in enumerate(right)})
    return Block.from_sparse(f, rows, len(right))


def hilbert_series(d: int, nvars: int) -> tuple[int, ...]:
    """Coefficients of ((1 - t^(d-1)) / (1 - t))^nvars, i.e. the expected dim R_mu."""
    block = np.ones(d - 1, dtype=object)
    out = np.ones(1, dtype=object)
    for _ in range(nvars):
        out = np.convolve(out, block)
    return tuple(int(x) for x in out)


def macaulay_pairing_rank(ring: JacobianRing, mu: int) -> int:
    return pairing_block(ring, mu).rank()


def product_span_rank(ring: JacobianRing, mu: int, nu: int) -> int:
    """Rank of the span of all products R_mu * R_nu inside R_{mu+nu}."""
    rows = ring.product_rows(mu, nu)
    rows = [r for r in rows if r]
    if not rows:
        return 0
    return Block.from_sparse(ring.field, rows, ring.piece(mu + nu).dim).rank()


@dataclass(frozen=True)
class KoszulCohomology:
    """Cohomology dimensions of the truncated Koszul complex on the partials.

    ``dims[k]`` is the dimension at spot ``r = p - k``; ``in_range`` records
    whether ``mu >= p(d-1) - n``.
    """

    mu: int
    p: int
    dims: tuple[int, ...]
    in_range: bool

    def at(self, r: int) -> int:
        return self.dims[self.p - r]


def koszul_cohomology_dims(ring: JacobianRing, mu: int, p: int) -> KoszulCohomology:
    if p < 0:
        raise InvalidParameter("p must be non-negative")
    f = ring.field
    nv, d = ring.nvars, ring.d
    partials = ring.partials
    p_eff = min(p, nv)
    spots = []  # spots[r] = (list of (I, m), index)
    for r in range(p_eff + 1):
        deg = mu - r * (d - 1)
        elems = [(I, m) for I in itertools.combinations(range(nv), r) for m in monomials(deg, nv)]
        spots.append((elems, {x: i for i, x in enumerate(elems)}))

    def differential_rank(r: int) -> int:
        # d_r : C_r -> C_{r-1}
        if r == 0 or r > p_eff:
            return 0
        src, (_, tgt_index) = spots[r][0], spots[r - 1]
        if not src or not tgt_index:
            return 0
        rows = []
        for I, m in src:
            row: dict[int, object] = {}
            for j, i in enumerate(I):
                rest = I[:j] + I[j + 1:]
                sign = f.one if j % 2 == 0 else f.neg(f.one)
                for e, c in partials[i].items():
                    k = tgt_index[(rest, add_exp(m, e))]
                    row[k] = f.add(row.get(k, f.zero), f.mul(sign, c))
            rows.append(row)
        return Block.from_sparse(f, rows, len(tgt_index)).rank()

    ranks = [differential_rank(r) for r in range(p_eff + 2)]
    dims = []
    for r in range(p, -1, -1):
        if r > p_eff:
            dims.append(0)
            continue
        size = len(spots[r][0])
        dims.append(size - ranks[r] - ranks[r + 1])
    return KoszulCohomology(mu, p, tuple(dims), mu >= p * (d - 1) - ring.n)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class DegreeSubspace:
    """Subspace of R_mu, stored as canonical RREF rows in standard-monomial coordinates."""

    def __init__(self, ring: JacobianRing, mu: int, basis: Block):
        self.ring = ring
        self.mu = mu
        self.basis = basis

    @classmethod
    def span(cls, ring: JacobianRing, mu: int, rows: Sequence[Sequence] | Block) -> "DegreeSubspace":
        dim = ring.piece(mu).dim
        block = rows if isinstance(rows, Block) else Block.from_rows(
            ring.field, [[ring.field.element(x) for x in r] for r in rows], dim)
        if block.ncols != dim:
            raise DimensionMismatch(f"vectors of length {block.ncols}, R_{mu} has dim {dim}")
        red, _ = block.rref()
        return cls(ring, mu, red)

    @classmethod
    def full(cls, ring: JacobianRing, mu: int) -> "DegreeSubspace":
        dim = ring.piece(mu).dim
        f = ring.field
        rows = [{i: f.one} for i in range(dim)]
        return cls(ring, mu, Block.from_sparse(f, rows, dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def rows(self) -> list[tuple]:
        f = self.ring.field
        return [tuple(f.export(x) for x in r) for r in self.basis.rows()]

    def monomial_support(self) -> list[Exponent] | None:
        """Basis monomials if every basis row is a unit vector, else None."""
        basis = self.ring.piece(self.mu).basis
        out = []
        for r in self.basis.rows():
            nz = [i for i, x in enumerate(r) if x != 0]
            if len(nz) != 1:
                return None
            out.append(basis[nz[0]])
        return out

    def __repr__(self) -> str:
        return f"DegreeSubspace(mu={self.mu}, dim={self.dim})"
