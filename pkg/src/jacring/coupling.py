"""Lengths of Griffiths-Yukawa couplings via iterated products in Jacobian rings.

For a subspace V of R_d the length at degree mu is the largest k with
V^k * R_mu != 0.  In characteristic zero the image of S^k(V) (x) R_mu equals
V * V * ... * V * R_mu, so the chain W_0 = R_mu, W_{k+1} = span(V * W_k) is all
that is ever computed; symmetric powers are never formed.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field
from typing import Literal

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, HypothesisWarning, InvalidParameter, RingMismatch
from .forms import Form, capped_monomials
from .linalg import RATIONAL, Block, FieldMode
from .ring import (
    DegreeSubspace,
    JacobianRing,
    make_fermat,
    make_random_smooth,
    make_ring,
    root_extension,
)

Method = Literal["auto", "generic"]


def tangent_subspace_full(ring: JacobianRing) -> DegreeSubspace:
    """All of R_d, the first-order deformations of the hypersurface."""
    return DegreeSubspace.full(ring, ring.d)


def include_subspace(base: JacobianRing, top: JacobianRing, mu: int,
                     sub: DegreeSubspace | None = None) -> DegreeSubspace:
    """Image of a subspace of base R_mu in top R_mu under x_i -> x_i."""
    if top.nvars < base.nvars:
        raise DimensionMismatch("top ring has fewer variables than the base")
    pad = (0,) * (top.nvars - base.nvars)
    sub = DegreeSubspace.full(base, mu) if sub is None else sub
    f = top.field
    basis = base.piece(mu).basis
    rows = []
    for r in sub.basis.rows():
        terms = {basis[j] + pad: c for j, c in enumerate(r) if c != 0}
        rows.append(top._reduce(mu, terms))
    return DegreeSubspace.span(top, mu, Block.from_rows(f, rows, top.piece(mu).dim))


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------

def _chain_capped(ring: JacobianRing, vmons: list, mu: int) -> list[int]:
    caps = np.asarray(ring.caps, dtype=np.int64)
    w = np.asarray(ring.piece(mu).basis, dtype=np.int64).reshape(-1, ring.nvars)
    v = np.asarray(vmons, dtype=np.int64).reshape(-1, ring.nvars)
    dims = []
    while len(w):
        dims.append(len(w))
        if not len(v):
            break
        codes = _kernels.capped_products(w, v, caps)
        codes = np.unique(codes[codes >= 0])
        w = _kernels.decode(codes, caps)
    return dims


def _chain_generic(ring: JacobianRing, V: DegreeSubspace, mu: int) -> list[int]:
    f, d = ring.field, ring.d
    dim0 = ring.piece(mu).dim
    if dim0 == 0:
        return []
    W = Block.from_sparse(f, [{i: f.one} for i in range(dim0)], dim0)
    vbasis = ring.piece(d).basis
    vrows = V.basis.rows()
    support = sorted({j for r in vrows for j, c in enumerate(r) if c != 0})
    dims = []
    a = mu
    while W.nrows:
        dims.append(W.nrows)
        target = ring.piece(a + d).dim
        if target == 0 or not vrows:
            break
        full = W.nrows == ring.piece(a).dim  # W is all of R_a: W @ G = G up to row order
        prods: dict[int, Block] = {}
        span = Block.zeros(f, 0, target)
        for r in vrows:
            acc = None
            for j in support:
                c = r[j]
                if c == 0:
                    continue
                if j not in prods:
                    g = ring.mult_block(a, vbasis[j])
                    prods[j] = g if full else W @ g
                term = prods[j] if c == f.one else prods[j].scale(c)
                acc = term if acc is None else acc + term
            span, _ = Block.vstack(f, [span, acc], target).rref()
            if span.nrows == target:
                break
        W = span
        a += d
    return dims


def _core_rows(ring: JacobianRing, V: DegreeSubspace) -> list[list] | None:
    """Coordinates of V in the core R_d when V only involves core variables."""
    k = ring.ncore
    basis = ring.piece(ring.d).basis
    core_ring = _core_ring(ring)
    cindex = core_ring.piece(ring.d).index
    out = []
    for r in V.basis.rows():
        row = [ring.field.zero] * len(cindex)
        for j, c in enumerate(r):
            if c == 0:
                continue
            e = basis[j]
            if any(e[k:]):
                return None
            row[cindex[e[:k]]] = c
        out.append(row)
    return out


def _core_ring(ring: JacobianRing) -> JacobianRing:
    got = getattr(ring, "_core_ring_cache", None)
    if got is None:
        core = ring._core
        got = JacobianRing(core.form, _core=core)
        ring._core_ring_cache = got
    return got


def coupling_chain(ring: JacobianRing, V: DegreeSubspace, mu: int,
                   method: Method = "auto") -> list[int]:
    """Dimensions of the nonzero spaces W_0 = R_mu, W_1 = V*W_0, ... (generic method)."""
    _check_v(ring, V)
    if mu < 0:
        return []
    if method == "auto" and ring.is_capped:
        mons = V.monomial_support()
        if mons is not None:
            return _chain_capped(ring, mons, mu)
    return _chain_generic(ring, V, mu)


def _check_v(ring: JacobianRing, V: DegreeSubspace) -> None:
    if V.ring is not ring:
        raise RingMismatch("subspace belongs to a different ring")
    if V.mu != ring.d:
        raise DimensionMismatch(f"V lives in degree {V.mu}, expected d={ring.d}")


def coupling_length(ring: JacobianRing, V: DegreeSubspace, mu: int,
                    method: Method = "auto") -> int:
    """Largest k with V^k * R_mu != 0 (0 when R_mu = 0)."""
    _check_v(ring, V)
    if mu < 0 or mu > ring.socle:
        return 0
    if method == "auto" and not ring.is_capped and ring.ncapped:
        rows = _core_rows(ring, V)
        if rows is not None:
            # multiplication by core classes preserves the capped-variable monomial
            core_ring = _core_ring(ring)
            Vc = DegreeSubspace.span(core_ring, ring.d, Block.from_rows(
                ring.field, rows, core_ring.piece(ring.d).dim)) if rows else \
                DegreeSubspace(core_ring, ring.d, Block.zeros(ring.field, 0, core_ring.piece(ring.d).dim))
            best = 0
            for e in range(min(mu, ring.ncapped * (ring.d - 2)) + 1):
                if capped_monomials(e, ring.caps) and core_ring.piece(mu - e).dim:
                    best = max(best, coupling_length(core_ring, Vc, mu - e))
            return best
    dims = coupling_chain(ring, V, mu, method)
    return len(dims) - 1 if dims else 0


def product_map_nonzero(ring: JacobianRing, V: DegreeSubspace, mu: int, nu: int) -> bool:
    """Whether R_mu (x) S^nu(V) -> R_{mu + nu d} is nonzero."""
    if ring.piece(mu).dim == 0 if mu >= 0 else True:
        return False
    return coupling_length(ring, V, mu) >= nu


# ---------------------------------------------------------------------------
# family-level lengths
# ---------------------------------------------------------------------------

def _warn_range(d: int, n: int, what: str) -> None:
    if d < n + 1:
        warnings.warn(f"{what}: d={d} < n+1={n + 1}; the classical statements do not apply",
                      HypothesisWarning, stacklevel=3)


def family_length(ring: JacobianRing) -> int:
    """Length for the universal family with this fibre type: start at degree d-n-1."""
    ring.require_smooth()
    _warn_range(ring.d, ring.n, "family_length")
    return coupling_length(ring, tangent_subspace_full(ring), ring.d - ring.n - 1)


def cover_family_length(base: JacobianRing) -> int:
    """Length for the first d-fold cyclic cover of the universal family of ``base``."""
    base.require_smooth()
    _warn_range(base.d, base.n, "cover_family_length")
    cover = root_extension(base)
    V = include_subspace(base, cover, base.d)
    return coupling_length(cover, V, base.d - cover.n - 1)


def eigenspace_degree(base: JacobianRing, i: int) -> int:
    """First graded degree of the i-eigenspace of the cover's middle cohomology."""
    return (base.d - i - base.n - 1) % base.d


def eigenspace_coupling_length(base: JacobianRing, i: int) -> int:
    d = base.d
    if not 1 <= i <= d - 1:
        raise InvalidParameter(f"eigen index must lie in [1, {d - 1}], got {i}")
    base.require_smooth()
    mu = eigenspace_degree(base, i)
    if mu > base.socle:
        return 0
    return coupling_length(base, tangent_subspace_full(base), mu)


@dataclass(frozen=True)
class CouplingProfile:
    sigma: int
    lengths: dict[int, int]

    def __getitem__(self, mu: int) -> int:
        return self.lengths[mu]


def coupling_profile(ring: JacobianRing, V: DegreeSubspace | None = None) -> CouplingProfile:
    V = tangent_subspace_full(ring) if V is None else V
    return CouplingProfile(ring.socle, {mu: coupling_length(ring, V, mu)
                                        for mu in range(ring.socle + 1)})


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerSpec:
    d: int
    base_nvars: int
    levels: int
    base_kind: Literal["fermat", "random", "explicit"] = "fermat"
    seed: int = 0
    form: Form | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.levels < 0:
            raise InvalidParameter("levels must be >= 0")
        if self.base_kind == "explicit" and self.form is None:
            raise InvalidParameter("explicit tower needs a form")
        if self.base_kind not in ("fermat", "random", "explicit"):
            raise InvalidParameter(f"unknown base kind {self.base_kind!r}")


def base_ring(spec: TowerSpec, field: FieldMode = RATIONAL) -> JacobianRing:
    if spec.base_kind == "fermat":
        return make_fermat(spec.d, spec.base_nvars, field)
    if spec.base_kind == "random":
        return make_random_smooth(spec.d, spec.base_nvars, field, seed=spec.seed)
    form = spec.form if spec.form.field == field else spec.form.with_field(field)
    if form.degree != spec.d or form.nvars != spec.base_nvars:
        raise InvalidParameter("explicit form does not match the tower spec")
    return make_ring(form)


def build_tower(spec: TowerSpec, field: FieldMode = RATIONAL) -> tuple[JacobianRing, DegreeSubspace]:
    """Top ring of the ``levels``-fold iterated cover and the image of the base R_d."""
    base = base_ring(spec, field)
    base.require_smooth()
    top = base
    for _ in range(spec.levels):
        top = root_extension(top)
    return top, include_subspace(base, top, spec.d)


def tower_length_closed_form(d: int, n: int, level: int) -> int:
    if level >= n - d // 2 + 1:
        return n - level
    return n - level - 1


@dataclass(frozen=True)
class TowerTableRow:
    level: int
    base_nvars: int
    computed: int
    closed_form: int
    base: str

    @property
    def match(self) -> bool:
        return self.computed == self.closed_form


@dataclass(frozen=True)
class TowerTable:
    d: int
    n: int
    rows: tuple[TowerTableRow, ...]

    @property
    def match(self) -> bool:
        return all(r.match for r in self.rows)

    def computed(self) -> dict[int, int]:
        return {r.level: r.computed for r in self.rows}


def tower_length_table(d: int, n: int, base_kind: str = "fermat", seed: int = 0,
                    field: FieldMode = RATIONAL) -> TowerTable:
    """Coupling lengths of the l-fold iterated covers ending in degree-d hypersurfaces
    of P^n, for l = 1 .. n-1, next to the closed form."""
    if n < 3 or d < n + 1:
        raise InvalidParameter(f"table needs n >= 3 and d >= n+1, got d={d}, n={n}")
    rows = []
    for level in range(1, n):
        spec = TowerSpec(d, n - level + 1, level, base_kind, seed)
        top, V = build_tower(spec, field)
        computed = coupling_length(top, V, d - n - 1)
        label = "fermat" if base_kind == "fermat" else f"{base_kind}(seed={seed})"
        rows.append(TowerTableRow(level, spec.base_nvars, computed,
                                 tower_length_closed_form(d, n, level), label))
    return TowerTable(d, n, tuple(rows))
