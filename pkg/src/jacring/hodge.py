"""Hodge numbers read off from graded dimensions of Jacobian rings.

Convention used throughout: position ``p`` of a :class:`HodgeVector` of weight
``m`` holds ``h^{m-p, p}``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter
from .ring import JacobianRing, dim_R, make_fermat, root_extension


@dataclass(frozen=True)
class HodgeVector:
    m: int
    h: tuple[int, ...]
    primitive: bool = True

    def __post_init__(self):
        if len(self.h) != self.m + 1:
            raise InvalidParameter(f"weight {self.m} needs {self.m + 1} entries, got {len(self.h)}")

    def is_palindromic(self) -> bool:
        return self.h == self.h[::-1]

    def reversed(self) -> "HodgeVector":
        return HodgeVector(self.m, self.h[::-1], self.primitive)

    def __iter__(self):
        return iter(self.h)

    def __getitem__(self, p: int) -> int:
        return self.h[p]


@dataclass(frozen=True)
class HodgeDiamond:
    """Hodge numbers of a smooth hypersurface; ``matrix[p][q] = h^{p,q}``."""

    dim: int
    matrix: tuple[tuple[int, ...], ...]

    @property
    def middle(self) -> HodgeVector:
        m = self.dim
        return HodgeVector(m, tuple(self.matrix[m - p][p] for p in range(m + 1)), primitive=False)

    def rows(self) -> list[list[int]]:
        """Rows of the diamond by total degree k = p + q, each listed with p descending."""
        m = self.dim
        out = []
        for k in range(2 * m + 1):
            out.append([self.matrix[p][k - p] for p in range(min(k, m), max(0, k - m) - 1, -1)])
        return out

    def __str__(self) -> str:
        rows = self.rows()
        width = max(len(str(x)) for r in rows for x in r) + 2
        total = width * (self.dim + 1)
        lines = ["".join(str(x).center(width) for x in r).center(total) for r in rows]
        return "\n".join(reversed(lines))


def primitive_hodge(ring: JacobianRing) -> HodgeVector:
    """Primitive middle Hodge numbers of the hypersurface: h^{n-1-p,p} = dim R_{(p+1)d-n-1}."""
    ring.require_smooth()
    n, d = ring.n, ring.d
    if n < 1:
        raise InvalidParameter("need at least two variables")
    return HodgeVector(n - 1, tuple(dim_R(ring, (p + 1) * d - n - 1) for p in range(n)))


def hodge_diamond(ring: JacobianRing) -> HodgeDiamond:
    prim = primitive_hodge(ring)
    m = prim.m
    mat = [[1 if p == q else 0 for q in range(m + 1)] for p in range(m + 1)]
    for p in range(m + 1):
        mat[m - p][p] = prim.h[p] + (1 if 2 * p == m else 0)
    return HodgeDiamond(m, tuple(tuple(r) for r in mat))


def eigen_hodge(base: JacobianRing, i: int) -> HodgeVector:
    """Hodge numbers of the ``i``-eigenspace of the d-th root cover branched along ``base``.

    The cover has dimension N = base.n and h^{N-p,p}_i = dim R_{(p+1)d - i - N - 1}.
    """
    d = base.d
    if not 1 <= i <= d - 1:
        raise InvalidParameter(f"eigen index must lie in [1, {d - 1}], got {i}")
    base.require_smooth()
    N = base.n
    return HodgeVector(N, tuple(dim_R(base, (p + 1) * d - i - N - 1) for p in range(N + 1)))


def eigen_hodge_table(base: JacobianRing) -> dict[int, HodgeVector]:
    return {i: eigen_hodge(base, i) for i in range(1, base.d)}


def eigen_sum_check(base: JacobianRing) -> bool:
    """Eigenspace pieces add up to the primitive Hodge numbers of the cover."""
    cover = primitive_hodge(root_extension(base))
    table = eigen_hodge_table(base)
    for p in range(cover.m + 1):
        if sum(v.h[p] for v in table.values()) != cover.h[p]:
            return False
    return True


def first_hodge_rank_chain(base: JacobianRing) -> list[int]:
    """Ranks E^{n,0}_i for i = d-n-1 .. 1, then E^{n-1,1}_i for i = d-1 .. n+1."""
    d, n = base.d, base.n
    chain = [eigen_hodge(base, i).h[0] for i in range(d - n - 1, 0, -1)]
    chain += [eigen_hodge(base, i).h[1] for i in range(d - 1, n, -1)]
    return chain


@dataclass(frozen=True)
class CoverDecomposition:
    d: int
    n: int
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    off_center_equal: bool
    residual_W: int
    residual_Wprime: int


def cover_decomposition_check(d: int, n: int) -> CoverDecomposition:
    """Compare weight-(n+1) Hodge numbers of the second iterated cover with the
    eigenspace/product decomposition built from the first cover and the Fermat curve.

    The residuals are the smallest constant summands, at the centre bidegree, that
    reconcile the two sides: ``residual_W`` is added on the right, ``residual_Wprime``
    on the left.
    """
    if n < 1 or d < n + 1:
        raise InvalidParameter(f"need d >= n+1 >= 2, got d={d}, n={n}")
    weight = n + 1
    x_ring = make_fermat(d, n + 1)            # X in P^n
    curve_base = make_fermat(d, 2)            # d points in P^1
    z2_ring = make_fermat(d, n + 3)           # second iterated cover, in P^{n+2}

    lhs = list(hodge_diamond(z2_ring).middle.h)
    rhs = [0] * (weight + 1)
    for i in range(1, d):
        z = eigen_hodge(x_ring, i).h             # weight n
        s = eigen_hodge(curve_base, d - i).h     # weight 1
        for a, za in enumerate(z):
            for b, sb in enumerate(s):
                rhs[a + b] += za * sb
    if n >= 2:
        x_mid = hodge_diamond(x_ring).middle.h   # weight n-1, Tate twist shifts by (1,1)
        for q, v in enumerate(x_mid):
            rhs[q + 1] += (d - 1) * v

    center = weight // 2 if weight % 2 == 0 else None
    off_equal = all(lhs[q] == rhs[q] for q in range(weight + 1) if q != center)
    res_w = res_wp = 0
    if center is not None:
        diff = lhs[center] - rhs[center]
        res_w, res_wp = max(diff, 0), max(-diff, 0)
    return CoverDecomposition(d, n, tuple(lhs), tuple(rhs), off_equal, res_w, res_wp)
