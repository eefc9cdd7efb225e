"""Hot integer kernels: modular elimination, modular matmul, capped monomial products.

Each kernel has a numba ``@njit`` implementation and a pure-numpy twin with the
same signature.  Set ``JACRING_DISABLE_NUMBA=1`` (or have numba missing) to run
the numpy path; both must agree bit for bit.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLE_ENV = "JACRING_DISABLE_NUMBA"


def numba_enabled() -> bool:
    flag = os.environ.get(DISABLE_ENV, "").strip().lower()
    return numba is not None and flag not in ("1", "true", "yes", "on")


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def rref_modp_numpy(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    """In-place reduced row echelon form of ``a`` over F_p.

    Entries must already lie in ``[0, p)``.  Returns ``(rank, pivots)``.
    """
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            f = a[rows, c].reshape(-1, 1)
            a[rows, c:] = (a[rows, c:] - f * a[r, c:]) % p
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


def matmul_modp_numpy(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # split b into 16-bit limbs so int64 partial sums cannot overflow
    if a.shape[1] >= 1 << 15:
        raise ValueError("inner dimension too large for limb-split matmul")
    lo = b & 0xFFFF
    hi = b >> 16
    out = (a @ hi) % p
    out = (out * 65536 + (a @ lo)) % p
    return out


def capped_products_numpy(left: np.ndarray, right: np.ndarray,
                          caps: np.ndarray) -> np.ndarray:
    """Mixed-radix codes of ``left[i] + right[j]``, or -1 when a cap is exceeded.

    Result has shape ``(len(left) * len(right),)`` in row-major pair order.
    """
    radix = _radix_weights(caps)
    s = left[:, None, :] + right[None, :, :]
    ok = np.all(s <= caps, axis=2)
    codes = s @ radix
    codes[~ok] = -1
    return codes.reshape(-1)


def _radix_weights(caps: np.ndarray) -> np.ndarray:
    w = np.ones(len(caps), dtype=np.int64)
    for i in range(len(caps) - 2, -1, -1):
        w[i] = w[i + 1] * (caps[i + 1] + 1)
    return w


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True)
    def _inv_modp(x, p):
        # extended Euclid; x is a unit mod p
        t, new_t = 0, 1
        r, new_r = p, x % p
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @numba.njit(cache=True)
    def _rref_modp_nb(a, p):
        m, n = a.shape
        pivots = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            k = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(c, n):
                    tmp = a[r, j]
                    a[r, j] = a[k, j]
                    a[k, j] = tmp
            inv = _inv_modp(a[r, c], p)
            for j in range(c, n):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(m):
                if i != r:
                    f = a[i, c]
                    if f != 0:
                        for j in range(c, n):
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()

    @numba.njit(cache=True)
    def _matmul_modp_nb(a, b, p):
        # 16-bit limbs of b: each partial product is < 2^47, so up to 2^15 of
        # them can be summed before a reduction is needed
        m, k = a.shape
        n = b.shape[1]
        lo = np.zeros((m, n), dtype=np.int64)
        hi = np.zeros((m, n), dtype=np.int64)
        for i in range(m):
            count = 0
            for t in range(k):
                x = a[i, t]
                if x == 0:
                    continue
                for j in range(n):
                    y = b[t, j]
                    lo[i, j] += x * (y & 0xFFFF)
                    hi[i, j] += x * (y >> 16)
                count += 1
                if count == 1 << 15:
                    for j in range(n):
                        lo[i, j] %= p
                        hi[i, j] %= p
                    count = 0
        out = np.empty((m, n), dtype=np.int64)
        for i in range(m):
            for j in range(n):
                out[i, j] = ((hi[i, j] % p) * 65536 + lo[i, j] % p) % p
        return out

    @numba.njit(cache=True)
    def _capped_products_nb(left, right, caps, radix):
        na, v = left.shape
        nb = right.shape[0]
        out = np.empty(na * nb, dtype=np.int64)
        for i in range(na):
            for j in range(nb):
                code = 0
                for t in range(v):
                    e = left[i, t] + right[j, t]
                    if e > caps[t]:
                        code = -1
                        break
                    code += e * radix[t]
                out[i * nb + j] = code
        return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def rref_modp(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    a = np.ascontiguousarray(a, dtype=np.int64)
    if numba_enabled():
        r, piv = _rref_modp_nb(a, np.int64(p))
        return int(r), piv
    return rref_modp_numpy(a, p)


def matmul_modp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if numba_enabled():
        return _matmul_modp_nb(a, b, np.int64(p))
    return matmul_modp_numpy(a, b, p)


def capped_products(left: np.ndarray, right: np.ndarray, caps: np.ndarray) -> np.ndarray:
    left = np.ascontiguousarray(left, dtype=np.int64)
    right = np.ascontiguousarray(right, dtype=np.int64)
    caps = np.ascontiguousarray(caps, dtype=np.int64)
    if numba_enabled():
        return _capped_products_nb(left, right, caps, _radix_weights(caps))
    return capped_products_numpy(left, right, caps)


def encode(exps: np.ndarray, caps: np.ndarray) -> np.ndarray:
    return np.asarray(exps, dtype=np.int64) @ _radix_weights(np.asarray(caps, dtype=np.int64))


def decode(codes: np.ndarray, caps: np.ndarray) -> np.ndarray:
    caps = np.asarray(caps, dtype=np.int64)
    radix = _radix_weights(caps)
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((len(codes), len(caps)), dtype=np.int64)
    rest = codes.copy()
    for t in range(len(caps)):
        out[:, t] = rest // radix[t]
        rest = rest % radix[t]
    return out
