"""Dense linear algebra over a prime field F_p.

Matrices are plain 2-d numpy int64 arrays with entries reduced into [0, p).
All routines pivot on the first nonzero entry, so every chosen basis is
reproducible.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

DEFAULT_PRIME = 101
_MAX_PRIME = 1 << 26  # keeps int64 dot products exact for dims up to ~1e5

_state = {"p": DEFAULT_PRIME}
_listeners = []


class FieldError(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime() -> int:
    return _state["p"]


def set_prime(p: int) -> None:
    """Fix the field for the whole process; clears every registered cache."""
    p = int(p)
    if p < 101 or not _is_prime(p):
        raise FieldError(f"field characteristic must be a prime >= 101, got {p}")
    if p >= _MAX_PRIME:
        raise FieldError(f"prime {p} too large for exact int64 arithmetic")
    if p != _state["p"]:
        _state["p"] = p
        for fn in _listeners:
            fn()


def on_prime_change(fn) -> None:
    _listeners.append(fn)


def mat(rows, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    return a % _state["p"]


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(*ms: np.ndarray) -> np.ndarray:
    p = _state["p"]
    out = ms[0]
    for m in ms[1:]:
        if out.shape[1] != m.shape[0]:
            raise DimensionMismatch(f"cannot multiply {out.shape} by {m.shape}")
        out = (out @ m) % p
    return out


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a + b) % _state["p"]


def sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a - b) % _state["p"]


def neg(a: np.ndarray) -> np.ndarray:
    return (-a) % _state["p"]


def scale(c: int, a: np.ndarray) -> np.ndarray:
    return (int(c) * a) % _state["p"]


def inv_scalar(x: int) -> int:
    return pow(int(x), -1, _state["p"])


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a % _state["p"])


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and not np.any((a - b) % _state["p"])


def rref(m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    p = _state["p"]
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        if np.any(col):
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: np.ndarray) -> np.ndarray:
    """Columns spanning {x : m x = 0}, one per free column of the rref."""
    p = _state["p"]
    rows, cols = m.shape
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = zeros(cols, len(free))
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, pc in enumerate(pivots):
            out[pc, k] = (-r[i, f]) % p
    return out


def image_basis(m: np.ndarray) -> np.ndarray:
    """The pivot columns of m: a basis of its column space."""
    if m.shape[1] == 0:
        return zeros(m.shape[0], 0)
    _, pivots = rref(m)
    return m[:, pivots] % _state["p"]


def cokernel_data(m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Projection onto the coordinate complement of im(m), and that complement.

    The complement consists of the coordinates that are not pivots of the
    rref of m^T, so the inclusion of those coordinates is a right inverse.
    """
    p = _state["p"]
    rows = m.shape[0]
    if m.shape[1] == 0:
        return eye(rows), list(range(rows))
    r, piv = rref(m.T)
    r = r[: len(piv)]
    q = [c for c in range(rows) if c not in set(piv)]
    proj = zeros(len(q), rows)
    for k, c in enumerate(q):
        proj[k, c] = 1
        for i, pc in enumerate(piv):
            proj[k, pc] = (-r[i, c]) % p
    return proj, q


def cokernel_projection(m: np.ndarray) -> np.ndarray:
    return cokernel_data(m)[0]


def section(n: int, coords: Sequence[int]) -> np.ndarray:
    """Inclusion of the listed coordinates into F_p^n."""
    s = zeros(n, len(coords))
    for k, c in enumerate(coords):
        s[c, k] = 1
    return s


def solve(a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Particular solution of a x = b with free variables zero, or None."""
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"solve: a has {a.shape[0]} rows, b has {b.shape[0]}")
    n = a.shape[1]
    if a.shape[0] == 0:
        return zeros(n, b.shape[1])
    r, piv = rref(np.hstack([a, b]))
    if any(pc >= n for pc in piv):
        return None
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(piv):
        x[pc] = r[i, n:]
    return x


def inverse(a: np.ndarray) -> Optional[np.ndarray]:
    if a.shape[0] != a.shape[1]:
        return None
    if rank(a) != a.shape[0]:
        return None
    return solve(a, eye(a.shape[0]))


def is_invertible(a: np.ndarray) -> bool:
    return a.shape[0] == a.shape[1] and rank(a) == a.shape[0]


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, (i, j) -> i * dim_b + j."""
    return np.kron(a, b) % _state["p"]


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i: i + b.shape[0], j: j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def hstack(blocks: Sequence[np.ndarray], rows: int) -> np.ndarray:
    if not blocks:
        return zeros(rows, 0)
    return np.hstack(blocks)


def vstack(blocks: Sequence[np.ndarray], cols: int) -> np.ndarray:
    if not blocks:
        return zeros(0, cols)
    return np.vstack(blocks)


def random_matrix(rng: np.random.Generator, r: int, c: int) -> np.ndarray:
    return rng.integers(0, _state["p"], size=(r, c), dtype=np.int64)


def random_invertible(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        a = random_matrix(rng, n, n)
        if is_invertible(a):
            return a


def to_json(m: np.ndarray) -> dict:
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [int(x) for x in np.asarray(m).reshape(-1)],
        "order": "row-major",
    }


def from_json(d) -> np.ndarray:
    """Accepts the documented dict form or a nested list of rows."""
    if isinstance(d, dict):
        r, c = int(d["rows"]), int(d["cols"])
        entries = d["entries"]
        if d.get("order", "row-major") != "row-major":
            raise DimensionMismatch("only row-major matrices are supported")
        if len(entries) != r * c:
            raise DimensionMismatch(f"matrix declares {r}x{c} but has {len(entries)} entries")
        return mat(entries if entries else np.zeros(r * c), (r, c))
    return mat(d)
