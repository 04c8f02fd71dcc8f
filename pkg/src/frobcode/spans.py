"""Vector enumeration and module spans over a tables-backed finite ring.

Vectors of length n over a ring of order q are numpy int32 rows; as a
canonical scalar key each vector encodes big-endian to
sum(v[i] * q**(n-1-i)), which fits int64 for every configuration below
the enumeration cap.  Sets of vectors are kept as row-sorted unique
arrays so equality checks and membership lookups are plain array ops.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError, PreconditionError

DEFAULT_ENUM_CAP = 1 << 20


def enum_cap():
    value = os.environ.get("FROBCODE_CAP")
    if value is None:
        return DEFAULT_ENUM_CAP
    return int(value)


def _check_encodable(order, n):
    if int(order) ** int(n) > (1 << 62):
        raise CapExceededError(
            f"vectors of length {n} over order {order} exceed int64 keys")


def encode_vectors(vectors, order):
    """Big-endian scalar keys for an (N, n) array of vectors."""
    vectors = np.asarray(vectors)
    n = vectors.shape[-1]
    _check_encodable(order, n)
    radix = np.array([order ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    return vectors.astype(np.int64) @ radix


def decode_vectors(keys, order, n):
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty(keys.shape + (n,), dtype=np.int32)
    for i in range(n):
        out[..., i] = (keys // order ** (n - 1 - i)) % order
    return out


def enumerate_vectors(order, n, cap=None):
    """All order**n vectors of length n, in encoded (lexicographic)
    order.  Raises CapExceededError past the cap."""
    if cap is None:
        cap = enum_cap()
    total = order ** n
    if total > cap:
        raise CapExceededError(
            f"enumerating {order}**{n} = {total} vectors exceeds cap {cap}")
    _check_encodable(order, n)
    return decode_vectors(np.arange(total, dtype=np.int64), order, n)


def _sorted_unique_rows(vectors, order):
    keys = encode_vectors(vectors, order)
    uniq = np.unique(keys)
    return decode_vectors(uniq, order, vectors.shape[-1]), uniq


@dataclass
class RingModuleSpan:
    """A one-sided submodule of R^n, stored as its full element list."""

    ring: object
    dim: int
    side: str
    generators: tuple
    elements: np.ndarray
    keys: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.keys is None:
            self.keys = encode_vectors(self.elements, self.ring.order)
        self._key_set = None

    @property
    def size(self):
        return len(self.elements)

    def contains(self, vector):
        key = int(encode_vectors(np.asarray(vector)[None, :],
                                 self.ring.order)[0])
        pos = np.searchsorted(self.keys, key)
        return pos < len(self.keys) and self.keys[pos] == key

    def contains_keys(self, keys):
        pos = np.searchsorted(self.keys, keys)
        pos = np.clip(pos, 0, len(self.keys) - 1)
        return self.keys[pos] == keys

    def scalars(self):
        if self.dim != 1:
            raise PreconditionError("scalars() needs ambient dimension 1")
        return self.elements[:, 0].copy()


def scalar_orbit(ring, scalars, vector, side="left"):
    """Rows s*v (side left) or v*s (side right) for s in scalars."""
    vector = np.asarray(vector, dtype=np.int32)
    scalars = np.asarray(scalars, dtype=np.int32)
    if side == "left":
        return ring.mul_table[scalars[:, None], vector[None, :]]
    if side == "right":
        return ring.mul_table[vector[None, :], scalars[:, None]]
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def span(ring, generators, side="left", cap=None):
    """The left (or right) submodule of R^n generated by the given rows.

    Closure is one pass: starting from the zero module, add one
    generator's full scalar orbit at a time and close under addition
    with the current set via the addition table.
    """
    if cap is None:
        cap = enum_cap()
    generators = [tuple(int(x) for x in g) for g in generators]
    if not generators:
        raise PreconditionError("span needs at least one generator")
    n = len(generators[0])
    all_scalars = np.arange(ring.order, dtype=np.int32)
    current = np.zeros((1, n), dtype=np.int32)
    for g in generators:
        orbit = scalar_orbit(ring, all_scalars, g, side)
        summed = ring.add_table[current[:, None, :], orbit[None, :, :]]
        summed = summed.reshape(-1, n)
        current, keys = _sorted_unique_rows(summed, ring.order)
        if len(current) > cap:
            raise CapExceededError(
                f"span grew past cap {cap}")
    return RingModuleSpan(ring, n, side, tuple(generators), current, keys)


def unit_orbit(ring, vector, side="left"):
    """Sorted unique rows {u*v : u a unit} (or v*u on the right)."""
    orbit = scalar_orbit(ring, ring.units_array, vector, side)
    rows, _ = _sorted_unique_rows(orbit, ring.order)
    return rows


def canonical_point_id(ring, vector, side="left"):
    """Encoded key of the lexicographically least element of the unit
    orbit of vector; constant on orbits."""
    orbit = scalar_orbit(ring, ring.units_array, vector, side)
    return int(encode_vectors(orbit, ring.order).min())


def combine_rows(ring, matrix, coefficients):
    """Rows x @ G for each coefficient row x (left module combination)."""
    G = np.asarray(matrix, dtype=np.int32)
    X = np.asarray(coefficients, dtype=np.int32)
    k, n = G.shape
    acc = ring.mul_table[X[:, 0][:, None], G[0][None, :]]
    for i in range(1, k):
        term = ring.mul_table[X[:, i][:, None], G[i][None, :]]
        acc = ring.add_table[acc, term]
    return acc


def apply_matrix(ring, matrix, vectors):
    """Rows (G @ y^T)^T for each vector y (right-side combination)."""
    G = np.asarray(matrix, dtype=np.int32)
    Y = np.asarray(vectors, dtype=np.int32)
    k, n = G.shape
    acc = ring.mul_table[G[:, 0][None, :], Y[:, 0][:, None]]
    for j in range(1, n):
        term = ring.mul_table[G[:, j][None, :], Y[:, j][:, None]]
        acc = ring.add_table[acc, term]
    return acc


def row_space(ring, matrix, cap=None):
    """All combinations x @ G for x in R^k, as sorted unique rows."""
    G = np.asarray(matrix, dtype=np.int32)
    k = G.shape[0]
    X = enumerate_vectors(ring.order, k, cap)
    rows = combine_rows(ring, G, X)
    out, _ = _sorted_unique_rows(rows, ring.order)
    return out


def column_space(ring, matrix, cap=None):
    """All products G @ y^T for y in R^n, as sorted unique rows of
    length k."""
    G = np.asarray(matrix, dtype=np.int32)
    n = G.shape[1]
    Y = enumerate_vectors(ring.order, n, cap)
    cols = apply_matrix(ring, G, Y)
    out, _ = _sorted_unique_rows(cols, ring.order)
    return out


def check_row_column_cardinality(ring, matrix, cap=None):
    """Verify that the row space (x @ G) and column space (G @ y) have
    the same number of elements; returns that common size."""
    nrows = len(row_space(ring, matrix, cap))
    ncols = len(column_space(ring, matrix, cap))
    if nrows != ncols:
        from .errors import IdentityCheckError

        raise IdentityCheckError(
            f"row space has {nrows} elements, column space {ncols}",
            witness={"matrix": np.asarray(matrix).tolist()})
    return nrows


def right_kernel(ring, matrix, cap=None):
    """All y in R^n with G @ y^T = 0, as sorted unique rows."""
    G = np.asarray(matrix, dtype=np.int32)
    n = G.shape[1]
    Y = enumerate_vectors(ring.order, n, cap)
    images = apply_matrix(ring, G, Y)
    mask = (images == 0).all(axis=1)
    out, _ = _sorted_unique_rows(Y[mask], ring.order)
    return out


def is_submodule(ring, vectors, side="left"):
    """True iff the given sorted unique rows form a one-sided submodule
    of R^n (nonempty, closed under addition and scalar action)."""
    vectors = np.asarray(vectors, dtype=np.int32)
    if vectors.ndim != 2 or len(vectors) == 0:
        return False
    keys = encode_vectors(vectors, ring.order)
    keys = np.sort(keys)

    def covered(rows):
        rk = encode_vectors(rows.reshape(-1, vectors.shape[1]), ring.order)
        pos = np.searchsorted(keys, rk)
        pos = np.clip(pos, 0, len(keys) - 1)
        return bool((keys[pos] == rk).all())

    if not covered(np.zeros((1, vectors.shape[1]), dtype=np.int32)):
        return False
    sums = ring.add_table[vectors[:, None, :], vectors[None, :, :]]
    if not covered(sums):
        return False
    all_scalars = np.arange(ring.order, dtype=np.int32)
    if side == "left":
        scaled = ring.mul_table[all_scalars[:, None, None],
                                vectors[None, :, :]]
    else:
        scaled = ring.mul_table[vectors[None, :, :],
                                all_scalars[:, None, None]]
    return covered(scaled)
