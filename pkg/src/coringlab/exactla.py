"""
Exact scalars and linear algebra over Q and F_p.

Matrices are numpy arrays.  Over Q the entries are ``gmpy2.mpq`` held in
object arrays; over F_p they are residues in ``int64`` arrays (object
arrays of Python ints when p is too large for safe int64 products).
Vectors are 1-d arrays; a linear map is a matrix acting on column vectors.

Elimination is deterministic: the pivot of each column is the topmost
remaining nonzero row, and ``solve`` sets free variables to zero.  Every
basis that the rest of the package builds is therefore reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from operator import mul
from typing import NamedTuple, Optional, Sequence

import gmpy2
import math

import numpy as np
from gmpy2 import mpq

__all__ = [
    "Field", "Rationals", "PrimeField", "QQ", "GF", "Mod",
    "FinSpace", "LinMap", "QuotientSpace", "RREF",
    "parse_scalar", "infer_field", "rref", "kernel", "image", "solve",
    "quotient", "tensor_k", "apply_block",
]


class Mod:
    """An element of F_p, as produced by parsing ``"a mod p"``."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        if not gmpy2.is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        self.p = int(p)
        self.value = int(value) % self.p

    def _other(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise TypeError("cannot mix F_%d and F_%d" % (self.p, other.p))
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.value + o, self.p)
    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Mod(self.value * o, self.p)
    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.p)
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Mod(o, self.p).inverse()

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return False
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return "%d mod %d" % (self.value, self.p)


class Field:
    """Base class for the two supported ground fields."""

    kind: str
    dtype: object

    # -- scalars -------------------------------------------------------
    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def format_array(self, A) -> str:
        """Aligned text for a vector or matrix."""
        A = np.asarray(A)
        rows = [A] if A.ndim == 1 else list(A)
        cells = [[self.format(x) for x in row] for row in rows]
        width = max((len(c) for row in cells for c in row), default=0)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    # -- arrays --------------------------------------------------------
    def array(self, data) -> np.ndarray:
        a = np.asarray(data, dtype=object)
        if a.size == 0:
            return np.zeros(a.shape, dtype=self.dtype) if self.dtype is not object \
                else np.full(a.shape, self.zero, dtype=object)
        flat = [self.coerce(x) for x in a.ravel()]
        out = np.empty(a.shape, dtype=self.dtype)
        out.ravel()[:] = flat if self.dtype is object else np.array(flat, dtype=self.dtype)
        return out

    def zeros(self, *shape) -> np.ndarray:
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        if self.dtype is object:
            return np.full(shape, self.zero, dtype=object)
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.one
        return a

    def basis_vector(self, n: int, i: int) -> np.ndarray:
        v = self.zeros(n)
        v[i] = self.one
        return v

    def normalize(self, a):
        return a

    def dot(self, a, b):
        return self.normalize(np.dot(a, b))

    def kron(self, a, b):
        return self.normalize(np.kron(a, b))

    def is_zero(self, a) -> bool:
        return not np.any(np.asarray(a) != 0)

    def equal(self, a, b) -> bool:
        a, b = np.asarray(a), np.asarray(b)
        return a.shape == b.shape and self.is_zero(self.normalize(a - b))

    # -- elimination ---------------------------------------------------
    def scale_row(self, row, c):
        raise NotImplementedError

    def rref(self, a) -> "RREF":
        a = self.normalize(np.array(a, dtype=self.dtype, copy=True))
        if a.ndim != 2:
            raise ValueError("rref needs a 2-d matrix")
        nrows, ncols = a.shape
        pivots = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.flatnonzero(a[r:, c] != 0)
            if len(nz) == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                a[[r, p]] = a[[p, r]]
            a[r] = self.scale_row(a[r], self.inv(a[r, c]))
            others = np.flatnonzero(a[:, c] != 0)
            others = others[others != r]
            if len(others):
                a[others] = self.normalize(
                    a[others] - np.multiply.outer(a[others, c], a[r]))
            pivots.append(c)
            r += 1
        return RREF(r, tuple(pivots), a)

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return self.rref(a).rank

    def kernel(self, a) -> np.ndarray:
        """Columns form a basis of ``{x : a x = 0}``."""
        a = np.asarray(a)
        n = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(n)
        red = self.rref(a)
        free = [j for j in range(n) if j not in set(red.pivots)]
        out = self.zeros(n, len(free))
        for col, f in enumerate(free):
            out[f, col] = self.one
            for k, p in enumerate(red.pivots):
                out[p, col] = self.normalize(-red.matrix[k, f])
        return out

    def image(self, a) -> np.ndarray:
        a = np.asarray(a)
        if a.size == 0:
            return self.zeros(a.shape[0], 0)
        return a[:, list(self.rref(a).pivots)]

    def solve(self, a, b) -> Optional[np.ndarray]:
        """One solution of ``a x = b`` (free variables zero), or None.

        ``b`` may be a matrix, in which case all columns are solved jointly
        and None is returned if any column is inconsistent.
        """
        a = np.asarray(a)
        b = np.asarray(b)
        vec = b.ndim == 1
        if vec:
            b = b.reshape(-1, 1)
        m, n = a.shape
        k = b.shape[1]
        if m == 0:
            x = self.zeros(n, k)
            return x[:, 0] if vec else x
        red = self.rref(np.concatenate([np.asarray(a, dtype=self.dtype),
                                        np.asarray(b, dtype=self.dtype)], axis=1))
        if any(p >= n for p in red.pivots):
            return None
        x = self.zeros(n, k)
        for row, p in enumerate(red.pivots):
            x[p] = red.matrix[row, n:]
        return x[:, 0] if vec else x

    def inverse(self, a) -> np.ndarray:
        a = np.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(a, self.eye(n))
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        return x

    def left_inverse(self, a) -> np.ndarray:
        """Some ``l`` with ``l a = 1``; ``a`` must have independent columns."""
        a = np.asarray(a)
        lt = self.solve(a.T, self.eye(a.shape[1]))
        if lt is None:
            raise ValueError("columns are not independent")
        return lt.T


class Rationals(Field):
    kind = "rational"
    dtype = object

    def coerce(self, x):
        if isinstance(x, Mod):
            raise TypeError("F_%d element given where a rational is expected" % x.p)
        if isinstance(x, str):
            x = parse_scalar(x)
            if isinstance(x, Mod):
                raise TypeError("F_%d element given where a rational is expected" % x.p)
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, (float, np.floating)):
            raise TypeError("floating point values are not exact scalars")
        return mpq(x)

    def inv(self, x):
        return 1 / mpq(x)

    def scale_row(self, row, c):
        return row * c

    def format(self, x) -> str:
        x = mpq(x)
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)

    def dot(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        ia, da = _as_scaled_ints(a)
        ib, db = _as_scaled_ints(b) if ia is not None else (None, 1)
        if ia is not None and ib is not None:
            inner = a.shape[-1] if a.ndim else 1
            bound = int(np.abs(ia).max(initial=0)) * int(np.abs(ib).max(initial=0)) * max(inner, 1)
            if bound < 2 ** 62:
                out = np.dot(ia, ib)
                den = da * db
                if np.ndim(out) == 0:
                    return mpq(int(out), den)
                if den == 1:
                    return _ints_to_mpq(out)
                res = np.empty(out.shape, dtype=object)
                res.ravel()[:] = [mpq(x, den) for x in out.ravel().tolist()]
                return res
        return np.dot(a, b)

    def kron(self, a, b):
        return np.kron(np.asarray(a, dtype=object), np.asarray(b, dtype=object))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


def _as_small_ints(a):
    if a.dtype != object:
        return None
    if a.size == 0:
        return np.zeros(a.shape, dtype=np.int64)
    try:
        ints = a.astype(np.int64)
    except (TypeError, OverflowError, ValueError):
        return None
    if not (ints == a).all() or np.abs(ints).max() >= 2 ** 31:
        return None
    return ints


_denominator = np.frompyfunc(lambda x: int(mpq(x).denominator), 1, 1)


def _as_scaled_ints(a):
    """``(ints, D)`` with ``a == ints / D`` and small ``ints``, or ``(None, 1)``."""
    ints = _as_small_ints(a)
    if ints is not None:
        return ints, 1
    if a.dtype != object:
        return None, 1
    try:
        dens = set(_denominator(a).ravel().tolist())
    except TypeError:
        return None, 1
    D = math.lcm(*dens)
    if D >= 2 ** 20:
        return None, 1
    ints = _as_small_ints(a * mpq(D))
    return (ints, D) if ints is not None else (None, 1)


_LUT_OFFSET = 256
_MPQ_LUT = np.empty(2 * _LUT_OFFSET + 1, dtype=object)
_MPQ_LUT[:] = [mpq(i - _LUT_OFFSET) for i in range(2 * _LUT_OFFSET + 1)]


def _ints_to_mpq(a):
    if a.size and np.abs(a).max() <= _LUT_OFFSET:
        return _MPQ_LUT[a + _LUT_OFFSET]
    out = np.empty(a.shape, dtype=object)
    out.ravel()[:] = [mpq(x) for x in a.ravel().tolist()]
    return out


class PrimeField(Field):
    kind = "prime-field"

    def __init__(self, p: int):
        p = int(p)
        if not gmpy2.is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p
        # int64 products stay exact while p^2 * inner_dim < 2^63
        self.dtype = np.int64 if p < 2 ** 15 else object

    def coerce(self, x):
        if isinstance(x, str):
            x = parse_scalar(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise TypeError("F_%d element given where F_%d is expected" % (x.p, self.p))
            return x.value
        if isinstance(x, (Fraction, type(mpq(0)))):
            if x.denominator != 1:
                return int(x.numerator) * pow(int(x.denominator), -1, self.p) % self.p
            x = int(x.numerator)
        if isinstance(x, (float, np.floating)):
            raise TypeError("floating point values are not exact scalars")
        return int(x) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.p)
        return pow(x, -1, self.p)

    def normalize(self, a):
        if isinstance(a, np.ndarray):
            return a % self.p
        return int(a) % self.p

    def scale_row(self, row, c):
        return (row * c) % self.p

    def dot(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if self.dtype is not object and a.size and b.size:
            inner = a.shape[-1]
            if (self.p - 1) ** 2 * inner >= 2 ** 63:
                return np.dot(a.astype(object), b.astype(object)) % self.p
        return np.dot(a, b) % self.p

    def format(self, x) -> str:
        return str(int(x) % self.p)

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()
_GF_CACHE = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def parse_scalar(text):
    """Parse ``"3/2"``, ``"-1"`` or ``"1 mod 2"`` into an exact scalar."""
    if not isinstance(text, str):
        return text
    s = text.strip()
    if " mod " in s:
        a, p = s.split(" mod ")
        return Mod(int(a), int(p))
    try:
        return mpq(Fraction(s))
    except ValueError:
        raise ValueError("not an exact scalar: %r" % text) from None


def infer_field(entries) -> Field:
    """Pick the field shared by a nested collection of scalars."""
    primes = set()
    fractional = False
    for x in np.asarray(entries, dtype=object).ravel():
        if isinstance(x, str):
            x = parse_scalar(x)
        if isinstance(x, Mod):
            primes.add(x.p)
        elif isinstance(x, (float, np.floating)):
            raise TypeError("floating point values are not exact scalars")
        elif not isinstance(x, (int, np.integer)):
            if getattr(x, "denominator", 1) != 1:
                fractional = True
    if len(primes) > 1:
        raise TypeError("mixed prime fields: %s" % sorted(primes))
    if primes and fractional:
        raise TypeError("mixed rational and prime-field scalars")
    if primes:
        return GF(primes.pop())
    return QQ


# ---------------------------------------------------------------------------
# spaces and maps


@dataclass(frozen=True)
class FinSpace:
    dim: int
    labels: Optional[tuple] = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("negative dimension")
        if self.labels is not None and len(self.labels) != self.dim:
            raise ValueError("need one label per basis vector")


@dataclass(frozen=True, eq=False)
class LinMap:
    domain: FinSpace
    codomain: FinSpace
    matrix: np.ndarray
    field: Field = dc_field(default=QQ)

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.dim, self.domain.dim):
            raise ValueError("matrix shape %s does not match %d -> %d" % (
                self.matrix.shape, self.domain.dim, self.codomain.dim))

    @classmethod
    def from_matrix(cls, field, matrix):
        m = field.array(matrix)
        if m.ndim != 2:
            raise ValueError("need a 2-d matrix")
        return cls(FinSpace(m.shape[1]), FinSpace(m.shape[0]), m, field)

    @classmethod
    def identity(cls, field, space):
        return cls(space, space, field.eye(space.dim), field)

    def __call__(self, v):
        return self.field.dot(self.matrix, v)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if other.codomain.dim != self.domain.dim:
            raise ValueError("cannot compose")
        return LinMap(other.domain, self.codomain,
                      self.field.dot(self.matrix, other.matrix), self.field)

    def rank(self) -> int:
        return self.field.rank(self.matrix)

    def __eq__(self, other):
        return (isinstance(other, LinMap) and self.field == other.field
                and self.field.equal(self.matrix, other.matrix))

    __hash__ = None


class RREF(NamedTuple):
    rank: int
    pivots: tuple
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    ambient: FinSpace
    relations: np.ndarray        # one relation per row
    quotient: FinSpace
    projection: LinMap
    section: LinMap


def _field_and_matrix(m, field):
    if isinstance(m, LinMap):
        return m.field, m.matrix
    if field is None:
        field = infer_field(m)
    return field, field.array(m)


def rref(m, field: Optional[Field] = None) -> RREF:
    """Reduced row echelon form; mixing scalar kinds raises TypeError."""
    field, a = _field_and_matrix(m, field)
    return field.rref(a)


def kernel(f, field: Optional[Field] = None) -> list:
    field, a = _field_and_matrix(f, field)
    k = field.kernel(a)
    return [k[:, i] for i in range(k.shape[1])]


def image(f, field: Optional[Field] = None) -> list:
    field, a = _field_and_matrix(f, field)
    im = field.image(a)
    return [im[:, i] for i in range(im.shape[1])]


def solve(f, target, field: Optional[Field] = None):
    field, a = _field_and_matrix(f, field)
    return field.solve(a, field.array(target))


def quotient(field: Field, ambient, relations) -> QuotientSpace:
    """Quotient of ``ambient`` by the span of ``relations`` (rows).

    The quotient basis is the set of non-pivot coordinates of the relation
    RREF, so the section is a coordinate inclusion.
    """
    if isinstance(ambient, int):
        ambient = FinSpace(ambient)
    n = ambient.dim
    rel = field.array(relations) if len(relations) else field.zeros(0, n)
    rel = rel.reshape(-1, n)
    proj, sec = quotient_matrices(field, rel, n)
    q = FinSpace(proj.shape[0])
    return QuotientSpace(ambient, rel, q,
                         LinMap(ambient, q, proj, field),
                         LinMap(q, ambient, sec, field))


def quotient_matrices(field: Field, rel: np.ndarray, n: int):
    """Projection and section matrices for the quotient by the row span of ``rel``."""
    if rel.shape[0] == 0 or field.is_zero(rel):
        return field.eye(n), field.eye(n)
    red = field.rref(rel)
    piv = list(red.pivots)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    proj = field.zeros(len(free), n)
    sec = field.zeros(n, len(free))
    for q, j in enumerate(free):
        proj[q, j] = field.one
        sec[j, q] = field.one
    rows = red.matrix[:red.rank]
    for k, p in enumerate(piv):
        proj[:, p] = field.normalize(-rows[k, free])
    return proj, sec


def tensor_k(U: FinSpace, V: FinSpace):
    """``U (x) V`` over the ground field with row-major flat indices."""
    W = FinSpace(U.dim * V.dim)

    def index(i, j):
        return i * V.dim + j

    def unindex(k):
        return divmod(k, V.dim)

    return W, index, unindex


def apply_block(field: Field, X, dims: Sequence[int], start: int, stop: int,
                A, out_dims: Sequence[int] = None):
    """Apply ``A`` to tensor factors ``start:stop`` of the columns of ``X``.

    ``X`` has shape ``(prod(dims), m)`` with row-major flat indices.  ``A``
    maps the product of the selected factors to a space of dimension
    ``prod(out_dims)``.  Returns the new matrix and the new factor dims.
    """
    dims = list(dims)
    X = np.asarray(X)
    vec = X.ndim == 1
    if vec:
        X = X.reshape(-1, 1)
    m = X.shape[1]
    pre = _prod(dims[:start])
    blk = _prod(dims[start:stop])
    post = _prod(dims[stop:])
    A = np.asarray(A)
    if A.shape[1] != blk:
        raise ValueError("block map expects dim %d, got %d" % (A.shape[1], blk))
    if out_dims is None:
        out_dims = [A.shape[0]]
    out = A.shape[0]
    new_dims = dims[:start] + list(out_dims) + dims[stop:]
    if X.size == 0 or A.size == 0:
        Z = field.zeros(pre * out * post, m)
        return (Z[:, 0] if vec else Z), new_dims
    Y = X.reshape(pre, blk, post * m).transpose(1, 0, 2).reshape(blk, -1)
    Z = field.dot(A, Y).reshape(out, pre, post * m).transpose(1, 0, 2)
    Z = np.ascontiguousarray(Z).reshape(pre * out * post, m)
    return (Z[:, 0] if vec else Z), new_dims


def _prod(xs):
    return reduce(mul, xs, 1)

