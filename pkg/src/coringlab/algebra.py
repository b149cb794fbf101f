"""
Finite-dimensional algebras by structure constants, their modules and
bimodules, and tensor products over a (noncommutative) algebra.

Conventions
-----------
* ``Algebra.mult[i, j]`` is the coefficient vector of ``e_i e_j``.
* A bimodule stores one matrix per algebra basis element:
  ``left[a] @ v == e_a . v`` and ``right[a] @ v == v . e_a``.
  A one-sided module simply has ``None`` on the other side.
* ``M (x)_R N`` is the quotient of ``M (x)_k N`` (row-major flat index
  ``i * dim N + j``) by the balancing relations ``m r (x) n - m (x) r n``.
  Nested products remember how to flatten all the way down to the
  iterated tensor product over the ground field (``flat``) and how to lift
  back (``lift``), so multilinear formulas can be evaluated on pure tensors
  of basis vectors and pushed into any quotient.

All axioms are checked on basis tuples only, which suffices by
multilinearity.
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional

import numpy as np

from .checks import CheckReport
from .exactla import Field, quotient_matrices


class Algebra:
    """Associative unital algebra over ``field`` given by structure constants."""

    def __init__(self, field: Field, mult, unit, names=None, name=None):
        self.field = field
        self.mult = field.array(mult)
        self.unit = field.array(unit)
        n = self.unit.shape[0]
        if self.mult.shape != (n, n, n):
            raise ValueError("structure constants must have shape (%d, %d, %d), got %s"
                             % (n, n, n, self.mult.shape))
        self.dim = n
        self.names = tuple(names) if names is not None else tuple("e%d" % i for i in range(n))
        self.name = name or "A"

    def __repr__(self):
        return "Algebra(%s, dim=%d over %r)" % (self.name, self.dim, self.field)

    # structure ------------------------------------------------------------
    @cached_property
    def mult_matrix(self):
        """Multiplication as a linear map ``A (x)_k A -> A``."""
        n = self.dim
        return np.ascontiguousarray(self.mult.reshape(n * n, n).T)

    @cached_property
    def left_regular(self):
        # left_regular[i] @ x == e_i x
        return np.ascontiguousarray(self.mult.transpose(0, 2, 1))

    @cached_property
    def right_regular(self):
        # right_regular[j] @ x == x e_j
        return np.ascontiguousarray(self.mult.transpose(1, 2, 0))

    def basis(self, i):
        return self.field.basis_vector(self.dim, i)

    def mul(self, a, b):
        return self.field.dot(self.mult_matrix, self.field.kron(a, b))

    def lmat(self, a):
        """Matrix of ``x -> a x``."""
        return combine(self.field, a, self.left_regular, self.dim)

    def rmat(self, b):
        """Matrix of ``x -> x b``."""
        return combine(self.field, b, self.right_regular, self.dim)

    def same_as(self, other) -> bool:
        return other is self or (
            isinstance(other, Algebra) and other.field == self.field
            and other.dim == self.dim
            and self.field.equal(other.mult, self.mult)
            and self.field.equal(other.unit, self.unit))

    def opposite(self) -> "Algebra":
        return Algebra(self.field, self.mult.transpose(1, 0, 2), self.unit,
                       self.names, self.name + "^op")

    # constructors ---------------------------------------------------------
    @classmethod
    def ground(cls, field: Field) -> "Algebra":
        return cls(field, [[[1]]], [1], names=["1"], name="k")

    @classmethod
    def polynomial_quotient(cls, field: Field, coeffs, var="x", name=None) -> "Algebra":
        """``k[x]/(f)`` with basis ``1, x, ..., x^(n-1)``.

        ``coeffs`` lists the coefficients of the monic polynomial ``f``,
        constant term first, leading 1 last.
        """
        c = [field.coerce(x) for x in coeffs]
        n = len(c) - 1
        if n < 1 or c[-1] != field.one:
            raise ValueError("need a monic polynomial of degree >= 1")
        # powers[k] = x^k reduced, for k < 2n-1
        powers = []
        for k in range(2 * n - 1):
            if k < n:
                powers.append(field.basis_vector(n, k))
                continue
            prev = powers[-1]
            # x * prev: shift up, then replace x^n by -(c_0 + ... + c_{n-1} x^{n-1})
            top = prev[n - 1]
            v = field.zeros(n)
            v[1:] = prev[:-1]
            v = field.normalize(v - top * field.array(c[:n]))
            powers.append(v)
        mult = field.zeros(n, n, n)
        for i in range(n):
            for j in range(n):
                mult[i, j] = powers[i + j]
        names = ["1"] + [var if k == 1 else "%s^%d" % (var, k) for k in range(1, n)]
        return cls(field, mult, field.basis_vector(n, 0), names, name or "k[%s]/(f)" % var)

    @classmethod
    def cyclic_group_algebra(cls, field: Field, order: int, gen="s") -> "Algebra":
        n = order
        mult = field.zeros(n, n, n)
        for i in range(n):
            for j in range(n):
                mult[i, j, (i + j) % n] = field.one
        names = ["1"] + [gen if k == 1 else "%s^%d" % (gen, k) for k in range(1, n)]
        return cls(field, mult, field.basis_vector(n, 0), names, "kC%d" % n)

    @classmethod
    def from_matrices(cls, field: Field, mats, names=None, name=None) -> "Algebra":
        """Subalgebra of a matrix algebra spanned by ``mats`` (must be closed)."""
        mats = [field.array(m) for m in mats]
        n = len(mats)
        B = np.stack([m.ravel() for m in mats], axis=1)
        mult = field.zeros(n, n, n)
        for i in range(n):
            for j in range(n):
                x = field.solve(B, field.dot(mats[i], mats[j]).ravel())
                if x is None:
                    raise ValueError("span of the matrices is not closed under products")
                mult[i, j] = x
        unit = field.solve(B, field.eye(mats[0].shape[0]).ravel())
        if unit is None:
            raise ValueError("identity matrix is not in the span")
        return cls(field, mult, unit, names, name or "matrix subalgebra")


def combine(field, coeffs, stack, dim):
    """``sum_a coeffs[a] * stack[a]`` for a stack of square matrices."""
    coeffs = np.asarray(coeffs)
    if stack.shape[0] == 0:
        return field.zeros(dim, dim)
    flat = stack.reshape(stack.shape[0], -1)
    return field.dot(coeffs, flat).reshape(dim, dim)


class AlgebraMap:
    """Unital algebra map ``source -> target`` (used for subalgebras S -> R)."""

    def __init__(self, source: Algebra, target: Algebra, matrix):
        self.source = source
        self.target = target
        self.field = source.field
        self.matrix = self.field.array(matrix).reshape(target.dim, source.dim)

    def __call__(self, s):
        return self.field.dot(self.matrix, s)

    @classmethod
    def unit_map(cls, A: Algebra) -> "AlgebraMap":
        k = Algebra.ground(A.field)
        return cls(k, A, A.unit.reshape(A.dim, 1))

    @classmethod
    def identity(cls, A: Algebra) -> "AlgebraMap":
        return cls(A, A, A.field.eye(A.dim))

    def is_injective(self) -> bool:
        return self.field.rank(self.matrix) == self.source.dim


# ---------------------------------------------------------------------------
# bimodules


class Bimodule:
    """A finite-dimensional ``(L, Rt)``-bimodule given by action matrices."""

    def __init__(self, field: Field, dim: int, left_alg: Optional[Algebra] = None, left=None,
                 right_alg: Optional[Algebra] = None, right=None, name=None):
        self.field = field
        self.dim = int(dim)
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.left = None if left_alg is None else field.array(left).reshape(
            left_alg.dim, self.dim, self.dim)
        self.right = None if right_alg is None else field.array(right).reshape(
            right_alg.dim, self.dim, self.dim)
        self.name = name or "M"

    def __repr__(self):
        sides = "%s,%s" % (self.left_alg.name if self.left_alg else "-",
                           self.right_alg.name if self.right_alg else "-")
        return "%s(%s, dim=%d, (%s))" % (type(self).__name__, self.name, self.dim, sides)

    # k-level tensor structure: a plain module is a single factor
    @property
    def factors(self):
        return [self.dim]

    @cached_property
    def flat(self):
        return self.field.eye(self.dim)

    @cached_property
    def lift(self):
        return self.field.eye(self.dim)

    def lmat(self, r):
        return combine(self.field, r, self.left, self.dim)

    def rmat(self, r):
        return combine(self.field, r, self.right, self.dim)

    @cached_property
    def right_action_matrix(self):
        """``M (x)_k Rt -> M``, ``m (x) r -> m r``."""
        d = self.dim
        return np.ascontiguousarray(self.right.transpose(1, 2, 0).reshape(d, d * self.right.shape[0]))

    @cached_property
    def left_action_matrix(self):
        """``L (x)_k M -> M``, ``r (x) m -> r m``."""
        d = self.dim
        return np.ascontiguousarray(self.left.transpose(1, 0, 2).reshape(d, self.left.shape[0] * d))

    def with_sides(self, left=True, right=True) -> "Bimodule":
        """Forget one of the actions."""
        return Bimodule(self.field, self.dim,
                        self.left_alg if left else None, self.left if left else None,
                        self.right_alg if right else None, self.right if right else None,
                        self.name)


def regular_bimodule(R: Algebra, left=True, right=True, name=None) -> Bimodule:
    return Bimodule(R.field, R.dim,
                    R if left else None, R.left_regular if left else None,
                    R if right else None, R.right_regular if right else None,
                    name or R.name)


def free_module(R: Algebra, n: int, name=None) -> Bimodule:
    """Right module ``R^n``; basis ``(i, a)`` has flat index ``i * dim R + a``."""
    F = R.field
    right = np.stack([F.kron(F.eye(n), R.right_regular[a]) for a in range(R.dim)])
    return Bimodule(F, n * R.dim, right_alg=R, right=right, name=name or "%s^%d" % (R.name, n))


def direct_sum(M: Bimodule, N: Bimodule, name=None) -> Bimodule:
    F = M.field

    def block(a, b):
        out = F.zeros(M.dim + N.dim, M.dim + N.dim)
        out[:M.dim, :M.dim] = a
        out[M.dim:, M.dim:] = b
        return out

    left = right = None
    if M.left_alg is not None:
        left = np.stack([block(M.left[a], N.left[a]) for a in range(M.left_alg.dim)])
    if M.right_alg is not None:
        right = np.stack([block(M.right[a], N.right[a]) for a in range(M.right_alg.dim)])
    return Bimodule(F, M.dim + N.dim, M.left_alg, left, M.right_alg, right,
                    name or "%s+%s" % (M.name, N.name))


def restrict(M: Bimodule, left: Optional[AlgebraMap] = None,
             right: Optional[AlgebraMap] = None, keep=True) -> Bimodule:
    """Restrict scalars along algebra maps into the acting algebras.

    Sides without a map are kept (``keep=True``) or dropped.
    """
    F = M.field
    la, lt, ra, rt = M.left_alg, M.left, M.right_alg, M.right
    if left is not None:
        la = left.source
        lt = np.stack([M.lmat(left.matrix[:, b]) for b in range(la.dim)])
    elif not keep:
        la = lt = None
    if right is not None:
        ra = right.source
        rt = np.stack([M.rmat(right.matrix[:, b]) for b in range(ra.dim)])
    elif not keep:
        ra = rt = None
    return Bimodule(F, M.dim, la, lt, ra, rt, M.name)


def submodule(M: Bimodule, basis, name=None) -> Bimodule:
    """The sub-bimodule spanned by the columns of ``basis`` (must be invariant)."""
    F = M.field
    B = F.array(basis).reshape(M.dim, -1)
    linv = F.left_inverse(B) if B.shape[1] else F.zeros(0, M.dim)

    def induced(stack):
        out = []
        for A in stack:
            AB = F.dot(A, B)
            X = F.dot(linv, AB)
            if not F.equal(F.dot(B, X), AB):
                raise ValueError("subspace is not invariant under the action")
            out.append(X)
        return np.stack(out) if out else None

    left = induced(M.left) if M.left_alg is not None else None
    right = induced(M.right) if M.right_alg is not None else None
    sub = Bimodule(F, B.shape[1], M.left_alg, left, M.right_alg, right, name or "sub(%s)" % M.name)
    sub.inclusion = B
    return sub


def generated_subspace(M: Bimodule, vectors):
    """Basis (columns) of the smallest action-invariant subspace containing ``vectors``."""
    F = M.field
    mats = []
    if M.left_alg is not None:
        mats += list(M.left)
    if M.right_alg is not None:
        mats += list(M.right)
    V = F.array(vectors).reshape(-1, M.dim).T
    basis = F.image(V) if V.shape[1] else F.zeros(M.dim, 0)
    while True:
        cand = np.concatenate([basis] + [F.dot(A, basis) for A in mats], axis=1) \
            if basis.shape[1] else basis
        new = F.image(cand) if cand.shape[1] else cand
        if new.shape[1] == basis.shape[1]:
            return basis
        basis = new


def quotient_module(M: Bimodule, vectors, name=None) -> Bimodule:
    """``M`` modulo the sub-bimodule generated by ``vectors``."""
    F = M.field
    sub = generated_subspace(M, vectors)
    P, S = quotient_matrices(F, sub.T, M.dim)
    left = right = None
    if M.left_alg is not None:
        left = np.stack([F.dot(P, F.dot(A, S)) for A in M.left])
    if M.right_alg is not None:
        right = np.stack([F.dot(P, F.dot(A, S)) for A in M.right])
    Q = Bimodule(F, P.shape[0], M.left_alg, left, M.right_alg, right, name or "%s/N" % M.name)
    Q.projection = P
    Q.section = S
    return Q


# ---------------------------------------------------------------------------
# checks


def check_algebra_axioms(A: Algebra) -> CheckReport:
    F = A.field
    rep = CheckReport("algebra " + A.name)
    T = A.mult
    n = A.dim
    lhs = F.normalize(np.tensordot(T, T, axes=([2], [0])))                 # (e_i e_j) e_k
    rhs = F.normalize(np.tensordot(T, T, axes=([1], [2])).transpose(0, 2, 3, 1))  # e_i (e_j e_k)
    bad = np.any(F.normalize(lhs - rhs) != 0, axis=3)
    rep.add("associative", [tuple(int(x) for x in t) for t in np.argwhere(bad)])
    fails = []
    for i in range(n):
        e = A.basis(i)
        if not F.equal(A.mul(A.unit, e), e) or not F.equal(A.mul(e, A.unit), e):
            fails.append((i,))
    rep.add("unital", fails)
    return rep


def check_algebra_map(f: AlgebraMap) -> CheckReport:
    F = f.field
    S, R = f.source, f.target
    rep = CheckReport("algebra map %s -> %s" % (S.name, R.name))
    rep.add("unit", [] if F.equal(f(S.unit), R.unit) else [("unit",)])
    fails = []
    for i in range(S.dim):
        for j in range(S.dim):
            a, b = S.basis(i), S.basis(j)
            if not F.equal(f(S.mul(a, b)), R.mul(f(a), f(b))):
                fails.append((i, j))
    rep.add("multiplicative", fails)
    return rep


def _action_checks(rep, side, alg, stack, dim, F, left):
    assoc, unital = [], []
    for a in range(alg.dim):
        for b in range(alg.dim):
            prod = combine(F, alg.mult[a, b], stack, dim)
            # left: a.(b.m) = (ab).m ; right: (m.a).b = m.(ab)
            comp = F.dot(stack[a], stack[b]) if left else F.dot(stack[b], stack[a])
            if not F.equal(comp, prod):
                assoc.append((a, b))
    if not F.equal(combine(F, alg.unit, stack, dim), F.eye(dim)):
        unital.append(("unit",))
    rep.add(side + "_associative", assoc)
    rep.add(side + "_unital", unital)


def check_bimodule(M: Bimodule) -> CheckReport:
    F = M.field
    rep = CheckReport("bimodule " + M.name)
    if M.left_alg is not None:
        _action_checks(rep, "left", M.left_alg, M.left, M.dim, F, True)
    if M.right_alg is not None:
        _action_checks(rep, "right", M.right_alg, M.right, M.dim, F, False)
    if M.left_alg is not None and M.right_alg is not None:
        fails = [(a, b) for a in range(M.left_alg.dim) for b in range(M.right_alg.dim)
                 if not F.equal(F.dot(M.left[a], M.right[b]), F.dot(M.right[b], M.left[a]))]
        rep.add("commute", fails)
    return rep


def is_module_map(f, M: Bimodule, N: Bimodule, side="both") -> list:
    """Failing ``(side, a)`` pairs for ``f: M -> N`` commuting with the actions."""
    F = M.field
    f = np.asarray(f)
    fails = []
    if side in ("left", "both") and M.left_alg is not None:
        fails += [("left", a) for a in range(M.left_alg.dim)
                  if not F.equal(F.dot(f, M.left[a]), F.dot(N.left[a], f))]
    if side in ("right", "both") and M.right_alg is not None:
        fails += [("right", a) for a in range(M.right_alg.dim)
                  if not F.equal(F.dot(f, M.right[a]), F.dot(N.right[a], f))]
    return fails


# ---------------------------------------------------------------------------
# tensor products over an algebra


class BalancedTensor(Bimodule):
    """``M (x)_R N`` with the outer actions it inherits."""

    def __init__(self, M: Bimodule, N: Bimodule, R: Algebra, proj, sec, left, right):
        super().__init__(M.field, proj.shape[0], M.left_alg, left, N.right_alg, right,
                         name="%s(x)%s" % (M.name, N.name))
        self.M, self.N, self.R = M, N, R
        self.proj = proj    # M (x)_k N -> M (x)_R N
        self.sec = sec      # coordinate section back into M (x)_k N
        self.amb_dim = M.dim * N.dim

    @property
    def factors(self):
        return self.M.factors + self.N.factors

    @cached_property
    def flat(self):
        F = self.field
        return F.dot(self.proj, F.kron(self.M.flat, self.N.flat))

    @cached_property
    def lift(self):
        F = self.field
        return F.dot(F.kron(self.M.lift, self.N.lift), self.sec)

    def pure(self, m, n):
        return self.field.dot(self.proj, self.field.kron(m, n))

    @cached_property
    def relations(self):
        F = self.field
        M, N = self.M, self.N
        cols = [F.kron(M.right[a], F.eye(N.dim)) - F.kron(F.eye(M.dim), N.left[a])
                for a in range(self.R.dim)]
        return F.normalize(np.concatenate(cols, axis=1).T) if cols else F.zeros(0, self.amb_dim)

    def descends(self, A) -> bool:
        """Whether a linear map on ``M (x)_k N`` kills the balancing relations."""
        F = self.field
        A = np.asarray(A)
        resid = F.normalize(F.eye(self.amb_dim) - F.dot(self.sec, self.proj))
        return F.is_zero(F.dot(A, resid))


def tensor_over_R(M: Bimodule, N: Bimodule, R: Optional[Algebra] = None,
                  check=True) -> BalancedTensor:
    """``M (x)_R N`` for a right ``R``-module ``M`` and left ``R``-module ``N``."""
    F = M.field
    if R is None:
        R = M.right_alg
    if M.right_alg is None or N.left_alg is None:
        raise ValueError("need a right module on the left and a left module on the right")
    if not (M.right_alg.same_as(R) and N.left_alg.same_as(R)):
        raise ValueError("modules are over different algebras")
    if check:
        for X in (M, N):
            rep = check_bimodule(X)
            if not rep:
                raise ValueError("invalid module %s: %s" % (X.name, rep.failed()))
    dM, dN = M.dim, N.dim
    cols = [F.kron(M.right[a], F.eye(dN)) - F.kron(F.eye(dM), N.left[a]) for a in range(R.dim)]
    rel = F.normalize(np.concatenate(cols, axis=1).T)
    proj, sec = quotient_matrices(F, rel, dM * dN)
    resid = F.normalize(F.eye(dM * dN) - F.dot(sec, proj))

    def induced(A):
        PA = F.dot(proj, A)
        if not F.is_zero(F.dot(PA, resid)):
            raise ValueError("induced action is not well defined on %s(x)%s" % (M.name, N.name))
        return F.dot(PA, sec)

    left = right = None
    if M.left_alg is not None:
        left = np.stack([induced(F.kron(A, F.eye(dN))) for A in M.left])
    if N.right_alg is not None:
        right = np.stack([induced(F.kron(F.eye(dM), A)) for A in N.right])
    return BalancedTensor(M, N, R, proj, sec, left, right)


def tensor_chain(factors, check=False):
    """Left-nested ``((M1 (x) M2) (x) M3) ...``; returns the list of partial products."""
    out = [factors[0]]
    for X in factors[1:]:
        out.append(tensor_over_R(out[-1], X, check=check))
    return out


def tensor_maps(T1: BalancedTensor, T2: BalancedTensor, f, g):
    """``f (x)_R g : T1 -> T2`` for module maps on the two factors."""
    F = T1.field
    return F.dot(T2.proj, F.dot(F.kron(f, g), T1.sec))


def tensor_R_with_M(M: Bimodule, R: Algebra):
    """``M (x)_R R`` together with the canonical map to ``M``, ``m (x) r -> m r``."""
    T = tensor_over_R(M, regular_bimodule(R, right=True, left=True))
    F = M.field
    can = F.dot(M.right_action_matrix, T.sec)
    return T, can


def R_tensor_N(R: Algebra, N: Bimodule):
    T = tensor_over_R(regular_bimodule(R), N)
    F = N.field
    can = F.dot(N.left_action_matrix, T.sec)
    return T, can


# ---------------------------------------------------------------------------
# hom spaces, retractions, projectivity


def _actions(M: Bimodule, side):
    if side == "right":
        return [] if M.right_alg is None else list(M.right)
    if side == "left":
        return [] if M.left_alg is None else list(M.left)
    return _actions(M, "left") + _actions(M, "right")


def linearity_constraints(M: Bimodule, N: Bimodule, side):
    """Rows expressing ``X A_M = A_N X`` on row-major ``vec(X)``, ``X: M -> N``."""
    F = M.field
    rows = [F.normalize(F.kron(F.eye(N.dim), A.T) - F.kron(B, F.eye(M.dim)))
            for A, B in zip(_actions(M, side), _actions(N, side))]
    if not rows:
        return F.zeros(0, N.dim * M.dim)
    return np.concatenate(rows, axis=0)


def module_hom_space(M: Bimodule, N: Bimodule, side="right") -> list:
    """Basis of the ``side``-linear maps ``M -> N`` as ``dim N x dim M`` matrices."""
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return []
    K = F.kernel(linearity_constraints(M, N, side))
    return [K[:, i].reshape(N.dim, M.dim) for i in range(K.shape[1])]


def has_retraction(f, M: Bimodule, N: Bimodule, side="right"):
    """A ``side``-linear ``j: N -> M`` with ``f j = id_N``, or None."""
    F = M.field
    f = F.array(f).reshape(N.dim, M.dim)
    lin = linearity_constraints(N, M, side)
    sec = F.kron(f, F.eye(N.dim))
    A = np.concatenate([lin, sec], axis=0)
    b = np.concatenate([F.zeros(lin.shape[0]), F.eye(N.dim).ravel()])
    x = F.solve(A, b)
    if x is None:
        return None
    return x.reshape(M.dim, N.dim)


def free_cover(M: Bimodule, generators=None):
    """``(R^n, pi)`` with ``pi(e_i r) = g_i r`` for the given generators of ``M``."""
    R = M.right_alg
    F = M.field
    if generators is None:
        generators = [F.basis_vector(M.dim, i) for i in range(M.dim)]
    gens = [F.array(g) for g in generators]
    Fr = free_module(R, len(gens))
    pi = F.zeros(M.dim, Fr.dim)
    for i, g in enumerate(gens):
        for a in range(R.dim):
            pi[:, i * R.dim + a] = F.dot(M.right[a], g)
    return Fr, pi


def is_projective(M: Bimodule, generators=None):
    """Decide projectivity of a right module by splitting a free cover.

    Returns ``(projective, witness)``; the witness is a splitting of the
    cover when ``M`` is projective.
    """
    F = M.field
    Fr, pi = free_cover(M, generators)
    if F.rank(pi) != M.dim:
        raise ValueError("generators do not generate the module")
    j = has_retraction(pi, Fr, M)
    return j is not None, j


def verify_free_basis(ext: AlgebraMap, elems) -> bool:
    """Whether ``elems`` is a basis of the target as a free left module over the source."""
    S, R = ext.source, ext.target
    F = R.field
    elems = [F.array(e) for e in elems]
    cols = [R.mul(ext.matrix[:, b], e) for e in elems for b in range(S.dim)]
    if len(cols) != R.dim:
        return False
    return F.rank(np.stack(cols, axis=1)) == R.dim


def centralizer(R: Algebra, right_by_g, left_by_g):
    """Basis (columns) of ``{s in R : s g = g s}``.

    ``right_by_g`` is the matrix of ``r -> r g`` and ``left_by_g`` that of
    ``r -> g r``, both mapping into the module where ``g`` lives.
    """
    F = R.field
    return F.kernel(F.normalize(F.array(right_by_g) - F.array(left_by_g)))


def subalgebra(R: Algebra, basis, name="S") -> AlgebraMap:
    """The subalgebra spanned by ``basis`` columns, presented by its inclusion."""
    F = R.field
    B = F.array(basis).reshape(R.dim, -1)
    n = B.shape[1]
    mult = F.zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            x = F.solve(B, R.mul(B[:, i], B[:, j]))
            if x is None:
                raise ValueError("span is not closed under multiplication")
            mult[i, j] = x
    unit = F.solve(B, R.unit)
    if unit is None:
        raise ValueError("span does not contain the unit")
    S = Algebra(F, mult, unit, name=name)
    return AlgebraMap(S, R, B)


def endomorphism_algebra(M: Bimodule, side="left", name=None):
    """``End(M)`` for ``side``-linear maps with composition ``(f g)(m) = f(g(m))``.

    Returns the algebra and the list of basis matrices.
    """
    F = M.field
    basis = module_hom_space(M, M, side)
    n = len(basis)
    B = np.stack([b.ravel() for b in basis], axis=1)
    mult = F.zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            mult[i, j] = F.solve(B, F.dot(basis[i], basis[j]).ravel())
    unit = F.solve(B, F.eye(M.dim).ravel())
    return Algebra(F, mult, unit, name=name or "End(%s)" % M.name), basis
