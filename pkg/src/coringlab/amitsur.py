"""
The Amitsur complex of a coring with a (semi-)grouplike element, its
reduced version built on ``ker eps``, cohomology, Galois corings and the
contracting homotopy, the relative universal forms ``Omega_S R`` with the
comparison isomorphism ``theta``, and the converse construction of a coring
from a differential graded ring.

Every degree-``n`` space is a left-nested balanced tensor product, so an
element is handled at the k-level (a tensor of ``n`` factors) whenever a
multilinear formula has to be evaluated, and flattened back afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .algebra import (Algebra, AlgebraMap, Bimodule, quotient_module,
                      regular_bimodule, restrict, submodule,
                      tensor_over_R)
from .checks import CheckReport, nonzero_columns
from .coring import (Coring, Grouplike, check_coring_axioms, check_coring_map,
                     coinvariant_subring, make_grouplike, sweedler_coring)
from .exactla import FinSpace, apply_block

DEFAULT_NMAX = 4


@dataclass(frozen=True)
class GradedElement:
    degree: int
    value: np.ndarray


class Tower:
    """``X^{(x)_R n}`` for ``n = 0, 1, ...`` with ``X^0 = R`` (built lazily)."""

    def __init__(self, R: Algebra, X: Bimodule):
        self.R = R
        self.X = X
        self._spaces = [regular_bimodule(R), X]

    def __getitem__(self, n):
        while len(self._spaces) <= n:
            self._spaces.append(tensor_over_R(self._spaces[-1], self.X, self.R, check=False))
        return self._spaces[n]

    def dim(self, n):
        return self[n].dim

    def factors(self, n):
        return [self.R.dim] if n == 0 else [self.X.dim] * n


def _product_matrix(F, tower: Tower, m, n):
    """Concatenation ``X^m (x)_k X^n -> X^(m+n)``; degree 0 acts through the actions."""
    R = tower.R
    if m == 0 and n == 0:
        return R.mult_matrix
    if m == 0:
        return tower[n].left_action_matrix
    if n == 0:
        return tower[m].right_action_matrix
    T = tower[m + n]
    return F.dot(T.flat, F.kron(tower[m].lift, tower[n].lift))


class AmitsurContext:
    """Cached spaces and differentials of ``Omega(C)`` or ``Omega(C/S)``."""

    def __init__(self, g: Grouplike, n_max=DEFAULT_NMAX, reduced=False,
                 ext: Optional[AlgebraMap] = None):
        self.g = g
        self.coring = K = g.coring
        self.field = K.field
        self.R = K.R
        self.n_max = int(n_max)
        self.reduced = reduced
        if reduced and g.semi:
            raise ValueError("the reduced complex needs a grouplike element")
        self.ext = ext if ext is not None else coinvariant_subring(g)
        self.S = self.ext.source
        self.full = Tower(K.R, K.C)
        if reduced:
            B = K.kernel_counit
            self.kbasis = B
            self.kmod = submodule(K.C, B, name="ker eps")
            self.tower = Tower(K.R, self.kmod)
        else:
            self.tower = self.full
        self._d = {}
        self._full_d = {}

    def __repr__(self):
        return "AmitsurContext(%s, %s, n_max=%d)" % (
            self.coring.name, "reduced" if self.reduced else "full", self.n_max)

    def _need(self, n):
        if n > self.n_max:
            raise ValueError("degree %d exceeds n_max=%d" % (n, self.n_max))

    def space(self, n) -> Bimodule:
        self._need(n)
        return self.tower[n]

    def dim(self, n) -> int:
        return self.space(n).dim

    # differentials ----------------------------------------------------
    def full_d(self, n):
        """``d^n`` on ``Omega^n(C)``, from the alternating-sum formula."""
        self._need(n + 1)
        if n in self._full_d:
            return self._full_d[n]
        F = self.field
        K = self.coring
        g = self.g
        if n == 0:
            D = F.normalize(g.g_times_right - g.left_times_g)
        else:
            Om = self.full[n]
            X = Om.lift
            dims = [K.dim] * n
            gcol = g.g.reshape(-1, 1)
            total = F.kron(gcol, X)
            for i in range(1, n + 1):
                Y, _ = apply_block(F, X, dims, i - 1, i, K.delta_canon, out_dims=[K.dim, K.dim])
                total = total + Y if i % 2 == 0 else total - Y
            last = F.kron(X, gcol)
            total = total + last if (n + 1) % 2 == 0 else total - last
            D = F.dot(self.full[n + 1].flat, F.normalize(total))
        self._full_d[n] = D
        return D

    def inclusion(self, n):
        """``Omega^n(C/S) -> Omega^n(C)`` (identity in the full context)."""
        F = self.field
        if not self.reduced or n == 0:
            return F.eye(self.full[n].dim)
        key = ("incl", n)
        if key not in self._d:
            if n == 1:
                self._d[key] = self.kbasis
            else:
                red, full = self.tower[n], self.full[n]
                prev = self.inclusion(n - 1)
                self._d[key] = F.dot(full.proj, F.dot(F.kron(prev, self.kbasis), red.sec))
        return self._d[key]

    @cached_property
    def _kdelta(self):
        """``c -> (c1 - g eps(c1)) (x) (c2 - eps(c2) g)`` on ``ker eps`` at the k-level."""
        F = self.field
        K = self.coring
        B = self.kbasis
        linv = F.left_inverse(B)
        left = F.dot(linv, F.normalize(F.eye(K.dim) - F.dot(self.g.g_times_right, K.counit)))
        right = F.dot(linv, F.normalize(F.eye(K.dim) - F.dot(self.g.left_times_g, K.counit)))
        return F.dot(F.kron(left, right), F.dot(K.delta_canon, B))

    def reduced_d_formula(self, n):
        """``d^n`` on ``Omega^n(C/S)`` from the kernel-of-counit rewriting."""
        F = self.field
        if n == 0:
            x = F.solve(self.kbasis, self.full_d(0))
            if x is None:
                raise ArithmeticError("d(R) is not inside ker eps")
            return x
        dK = self.kmod.dim
        X = self.tower[n].lift
        dims = [dK] * n
        total = F.zeros(dK ** (n + 1), X.shape[1])
        for i in range(1, n + 1):
            Y, _ = apply_block(F, X, dims, i - 1, i, self._kdelta, out_dims=[dK, dK])
            total = total + Y if i % 2 == 0 else total - Y
        return F.dot(self.tower[n + 1].flat, F.normalize(total))

    def reduced_d_restricted(self, n):
        """``d^n`` of the full complex restricted through the inclusions."""
        F = self.field
        image = F.dot(self.full_d(n), self.inclusion(n))
        x = F.solve(self.inclusion(n + 1), image)
        if x is None:
            raise ArithmeticError("d does not preserve the reduced complex in degree %d" % n)
        return x

    def d(self, n):
        """``d^n : Omega^n -> Omega^(n+1)``."""
        self._need(n + 1)
        if not self.reduced:
            return self.full_d(n)
        if n not in self._d:
            self._d[n] = self.reduced_d_formula(n)
        return self._d[n]

    def product_matrix(self, m, n):
        self._need(m + n)
        return _product_matrix(self.field, self.tower, m, n)

    def pure(self, *elems):
        """Pure tensor of degree ``len(elems)`` (coordinates of the base factor)."""
        F = self.field
        n = len(elems)
        if n == 0:
            return self.R.unit
        v = elems[0]
        for e in elems[1:]:
            v = F.kron(v, e)
        return F.dot(self.space(n).flat, v)

    def g_element(self):
        return self.g.g


def full_context(g: Grouplike, n_max=DEFAULT_NMAX, ext=None) -> AmitsurContext:
    return AmitsurContext(g, n_max, reduced=False, ext=ext)


def reduced_context(ctx: AmitsurContext, n_max=None, check=True) -> AmitsurContext:
    """``Omega(C/S)`` for the same coring and grouplike."""
    red = AmitsurContext(ctx.g, n_max or ctx.n_max, reduced=True, ext=ctx.ext)
    red.full = ctx.full
    red._full_d = ctx._full_d
    if check:
        F = red.field
        for n in range(red.n_max):
            if not F.equal(red.reduced_d_formula(n), red.reduced_d_restricted(n)):
                raise ArithmeticError("reduced differential disagrees with the restriction in degree %d" % n)
    return red


# ---------------------------------------------------------------------------
# element-level interface


@dataclass(frozen=True)
class OmegaSpace:
    space: FinSpace
    module: Bimodule
    ctx: AmitsurContext
    degree: int

    def embed(self, *elems) -> GradedElement:
        if len(elems) != self.degree and not (self.degree == 0 and len(elems) == 1):
            raise ValueError("expected %d tensor factors" % self.degree)
        if self.degree == 0:
            return GradedElement(0, self.ctx.field.array(elems[0]))
        return GradedElement(self.degree, self.ctx.pure(*elems))


def omega_space(ctx: AmitsurContext, n: int) -> OmegaSpace:
    M = ctx.space(n)
    return OmegaSpace(FinSpace(M.dim), M, ctx, n)


def amitsur_d(ctx: AmitsurContext, x: GradedElement) -> GradedElement:
    return GradedElement(x.degree + 1, ctx.field.dot(ctx.d(x.degree), x.value))


def dg_product(ctx: AmitsurContext, x: GradedElement, y: GradedElement) -> GradedElement:
    F = ctx.field
    P = ctx.product_matrix(x.degree, y.degree)
    return GradedElement(x.degree + y.degree, F.dot(P, F.kron(x.value, y.value)))


def check_dg_axioms(ctx: AmitsurContext, n_max=None) -> CheckReport:
    """``d^2 = 0``, graded Leibniz, S-bilinearity of ``d`` and ``d(S) = 0``."""
    F = ctx.field
    N = ctx.n_max if n_max is None else min(n_max, ctx.n_max)
    rep = CheckReport("dg ring %r" % ctx)
    fails = []
    for n in range(N - 1):
        if not F.is_zero(F.dot(ctx.d(n + 1), ctx.d(n))):
            fails.append(n)
    rep.add("d_squared", fails)
    fails = []
    for m in range(N):
        for n in range(N - m):
            lhs = F.dot(ctx.d(m + n), ctx.product_matrix(m, n))
            t1 = F.dot(ctx.product_matrix(m + 1, n), F.kron(ctx.d(m), F.eye(ctx.dim(n))))
            t2 = F.dot(ctx.product_matrix(m, n + 1), F.kron(F.eye(ctx.dim(m)), ctx.d(n)))
            rhs = t1 + t2 if m % 2 == 0 else t1 - t2
            cols = nonzero_columns(F, F.normalize(lhs - rhs))
            fails += [(m, n, c) for c in cols]
    rep.add("leibniz", fails)
    S = ctx.ext
    fails = []
    for n in range(N):
        Om, Om1 = ctx.space(n), ctx.space(n + 1)
        for b in range(S.source.dim):
            s = S.matrix[:, b]
            if not F.equal(F.dot(ctx.d(n), Om.lmat(s)), F.dot(Om1.lmat(s), ctx.d(n))):
                fails.append(("left", n, b))
            if not F.equal(F.dot(ctx.d(n), Om.rmat(s)), F.dot(Om1.rmat(s), ctx.d(n))):
                fails.append(("right", n, b))
    rep.add("S_bilinear", fails)
    rep.add("d_of_S", nonzero_columns(F, F.dot(ctx.d(0), S.matrix)) if N >= 1 else [])
    if not ctx.reduced and N >= 3:
        rep.add("nesting", [] if nesting_is_associative(ctx) else [3])
    return rep


def nesting_is_associative(ctx: AmitsurContext) -> bool:
    """``(C (x) C) (x) C`` and ``C (x) (C (x) C)`` agree through the k-level."""
    F = ctx.field
    K = ctx.coring
    right = tensor_over_R(K.C, ctx.full[2], K.R, check=False)
    flat_r = F.dot(right.proj, F.kron(F.eye(K.dim), ctx.full[2].flat))
    iso = F.dot(flat_r, ctx.full[3].lift)
    back = F.dot(ctx.full[3].flat, F.dot(F.kron(F.eye(K.dim), ctx.full[2].lift), right.sec))
    return (right.dim == ctx.full[3].dim and F.equal(F.dot(back, iso), F.eye(right.dim))
            and F.equal(F.dot(iso, back), F.eye(right.dim)))


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologySummary:
    dims: list          # dim Omega^n, n = 0..N
    ranks: list         # rank d^n, n = 0..N
    h: list             # dim H^n, n = 0..N

    def as_dict(self):
        return {"dims": self.dims, "ranks": self.ranks, "H": self.h}


def cohomology(ctx: AmitsurContext, max_degree=None) -> CohomologySummary:
    """``H^0 .. H^N`` with ``N = max_degree`` (needs ``n_max >= N + 1``)."""
    F = ctx.field
    N = ctx.n_max - 1 if max_degree is None else max_degree
    ctx._need(N + 1)
    dims = [ctx.dim(n) for n in range(N + 1)]
    ranks = [F.rank(ctx.d(n)) if ctx.d(n).size else 0 for n in range(N + 1)]
    h = [dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(N + 1)]
    return CohomologySummary(dims, ranks, h)


# ---------------------------------------------------------------------------
# Galois corings and the contracting homotopy


class GaloisData:
    """``chi: R (x)_S R -> C``, ``r (x) r' -> r g r'``, with its inverse when bijective."""

    def __init__(self, g: Grouplike, ext: AlgebraMap):
        K = g.coring
        F = K.field
        R = K.R
        self.g, self.ext, self.coring = g, ext, K
        self.field = F
        self.sweedler, _ = sweedler_coring(ext)
        T = self.sweedler.C
        self.tensor = T
        chi_k = F.zeros(K.dim, R.dim * R.dim)
        for i in range(R.dim):
            for j in range(R.dim):
                chi_k[:, i * R.dim + j] = F.dot(K.C.left[i], F.dot(K.C.right[j], g.g))
        self.well_defined = T.descends(chi_k)
        self.chi = F.dot(chi_k, T.sec)
        self.is_coring_map = self.well_defined and check_coring_map(self.chi, self.sweedler, K)
        self.is_galois = (self.well_defined and T.dim == K.dim
                          and F.rank(self.chi) == K.dim)
        self.chi_inv = F.inverse(self.chi) if self.is_galois else None

    @cached_property
    def chi_inv_lift(self):
        """``c -> c^(1) (x) c^(2)`` in ``R (x)_k R``."""
        return self.field.dot(self.tensor.sec, self.chi_inv)


def galois_map(g: Grouplike, ext: Optional[AlgebraMap] = None) -> GaloisData:
    return GaloisData(g, ext if ext is not None else coinvariant_subring(g))


def _CSR(gal: GaloisData, M: Bimodule):
    """``M (x)_S R`` for a bimodule ``M`` over ``R``."""
    R = gal.coring.R
    MS = restrict(M, right=gal.ext, keep=False)
    RS = restrict(regular_bimodule(R, right=False), left=gal.ext, keep=False)
    return tensor_over_R(MS, RS, gal.ext.source, check=False)


def verify_star_identity(gal: GaloisData) -> CheckReport:
    """``c^(1) g (x)_S c^(2) = c_(1) chi^-1(c_(2))`` in ``C (x)_S R``."""
    F = gal.field
    K = gal.coring
    R = K.R
    rep = CheckReport("star identity")
    if not gal.is_galois:
        rep.add("galois", [("not galois",)])
        return rep
    W = _CSR(gal, K.C)
    lhs = F.dot(W.proj, F.dot(F.kron(gal.g.left_times_g, F.eye(R.dim)), gal.chi_inv_lift))
    X, dims = apply_block(F, K.delta_canon, [K.dim, K.dim], 1, 2, gal.chi_inv_lift, out_dims=[R.dim, R.dim])
    X, dims = apply_block(F, X, dims, 0, 2, K.C.right_action_matrix)
    rhs = F.dot(W.proj, X)
    rep.add("star", nonzero_columns(F, F.normalize(lhs - rhs)))
    return rep


class HomotopyData:
    """The complex ``Omega^n(C) (x)_S R`` with its differential and the homotopy ``h``."""

    def __init__(self, ctx: AmitsurContext, gal: GaloisData):
        if ctx.reduced:
            raise ValueError("the homotopy lives on the full complex")
        if not gal.is_galois:
            raise ValueError("contracting homotopy needs a Galois coring")
        self.ctx, self.gal = ctx, gal
        self.field = ctx.field
        self._W = {}

    def W(self, n):
        if n not in self._W:
            self._W[n] = _CSR(self.gal, self.ctx.full[n])
        return self._W[n]

    def W_flat(self, n):
        F = self.field
        return F.dot(self.W(n).proj, F.kron(self.ctx.full[n].flat, F.eye(self.ctx.R.dim)))

    def W_lift(self, n):
        F = self.field
        return F.dot(F.kron(self.ctx.full[n].lift, F.eye(self.ctx.R.dim)), self.W(n).sec)

    def d(self, n):
        F = self.field
        W0, W1 = self.W(n), self.W(n + 1)
        return F.dot(W1.proj, F.dot(F.kron(self.ctx.full_d(n), F.eye(self.ctx.R.dim)), W0.sec))

    def h_k(self, n):
        """``h^n`` on k-level representatives ``C^(x)n (x) R``."""
        F = self.field
        K = self.ctx.coring
        R = K.R
        dims = [K.dim] * n + [R.dim]
        X = F.eye(K.dim ** n * R.dim)
        X, dims = apply_block(F, X, dims, n - 1, n + 1, K.C.right_action_matrix)
        X, dims = apply_block(F, X, dims, n - 1, n, self.gal.chi_inv_lift, out_dims=[R.dim, R.dim])
        if n >= 2:
            X, dims = apply_block(F, X, dims, n - 2, n, K.C.right_action_matrix)
        X = F.dot(self.W_flat(n - 1), X)
        return X if n % 2 == 0 else F.normalize(-X)

    def h(self, n):
        return self.field.dot(self.h_k(n), self.W_lift(n))

    def well_defined(self, n) -> bool:
        F = self.field
        H = self.h_k(n)
        resid = F.normalize(F.eye(H.shape[1]) - F.dot(self.W_lift(n), self.W_flat(n)))
        return F.is_zero(F.dot(H, resid))


def contracting_homotopy(ctx: AmitsurContext, gal: GaloisData, n: int, x=None):
    """``h^n`` as a matrix, or applied to ``x`` in ``Omega^n (x)_S R``."""
    H = HomotopyData(ctx, gal)
    h = H.h(n)
    return h if x is None else ctx.field.dot(h, x)


def verify_homotopy(ctx: AmitsurContext, gal: GaloisData, degrees=(1, 2, 3),
                    check_well_defined=True) -> CheckReport:
    F = ctx.field
    H = HomotopyData(ctx, gal)
    rep = CheckReport("contracting homotopy")
    fails = []
    for n in degrees:
        lhs = F.dot(H.h(n + 1), H.d(n)) + F.dot(H.d(n - 1), H.h(n))
        cols = nonzero_columns(F, F.normalize(lhs - F.eye(H.W(n).dim)))
        fails += [(n, c) for c in cols]
    rep.add("hd_plus_dh", fails)
    if check_well_defined:
        rep.add("well_defined", [n for n in sorted(set(degrees) | {max(degrees) + 1})
                                 if not H.well_defined(n)])
    return rep


# ---------------------------------------------------------------------------
# relative universal forms


class UniversalForms:
    """``Omega^n_S R = R (x)_S (R/S)^(x)n`` with its differential and product."""

    def __init__(self, ext: AlgebraMap, n_max=DEFAULT_NMAX):
        R, S = ext.target, ext.source
        F = R.field
        self.ext, self.R, self.S, self.field = ext, R, S, F
        self.n_max = n_max
        RSS = restrict(regular_bimodule(R), left=ext, right=ext)
        Q = quotient_module(RSS, ext.matrix.T, name="R/S")
        self.Q = Q
        self.pi = Q.projection
        self.qsec = Q.section
        RS = restrict(regular_bimodule(R), right=ext)
        self._spaces = [regular_bimodule(R), tensor_over_R(RS, Q, S, check=False)]

    def space(self, n):
        if n > self.n_max:
            raise ValueError("degree %d exceeds n_max=%d" % (n, self.n_max))
        while len(self._spaces) <= n:
            self._spaces.append(tensor_over_R(self._spaces[-1], self.Q, self.S, check=False))
        return self._spaces[n]

    def dim(self, n):
        return self.space(n).dim

    def factors(self, n):
        return [self.R.dim] + [self.Q.dim] * n

    def lift(self, n):
        return self.space(n).lift

    def flat(self, n):
        return self.space(n).flat

    def d(self, n):
        F = self.field
        R = self.R
        first = F.kron(R.unit.reshape(-1, 1), self.pi)             # r -> 1 (x) pi(r)
        X, _ = apply_block(F, self.lift(n), self.factors(n), 0, 1, first,
                           out_dims=[R.dim, self.Q.dim])
        return F.dot(self.flat(n + 1), X)

    def product_matrix(self, m, n, qsec=None):
        """``Omega^m (x)_k Omega^n -> Omega^(m+n)`` by the merge formula."""
        F = self.field
        R = self.R
        dR, dQ = R.dim, self.Q.dim
        qsec = self.qsec if qsec is None else qsec
        pi = self.pi
        mu = R.mult_matrix
        Y = F.kron(self.lift(m), self.lift(n))
        dims = self.factors(m) + self.factors(n)
        total = None
        for i in range(m + 1):
            Z, zd = Y, dims
            if i < m:
                Z, zd = apply_block(F, Z, zd, m + 1, m + 2, pi)
                if i == 0:
                    merge = F.dot(mu, F.kron(F.eye(dR), qsec))
                else:
                    merge = F.dot(pi, F.dot(mu, F.kron(qsec, qsec)))
            elif m == 0:
                merge = mu
            else:
                merge = F.dot(pi, F.dot(mu, F.kron(qsec, F.eye(dR))))
            Z, zd = apply_block(F, Z, zd, i, i + 2, merge)
            Z = F.dot(self.flat(m + n), Z)
            if (m - i) % 2:
                Z = F.normalize(-Z)
            total = Z if total is None else total + Z
        return F.normalize(total)


def universal_forms(ext: AlgebraMap, n_max=DEFAULT_NMAX) -> UniversalForms:
    return UniversalForms(ext, n_max)


def check_universal_forms(U: UniversalForms, n_max=None, seed=0) -> CheckReport:
    """dg axioms, associativity and independence of the section of ``R -> R/S``."""
    F = U.field
    N = U.n_max if n_max is None else n_max
    rep = CheckReport("universal forms")
    rep.add("d_of_unit", [] if F.is_zero(F.dot(U.d(0), U.R.unit)) else [("d(1)",)])
    rep.add("d_squared", [n for n in range(N - 1) if not F.is_zero(F.dot(U.d(n + 1), U.d(n)))])
    rng = np.random.default_rng(seed)
    Z = F.array(rng.integers(-3, 4, size=(U.S.dim, U.Q.dim)).tolist())
    other = F.normalize(U.qsec + F.dot(U.ext.matrix, Z))
    leib, indep, assoc = [], [], []
    for m in range(N + 1):
        for n in range(N + 1 - m):
            P = U.product_matrix(m, n)
            if not F.equal(P, U.product_matrix(m, n, other)):
                indep.append((m, n))
            if m + n < N:
                lhs = F.dot(U.d(m + n), P)
                t1 = F.dot(U.product_matrix(m + 1, n), F.kron(U.d(m), F.eye(U.dim(n))))
                t2 = F.dot(U.product_matrix(m, n + 1), F.kron(F.eye(U.dim(m)), U.d(n)))
                rhs = t1 + t2 if m % 2 == 0 else t1 - t2
                leib += [(m, n, c) for c in nonzero_columns(F, F.normalize(lhs - rhs))]
    for a in range(N + 1):
        for b in range(N + 1 - a):
            for c in range(N + 1 - a - b):
                Pab = U.product_matrix(a, b)
                left = F.dot(U.product_matrix(a + b, c), F.kron(Pab, F.eye(U.dim(c))))
                right = F.dot(U.product_matrix(a, b + c),
                              F.kron(F.eye(U.dim(a)), U.product_matrix(b, c)))
                if not F.equal(left, right):
                    assoc.append((a, b, c))
    rep.add("section_independent", indep)
    rep.add("leibniz", leib)
    rep.add("associative", assoc)
    return rep


class ThetaIso:
    """``theta_n : Omega^n(C/S) -> Omega^n_S R`` for a Galois coring, with inverses.

    ``C`` is identified with ``R (x)_S R`` through the canonical map ``chi``
    (the identity for a Sweedler coring).
    """

    def __init__(self, red: AmitsurContext, U: UniversalForms):
        K = red.coring
        if not red.reduced:
            raise ValueError("theta is defined on the reduced complex")
        self.red, self.U = red, U
        self.field = F = red.field
        R = K.R
        gal = GaloisData(red.g, U.ext)
        if not gal.is_galois:
            raise ValueError("theta needs a Galois coring")
        self.Csw = gal.tensor                        # R (x)_S R with sec into R (x)_k R
        B = red.kbasis
        self.k_to_RR = F.dot(self.Csw.sec, F.dot(gal.chi_inv, B))   # ker eps -> R (x)_k R
        linv = F.dot(F.left_inverse(B), gal.chi)
        u = R.unit.reshape(-1, 1)
        # r (x) r' -> r (x) r' - r r' (x) 1 on R (x)_k R
        self.split = F.normalize(F.eye(R.dim ** 2) - F.dot(F.kron(F.eye(R.dim), u), R.mult_matrix))
        self.inv1 = F.dot(linv, F.dot(self.Csw.proj, F.dot(self.split, F.kron(F.eye(R.dim), U.qsec))))
        self.inv1 = F.dot(self.inv1, U.space(1).sec)
        self.one_tensor = F.dot(U.space(1).proj, F.kron(u, F.eye(U.Q.dim)))   # q -> 1 (x) q
        self._t, self._ti = {0: F.eye(R.dim)}, {0: F.eye(R.dim)}

    def inverse_well_defined(self) -> bool:
        """``r (x) s -> r (x) s - r s (x) 1`` vanishes for ``s`` in ``S``."""
        F = self.field
        R = self.red.R
        v = F.dot(self.Csw.proj, F.dot(self.split, F.kron(F.eye(R.dim), self.U.ext.matrix)))
        return F.is_zero(v)

    def theta(self, n):
        if n in self._t:
            return self._t[n]
        F = self.field
        red, U = self.red, self.U
        R = red.R
        if n == 1:
            T = F.dot(U.space(1).proj, F.dot(F.kron(F.eye(R.dim), U.pi), self.k_to_RR))
            self._t[1] = T
            return T
        prev = red.space(n - 1)
        spread = F.kron(F.eye(prev.dim), self.k_to_RR)                    # Om (x) K -> Om (x) R (x) R
        merge = F.kron(prev.right_action_matrix, F.eye(R.dim))             # -> Om (x) R
        step = F.kron(self.theta(n - 1), U.pi)                             # -> U^(n-1) (x) Q
        T = F.dot(U.space(n).proj, F.dot(step, F.dot(merge, F.dot(spread, red.space(n).sec))))
        self._t[n] = T
        return T

    def theta_inv(self, n):
        if n in self._ti:
            return self._ti[n]
        F = self.field
        red, U = self.red, self.U
        if n == 1:
            T = self.inv1
        else:
            step = F.kron(self.theta_inv(n - 1), F.dot(self.inv1, self.one_tensor))
            T = F.dot(red.space(n).proj, F.dot(step, U.space(n).sec))
        self._ti[n] = T
        return T


def theta_iso(red: AmitsurContext, U: UniversalForms, n_max=None):
    """Build ``theta`` and verify it is an isomorphism of dg rings up to ``n_max``."""
    F = red.field
    N = min(red.n_max, U.n_max) if n_max is None else n_max
    th = ThetaIso(red, U)
    rep = CheckReport("theta")
    rep.add("inverse_well_defined", [] if th.inverse_well_defined() else [("theta^-1",)])
    bij, dcomp, prod = [], [], []
    for n in range(N + 1):
        t, ti = th.theta(n), th.theta_inv(n)
        if t.shape[0] != t.shape[1] or not F.equal(F.dot(ti, t), F.eye(t.shape[1])) \
                or not F.equal(F.dot(t, ti), F.eye(t.shape[0])):
            bij.append(n)
        if n < N:
            if not F.equal(F.dot(th.theta(n + 1), red.d(n)), F.dot(U.d(n), t)):
                dcomp.append(n)
    for m in range(N + 1):
        for n in range(N + 1 - m):
            lhs = F.dot(th.theta(m + n), red.product_matrix(m, n))
            rhs = F.dot(U.product_matrix(m, n), F.kron(th.theta(m), th.theta(n)))
            if not F.equal(lhs, rhs):
                prod.append((m, n))
    rep.add("bijective", bij)
    rep.add("commutes_with_d", dcomp)
    rep.add("multiplicative", prod)
    return th, rep


# ---------------------------------------------------------------------------
# a coring from a differential graded ring


def coring_from_dg(R: Algebra, Om1: Bimodule, d0, d1):
    """``C = R g (+) Omega^1`` with ``Delta(w) = g (x) w + w (x) g - d(w)``.

    ``d0: R -> Omega^1`` and ``d1: Omega^1 -> Omega^1 (x)_R Omega^1``.
    Returns ``(coring, grouplike, report)``; raises ValueError if the
    input is not a truncated dg ring.
    """
    F = R.field
    dR, dW = R.dim, Om1.dim
    OO = tensor_over_R(Om1, Om1, R)
    d0 = F.array(d0).reshape(dW, dR)
    d1 = F.array(d1).reshape(OO.dim, dW)
    pre = CheckReport("dg input")
    pre.add("d1_d0", nonzero_columns(F, F.dot(d1, d0)))
    leib0 = []
    for b in range(dR):
        lhs = F.dot(d0, R.right_regular[b])
        rhs = F.dot(Om1.right[b], d0) + np.stack([F.dot(Om1.left[a], d0[:, b]) for a in range(dR)], axis=1)
        if not F.equal(lhs, F.normalize(rhs)):
            leib0.append(b)
    pre.add("leibniz_0", leib0)
    leib1 = []
    for b in range(dR):
        lhs = F.dot(d1, Om1.right[b])
        rhs = F.dot(OO.right[b], d1) - F.dot(OO.proj, F.kron(F.eye(dW), d0[:, b].reshape(-1, 1)))
        if not F.equal(lhs, F.normalize(rhs)):
            leib1.append(("right", b))
        lhs = F.dot(d1, Om1.left[b])
        rhs = F.dot(OO.proj, F.kron(d0[:, b].reshape(-1, 1), F.eye(dW))) + F.dot(OO.left[b], d1)
        if not F.equal(lhs, F.normalize(rhs)):
            leib1.append(("left", b))
    pre.add("leibniz_1", leib1)
    if not pre:
        raise ValueError("not a dg ring: %s" % pre.witnesses)

    n = dR + dW
    left, right = [], []
    for a in range(dR):
        L = F.zeros(n, n)
        L[:dR, :dR] = R.left_regular[a]
        L[dR:, dR:] = Om1.left[a]
        left.append(L)
        Rt = F.zeros(n, n)
        Rt[:dR, :dR] = R.right_regular[a]
        Rt[dR:, dR:] = Om1.right[a]
        for c in range(dR):                           # (e_c g) a = e_c a g + e_c d(a)
            Rt[dR:, c] = F.dot(Om1.left[c], d0[:, a])
        right.append(Rt)
    Cb = Bimodule(F, n, R, np.stack(left), R, np.stack(right), name="Rg+W")
    g = F.zeros(n)
    g[:dR] = R.unit
    incl = F.zeros(n, dW)
    incl[dR:, :] = F.eye(dW)
    gcol = g.reshape(-1, 1)
    delta = F.zeros(n * n, n)
    for c in range(dR):
        delta[:, c] = F.kron(F.basis_vector(n, c), g)
    dlift = F.dot(F.kron(incl, incl), F.dot(OO.sec, d1))
    delta[:, dR:] = F.normalize(F.kron(gcol, incl) + F.kron(incl, gcol) - dlift)
    counit = F.zeros(dR, n)
    counit[:, :dR] = F.eye(dR)
    K = Coring(R, Cb, delta, counit, name="coring(dg)")
    rep = check_coring_axioms(K)
    rep.merge(pre)
    gl = make_grouplike(K, g)
    # the identity that makes the coproduct coassociative
    OOO = tensor_over_R(OO, Om1, R, check=False)
    X = F.dot(OO.sec, d1)
    dl = F.dot(OO.sec, d1)
    A, _ = apply_block(F, X, [dW, dW], 0, 1, dl, out_dims=[dW, dW])
    B, _ = apply_block(F, X, [dW, dW], 1, 2, dl, out_dims=[dW, dW])
    rep.add("coassociativity_identity", nonzero_columns(F, F.dot(OOO.flat, F.normalize(A - B))))
    # round trip: the reduced complex of the new coring recovers (d0, d1)
    red = AmitsurContext(gl, 2, reduced=True)
    same_K = F.equal(red.kbasis, incl)
    rep.add("round_trip_d0", [] if same_K and F.equal(red.d(0), d0) else [0])
    rep.add("round_trip_d1", [] if same_K and F.equal(red.d(1), d1) else [1])
    K.from_dg = (Om1, d0, d1)
    return K, gl, rep


def dg_iso_to_original(g: Grouplike, K2: Coring) -> np.ndarray:
    """``c -> (eps(c), c - eps(c) g)`` from a coring to the one rebuilt from its forms."""
    K = g.coring
    F = K.field
    B = K.kernel_counit
    linv = F.left_inverse(B)
    rest = F.dot(linv, F.normalize(F.eye(K.dim) - F.dot(g.left_times_g, K.counit)))
    return np.concatenate([K.counit, rest], axis=0)


# ---------------------------------------------------------------------------
# entwining corings: the psi^n description


def entwining_identification(ctx: AmitsurContext, n: int):
    """``A (x) C^(x)n -> Omega^n``, ``a (x) c1 ... cn -> (a (x) c1)(1 (x) c2)...``."""
    F = ctx.field
    K = ctx.coring
    E = K.entwining
    A = E.A
    if n == 0:
        return F.eye(A.dim)
    put_one = F.kron(A.unit.reshape(-1, 1), F.eye(E.dimC))
    M = F.eye(A.dim * E.dimC)
    for _ in range(n - 1):
        M = F.kron(M, put_one)
    return F.dot(ctx.full[n].flat, M)


def entwining_d(E, g_AC, n: int, rho_A):
    """``d^n`` on ``A (x) C^(x)n`` from the explicit formula with ``psi^n``."""
    F = E.field
    A = E.A
    dA, dC = A.dim, E.dimC
    X = F.eye(dA * dC ** n)
    dims = [dA] + [dC] * n
    total, _ = apply_block(F, X, dims, 0, 1, F.array(rho_A).reshape(dA * dC, dA), out_dims=[dA, dC])
    for i in range(1, n + 1):
        Y, _ = apply_block(F, X, dims, i, i + 1, E.delta_C, out_dims=[dC, dC])
        total = total + Y if i % 2 == 0 else total - Y
    Y = F.kron(X, F.array(g_AC).reshape(-1, 1))                # a c.. (x) g_A (x) g_C
    yd = [dA] + [dC] * n + [dA, dC]
    if n:
        Y, yd = apply_block(F, Y, yd, 1, n + 2, E.psi_n(n), out_dims=[dA] + [dC] * n)
    Y, yd = apply_block(F, Y, yd, 0, 2, A.mult_matrix)
    total = total + Y if (n + 1) % 2 == 0 else total - Y
    return F.normalize(total)


def entwining_product(E, m: int, n: int):
    """``(a (x) c)(a' (x) c') = a psi^m(c (x) a') (x) c'`` on ``A (x) C^(x)m (x) A (x) C^(x)n``."""
    F = E.field
    A = E.A
    dA, dC = A.dim, E.dimC
    X = F.eye(dA * dC ** m * dA * dC ** n)
    dims = [dA] + [dC] * m + [dA] + [dC] * n
    if m:
        X, dims = apply_block(F, X, dims, 1, m + 2, E.psi_n(m), out_dims=[dA] + [dC] * m)
    X, dims = apply_block(F, X, dims, 0, 2, A.mult_matrix)
    return X


def verify_entwining_formulas(ctx: AmitsurContext, rho_A, max_degree=3) -> CheckReport:
    F = ctx.field
    K = ctx.coring
    E = K.entwining
    A = E.A
    rho_A = F.array(rho_A).reshape(A.dim * E.dimC, A.dim)
    g_AC = F.dot(rho_A, A.unit)
    rep = CheckReport("entwining formulas")
    rep.add("g_is_rho_of_1", [] if F.equal(g_AC, ctx.g.g) else [("g",)])
    ident, dfail, pfail = [], [], []
    for n in range(max_degree + 1):
        phi = entwining_identification(ctx, n)
        if phi.shape[0] != phi.shape[1] or F.rank(phi) != phi.shape[0]:
            ident.append(n)
            continue
        if n < max_degree:
            lhs = F.dot(ctx.full_d(n), phi)
            rhs = F.dot(entwining_identification(ctx, n + 1), entwining_d(E, g_AC, n, rho_A))
            dfail += [(n, c) for c in nonzero_columns(F, F.normalize(lhs - rhs))]
    for m in range(max_degree + 1):
        for n in range(max_degree + 1 - m):
            lhs = F.dot(ctx.product_matrix(m, n),
                        F.kron(entwining_identification(ctx, m), entwining_identification(ctx, n)))
            rhs = F.dot(entwining_identification(ctx, m + n), entwining_product(E, m, n))
            if not F.equal(lhs, rhs):
                pfail.append((m, n))
    rep.add("identification_bijective", ident)
    rep.add("d_matches_psi_formula", dfail)
    rep.add("product_matches_psi_formula", pfail)
    return rep
