"""
Corings over finite-dimensional algebras, their comodules and grouplike
elements, and the standard constructions around them.

A coring is stored as a bimodule ``C`` together with a k-linear lift of the
coproduct into ``C (x)_k C`` and a counit matrix ``C -> R``.  The lift is
projected into ``C (x)_R C`` and everything downstream works with the
canonical lift ``sec . proj . lift``, so results never depend on which lift
the user happened to supply.
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional

import numpy as np

from .algebra import (Algebra, AlgebraMap, Bimodule, check_algebra_axioms,
                      check_algebra_map, check_bimodule, direct_sum,
                      endomorphism_algebra,
                      is_module_map, module_hom_space, regular_bimodule,
                      restrict, submodule, subalgebra, tensor_maps,
                      tensor_over_R)
from .checks import CheckReport, nonzero_columns
from .exactla import PrimeField

SEARCH_LIMIT = 2 ** 20


class Coring:
    """An ``R``-coring ``(C, Delta, eps)``."""

    def __init__(self, R: Algebra, C: Bimodule, delta_lift, counit, name=None):
        self.R = R
        self.C = C
        self.field = F = R.field
        d = C.dim
        self.dim = d
        self.delta_lift = F.array(delta_lift).reshape(d * d, d)
        self.counit = F.array(counit).reshape(R.dim, d)
        self.name = name or C.name

    def __repr__(self):
        return "Coring(%s over %s, dim=%d)" % (self.name, self.R.name, self.dim)

    @cached_property
    def CC(self):
        return tensor_over_R(self.C, self.C, self.R, check=False)

    @cached_property
    def CCC(self):
        return tensor_over_R(self.CC, self.C, self.R, check=False)

    @cached_property
    def delta(self):
        """Coproduct as a matrix ``C -> C (x)_R C``."""
        return self.field.dot(self.CC.proj, self.delta_lift)

    @cached_property
    def delta_canon(self):
        return self.field.dot(self.CC.sec, self.delta)

    @cached_property
    def kernel_counit(self):
        """Basis (columns) of ``ker eps``."""
        return self.field.kernel(self.counit)

    def eps(self, c):
        return self.field.dot(self.counit, c)

    def left_by(self, r, c):
        return self.field.dot(self.C.lmat(r), c)

    def right_by(self, c, r):
        return self.field.dot(self.C.rmat(r), c)

    def pure2(self, c, c2):
        return self.CC.pure(c, c2)

    @cached_property
    def counit_left_k(self):
        """k-level ``c (x) c' -> eps(c) c'``."""
        F = self.field
        return F.dot(self.C.left_action_matrix, F.kron(self.counit, F.eye(self.dim)))

    @cached_property
    def counit_right_k(self):
        """k-level ``c (x) c' -> c eps(c')``."""
        F = self.field
        return F.dot(self.C.right_action_matrix, F.kron(F.eye(self.dim), self.counit))

    def with_counit(self, counit, name=None) -> "Coring":
        return Coring(self.R, self.C, self.delta_lift, counit, name or self.name + "'")

    def with_delta(self, delta_lift, name=None) -> "Coring":
        return Coring(self.R, self.C, delta_lift, self.counit, name or self.name + "'")


class Grouplike:
    """A distinguished (semi-)grouplike element of a coring."""

    def __init__(self, coring: Coring, g, semi=False):
        self.coring = coring
        self.g = coring.field.array(g).reshape(coring.dim)
        self.semi = semi

    @cached_property
    def u(self):
        return self.coring.eps(self.g)

    @cached_property
    def left_times_g(self):
        """Matrix of ``r -> r g`` (R -> C)."""
        F = self.coring.field
        C = self.coring.C
        if C.dim == 0:
            return F.zeros(0, self.coring.R.dim)
        return np.stack([F.dot(C.left[a], self.g) for a in range(self.coring.R.dim)], axis=1)

    @cached_property
    def g_times_right(self):
        """Matrix of ``r -> g r`` (R -> C)."""
        F = self.coring.field
        C = self.coring.C
        if C.dim == 0:
            return F.zeros(0, self.coring.R.dim)
        return np.stack([F.dot(C.right[a], self.g) for a in range(self.coring.R.dim)], axis=1)


# ---------------------------------------------------------------------------
# coring axioms


def check_coring_axioms(K: Coring) -> CheckReport:
    F = K.field
    rep = CheckReport("coring " + K.name)
    C, R = K.C, K.R
    bim = check_bimodule(C)
    rep.merge(bim, "bimodule")
    if not bim or C.left_alg is None or C.right_alg is None:
        return rep
    delta = K.delta
    CC = K.CC
    rep.add("delta_left_linear",
            [a for a in range(R.dim) if not F.equal(F.dot(delta, C.left[a]), F.dot(CC.left[a], delta))])
    rep.add("delta_right_linear",
            [a for a in range(R.dim) if not F.equal(F.dot(delta, C.right[a]), F.dot(CC.right[a], delta))])
    eps = K.counit
    rep.add("counit_left_linear",
            [a for a in range(R.dim)
             if not F.equal(F.dot(eps, C.left[a]), F.dot(R.left_regular[a], eps))])
    rep.add("counit_right_linear",
            [a for a in range(R.dim)
             if not F.equal(F.dot(eps, C.right[a]), F.dot(R.right_regular[a], eps))])
    if not rep.ok:
        return rep
    lift = K.delta_canon
    eye = F.eye(K.dim)
    flat3 = K.CCC.flat
    lhs = F.dot(flat3, F.dot(F.kron(lift, eye), lift))
    rhs = F.dot(flat3, F.dot(F.kron(eye, lift), lift))
    rep.add("coassociative", nonzero_columns(F, F.normalize(lhs - rhs)))
    rep.add("counit_left", nonzero_columns(F, F.normalize(F.dot(K.counit_left_k, lift) - eye)))
    rep.add("counit_right", nonzero_columns(F, F.normalize(F.dot(K.counit_right_k, lift) - eye)))
    return rep


def check_coring_map(f, K: Coring, D: Coring) -> bool:
    F = K.field
    f = F.array(f).reshape(D.dim, K.dim)
    if is_module_map(f, K.C, D.C):
        return False
    if not F.equal(F.dot(D.counit, f), K.counit):
        return False
    ff = tensor_maps(K.CC, D.CC, f, f)
    return F.equal(F.dot(D.delta, f), F.dot(ff, K.delta))


def verify_grouplike(K: Coring, g) -> dict:
    """Classify ``g`` as grouplike, semi-grouplike or neither (with reasons)."""
    F = K.field
    g = F.array(g).reshape(K.dim)
    dg = F.dot(K.delta, g)
    gg = K.pure2(g, g)
    out = {"kind": "neither", "coproduct": F.equal(dg, gg), "u": K.eps(g)}
    if not out["coproduct"]:
        out["witness"] = [int(i) for i in np.flatnonzero(F.normalize(dg - gg) != 0)]
        return out
    u = out["u"]
    R = K.R
    if not F.is_zero(g) and F.equal(u, R.unit):
        out["kind"] = "grouplike"
        return out
    idem = F.equal(R.mul(u, u), u)
    comm = F.equal(K.left_by(u, g), K.right_by(g, u))
    if idem and comm:
        out["kind"] = "semi-grouplike"
    else:
        out["witness"] = [name for name, ok in (("idempotent", idem), ("commutes", comm)) if not ok]
    return out


def make_grouplike(K: Coring, g, allow_semi=False) -> Grouplike:
    info = verify_grouplike(K, g)
    if info["kind"] == "grouplike":
        return Grouplike(K, g, semi=False)
    if info["kind"] == "semi-grouplike" and allow_semi:
        return Grouplike(K, g, semi=True)
    raise ValueError("element is not grouplike (%s)" % info["kind"])


def search_grouplikes(K: Coring, chunk=4096) -> list:
    """All grouplike elements, by exhaustive search over a prime field."""
    F = K.field
    if not isinstance(F, PrimeField):
        raise ValueError("exhaustive grouplike search needs a prime field")
    d = K.dim
    if F.p ** d > SEARCH_LIMIT:
        raise ValueError("search space %d^%d exceeds the limit %d" % (F.p, d, SEARCH_LIMIT))
    if d == 0:
        return []
    found = []
    total = F.p ** d
    unit = K.R.unit.reshape(-1, 1)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        G = np.empty((d, len(idx)), dtype=np.int64)
        rem = idx.copy()
        for i in range(d - 1, -1, -1):
            G[i] = rem % F.p
            rem //= F.p
        G = F.array(G) if F.dtype is object else G
        ok = np.all(F.dot(K.counit, G) == unit, axis=0)
        if not ok.any():
            continue
        G = G[:, ok]
        kr = F.normalize((G[:, None, :] * G[None, :, :]).reshape(d * d, -1))
        lhs = F.dot(K.delta, G)
        rhs = F.dot(K.CC.proj, kr)
        good = np.all(lhs == rhs, axis=0)
        found.extend(G[:, j].copy() for j in np.flatnonzero(good))
    return found


# ---------------------------------------------------------------------------
# comodules


class Comodule:
    """A right comodule: right ``R``-module ``M`` with ``rho: M -> M (x)_R C``."""

    def __init__(self, M: Bimodule, coring: Coring, coaction_lift, name=None):
        self.M = M
        self.coring = coring
        self.field = F = coring.field
        self.coaction_lift = F.array(coaction_lift).reshape(M.dim * coring.dim, M.dim)
        self.name = name or M.name

    @classmethod
    def from_coaction(cls, M, coring, rho, name=None):
        """Build from a coaction already expressed in ``M (x)_R C`` coordinates."""
        MC = tensor_over_R(M.with_sides(left=False), coring.C, coring.R, check=False)
        obj = cls(M, coring, coring.field.dot(MC.sec, rho), name)
        obj.__dict__["MC"] = MC
        return obj

    @cached_property
    def MC(self):
        return tensor_over_R(self.M.with_sides(left=False), self.coring.C, self.coring.R, check=False)

    @cached_property
    def MCC(self):
        return tensor_over_R(self.MC, self.coring.C, self.coring.R, check=False)

    @cached_property
    def rho(self):
        return self.field.dot(self.MC.proj, self.coaction_lift)

    @cached_property
    def rho_canon(self):
        return self.field.dot(self.MC.sec, self.rho)

    def tensor_g(self, g):
        """Matrix of ``m -> m (x) g`` into ``M (x)_R C``."""
        F = self.field
        return F.dot(self.MC.proj, F.kron(F.eye(self.M.dim), F.array(g).reshape(-1, 1)))

    def coassociativity_defect(self):
        F = self.field
        K = self.coring
        lift = self.rho_canon
        flat3 = self.MCC.flat
        lhs = F.dot(flat3, F.dot(F.kron(lift, F.eye(K.dim)), lift))
        rhs = F.dot(flat3, F.dot(F.kron(F.eye(self.M.dim), K.delta_canon), lift))
        return F.normalize(lhs - rhs)


def check_comodule(X: Comodule) -> CheckReport:
    F = X.field
    K = X.coring
    M = X.M
    rep = CheckReport("comodule " + X.name)
    mod = check_bimodule(M.with_sides(left=False))
    rep.merge(mod, "module")
    if not mod:
        return rep
    rho = X.rho
    rep.add("right_linear", [a for a in range(K.R.dim)
                             if not F.equal(F.dot(rho, M.right[a]), F.dot(X.MC.right[a], rho))])
    rep.add("coassociative", nonzero_columns(F, X.coassociativity_defect()))
    counit = F.dot(M.right_action_matrix, F.kron(F.eye(M.dim), K.counit))
    rep.add("counit", nonzero_columns(F, F.normalize(F.dot(counit, X.rho_canon) - F.eye(M.dim))))
    return rep


def regular_comodule(g: Grouplike) -> Comodule:
    """``R`` with coaction ``r -> g r``."""
    K = g.coring
    F = K.field
    R = K.R
    lift = F.kron(R.unit.reshape(-1, 1), g.g_times_right)
    return Comodule(regular_bimodule(R, left=False), K, lift, name=R.name)


def coring_comodule(K: Coring) -> Comodule:
    """``C`` as a right comodule over itself via the coproduct."""
    M = K.C.with_sides(left=False)
    return Comodule(M, K, K.delta_canon, name=K.name)


def comodule_hom_space(X: Comodule, Y: Comodule) -> list:
    """Basis of the right comodule maps ``X -> Y``."""
    F = X.field
    basis = module_hom_space(X.M.with_sides(left=False), Y.M.with_sides(left=False), "right")
    if not basis:
        return []
    eyeC = F.eye(X.coring.dim)
    defects = []
    for f in basis:
        lhs = F.dot(Y.rho, f)
        rhs = F.dot(Y.MC.proj, F.dot(F.kron(f, eyeC), X.rho_canon))
        defects.append(F.normalize(lhs - rhs).ravel())
    D = np.stack(defects, axis=1)
    N = F.kernel(D)
    out = []
    for j in range(N.shape[1]):
        m = sum((N[i, j] * basis[i] for i in range(len(basis))), F.zeros(*basis[0].shape))
        out.append(F.normalize(m))
    return out


def coinvariants(X: Comodule, g) -> np.ndarray:
    """Basis (columns) of ``{m : rho(m) = m (x) g}``."""
    F = X.field
    gv = g.g if isinstance(g, Grouplike) else g
    return F.kernel(F.normalize(X.rho - X.tensor_g(gv)))


def coinvariant_subring(g: Grouplike) -> AlgebraMap:
    """The subring of ``g``-coinvariants of ``R``, checked against the centraliser."""
    K = g.coring
    F = K.field
    X = regular_comodule(g)
    B = coinvariants(X, g)
    cen = F.kernel(F.normalize(g.left_times_g - g.g_times_right))
    if F.rank(np.concatenate([B, cen], axis=1)) != B.shape[1] or cen.shape[1] != B.shape[1]:
        raise ArithmeticError("coinvariants differ from the centraliser")
    ext = subalgebra(K.R, B, name="S")
    rep = check_algebra_map(ext)
    if not rep:
        raise ArithmeticError("coinvariants are not a subring: %s" % rep.failed())
    return ext


def induction_comodule(M: Bimodule, ext: AlgebraMap, g: Grouplike) -> Comodule:
    """``M (x)_S R`` with coaction ``m (x) r -> m (x) g r``."""
    K = g.coring
    F = K.field
    R = K.R
    RR = restrict(regular_bimodule(R), left=ext)
    MR = tensor_over_R(M.with_sides(left=False), RR, ext.source, check=False)
    # r -> 1 (x) g r  : R -> R (x)_k C
    G = F.kron(R.unit.reshape(-1, 1), g.g_times_right)
    lift_k = F.dot(F.kron(F.eye(M.dim), G), MR.sec)         # into M (x) R (x) C
    lift = F.dot(F.kron(MR.proj, F.eye(K.dim)), lift_k)      # into (M (x)_S R) (x)_k C
    X = Comodule(MR.with_sides(left=False), K, lift, name="%s(x)R" % M.name)
    rep = check_comodule(X)
    if not rep:
        raise ArithmeticError("induced coaction is inconsistent: %s" % rep.failed())
    X.tensor = MR
    return X


# ---------------------------------------------------------------------------
# constructions


def trivial_coring(R: Algebra):
    """``R`` as an ``R``-coring with grouplike ``1``."""
    F = R.field
    C = regular_bimodule(R)
    K = Coring(R, C, F.kron(F.eye(R.dim), R.unit.reshape(-1, 1)), F.eye(R.dim), name=R.name)
    return K, Grouplike(K, R.unit)


def sweedler_coring(ext: AlgebraMap):
    """``R (x)_S R`` with coproduct ``r (x) r' -> r (x) 1 (x) r'`` and grouplike ``1 (x) 1``."""
    R = ext.target
    F = R.field
    if not ext.is_injective():
        raise ValueError("ring extension must be injective")
    left = restrict(regular_bimodule(R), right=ext)
    right = restrict(regular_bimodule(R), left=ext)
    C = tensor_over_R(left, right, ext.source)
    C.name = "R(x)_S R"
    u = R.unit.reshape(-1, 1)
    a1 = F.dot(C.proj, F.kron(F.eye(R.dim), u))    # r -> r (x) 1
    a2 = F.dot(C.proj, F.kron(u, F.eye(R.dim)))    # r' -> 1 (x) r'
    delta_lift = F.dot(F.kron(a1, a2), C.sec)
    counit = F.dot(R.mult_matrix, C.sec)
    K = Coring(R, C, delta_lift, counit, name="Sweedler(%s/%s)" % (R.name, ext.source.name))
    K.ext = ext
    K.tensor = C
    return K, Grouplike(K, C.pure(R.unit, R.unit))


class EntwiningData:
    """An algebra ``A``, a coalgebra ``C`` over k and ``psi: C (x) A -> A (x) C``.

    Coalgebra data: ``delta_C`` is ``dim C^2 x dim C``, ``eps_C`` a row vector.
    """

    def __init__(self, A: Algebra, dimC: int, delta_C, eps_C, psi, names=None, name=None):
        F = A.field
        self.A = A
        self.field = F
        self.dimC = dimC
        self.delta_C = F.array(delta_C).reshape(dimC * dimC, dimC)
        self.eps_C = F.array(eps_C).reshape(1, dimC)
        self.psi = F.array(psi).reshape(A.dim * dimC, dimC * A.dim)
        self.names = names or tuple("c%d" % i for i in range(dimC))
        self.name = name or "entwining"

    def psi_n(self, n):
        """``psi^n : C^(x)n (x) A -> A (x) C^(x)n``, moving ``A`` left past each factor."""
        from .exactla import apply_block
        F = self.field
        dA, dC = self.A.dim, self.dimC
        X = F.eye(dC ** n * dA)
        dims = [dC] * n + [dA]
        for i in range(n - 1, -1, -1):
            # factors: C.. C_i A C.. -> C.. A C_i C..
            X, dims = apply_block(F, X, dims, i, i + 2, self.psi, out_dims=[dA, dC])
        return X


def entwining_to_coring(E: EntwiningData, check=True) -> Coring:
    """``A (x) C`` as an ``A``-coring; basis ``(a, c)`` at index ``a * dim C + c``."""
    A = E.A
    F = E.field
    dA, dC = A.dim, E.dimC
    eyeC = F.eye(dC)
    left = np.stack([F.kron(A.left_regular[a], eyeC) for a in range(dA)])
    mult_I = F.kron(A.mult_matrix, eyeC)
    right = []
    for b in range(dA):
        put_b = F.kron(eyeC, A.basis(b).reshape(-1, 1))          # c -> c (x) b
        right.append(F.dot(mult_I, F.kron(F.eye(dA), F.dot(E.psi, put_b))))
    Cb = Bimodule(F, dA * dC, A, left, A, np.stack(right), name="A(x)C")
    insert_one = F.kron(F.eye(dA * dC), F.kron(A.unit.reshape(-1, 1), eyeC))
    delta_lift = F.dot(insert_one, F.kron(F.eye(dA), E.delta_C))
    counit = F.kron(F.eye(dA), E.eps_C)
    K = Coring(A, Cb, delta_lift, counit, name="%s(x)C" % A.name)
    K.entwining = E
    if check:
        rep = check_coring_axioms(K)
        if not rep:
            raise ValueError("not an entwining: %s" % rep.failed())
    return K


def entwined_algebra_comodule(K: Coring, rho_A) -> Comodule:
    """``A`` as a comodule of ``A (x) C`` from a map ``rho_A: A -> A (x) C``."""
    F = K.field
    A = K.R
    rho_A = F.array(rho_A).reshape(K.dim, A.dim)
    lift = F.dot(F.kron(A.unit.reshape(-1, 1), F.eye(K.dim)), rho_A)
    return Comodule(regular_bimodule(A, left=False), K, lift, name=A.name)


def grouplike_from_entwined_algebra(K: Coring, rho_A) -> Grouplike:
    X = entwined_algebra_comodule(K, rho_A)
    rep = check_comodule(X)
    if not rep:
        raise ValueError("A is not an entwined module: %s" % rep.failed())
    F = K.field
    g = F.dot(F.array(rho_A).reshape(K.dim, K.R.dim), K.R.unit)
    return make_grouplike(K, g)


# ---------------------------------------------------------------------------
# dual ring


class DualRing:
    """``*C``: left ``R``-linear maps ``C -> R`` with ``(xi xi')(c) = xi(c1 xi'(c2))``."""

    def __init__(self, K: Coring):
        F = K.field
        self.coring = K
        self.field = F
        Cl = K.C.with_sides(right=False)
        Rl = regular_bimodule(K.R, right=False)
        self.basis = module_hom_space(Cl, Rl, "left")
        n = len(self.basis)
        self.dim = n
        self._B = np.stack([b.ravel() for b in self.basis], axis=1) if n else F.zeros(K.R.dim * K.dim, 0)
        mult = F.zeros(n, n, n)
        for i in range(n):
            for j in range(n):
                mult[i, j] = self.coords(self.product(self.basis[i], self.basis[j]))
        unit = self.coords(K.counit)
        self.algebra = Algebra(F, mult, unit, name="*C")

    def coords(self, xi):
        x = self.field.solve(self._B, np.asarray(xi).ravel())
        if x is None:
            raise ValueError("map is not left R-linear")
        return x

    def element(self, coords):
        F = self.field
        return F.normalize(F.dot(self._B, coords).reshape(self.coring.R.dim, self.coring.dim))

    def product(self, xi, xi2, lift=None):
        K = self.coring
        F = self.field
        lift = K.delta_canon if lift is None else lift
        inner = F.dot(K.C.right_action_matrix, F.kron(F.eye(K.dim), xi2))
        return F.dot(xi, F.dot(inner, lift))

    def lift_independent(self) -> bool:
        """Whether the product computed from the user's lift agrees with the canonical one."""
        F = self.field
        K = self.coring
        return all(F.equal(self.product(a, b), self.product(a, b, K.delta_lift))
                   for a in self.basis for b in self.basis)


def dual_ring(K: Coring) -> DualRing:
    D = DualRing(K)
    rep = check_algebra_axioms(D.algebra)
    if not rep:
        raise ArithmeticError("dual ring axioms fail: %s" % rep.failed())
    return D


def dual_action(D: DualRing, X: Comodule) -> Bimodule:
    """``M`` as a left ``*C``-module, ``xi . m = m0 xi(m1)``."""
    F = D.field
    M = X.M
    mats = [F.dot(M.right_action_matrix, F.dot(F.kron(F.eye(M.dim), xi), X.rho_canon))
            for xi in D.basis]
    act = np.stack(mats) if mats else F.zeros(0, M.dim, M.dim)
    return Bimodule(F, M.dim, D.algebra, act, name="*C.%s" % X.name)


def augmentation(D: DualRing, g: Grouplike):
    """``pi(xi) = xi(g)`` and the check ``pi(xi xi') = xi . pi(xi')`` on all basis pairs."""
    F = D.field
    pi = np.stack([F.dot(xi, g.g) for xi in D.basis], axis=1)
    act = dual_action(D, regular_comodule(g))
    fails = []
    for i, xi in enumerate(D.basis):
        # the action on R is xi . r = xi(g r)
        if not F.equal(act.left[i], F.dot(xi, g.g_times_right)):
            fails.append(("action", i))
        for j in range(D.dim):
            lhs = F.dot(pi, D.algebra.mult[i, j])
            rhs = F.dot(act.left[i], pi[:, j])
            if not F.equal(lhs, rhs):
                fails.append((i, j))
    rep = CheckReport("augmentation")
    rep.add("module_map", fails)
    rep.add("unit", [] if F.equal(F.dot(pi, D.algebra.unit), g.coring.R.unit) else [("unit",)])
    return pi, rep


def dual_to_endomorphisms(D: DualRing, ext: AlgebraMap):
    """For a Sweedler coring: ``xi -> (r -> xi(1 (x) r))`` into ``End_S(R)`` (left ``S``-linear).

    Returns the matrices ``f_xi`` and a report that the map is an algebra
    isomorphism onto the left ``S``-linear endomorphisms.
    """
    K = D.coring
    F = D.field
    R = K.R
    one_r = F.dot(K.C.proj, F.kron(R.unit.reshape(-1, 1), F.eye(R.dim)))
    imgs = [F.dot(xi, one_r) for xi in D.basis]
    RS = restrict(regular_bimodule(R, right=False), left=ext)
    End, _ = endomorphism_algebra(RS, "left")
    rep = CheckReport("*C -> End_S(R)")
    rep.add("S_linear", [i for i, f in enumerate(imgs)
                         if not all(F.equal(F.dot(f, RS.left[s]), F.dot(RS.left[s], f))
                                    for s in range(ext.source.dim))])
    B = np.stack([f.ravel() for f in imgs], axis=1) if imgs else F.zeros(R.dim ** 2, 0)
    rep.add("bijective", [] if F.rank(B) == D.dim == End.dim else [(F.rank(B), D.dim, End.dim)])
    mfail = []
    for i in range(D.dim):
        for j in range(D.dim):
            prod = D.element(D.algebra.mult[i, j])
            if not F.equal(F.dot(prod, one_r), F.dot(imgs[i], imgs[j])):
                mfail.append((i, j))
    rep.add("multiplicative", mfail)
    rep.add("unital", [] if F.equal(F.dot(K.counit, one_r), F.eye(R.dim)) else [("unit",)])
    return imgs, rep


# ---------------------------------------------------------------------------
# structure coming from a grouplike element


def decomposition_maps(g: Grouplike, ext: Optional[AlgebraMap] = None):
    """``C = R + ker eps`` on the right and on the left.

    Returns ``(u_R, u_R_inv, u_L, u_L_inv)`` as matrices to and from
    ``R (+) ker eps`` (coordinates: ``R`` first, then the ker eps basis) and
    a report on bijectivity and bilinearity.
    """
    K = g.coring
    F = K.field
    R = K.R
    B = K.kernel_counit
    linv = F.left_inverse(B) if B.shape[1] else F.zeros(0, K.dim)
    # u_R(c) = (eps(c), g eps(c) - c) ; u_L(c) = (eps(c), eps(c) g - c)
    uR = np.concatenate([K.counit, F.dot(linv, F.normalize(F.dot(g.g_times_right, K.counit) - F.eye(K.dim)))])
    uL = np.concatenate([K.counit, F.dot(linv, F.normalize(F.dot(g.left_times_g, K.counit) - F.eye(K.dim)))])
    uR_inv = np.concatenate([g.g_times_right, F.normalize(-B)], axis=1)
    uL_inv = np.concatenate([g.left_times_g, F.normalize(-B)], axis=1)
    uR, uL = F.normalize(uR), F.normalize(uL)
    rep = CheckReport("decomposition")
    eye = F.eye(K.dim)
    rep.add("uR_inverse", [] if F.equal(F.dot(uR_inv, uR), eye) and F.equal(F.dot(uR, uR_inv), eye) else [("uR",)])
    rep.add("uL_inverse", [] if F.equal(F.dot(uL_inv, uL), eye) and F.equal(F.dot(uL, uL_inv), eye) else [("uL",)])
    rep.add("dimension", [] if K.dim == R.dim + B.shape[1] else [(K.dim, R.dim, B.shape[1])])
    Kmod = submodule(K.C, B, name="ker eps")
    target = direct_sum(regular_bimodule(R), Kmod)
    if ext is None:
        ext = coinvariant_subring(g)
    rep.add("uR_right_linear", is_module_map(uR, K.C, target, "right"))
    rep.add("uL_left_linear", is_module_map(uL, K.C, target, "left"))
    Cs = restrict(K.C, left=ext, right=ext)
    Ts = restrict(target, left=ext, right=ext)
    rep.add("uR_left_S_linear", is_module_map(uR, Cs, Ts, "left"))
    rep.add("uL_right_S_linear", is_module_map(uL, Cs, Ts, "right"))
    return (uR, uR_inv, uL, uL_inv), rep


def grouplike_ring_structure(g: Grouplike):
    """The ring structure on ``C`` with unit ``g`` split by ``eps``.

    Returns ``(algebra, i_L, i_R, report)`` where ``i_L(r) = r g`` and
    ``i_R(r) = g r`` are ring maps splitting ``eps``.
    """
    K = g.coring
    F = K.field
    R = K.R
    n = K.dim
    C = K.C
    mult = F.zeros(n, n, n)
    eg = [F.dot(C.rmat(K.counit[:, j]), g.g) for j in range(n)]     # g eps(e_j)
    for i in range(n):
        ei = K.counit[:, i]
        L = C.lmat(ei)
        for j in range(n):
            ej = K.counit[:, j]
            v = L[:, j] + F.dot(C.rmat(ej), F.basis_vector(n, i)) - F.dot(L, eg[j])
            mult[i, j] = F.normalize(v)
    A = Algebra(F, mult, g.g, name="C_g")
    iL = AlgebraMap(R, A, g.left_times_g)
    iR = AlgebraMap(R, A, g.g_times_right)
    epsmap = AlgebraMap(A, R, K.counit)
    rep = CheckReport("grouplike ring")
    rep.merge(check_algebra_axioms(A), "algebra")
    rep.merge(check_algebra_map(epsmap), "eps")
    rep.merge(check_algebra_map(iL), "i_L")
    rep.merge(check_algebra_map(iR), "i_R")
    eye = F.eye(R.dim)
    rep.add("eps_splits_i_L", [] if F.equal(F.dot(K.counit, iL.matrix), eye) else [("i_L",)])
    rep.add("eps_splits_i_R", [] if F.equal(F.dot(K.counit, iR.matrix), eye) else [("i_R",)])
    return A, iL, iR, rep


def verify_coinv_C_iso(g: Grouplike, ext: Optional[AlgebraMap] = None):
    """``R -> C^coC_g``, ``r -> r g`` with inverse ``eps``; returns ``(phi, report)``."""
    K = g.coring
    F = K.field
    R = K.R
    X = coring_comodule(K)
    Q = coinvariants(X, g)
    phi = g.left_times_g
    rep = CheckReport("R = C^coC_g")
    # phi lands in coinvariants
    defect = F.normalize(F.dot(X.rho, phi) - F.dot(X.tensor_g(g.g), phi))
    rep.add("phi_coinvariant", nonzero_columns(F, defect))
    rep.add("eps_phi", nonzero_columns(F, F.normalize(F.dot(K.counit, phi) - F.eye(R.dim))))
    rep.add("phi_eps", nonzero_columns(F, F.normalize(F.dot(phi, F.dot(K.counit, Q)) - Q)))
    rep.add("dimension", [] if Q.shape[1] == R.dim else [(Q.shape[1], R.dim)])
    # every coinvariant c equals eps(c) g
    rep.add("c_is_eps_c_g", nonzero_columns(F, F.normalize(F.dot(g.left_times_g, F.dot(K.counit, Q)) - Q)))
    if ext is None:
        ext = coinvariant_subring(g)
    rep.add("left_R_linear", [a for a in range(R.dim)
                              if not F.equal(F.dot(phi, R.left_regular[a]), F.dot(K.C.left[a], phi))])
    S = ext.source
    rep.add("right_S_linear", [b for b in range(S.dim)
                               if not F.equal(F.dot(phi, R.rmat(ext.matrix[:, b])),
                                              F.dot(K.C.rmat(ext.matrix[:, b]), phi))])
    return phi, rep


def hom_coinv_iso(g: Grouplike, X: Comodule, ext: Optional[AlgebraMap] = None):
    """``Hom^C_R(R, M) = M^coC_g`` via ``f -> f(1)`` and ``m -> (r -> m r)``."""
    K = g.coring
    F = K.field
    R = K.R
    M = X.M
    Rc = regular_comodule(g)
    H = comodule_hom_space(Rc, X)
    Q = coinvariants(X, g)
    rep = CheckReport("Hom^C(R,M) = M^coC_g (%s)" % X.name)
    rep.add("dimension", [] if len(H) == Q.shape[1] else [(len(H), Q.shape[1])])
    to_m = [F.dot(f, R.unit) for f in H]

    def from_m(m):
        return np.stack([F.dot(M.right[a], m) for a in range(R.dim)], axis=1)

    Qspan = Q
    bad = []
    for i, m in enumerate(to_m):
        if F.rank(np.concatenate([Qspan, m.reshape(-1, 1)], axis=1)) != Qspan.shape[1]:
            bad.append(i)
        if not F.equal(from_m(m), H[i]):
            bad.append(("roundtrip", i))
    rep.add("f_to_f1", bad)
    bad = []
    Hmat = np.stack([h.ravel() for h in H], axis=1) if H else F.zeros(M.dim * R.dim, 0)
    for j in range(Q.shape[1]):
        f = from_m(Q[:, j])
        if F.solve(Hmat, f.ravel()) is None:
            bad.append(j)
        elif not F.equal(F.dot(f, R.unit), Q[:, j]):
            bad.append(("roundtrip", j))
    rep.add("m_to_f", bad)
    if ext is None:
        ext = coinvariant_subring(g)
    S = ext.source
    bad = []
    for i, f in enumerate(H):
        for b in range(S.dim):
            s = ext.matrix[:, b]
            fs = F.dot(f, R.lmat(s))                      # (f s)(r) = f(s r)
            if F.solve(Hmat, fs.ravel()) is None or not F.equal(F.dot(fs, R.unit), F.dot(M.rmat(s), to_m[i])):
                bad.append((i, b))
    rep.add("S_action", bad)
    return H, Q, rep


def comodule_from_submodule(X: Comodule, basis) -> Comodule:
    """Restriction of a comodule to a subcomodule given by a basis."""
    F = X.field
    sub = submodule(X.M.with_sides(left=False), basis)
    Y_MC = tensor_over_R(sub, X.coring.C, X.coring.R, check=False)
    incl = tensor_maps(Y_MC, X.MC, sub.inclusion, F.eye(X.coring.dim))
    rho = F.solve(incl, F.dot(X.rho, sub.inclusion))
    if rho is None:
        raise ValueError("subspace is not a subcomodule")
    Y = Comodule.from_coaction(sub, X.coring, rho)
    return Y
