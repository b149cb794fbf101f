"""
Connections on right modules with values in the reduced Amitsur complex.

A connection is stored by its degree-zero part ``nabla: M -> M (x)_R ker eps``;
its extension to ``M (x)_R Omega^k`` is recomputed from the Leibniz formula
whenever it is needed (curvature only needs ``k = 1``).
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional

import numpy as np

from .algebra import (Algebra, AlgebraMap, Bimodule, has_retraction,
                      is_projective, module_hom_space, tensor_maps,
                      tensor_over_R)
from .amitsur import AmitsurContext, entwining_d, entwining_identification
from .checks import CheckReport, nonzero_columns
from .coring import Comodule, check_comodule, sweedler_coring
from .exactla import apply_block


class ModuleForms:
    """``M (x)_R Omega^k(C/S)`` for a right module ``M`` and the maps to ``M (x)_R C``."""

    def __init__(self, M: Bimodule, ctx: AmitsurContext):
        if not ctx.reduced:
            raise ValueError("connections take values in the reduced complex")
        self.M = M.with_sides(left=False)
        self.ctx = ctx
        self.field = ctx.field
        self._spaces = [self.M]

    def __getitem__(self, k):
        self.ctx._need(k)
        while len(self._spaces) <= k:
            self._spaces.append(tensor_over_R(self._spaces[-1], self.ctx.kmod, self.ctx.R, check=False))
        return self._spaces[k]

    @cached_property
    def MC(self):
        return tensor_over_R(self.M, self.ctx.coring.C, self.ctx.R, check=False)

    @cached_property
    def MCC(self):
        return tensor_over_R(self.MC, self.ctx.coring.C, self.ctx.R, check=False)

    @cached_property
    def incl1(self):
        """``M (x)_R ker eps -> M (x)_R C``."""
        F = self.field
        return tensor_maps(self[1], self.MC, F.eye(self.M.dim), self.ctx.kbasis)

    @cached_property
    def incl2(self):
        """``M (x)_R ker eps (x)_R ker eps -> M (x)_R C (x)_R C``."""
        F = self.field
        B = self.ctx.kbasis
        lift = self[2].lift
        dims = [self.M.dim, B.shape[1], B.shape[1]]
        X, dims = apply_block(F, lift, dims, 1, 2, B)
        X, dims = apply_block(F, X, dims, 2, 3, B)
        return F.dot(self.MCC.flat, X)

    @cached_property
    def tensor_g(self):
        """``m -> m (x) g``."""
        F = self.field
        g = self.ctx.g.g.reshape(-1, 1)
        return F.dot(self.MC.proj, F.kron(F.eye(self.M.dim), g))

    @cached_property
    def M_eps(self):
        """``M (x)_R eps : M (x)_R C -> M``."""
        F = self.field
        K = self.ctx.coring
        return F.dot(self.M.right_action_matrix,
                     F.dot(F.kron(F.eye(self.M.dim), K.counit), self.MC.sec))

    def to_kernel(self, x):
        """Coordinates in ``M (x)_R ker eps`` of elements of ``M (x)_R C`` killed by ``M (x) eps``."""
        y = self.field.solve(self.incl1, x)
        if y is None:
            raise ValueError("values do not lie in M (x)_R ker eps")
        return y


class Connection:
    """``nabla: M -> M (x)_R Omega^1(C/S)`` given in quotient coordinates."""

    def __init__(self, forms: ModuleForms, nabla, name=None):
        F = forms.field
        self.forms = forms
        self.M = forms.M
        self.ctx = forms.ctx
        self.field = F
        self.nabla = F.array(nabla).reshape(forms[1].dim, self.M.dim)
        self.name = name or "nabla on %s" % self.M.name

    @classmethod
    def on(cls, M: Bimodule, ctx: AmitsurContext, nabla, name=None):
        return cls(ModuleForms(M, ctx), nabla, name)

    def _extension_k(self, k):
        """The extension on k-level representatives ``M (x) ker eps^(x)k``."""
        F = self.field
        fm = self.forms
        ctx = self.ctx
        dM, dK = self.M.dim, ctx.kmod.dim
        n = dM * dK ** k
        X = F.eye(n)
        dims = [dM] + [dK] * k
        nabla_k = F.dot(fm[1].lift, self.nabla)
        T1, _ = apply_block(F, X, dims, 0, 1, nabla_k, out_dims=[dM, dK])
        if k == 0:
            return F.dot(fm[1].flat, T1)
        Y, yd = apply_block(F, X, dims, 1, k + 1, ctx.space(k).flat)
        Y, yd = apply_block(F, Y, yd, 1, 2, ctx.d(k))
        Y, yd = apply_block(F, Y, yd, 1, 2, ctx.space(k + 1).lift, out_dims=[dK] * (k + 1))
        return F.dot(fm[k + 1].flat, F.normalize(T1 + Y))

    def extension(self, k):
        """``M (x) Omega^k -> M (x) Omega^(k+1)``, ``m (x) w -> nabla(m) w + m (x) d w``."""
        if k == 0:
            return self.nabla
        return self.field.dot(self._extension_k(k), self.forms[k].lift)

    def extension_well_defined(self, k) -> bool:
        F = self.field
        E = self._extension_k(k)
        S = self.forms[k]
        resid = F.normalize(F.eye(E.shape[1]) - F.dot(S.lift, S.flat))
        return F.is_zero(F.dot(E, resid))

    @cached_property
    def curvature(self):
        return self.field.dot(self.extension(1), self.nabla)

    def is_flat(self) -> bool:
        return self.field.is_zero(self.curvature)


def extend_connection(cn: Connection, k: int, x):
    return cn.field.dot(cn.extension(k), x)


def curvature(cn: Connection):
    return cn.curvature


def is_flat(cn: Connection) -> bool:
    return cn.is_flat()


def check_connection(cn: Connection) -> CheckReport:
    """Leibniz rule ``nabla(m r) = nabla(m) r + m (x) d(r)`` on basis pairs."""
    F = cn.field
    M = cn.M
    fm = cn.forms
    d0 = cn.ctx.d(0)
    rep = CheckReport(cn.name)
    fails = []
    for a in range(cn.ctx.R.dim):
        lhs = F.dot(cn.nabla, M.right[a])
        rhs = F.dot(fm[1].right[a], cn.nabla) + F.dot(fm[1].proj, F.kron(F.eye(M.dim), d0[:, a].reshape(-1, 1)))
        fails += [(m, a) for m in nonzero_columns(F, F.normalize(lhs - rhs))]
    rep.add("leibniz", fails)
    return rep


# ---------------------------------------------------------------------------
# sections of M (x) eps and connections


def connection_from_section(forms: ModuleForms, j, check=True) -> Connection:
    """``nabla_j = j - (. (x) g)`` for an R-linear section ``j`` of ``M (x)_R eps``."""
    F = forms.field
    M = forms.M
    j = F.array(j).reshape(forms.MC.dim, M.dim)
    if check:
        if not F.equal(F.dot(forms.M_eps, j), F.eye(M.dim)):
            raise ValueError("j is not a section of M (x) eps")
        if any(not F.equal(F.dot(j, M.right[a]), F.dot(forms.MC.right[a], j))
               for a in range(forms.ctx.R.dim)):
            raise ValueError("j is not right R-linear")
    return Connection(forms, forms.to_kernel(F.normalize(j - forms.tensor_g)))


def section_from_connection(cn: Connection):
    F = cn.field
    return F.normalize(F.dot(cn.forms.incl1, cn.nabla) + cn.forms.tensor_g)


def connection_exists(M: Bimodule, ctx: AmitsurContext) -> Optional[Connection]:
    """A connection built from a retraction of ``M (x)_R eps``, or None."""
    forms = ModuleForms(M, ctx)
    j = has_retraction(forms.M_eps, forms.MC, forms.M, "right")
    if j is None:
        return None
    return connection_from_section(forms, j)


# ---------------------------------------------------------------------------
# comodules and flat connections


def coaction_to_connection(X: Comodule, ctx: AmitsurContext) -> Connection:
    """``nabla_rho = rho - (. (x) g)``."""
    forms = ModuleForms(X.M, ctx)
    F = forms.field
    rho = _rho_in(forms, X)
    return Connection(forms, forms.to_kernel(F.normalize(rho - forms.tensor_g)),
                      name="nabla_rho on %s" % X.name)


def _rho_in(forms: ModuleForms, X: Comodule):
    # both quotients come from identical relation matrices; keep the check cheap
    F = forms.field
    if X.MC.dim != forms.MC.dim or not F.equal(X.MC.proj, forms.MC.proj):
        raise ArithmeticError("comodule and forms disagree on M (x)_R C")
    return X.rho


def connection_to_coaction(cn: Connection) -> Comodule:
    """``rho_nabla = nabla + (. (x) g)`` as a comodule (checked by the caller)."""
    K = cn.ctx.coring
    rho = section_from_connection(cn)
    Y = Comodule.from_coaction(cn.M, K, rho, name="rho_nabla on %s" % cn.M.name)
    return Y


def flatness_vs_coassociativity(cn: Connection):
    """Curvature and coassociativity defect of ``rho_nabla``, with their relation.

    The defect equals the curvature pushed into ``M (x) C (x) C``.
    Returns ``(report, curvature, defect)``.
    """
    F = cn.field
    Y = connection_to_coaction(cn)
    Fv = cn.curvature
    D = Y.coassociativity_defect()
    pushed = F.dot(cn.forms.incl2, Fv)
    rep = CheckReport("flat <-> coassociative")
    rep.add("defect_is_pushed_curvature", nonzero_columns(F, F.normalize(D - pushed)))
    rep.add("same_witnesses", [] if nonzero_columns(F, D) == nonzero_columns(F, Fv)
            else [(tuple(nonzero_columns(F, D)), tuple(nonzero_columns(F, Fv)))])
    return rep, Fv, D


def nonflat_connection(M: Bimodule, ctx: AmitsurContext) -> Optional[Connection]:
    """First perturbation ``nabla_0 + phi`` (phi in a basis of Hom_R(M, M (x) ker eps)) that is not flat."""
    base = connection_exists(M, ctx)
    if base is None:
        return None
    F = ctx.field
    forms = base.forms
    target = forms[1].with_sides(left=False)
    for phi in module_hom_space(forms.M, target, "right"):
        cn = Connection(forms, F.normalize(base.nabla + phi), name="perturbed nabla on %s" % M.name)
        if not cn.is_flat():
            return cn
    return None


def morphism_correspondence(f, X: Comodule, Y: Comodule, ctx: AmitsurContext) -> dict:
    """Whether ``f`` is a comodule map and whether it is a map of connections."""
    F = ctx.field
    K = ctx.coring
    f = F.array(f).reshape(Y.M.dim, X.M.dim)
    cx, cy = coaction_to_connection(X, ctx), coaction_to_connection(Y, ctx)
    linear = all(F.equal(F.dot(f, X.M.right[a]), F.dot(Y.M.right[a], f)) for a in range(K.R.dim))
    fC = tensor_maps(X.MC, Y.MC, f, F.eye(K.dim))
    fK = tensor_maps(cx.forms[1], cy.forms[1], f, F.eye(ctx.kmod.dim))
    d_com = F.normalize(F.dot(Y.rho, f) - F.dot(fC, X.rho))
    d_conn = F.normalize(F.dot(cy.nabla, f) - F.dot(fK, cx.nabla))
    return {
        "comodule_map": linear and F.is_zero(d_com),
        "connection_map": linear and F.is_zero(d_conn),
        "defects_match": F.equal(d_com, F.dot(cy.forms.incl1, d_conn)),
        "comodule_defect": d_com,
        "connection_defect": d_conn,
    }


def cuntz_quillen_check(M: Bimodule, A: Algebra) -> dict:
    """Projectivity versus existence of a connection for the universal coring of ``k -> A``."""
    F = A.field
    ext = AlgebraMap.unit_map(A)
    K, g = sweedler_coring(ext)
    ctx = AmitsurContext(g, 2, reduced=True, ext=ext)
    projective, _ = is_projective(M)
    cn = connection_exists(M, ctx)
    forms = ModuleForms(M, ctx)
    u = A.unit.reshape(-1, 1)
    one_tensor = F.dot(K.C.proj, F.kron(u, F.eye(A.dim)))          # a -> 1 (x) a
    iso = F.dot(forms.MC.proj, F.kron(F.eye(M.dim), one_tensor))    # M (x)_k A -> M (x)_A (A (x) A)
    action = F.equal(F.dot(forms.M_eps, iso), M.right_action_matrix)
    return {"projective": projective, "connection": cn is not None,
            "agree": projective == (cn is not None), "eps_is_action": action}


# ---------------------------------------------------------------------------
# entwining examples


def entwining_flat_connection_ac(ctx: AmitsurContext, rho_A, n: int):
    """The connection on ``A (x) C^(x)n`` from the explicit entwining formula.

    Returns ``(connection, comodule, report)``; the report compares with the
    connection of the comodule ``Omega^n(C)`` (coaction: coproduct on the
    last factor) and checks flatness.
    """
    F = ctx.field
    K = ctx.coring
    E = K.entwining
    A = E.A
    full = ctx.full
    Om = full[n]
    # comodule structure: Delta on the last tensor factor
    dims = [K.dim] * n
    X, dims = apply_block(F, Om.lift, dims, n - 1, n, K.delta_canon, out_dims=[K.dim, K.dim])
    X, dims = apply_block(F, X, dims, 0, n, Om.flat)
    M = Om.with_sides(left=False)
    M.name = "A(x)C^%d" % n
    comod = Comodule(M, K, X, name=M.name)
    rep = check_comodule(comod)
    cn_rho = coaction_to_connection(comod, ctx)
    # explicit formula on A (x) C^(x)n
    rho_A = F.array(rho_A).reshape(A.dim * E.dimC, A.dim)
    g_AC = F.dot(rho_A, A.unit)
    dA, dC = A.dim, E.dimC
    Y = F.eye(dA * dC ** n)
    ydims = [dA] + [dC] * n
    first, _ = apply_block(F, Y, ydims, n, n + 1, E.delta_C, out_dims=[dC, dC])
    # a psi^n(c (x) 1_0) (x) 1_1 is the last term of the psi-formula for d
    last = _psi_tail(E, g_AC, n)
    formula = F.normalize(first - last)
    phi_n = entwining_identification(ctx, n)
    phi_n1 = entwining_identification(ctx, n + 1)
    nabla_formula = F.dot(phi_n1, F.dot(formula, F.inverse(phi_n)))
    forms = cn_rho.forms
    cn = Connection(forms, forms.to_kernel(nabla_formula), name="entwining nabla on A(x)C^%d" % n)
    rep.merge(check_connection(cn))
    rep.add("matches_comodule_connection", nonzero_columns(F, F.normalize(cn.nabla - cn_rho.nabla)))
    rep.add("flat", nonzero_columns(F, cn.curvature))
    return cn, comod, rep


def _psi_tail(E, g_AC, n):
    """``a (x) c -> a psi^n(c (x) g_A) (x) g_C`` on ``A (x) C^(x)n``."""
    F = E.field
    A = E.A
    dA, dC = A.dim, E.dimC
    X = F.kron(F.eye(dA * dC ** n), F.array(g_AC).reshape(-1, 1))
    dims = [dA] + [dC] * n + [dA, dC]
    X, dims = apply_block(F, X, dims, 1, n + 2, E.psi_n(n), out_dims=[dA] + [dC] * n)
    X, dims = apply_block(F, X, dims, 0, 2, A.mult_matrix)
    return X


def psi_lower(E, n):
    """``psi_n : C (x) A^(x)n -> A^(x)n (x) C``, moving ``C`` right past each factor."""
    F = E.field
    dA, dC = E.A.dim, E.dimC
    X = F.eye(dC * dA ** n)
    dims = [dC] + [dA] * n
    for i in range(n):
        X, dims = apply_block(F, X, dims, i, i + 2, E.psi, out_dims=[dA, dC])
    return X


def entwining_flat_connection_ca(ctx: AmitsurContext, n: int):
    """The connection on ``C (x) A^(x)n``; ``A`` acts on the last factor from the right.

    Returns ``(connection, comodule, report)`` with Leibniz, flatness and the
    comodule axioms of the derived coaction checked.
    """
    F = ctx.field
    K = ctx.coring
    E = K.entwining
    A = E.A
    dA, dC = A.dim, E.dimC
    dM = dC * dA ** n
    right = np.stack([F.kron(F.eye(dC * dA ** (n - 1)), A.right_regular[b]) for b in range(dA)])
    M = Bimodule(F, dM, right_alg=A, right=right, name="C(x)A^%d" % n)
    X = F.eye(dM)
    dims = [dC] + [dA] * n
    X, dims = apply_block(F, X, dims, 0, 1, E.delta_C, out_dims=[dC, dC])
    X, dims = apply_block(F, X, dims, 1, n + 2, psi_lower(E, n), out_dims=[dA] * n + [dC])
    put_one = F.kron(F.eye(dM), F.kron(A.unit.reshape(-1, 1), F.eye(dC)))
    lift = F.dot(put_one, X)                      # into M (x)_k (A (x) C)
    comod = Comodule(M, K, lift, name=M.name)
    forms = ModuleForms(M, ctx)
    rho = F.dot(forms.MC.proj, lift)
    cn = Connection(forms, forms.to_kernel(F.normalize(rho - forms.tensor_g)),
                    name="entwining nabla on C(x)A^%d" % n)
    rep = CheckReport("C(x)A^%d" % n)
    rep.merge(check_connection(cn))
    rep.add("flat", nonzero_columns(F, cn.curvature))
    rep.merge(check_comodule(comod))
    return cn, comod, rep


def check_psi_d(ctx: AmitsurContext, rho_A, n: int):
    """Convenience: ``d^n`` from the psi formula in ``Omega`` coordinates."""
    F = ctx.field
    E = ctx.coring.entwining
    rho_A = F.array(rho_A)
    g_AC = F.dot(rho_A.reshape(-1, E.A.dim), E.A.unit)
    phi = entwining_identification(ctx, n)
    return F.dot(entwining_identification(ctx, n + 1),
                 F.dot(entwining_d(E, g_AC, n, rho_A), F.inverse(phi)))
