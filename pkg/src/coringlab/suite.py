"""Verification runs over an :class:`~coringlab.io.Instance`, returned as plain dicts."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .algebra import (check_algebra_axioms, check_algebra_map, check_bimodule,
                      is_projective, verify_free_basis)
from .amitsur import (AmitsurContext, check_dg_axioms, cohomology,
                      galois_map, theta_iso, universal_forms,
                      verify_entwining_formulas, verify_homotopy)
from .checks import CheckReport
from .connections import (coaction_to_connection, connection_exists,
                          connection_to_coaction)
from .coring import (augmentation, check_comodule, check_coring_axioms,
                     coinvariant_subring, dual_ring, grouplike_ring_structure,
                     hom_coinv_iso, verify_coinv_C_iso, verify_grouplike)
from .io import Instance

DEFAULT_DEGREE = 3


def validate(inst: Instance) -> dict:
    """Algebra, extension, bimodule, coring, grouplike, comodule and module checks."""
    F = inst.field
    K = inst.coring
    sections = []

    def add(rep: CheckReport):
        sections.append(rep)
        return rep.ok

    for name, A in inst.algebras.items():
        rep = check_algebra_axioms(A)
        rep.title = "algebra %s" % name
        add(rep)
    if inst.extension is not None:
        rep = check_algebra_map(inst.extension)
        rep.title = "extension"
        rep.add("injective", [] if inst.extension.is_injective() else [("kernel",)])
        add(rep)
    coring_ok = add(check_coring_axioms(K))
    skipped = []
    ext_ok = False
    if coring_ok:
        info = verify_grouplike(K, inst.grouplike.g)
        rep = CheckReport("grouplike")
        want = ("grouplike", "semi-grouplike") if inst.grouplike.semi else ("grouplike",)
        rep.add("kind", [] if info["kind"] in want else [info["kind"]] + list(info.get("witness", [])))
        rep.add("coproduct", info.get("witness", []) if not info["coproduct"] else [])
        ext_ok = add(rep)
    else:
        skipped.append("grouplike")
    if ext_ok and not inst.grouplike.semi and inst.extension is not None:
        S = coinvariant_subring(inst.grouplike)
        img = F.rank(inst.extension.matrix)
        both = F.rank(np.concatenate([S.matrix, inst.extension.matrix], axis=1))
        rep = CheckReport("coinvariants")
        rep.add("extension_is_coinvariants", [] if img == both == S.source.dim else [(img, S.source.dim)])
        add(rep)
    if inst.free_basis is not None and inst.extension is not None:
        rep = CheckReport("free basis")
        rep.add("basis_over_extension",
                [] if verify_free_basis(inst.extension, inst.free_basis) else [len(inst.free_basis)])
        add(rep)
    for name, M in inst.modules.items():
        rep = check_bimodule(M)
        rep.title = "module %s" % name
        add(rep)
    for name, X in inst.comodules.items():
        if coring_ok:
            rep = check_comodule(X)
            rep.title = "comodule %s" % name
            add(rep)
        else:
            skipped.append("comodule %s" % name)
    ok = all(r.ok for r in sections)
    return {"command": "validate", "instance": inst.name, "ok": ok,
            "checks": [r.as_dict() for r in sections], "skipped_checks": skipped}


def _ext(inst: Instance):
    if inst.extension is not None:
        return inst.extension
    return coinvariant_subring(inst.grouplike)


def cohomology_table(inst: Instance, max_degree=DEFAULT_DEGREE, reduced=False) -> dict:
    g = inst.grouplike
    if reduced and g.semi:
        return {"command": "cohomology", "instance": inst.name, "reduced": True,
                "ok": None, "reason": "the reduced complex needs a grouplike element"}
    ctx = AmitsurContext(g, max_degree + 1, reduced=reduced,
                         ext=_ext(inst) if not g.semi else None)
    summary = cohomology(ctx, max_degree)
    dg = check_dg_axioms(ctx, max_degree) if not g.semi else None
    d2 = all(ctx.field.is_zero(ctx.field.dot(ctx.d(n + 1), ctx.d(n))) for n in range(max_degree))
    rows = [{"n": n, "dim": summary.dims[n], "rank_d": summary.ranks[n], "H": summary.h[n]}
            for n in range(max_degree + 1)]
    out = {"command": "cohomology", "instance": inst.name, "reduced": reduced,
           "max_degree": max_degree, "ok": d2 and (dg is None or dg.ok),
           "d_squared_zero": d2, "table": rows, "H": summary.h}
    if dg is not None:
        out["dg_axioms"] = dg.as_dict()
    return out


def galois(inst: Instance, max_degree=DEFAULT_DEGREE) -> dict:
    g = inst.grouplike
    out = {"command": "galois", "instance": inst.name}
    if g.semi:
        out.update(galois=False, free_basis_certified=None, homotopy_verified=None, ok=True)
        return out
    ext = _ext(inst)
    gal = galois_map(g, ext)
    out["galois"] = bool(gal.is_galois)
    out["canonical_map_well_defined"] = bool(gal.well_defined)
    if not gal.is_galois:
        out.update(free_basis_certified=None, homotopy_verified=None, ok=True)
        return out
    fb = inst.free_basis is not None and verify_free_basis(ext, inst.free_basis)
    out["free_basis_certified"] = bool(fb)
    if max_degree < 1:
        out["homotopy_verified"] = None
        out["ok"] = True
        return out
    ctx = AmitsurContext(g, max_degree + 2, ext=ext)
    rep = verify_homotopy(ctx, gal, degrees=tuple(range(1, max_degree + 1)))
    out["homotopy_verified"] = rep.ok
    out["homotopy"] = rep.as_dict()
    out["ok"] = rep.ok
    return out


def connections(inst: Instance, module: Optional[str] = None) -> dict:
    g = inst.grouplike
    out = {"command": "connections", "instance": inst.name}
    names = list(inst.modules) if module is None else [module]
    for name in names:
        if name not in inst.modules:
            raise KeyError("no module named %r (have: %s)" % (name, ", ".join(inst.modules) or "none"))
    if g.semi:
        out.update(ok=None, reason="connections need a grouplike element", modules={})
        return out
    ctx = AmitsurContext(g, 2, reduced=True, ext=_ext(inst))
    rows = {}
    ok = True
    for name in names:
        M = inst.modules[name]
        cn = connection_exists(M, ctx)
        projective, _ = is_projective(M)
        flat = None
        roundtrip = None
        X = inst.comodules.get(name)
        if X is not None and X.M.dim == M.dim:
            cnx = coaction_to_connection(X, ctx)
            flat = cnx.is_flat()
            back = connection_to_coaction(cnx)
            roundtrip = ctx.field.equal(back.rho, X.rho)
            ok = ok and flat and roundtrip
        rows[name] = {"exists": cn is not None, "flat_if_from_coaction": flat,
                      "rho_recovered": roundtrip, "projective": bool(projective),
                      "cq_agree": (cn is not None) == bool(projective)}
    out["modules"] = rows
    out["ok"] = ok
    return out


def extras(inst: Instance, max_degree=DEFAULT_DEGREE) -> dict:
    """Dual ring, structural isomorphisms, entwining formulas and the universal-forms comparison."""
    g = inst.grouplike
    K = inst.coring
    out = {}
    D = dual_ring(K)
    _, aug = augmentation(D, g) if not g.semi else (None, None)
    out["dual_ring"] = {"dim": D.dim, "augmentation": aug.as_dict() if aug else None}
    if g.semi:
        return out
    ext = _ext(inst)
    _, rep = verify_coinv_C_iso(g, ext)
    out["coinvariants_of_C"] = rep.as_dict()
    out["hom_coinvariants"] = {name: hom_coinv_iso(g, X, ext)[2].as_dict()
                               for name, X in inst.comodules.items()}
    out["grouplike_ring"] = grouplike_ring_structure(g)[3].as_dict()
    E = getattr(K, "entwining", None)
    if E is not None and inst.rho_A is not None:
        ctx = AmitsurContext(g, max_degree + 1, ext=ext)
        out["entwining_formulas"] = verify_entwining_formulas(ctx, inst.rho_A, max_degree).as_dict()
    gal = galois_map(g, ext)
    if gal.is_galois and max_degree >= 1:
        red = AmitsurContext(g, max_degree, reduced=True, ext=ext)
        U = universal_forms(ext, max_degree)
        _, rep = theta_iso(red, U, max_degree)
        out["universal_forms"] = rep.as_dict()
    return out


def full_report(inst: Instance, max_degree=DEFAULT_DEGREE) -> dict:
    val = validate(inst)
    out = {"command": "report", "instance": inst.name, "max_degree": max_degree,
           "validate": val}
    if not val["ok"]:
        out["ok"] = False
        out["skipped"] = "instance failed validation"
        return out
    out["cohomology"] = cohomology_table(inst, max_degree)
    out["cohomology_reduced"] = cohomology_table(inst, max_degree, reduced=True)
    out["galois"] = galois(inst, max_degree)
    out["connections"] = connections(inst) if inst.modules else None
    out["extras"] = extras(inst, max_degree)
    parts = [out["cohomology"], out["cohomology_reduced"], out["galois"], out["connections"]]
    oks = [p.get("ok") for p in parts if p]
    extra_ok = [v.get("ok") for v in _walk_reports(out["extras"])]
    out["ok"] = all(x is not False for x in oks) and all(extra_ok)
    return out


def _walk_reports(node):
    if isinstance(node, dict):
        if "results" in node and "ok" in node:
            yield node
            return
        for v in node.values():
            yield from _walk_reports(v)
