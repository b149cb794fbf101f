"""Instance files: JSON text describing a coring with a grouplike and some modules.

Scalars are written as strings (``"3/2"``, ``"-1"``, ``"1 mod 2"``) or plain
integers.  Every parse problem raises :class:`InstanceError` carrying the path
of the offending field, e.g. ``coring.psi[2][1]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .algebra import (Algebra, AlgebraMap, Bimodule, free_module,
                      quotient_module, regular_bimodule, tensor_over_R)
from .amitsur import coring_from_dg
from .coring import (Comodule, Coring, EntwiningData, Grouplike,
                     coring_comodule, entwining_to_coring, regular_comodule,
                     sweedler_coring, trivial_coring)
from .exactla import GF, QQ, Field


class InstanceError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__("%s: %s" % (path or "<root>", message))


@dataclass
class Instance:
    name: str
    field: Field
    algebras: dict
    coring: Coring
    grouplike: Grouplike
    extension: Optional[AlgebraMap] = None
    free_basis: Optional[list] = None
    rho_A: Optional[np.ndarray] = None
    modules: dict = field(default_factory=dict)
    comodules: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict, repr=False)

    @property
    def R(self) -> Algebra:
        return self.coring.R


# ---------------------------------------------------------------------------
# low-level readers


def _get(node, key, path, kind=None, default=KeyError):
    if not isinstance(node, dict):
        raise InstanceError(path, "expected an object")
    if key not in node:
        if default is KeyError:
            raise InstanceError(_join(path, key), "missing field")
        return default
    val = node[key]
    if kind is not None and not isinstance(val, kind):
        raise InstanceError(_join(path, key), "expected %s" % _kind_name(kind))
    return val


def _join(path, key):
    if isinstance(key, int):
        return "%s[%d]" % (path, key)
    return "%s.%s" % (path, key) if path else key


def _kind_name(kind):
    names = {dict: "an object", list: "an array", str: "a string", int: "an integer", bool: "a boolean"}
    if isinstance(kind, tuple):
        return " or ".join(names.get(k, k.__name__) for k in kind)
    return names.get(kind, kind.__name__)


def _scalar(F, x, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InstanceError(path, "scalars must be integers or strings")
    try:
        return F.coerce(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceError(path, str(exc)) from None


def _tensor(F, node, path, shape):
    """Nested list of scalars with the given shape (``None`` entries are free)."""
    shape = tuple(shape)

    def rec(x, p, depth):
        if depth == len(shape):
            return _scalar(F, x, p)
        if not isinstance(x, list):
            raise InstanceError(p, "expected an array (shape %s)" % _shape_text(shape))
        want = shape[depth]
        if want is not None and len(x) != want:
            raise InstanceError(p, "expected length %d, got %d (shape %s)" % (want, len(x), _shape_text(shape)))
        return [rec(v, _join(p, i), depth + 1) for i, v in enumerate(x)]

    data = rec(node, path, 0)
    arr = np.array(data, dtype=object)
    if arr.ndim != len(shape):
        # some dimension is empty
        dims = [len(data)] + [0 if d is None else d for d in shape[1:]]
        return F.zeros(*dims)
    return F.array(arr)


def _shape_text(shape):
    return "[" + ", ".join("*" if d is None else str(d) for d in shape) + "]"


def _matrix(F, node, path, rows, cols):
    arr = _tensor(F, node, path, (rows, cols))
    return arr.reshape(rows, cols)


def _stack(F, node, path, n, rows, cols):
    return _tensor(F, node, path, (n, rows, cols)).reshape(n, rows, cols)


def _vector(F, node, path, n):
    return _tensor(F, node, path, (n,)).reshape(n)


# ---------------------------------------------------------------------------
# sections


def parse_field(spec, path="field") -> Field:
    if not isinstance(spec, str):
        raise InstanceError(path, 'expected "QQ" or "GF(p)"')
    s = spec.replace(" ", "")
    if s in ("QQ", "Q"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        try:
            return GF(int(s[3:-1]))
        except ValueError as exc:
            raise InstanceError(path, str(exc)) from None
    raise InstanceError(path, 'unknown field %r (use "QQ" or "GF(p)")' % spec)


def parse_algebra(F, spec, path, name) -> Algebra:
    kind = _get(spec, "kind", path, str)
    names = _get(spec, "names", path, list, None)
    try:
        if kind == "ground":
            A = Algebra.ground(F)
        elif kind == "polynomial":
            coeffs = _get(spec, "coeffs", path, list)
            if len(coeffs) < 2:
                raise InstanceError(_join(path, "coeffs"), "need a monic polynomial of degree >= 1")
            c = [_scalar(F, x, _join(_join(path, "coeffs"), i)) for i, x in enumerate(coeffs)]
            if c[-1] != F.one:
                raise InstanceError(_join(path, "coeffs"), "leading coefficient must be 1")
            A = Algebra.polynomial_quotient(F, c, var=_get(spec, "var", path, str, "x"))
        elif kind == "group":
            n = _get(spec, "order", path, int)
            if n < 1:
                raise InstanceError(_join(path, "order"), "order must be positive")
            A = Algebra.cyclic_group_algebra(F, n, gen=_get(spec, "generator", path, str, "s"))
        elif kind == "matrices":
            mats = _get(spec, "basis", path, list)
            if not mats:
                raise InstanceError(_join(path, "basis"), "empty basis")
            size = len(mats[0]) if isinstance(mats[0], list) else 0
            arr = _tensor(F, mats, _join(path, "basis"), (None, size, size))
            A = Algebra.from_matrices(F, list(arr))
        elif kind == "structure":
            n = _get(spec, "dim", path, int)
            mult = _tensor(F, _get(spec, "mult", path, list), _join(path, "mult"), (n, n, n))
            unit = _vector(F, _get(spec, "unit", path, list), _join(path, "unit"), n)
            A = Algebra(F, mult, unit)
        else:
            raise InstanceError(_join(path, "kind"), "unknown algebra kind %r" % kind)
    except InstanceError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise InstanceError(path, str(exc)) from None
    if names is not None:
        if len(names) != A.dim or not all(isinstance(x, str) for x in names):
            raise InstanceError(_join(path, "names"), "expected %d strings" % A.dim)
        A.names = tuple(names)
    A.name = name
    return A


def _algebra_ref(algebras, node, key, path):
    ref = _get(node, key, path, str)
    if ref not in algebras:
        raise InstanceError(_join(path, key), "unknown algebra %r" % ref)
    return algebras[ref]


def parse_extension(F, algebras, spec, path) -> AlgebraMap:
    R = _algebra_ref(algebras, spec, "target", path)
    src = _get(spec, "source", path, str)
    if src == "k" and "matrix" not in spec:
        return AlgebraMap.unit_map(R)
    S = _algebra_ref(algebras, spec, "source", path)
    M = _matrix(F, _get(spec, "matrix", path, list), _join(path, "matrix"), R.dim, S.dim)
    return AlgebraMap(S, R, M)


def _bimodule_data(F, spec, path, R, dim_key="dim"):
    n = _get(spec, dim_key, path, int)
    left = spec.get("left")
    right = spec.get("right")
    L = _stack(F, left, _join(path, "left"), R.dim, n, n) if left is not None else None
    Rt = _stack(F, right, _join(path, "right"), R.dim, n, n) if right is not None else None
    return n, L, Rt


def parse_coring(F, algebras, ext, spec, path):
    """Returns ``(coring, default grouplike or None, rho_A or None)``."""
    kind = _get(spec, "kind", path, str)
    if kind == "sweedler":
        if ext is None:
            raise InstanceError("extension", "a sweedler coring needs an extension")
        try:
            K, g = sweedler_coring(ext)
        except ValueError as exc:
            raise InstanceError("extension", str(exc)) from None
        return K, g
    if kind == "trivial":
        K, g = trivial_coring(_algebra_ref(algebras, spec, "algebra", path))
        return K, g
    if kind == "entwining":
        A = _algebra_ref(algebras, spec, "algebra", path)
        cpath = _join(path, "coalgebra")
        co = _get(spec, "coalgebra", path, dict)
        dC = _get(co, "dim", cpath, int)
        delta = _matrix(F, _get(co, "delta", cpath, list), _join(cpath, "delta"), dC * dC, dC)
        eps = _vector(F, _get(co, "counit", cpath, list), _join(cpath, "counit"), dC)
        psi = _matrix(F, _get(spec, "psi", path, list), _join(path, "psi"), A.dim * dC, dC * A.dim)
        E = EntwiningData(A, dC, delta, eps, psi, names=co.get("names"))
        return entwining_to_coring(E, check=False), None
    if kind == "explicit":
        R = _algebra_ref(algebras, spec, "algebra", path)
        n, L, Rt = _bimodule_data(F, spec, path, R)
        if L is None or Rt is None:
            raise InstanceError(_join(path, "left" if L is None else "right"), "missing field")
        C = Bimodule(F, n, R, L, R, Rt, name="C")
        lift = _matrix(F, _get(spec, "delta_lift", path, list), _join(path, "delta_lift"), n * n, n)
        eps = _matrix(F, _get(spec, "counit", path, list), _join(path, "counit"), R.dim, n)
        return Coring(R, C, lift, eps, name=spec.get("name", "C")), None
    if kind == "from-dg":
        R = _algebra_ref(algebras, spec, "algebra", path)
        opath = _join(path, "omega1")
        om = _get(spec, "omega1", path, dict)
        n, L, Rt = _bimodule_data(F, om, opath, R)
        if L is None or Rt is None:
            raise InstanceError(_join(opath, "left" if L is None else "right"), "missing field")
        Om1 = Bimodule(F, n, R, L, R, Rt, name="Omega1")
        d0 = _matrix(F, _get(spec, "d0", path, list), _join(path, "d0"), n, R.dim)
        OO = tensor_over_R(Om1, Om1, R, check=False)
        d1k = _matrix(F, _get(spec, "d1_lift", path, list), _join(path, "d1_lift"), n * n, n)
        try:
            K, g, _ = coring_from_dg(R, Om1, d0, F.dot(OO.proj, d1k))
        except ValueError as exc:
            raise InstanceError(path, str(exc)) from None
        return K, g
    raise InstanceError(_join(path, "kind"), "unknown coring kind %r" % kind)


def parse_module(F, R, spec, path) -> Bimodule:
    name = _get(spec, "name", path, str)
    kind = _get(spec, "kind", path, str)
    if kind == "regular":
        M = regular_bimodule(R, left=False)
    elif kind == "free":
        M = free_module(R, _get(spec, "rank", path, int))
    elif kind == "quotient":
        rels = _get(spec, "relations", path, list)
        vecs = [_vector(F, v, _join(_join(path, "relations"), i), R.dim) for i, v in enumerate(rels)]
        M = quotient_module(regular_bimodule(R, left=False), vecs)
    elif kind == "explicit":
        n = _get(spec, "dim", path, int)
        right = _stack(F, _get(spec, "right", path, list), _join(path, "right"), R.dim, n, n)
        M = Bimodule(F, n, right_alg=R, right=right)
    else:
        raise InstanceError(_join(path, "kind"), "unknown module kind %r" % kind)
    M = M.with_sides(left=False)
    M.name = name
    return M


def parse_comodule(F, K, g, modules, spec, path) -> Comodule:
    name = _get(spec, "name", path, str)
    kind = _get(spec, "kind", path, str)
    if kind == "regular":
        X = regular_comodule(g)
    elif kind == "coring":
        X = coring_comodule(K)
    elif kind == "explicit":
        ref = _get(spec, "module", path, str)
        if ref not in modules:
            raise InstanceError(_join(path, "module"), "unknown module %r" % ref)
        M = modules[ref]
        lift = _matrix(F, _get(spec, "coaction_lift", path, list), _join(path, "coaction_lift"),
                       M.dim * K.dim, M.dim)
        X = Comodule(M, K, lift)
    else:
        raise InstanceError(_join(path, "kind"), "unknown comodule kind %r" % kind)
    X.name = name
    return X


def parse_instance(doc, name=None) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("", "expected a JSON object")
    F = parse_field(_get(doc, "field", ""), "field")
    alg_specs = _get(doc, "algebras", "", dict)
    algebras = {}
    for key in sorted(alg_specs):
        algebras[key] = parse_algebra(F, alg_specs[key], _join("algebras", key), key)
    ext = None
    if "extension" in doc:
        ext = parse_extension(F, algebras, _get(doc, "extension", "", dict), "extension")
    K, g_default = parse_coring(F, algebras, ext, _get(doc, "coring", "", dict), "coring")
    semi = _get(doc, "semi", "", bool, False)
    rho_A = None
    gspec = doc.get("grouplike")
    if gspec is None:
        if g_default is None:
            raise InstanceError("grouplike", "missing field")
        g = g_default
    elif isinstance(gspec, dict):
        rho = _get(gspec, "entwined_coaction", "grouplike", list)
        rho_A = _matrix(F, rho, "grouplike.entwined_coaction", K.dim, K.R.dim)
        g = Grouplike(K, F.dot(rho_A, K.R.unit), semi=semi)
    else:
        g = Grouplike(K, _vector(F, gspec, "grouplike", K.dim), semi=semi)
    free_basis = None
    if "free_basis" in doc:
        if ext is None:
            raise InstanceError("free_basis", "a free basis needs an extension")
        fb = _get(doc, "free_basis", "", list)
        free_basis = [_vector(F, v, _join("free_basis", i), ext.target.dim) for i, v in enumerate(fb)]
    modules = {}
    for i, spec in enumerate(_get(doc, "modules", "", list, [])):
        M = parse_module(F, K.R, spec, _join("modules", i))
        if M.name in modules:
            raise InstanceError(_join(_join("modules", i), "name"), "duplicate module %r" % M.name)
        modules[M.name] = M
    comodules = {}
    for i, spec in enumerate(_get(doc, "comodules", "", list, [])):
        X = parse_comodule(F, K, g, modules, spec, _join("comodules", i))
        if X.name in comodules:
            raise InstanceError(_join(_join("comodules", i), "name"), "duplicate comodule %r" % X.name)
        comodules[X.name] = X
    return Instance(name=_get(doc, "name", "", str, name or "instance"), field=F,
                    algebras=algebras, coring=K, grouplike=g, extension=ext,
                    free_basis=free_basis, rho_A=rho_A, modules=modules,
                    comodules=comodules, source=doc)


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceError("", "cannot read %s: %s" % (path, exc.strerror)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("", "invalid JSON at line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    return parse_instance(doc, name=path.stem)


BUNDLED = ("trivial_f2", "trivial_q", "f2_f4_sweedler", "qx2_sweedler",
           "flip_entwining", "superflip_entwining", "cobar_g0",
           "broken_counit", "broken_balancing")


def bundled_path(name) -> Path:
    return Path(str(resources.files("coringlab") / "data" / ("%s.json" % name)))


def load_bundled(name) -> Instance:
    if name not in BUNDLED:
        raise KeyError("no bundled instance %r" % name)
    return load_instance(bundled_path(name))
