"""Independent reference computations used to freeze expected values.

Nothing here imports the package's linear algebra: ranks come from a plain
Gaussian elimination over ``Fraction`` or integers mod ``p``, and complexes
are written directly on ``k``-tensor powers.
"""

from fractions import Fraction
import itertools


def rank(rows, p=None):
    """Rank of a list-of-rows matrix over Q (p=None) or F_p."""
    if p is None:
        m = [[Fraction(x) for x in r] for r in rows]
    else:
        m = [[int(x) % p for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = (1 / m[r][c]) if p is None else pow(m[r][c], -1, p)
        m[r] = [x * inv if p is None else x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b if p is None else (a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def tensor_index(digits, base):
    out = 0
    for d in digits:
        out = out * base + d
    return out


def classical_amitsur(mult, unit, n_max):
    """``d^n : R^(x)(n+1) -> R^(x)(n+2)``, ``d = sum_i (-1)^i (insert 1 at i)`` for S = k.

    ``mult[i][j]`` lists the coordinates of ``e_i e_j``; only the unit is
    used here.  Returns the list of integer matrices (rows = target).
    """
    dim = len(unit)
    mats = []
    for n in range(n_max):
        src, tgt = dim ** (n + 1), dim ** (n + 2)
        D = [[0] * src for _ in range(tgt)]
        for col, digits in enumerate(itertools.product(range(dim), repeat=n + 1)):
            for i in range(n + 2):
                sign = -1 if i % 2 else 1
                for u, coef in enumerate(unit):
                    if coef == 0:
                        continue
                    new = digits[:i] + (u,) + digits[i:]
                    D[tensor_index(new, dim)][col] += sign * coef
        mats.append(D)
    return mats


def group_cobar(grouplike_index, n_group, n_max):
    """Cobar complex of the group coalgebra on ``n_group`` grouplikes, both ends twisted by one of them.

    ``d(c1..cn) = g c1..cn + sum_i (-1)^i c1..Delta(ci)..cn + (-1)^(n+1) c1..cn g``.
    """
    g = grouplike_index
    mats = []
    for n in range(n_max):
        src, tgt = n_group ** n, n_group ** (n + 1)
        D = [[0] * max(src, 1) for _ in range(tgt)]
        for col, digits in enumerate(itertools.product(range(n_group), repeat=n)):
            D[tensor_index((g,) + digits, n_group)][col] += 1
            for i in range(n):
                new = digits[:i + 1] + digits[i:]
                D[tensor_index(new, n_group)][col] += -1 if (i + 1) % 2 else 1
            D[tensor_index(digits + (g,), n_group)][col] += -1 if (n + 1) % 2 else 1
        mats.append(D)
    return mats


def kron_identity(k, rows):
    """``I_k (x) D`` for a list-of-rows matrix."""
    r, c = len(rows), len(rows[0])
    out = [[0] * (k * c) for _ in range(k * r)]
    for b in range(k):
        for i in range(r):
            for j in range(c):
                out[b * r + i][b * c + j] = rows[i][j]
    return out


def cohomology_dims(mats, dims, p=None):
    """``dim H^n`` for n = 0..len(mats)-1 from the differentials ``mats[n]: C^n -> C^(n+1)``."""
    ranks = [rank(D, p) for D in mats]
    return [dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(len(mats))]


def count_module_maps(right_M, right_N, p):
    """Number of F_p-linear ``f: M -> N`` with ``f(m r) = f(m) r``, by enumeration.

    ``right_M[a]`` is the matrix (list of rows) of ``m -> m e_a``.
    """
    dM = len(right_M[0])
    dN = len(right_N[0])
    count = 0
    for entries in itertools.product(range(p), repeat=dM * dN):
        f = [list(entries[i * dM:(i + 1) * dM]) for i in range(dN)]
        ok = True
        for A, B in zip(right_M, right_N):
            for i in range(dN):
                for j in range(dM):
                    lhs = sum(f[i][k] * A[k][j] for k in range(dM)) % p
                    rhs = sum(B[i][k] * f[k][j] for k in range(dN)) % p
                    if lhs != rhs:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        count += ok
    return count
