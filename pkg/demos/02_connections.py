"""
Connections, flatness and projectivity
======================================

Over A = Q[x]/(x^2) a right module carries a connection for the universal
coring A (x) A exactly when it is projective.  Comodules give flat
connections, and perturbing a flat connection shows up as a failure of
coassociativity.
"""

from coringlab.algebra import free_module, is_projective, quotient_module, regular_bimodule
from coringlab.amitsur import AmitsurContext
from coringlab.connections import (coaction_to_connection, connection_to_coaction,
                                   cuntz_quillen_check, flatness_vs_coassociativity,
                                   nonflat_connection)
from coringlab.io import load_bundled

inst = load_bundled("qx2_sweedler")
A = inst.R
Ar = regular_bimodule(A, left=False)

for label, M in [("A", Ar), ("A/(x)", quotient_module(Ar, [A.basis(1)])), ("A^2", free_module(A, 2))]:
    res = cuntz_quillen_check(M, A)
    print("%-6s connection=%-5s projective=%s" % (label, res["connection"], is_projective(M)[0]))

#############################################################################
# Comodule -> flat connection -> comodule.

red = AmitsurContext(inst.grouplike, 3, reduced=True, ext=inst.extension)
F = red.field
X = inst.comodules["C"]
cn = coaction_to_connection(X, red)
print("curvature zero:", F.is_zero(cn.curvature))
print("coaction recovered:", F.equal(connection_to_coaction(cn).rho, X.rho))

#############################################################################
# A non-flat connection: its curvature is exactly the coassociativity defect.

bent = nonflat_connection(regular_bimodule(A), red)
rep, curv, defect = flatness_vs_coassociativity(bent)
print("flat:", bent.is_flat())
print("defect equals curvature:", rep.ok)
print("curvature matrix:")
print(F.format_array(curv))
