"""
Dual ring and universal forms
=============================

For F2 -> F4 the left dual of the Sweedler coring is the full endomorphism
ring of F4 over F2.  The reduced Amitsur complex of a Sweedler coring is the
complex of universal differential forms.
"""

from coringlab.algebra import check_algebra_axioms
from coringlab.amitsur import AmitsurContext, theta_iso, universal_forms
from coringlab.coring import augmentation, dual_ring, dual_to_endomorphisms
from coringlab.io import load_bundled

inst = load_bundled("f2_f4_sweedler")
D = dual_ring(inst.coring)
print("dim *C =", D.dim)
print("associative and unital:", check_algebra_axioms(D.algebra).ok)
_, rep = dual_to_endomorphisms(D, inst.extension)
print("*C -> End(F4) is an algebra isomorphism:", rep.ok)
_, rep = augmentation(D, inst.grouplike)
print("evaluation at g is a module map:", rep.ok)

#############################################################################
# Universal forms of Q -> Q[x]/(x^2) against the reduced complex.

inst = load_bundled("qx2_sweedler")
U = universal_forms(inst.extension, 3)
print("dim of universal n-forms:", [U.dim(n) for n in range(4)])
red = AmitsurContext(inst.grouplike, 3, reduced=True, ext=inst.extension)
_, rep = theta_iso(red, U, 3)
for key, status in rep.results.items():
    print("  %-22s %s" % (key, status))
