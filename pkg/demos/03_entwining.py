"""
Entwined modules and the super flip
===================================

The group algebra A = Q[C2] entwined with the function coalgebra on C2, with
a sign when both factors are odd.  The Amitsur differential agrees with the
formula written in terms of the entwining map, and the modules A (x) C^n and
C (x) A^n carry explicit flat connections.
"""

from coringlab.amitsur import AmitsurContext, cohomology, galois_map, verify_entwining_formulas
from coringlab.connections import entwining_flat_connection_ac, entwining_flat_connection_ca
from coringlab.io import load_bundled

inst = load_bundled("superflip_entwining")
E = inst.coring.entwining
print("psi =")
print(E.field.format_array(E.psi))
print("grouplike:", E.field.format_array(inst.grouplike.g))

ctx = AmitsurContext(inst.grouplike, 4, ext=inst.extension)
print("d matches the entwining formula:", verify_entwining_formulas(ctx, inst.rho_A, 4).ok)
print("H =", cohomology(ctx, 3).h)
print("Galois:", galois_map(inst.grouplike, inst.extension).is_galois)

red = AmitsurContext(inst.grouplike, 3, reduced=True, ext=inst.extension)
for n in (1, 2):
    _, _, rep_ac = entwining_flat_connection_ac(red, inst.rho_A, n)
    _, _, rep_ca = entwining_flat_connection_ca(red, n)
    print("n=%d  A(x)C^n: %s   C(x)A^n: %s" % (n, rep_ac.ok, rep_ca.ok))
