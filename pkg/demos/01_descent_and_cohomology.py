"""
Descent along F2 -> F4
======================

The Sweedler coring F4 (x)_F2 F4 with grouplike 1 (x) 1.  Because F4 is free
over F2 the cohomology of its Amitsur complex is concentrated in degree 0,
and an explicit contracting homotopy proves it degree by degree.
"""

from coringlab.amitsur import AmitsurContext, cohomology, galois_map, verify_homotopy
from coringlab.coring import check_coring_axioms, coinvariant_subring
from coringlab.io import load_bundled

inst = load_bundled("f2_f4_sweedler")
K, g = inst.coring, inst.grouplike
print("coring axioms:", check_coring_axioms(K).ok)
print("dim C =", K.dim)

# coinvariants of R are the image of F2
S = coinvariant_subring(g)
print("dim of coinvariant subring:", S.source.dim)

#############################################################################
# Cohomology from ranks of the differentials.

ctx = AmitsurContext(g, 4, ext=inst.extension)
summary = cohomology(ctx, 3)
print("dim Omega^n:", summary.dims)
print("rank d^n:  ", summary.ranks)
print("dim H^n:   ", summary.h)

#############################################################################
# The same conclusion from a homotopy: h d + d h = id in degrees 1..3.

gal = galois_map(g, inst.extension)
print("Galois:", gal.is_galois)
rep = verify_homotopy(AmitsurContext(g, 5, ext=inst.extension), gal, degrees=(1, 2, 3))
print("h d + d h = id:", rep.ok)

#############################################################################
# The flip entwining is a coring whose canonical map is not injective;
# its H^0 is the 2-dimensional coinvariant ring.

flip = load_bundled("flip_entwining")
print("flip Galois:", galois_map(flip.grouplike).is_galois)
print("flip H:", cohomology(AmitsurContext(flip.grouplike, 4, ext=flip.extension), 3).h)
