# The 16 two-input rules, their affine forms and the symmetry group.
from rbca import rules as R

print("j  t00 t01 t10 t11  affine  mirror reverse")
for j in range(16):
    t = R.truth_table(j)
    print(f"{j:2d}   {t[0]}   {t[1]}   {t[2]}   {t[3]}   {R.affine_form(j).value:6s} "
          f"{R.mirror(j):4d} {R.reverse(j):6d}")

# supports are moved around by the group {id, M, R, MR}
for s in ({6}, {2}, {2, 6, 10}):
    orb = sorted(sorted(t) for t in R.orbit(s))
    print(s, "orbit:", orb, "canonical:", sorted(R.canonicalize(s)))
