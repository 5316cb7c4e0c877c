"""A presentation that no integer weight map certifies, rescued by a
left-ordered braid target.

Every map to the integers sends all three generators to the same weight,
and both multisets of minima come out with support {x, z}: no fresh
element is available at the second step, so weak concatenability fails
over the integers.  Mapping the generators to the Artin generators of the
4-strand braid group and ordering it by the opposite of the Dehornoy
order separates the supports into {y, z} and {x, z}.
"""

from npicheck import check_presentation, minima_multiset, parse_presentation
from npicheck.orders import BraidTarget, IntTarget, TargetAssignment

text = """
gens: x y z
rel: x^-1 z^4 x z^-3 y z y^-1 z^-1 y^-1
rel: y^-1 x^-1 y^-1 z^-1 x z y z x z^-1
"""
pres = parse_presentation(text)

print("--- integer side ---")
z_target = IntTarget()
ones = TargetAssignment.all_ones(pres)
for i in range(2):
    m = minima_multiset(pres, i, z_target, ones)
    print(f"m(r{i}) over Z:", m.describe(pres))
print("verdict over Z:", check_presentation(pres, z_target, ones).status)

print("--- braid side ---")
braid = BraidTarget(4, opposite=True)
named = TargetAssignment.named_braid(pres, braid)  # x -> s1, y -> s2, z -> s3
for i in range(2):
    m = minima_multiset(pres, i, braid, named)
    print(f"m(r{i}) over B4 (opposite order):", m.describe(pres))
verdict = check_presentation(pres, braid, named)
print("verdict over B4:", verdict.status)
print("assumed hypotheses:", [h.key for h in verdict.hypotheses if h.status == "assumed"])
