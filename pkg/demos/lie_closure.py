"""Closure of Jordan components inside classical Lie algebras and groups.

Samples random rational elements of sl(3), so(2,1), sp(4) and of the groups
SL(2), SO(2,1)+, Sp(4), decomposes each and checks every component against
the defining equations.

    python3 demos/lie_closure.py [samples]
"""

import sys

from jordan import LieStructure, closure_check_algebra, closure_check_group
from jordan.corpus import random_algebra_element, random_group_element

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 20

for family, n, L in (("sl", 3, LieStructure.sl(3)), ("so", 3, LieStructure.so(2, 1)), ("sp", 4, LieStructure.sp(4))):
    reports = [closure_check_algebra(random_algebra_element(family, n, s), L) for s in range(samples)]
    print(f"algebra {L.name:8} {sum(r.passed for r in reports)}/{samples} closed")

for family, n, L in (("sl", 2, LieStructure.sl(2)), ("so", 3, LieStructure.so(2, 1)), ("sp", 4, LieStructure.sp(4))):
    reports = [closure_check_group(random_group_element(family, n, s), L) for s in range(samples)]
    exact = sum("(exact)" in r.title for r in reports)
    print(f"group   {L.name:8} {sum(r.passed for r in reports)}/{samples} closed ({exact} exact)")

print()
print(closure_check_group(random_group_element("so", 3, 0), LieStructure.so(2, 1)).summary())
