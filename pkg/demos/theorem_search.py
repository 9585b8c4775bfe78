"""
Reproducing the theorem lists
=============================

Each list of d is recomputed by an exhaustive scan up to a bound and compared
with the stored values.  For theorems that also describe the class group, the
consequences are checked d by d.
"""

import sys

from omegaquad import builtin_theorems, check_class_implications, verify

bound_cap = int(sys.argv[1]) if len(sys.argv) > 1 else 10**6

for spec in builtin_theorems():
    bound = min(spec.default_bound, bound_cap)
    if bound < spec.expected[-1]:
        print(f"{spec.id:8s} skipped (bound {bound} below {spec.expected[-1]})")
        continue
    r = verify(spec, bound)
    status = "match" if r.matched else f"missing {r.missing} spurious {r.spurious}"
    print(f"{spec.id:8s} bound {bound:>8}  {len(r.computed):>3} values  {status}  ({r.elapsed_ms:.0f} ms)")

for key in ("T1.2", "T1.3", "T1.5", "T1.7"):
    res = check_class_implications(key)
    failed = [(i.d, i.property) for i in res if not i.holds]
    print(f"{key}: {len(res)} class-group checks, {len(failed)} failed")

# The per-shape bound for d = pq does not survive the check.
res = check_class_implications("T1.3-sharp")
for i in res:
    if not i.holds:
        print(f"  d = {i.d}: '{i.property}' fails ({i.detail})")
