"""Run the full verification over a range and print a short summary.

    python demos/sweep.py 5 200 4
"""

import sys
from collections import Counter

from prymperm.verify import verify_range

dmin, dmax, jobs = (int(x) for x in (sys.argv[1:] + ["5", "100", "2"][len(sys.argv) - 1:])[:3])
rep = verify_range(dmin, dmax, jobs)

by_group = Counter()
for r in rep.results:
    for c in r["components"]:
        by_group[(c.lower.conjugacy() if c.lower else "?", "pass" if c.verdict else "fail")] += 1

print(f"{len(rep.results)} admissible discriminants in [{dmin}, {dmax}], {rep.elapsed:.1f}s")
for (g, v), n in sorted(by_group.items()):
    print(f"  {g:5} {v}: {n} components")
print(f"parity table {rep.lemma41}, fr law {rep.fr_law}")
for f in rep.failures:
    print("  FAIL", f)
