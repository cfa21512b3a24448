#!/usr/bin/env python3
"""Compare the compiled series kernel against the pure-Python fallback.

Runs the same closure-heavy workload in two subprocesses (one per backend,
selected through HKCURVES_BACKEND), checks that both produce bit-identical
output, and reports wall times.

    python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOAD = """
import json
from hkcurves import kernel_backend
from hkcurves.engine import Parametrization, analyze_ring, ring_closure
from hkcurves.invariants import ring_report
from hkcurves.parsing import parse_generators

inputs = [
    "t^8, t^12 + t^14 + t^15",
    "t^6, t^9 + t^10, 2*t^19 + t^20 + t^41",
    "t^5, t^7, t^12 + t^23",
    "t^2 + t^3, t^3",
]
digest = []
for text in inputs:
    p = parse_generators(text)
    rep = ring_report(p)
    digest.append([list(rep.hk.sequence), rep.conductor_degree,
                   list(rep.value_semigroup.min_generators)])

# raised-precision closure: the reduction kernels dominate here
p = parse_generators("t^6, t^9 + t^10, 2*t^19 + t^20 + t^41")
basis = ring_closure(p, 2000)
digest.append(sorted(basis.reps)[:40])
stress = parse_generators("t^4 + 2*t^7 - 3*t^11, 2*t^9 - t^10 + t^13, t^6 + 5*t^8")
sbasis = ring_closure(stress, 900)
digest.append([len(sbasis.reps), sorted(sbasis.reps)[:20]])

# dense Newton reversion: nearly all time goes into the multiply kernel
s = parse_generators("t + t^2 - 2*t^3 + 5*t^5").gens[0]
r = s.revert(prec=300)
digest.append([str(r.coeff(150)), str(r.coeff(299))])
print(json.dumps({"backend": kernel_backend, "digest": digest}, sort_keys=True))
"""


def run_backend(backend, repeat):
    env = dict(os.environ, HKCURVES_BACKEND=backend)
    times = []
    digest = None
    for _ in range(repeat):
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-c", WORKLOAD], capture_output=True, text=True, env=env
        )
        times.append(time.perf_counter() - start)
        if proc.returncode != 0:
            raise RuntimeError("backend %s failed:\n%s" % (backend, proc.stderr))
        payload = json.loads(proc.stdout)
        assert payload["backend"] == backend, "backend selection failed"
        digest = payload["digest"]
    return min(times), digest


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    results = {}
    digests = {}
    for backend in ("python", "cython"):
        try:
            best, digest = run_backend(backend, args.repeat)
        except (RuntimeError, ImportError) as exc:
            print("%-8s unavailable (%s)" % (backend, exc))
            continue
        results[backend] = best
        digests[backend] = digest
        print("%-8s best of %d: %6.2f s" % (backend, args.repeat, best))

    if len(digests) == 2:
        same = digests["python"] == digests["cython"]
        print("outputs identical: %s" % same)
        if not same:
            raise SystemExit("backend outputs differ")
        speedup = results["python"] / results["cython"]
        print("speedup (python/cython): %.2fx" % speedup)


if __name__ == "__main__":
    main()
