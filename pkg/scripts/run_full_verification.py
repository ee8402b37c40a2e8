#!/usr/bin/env python3
"""Run every suite on the desk-scale reference instances and print a table.

This is the batch counterpart of `anyonrep verify`: it sweeps the instances
used in the acceptance tests (1D sea/empty, both flavor contents, real and
unit-modulus q, two-line stacks) and reports the worst residual per suite.
"""

import argparse
import time

from anyonrep.fock import LatticeConfig
from anyonrep.report import reports_ok
from anyonrep.verify import SUITES, run_suites

INSTANCES = [
    ("1D sea, (M,N)=(2,1), nu=0.3", dict(M=2, N=1, S=2, n_max=2, nu=0.3)),
    ("1D sea, (M,N)=(2,2), nu=0.3", dict(M=2, N=2, S=2, n_max=2, nu=0.3)),
    ("1D empty, (M,N)=(2,1)", dict(M=2, N=1, S=2, n_max=2, nu=0.3,
                                   ordering="empty")),
    ("1D sea, real q=1.3", dict(M=2, N=1, S=2, n_max=2, q_real=1.3)),
    ("two sea lines", dict(M=2, N=1, S=2, K=2, n_max=2, nu=0.3)),
    ("sea + empty line", dict(M=2, N=1, S=2, K=2, n_max=2, nu=0.3,
                              ordering=("sea", "empty"))),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--suites", default=",".join(SUITES),
                    help="comma-separated suite names")
    args = ap.parse_args()
    names = [s for s in args.suites.split(",") if s]

    print(f"{'instance':<30} {'suite':<12} {'n':>4} {'worst residual':>15} "
          f"{'time':>7}  status")
    all_ok = True
    for label, kwargs in INSTANCES:
        cfg = LatticeConfig(**kwargs)
        for name in names:
            t0 = time.perf_counter()
            reports = run_suites(cfg, [name])[name]
            dt = time.perf_counter() - t0
            worst = max((r.residual for r in reports
                         if r.applicable and not r.expect_fail
                         and not r.informational), default=0.0)
            ok = reports_ok(reports)
            all_ok = all_ok and ok
            print(f"{label:<30} {name:<12} {len(reports):>4} {worst:>15.3e} "
                  f"{dt:>6.2f}s  {'ok' if ok else 'FAILED'}")
    print("overall:", "ok" if all_ok else "FAILED")
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
