#!/usr/bin/env python3
"""Bosonic entropy-gain sweep plus a guard-band feasibility table.

Writes the sweep CSV (same as `qrecovery sweep bosonic`) and prints, for each
loss parameter, the analytic truncation tail at the guard-band edge and the
guard that would make the almost-unital identity testable at 1e-6.
"""

import sys

from qrecovery import bosonic as bos
from qrecovery.cli import main

N_MAX = 40
GUARD = 15


def feasibility_table():
    trunc = bos.FockTruncation(N_MAX)
    print(f"almost-unital guard-band feasibility (n_max={N_MAX}, tol=1e-6)")
    print("eta    tail@edge(guard=15)  recommended guard")
    for eta in (0.7, 0.8, 0.9, 0.99):
        spec = bos.GaussianChannelSpec("loss", trunc, eta=eta)
        tail = bos.loss_identity_tail(eta, N_MAX - GUARD, N_MAX)
        print(f"{eta:<6} {tail:<20.3e} {bos.recommended_guard(spec)}")


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "bosonic_sweep.csv"
    feasibility_table()
    sys.exit(main(["sweep", "bosonic", "--n-max", str(N_MAX), "--guard", str(GUARD), "--out", out]))
