"""Thermalizing a circuit Hamiltonian to amplify the history-state overlap.

Running the Metropolis-filtered sampler on the frustration-free circuit
Hamiltonian funnels population into the clock ground level, growing the
overlap with the weighted history state.  The attainable growth is set by the
product beta*lambda: the stationary state concentrates on the history state
only when beta*lambda is order one or larger.  We show both regimes, and
check the Laplace-transform certificate that upper-bounds the leakage out of
the ground level along the way.
"""

import numpy as np

from glsim import (
    Gate, PAULI_X, QuantumCircuit, build_clock, clock_jump_set,
    ground_overlap_experiment, herbst_overlap_bound, laplace_curve,
)

eye = np.eye(2, dtype=complex)
circuit = QuantumCircuit(1, (Gate((0,), PAULI_X),) + (Gate((0,), eye),) * 3)
times = [0.0, 10.0, 100.0, 1000.0, 10_000.0]

for lam in (1e-3, 0.1):
    beta = 20.0
    curve = ground_overlap_experiment(circuit, lam, beta, times)
    print(f"lambda = {lam}, beta = {beta} (beta*lambda = {beta * lam:g})")
    print(f"  {'t':>8}  {'overlap':>12}  {'ground pop':>12}")
    for t, o, p in zip(curve.times, curve.overlaps, curve.ground_pops):
        print(f"  {t:>8.0f}  {o:>12.6f}  {p:>12.6f}")
    growth = curve.overlaps[-1] / curve.overlaps[0]
    print(f"  growth factor {growth:.2f}x over the initial overlap 2^-5\n")

# The Laplace transform of the clock energy certifies the approach to the
# ground level: its measured curve sits below a closed-form bound, and the
# derived leakage bound dominates the actual out-of-ground population.
T = 4
H = build_clock(T)
C = min(1.0, 6.0 / (T - 1) ** 2)
curve = laplace_curve(H, clock_jump_set(T), theta=0.1, times=times[:4], C=C)
herbst = herbst_overlap_bound(curve, E1=1.0)
print("Laplace certificate on the bare clock (theta = 0.1)")
print(f"  {'t':>6}  {'transform':>12}  {'bound':>12}  {'leakage':>10}  "
      f"{'leakage bound':>13}")
for t, v, b, p, h in zip(curve.times, curve.values, curve.bound,
                         curve.ground_pops, herbst):
    print(f"  {t:>6.0f}  {v:>12.6f}  {b:>12.6f}  {1 - p:>10.6f}  {h:>13.6f}")
