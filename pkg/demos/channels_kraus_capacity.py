#!/usr/bin/env python3
"""Channels: Choi matrices, Kraus extraction, log-det capacity.

Walkthrough:
  1. the qubit depolarizing channel: Choi matrix, complete positivity,
     Kraus generators straight from the triangular factorization,
  2. capacity D = -(1/N) log det(Choi), and why the identity channel
     (a rank-one Choi matrix) has D = +infinity,
  3. additivity of D under tensoring of channels,
  4. the qubit normal form (t, lambda): closed-form parameters against
     the generic extraction, and the t=0 capacity formula.

Everything prints to stdout; run with no arguments.
"""

import math

import numpy as np

from schurq import (
    ChoiMatrix,
    QubitChannelNF,
    capacity_D,
    choi_from_map,
    choi_tensor,
    depolarizing_channel,
    identity_channel,
    inverse,
    is_completely_positive,
    is_trace_preserving,
    kraus_from_choi,
    maxnorm,
    qubit_nf_choi,
    qubit_nf_params,
)


def banner(title):
    print("\n" + "-" * 72)
    print(title)
    print("-" * 72)


banner("1. depolarizing qubit channel")
dep = depolarizing_channel(2)
choi = choi_from_map(dep)
print("Choi matrix (rho -> I/2 for every input):")
print(choi.s.real)
print("trace preserving:", is_trace_preserving(dep))
print("completely positive:", is_completely_positive(choi))
ks = kraus_from_choi(choi)
print(f"{len(ks.generators)} Kraus generators; convention: {ks.convention}")
ident = sum(k.conj().T @ k for k in ks.generators)
print(f"completeness residual |sum K*K - I| = {maxnorm(ident - np.eye(2)):.3e}")

banner("2. capacity D = -(1/N) log det Choi")
print(f"depolarizing: D = {capacity_D(choi):.12f}  (log 2 = {math.log(2):.12f})")
ident_choi = choi_from_map(identity_channel(2))
print(f"identity    : D = {capacity_D(ident_choi)}  (rank-one Choi matrix)")

banner("3. additivity under tensoring")
rng = np.random.default_rng(99)
x = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
c2 = ChoiMatrix(3, 3, x.conj().T @ x)
joint = choi_tensor(choi, c2)
print(f"D(Phi)          = {capacity_D(choi):.10f}")
print(f"D(Psi)          = {capacity_D(c2):.10f}")
print(f"D(Phi (x) Psi)  = {capacity_D(joint):.10f}")
print(f"additivity gap  = "
      f"{abs(capacity_D(joint) - capacity_D(choi) - capacity_D(c2)):.3e}")

banner("4. qubit normal form (t, lambda)")
nf = QubitChannelNF(t=(0.1, -0.05, 0.2), lam=(0.6, 0.3, 0.4))
c_phi, c_hat = qubit_nf_choi(nf)
params, report = qubit_nf_params(nf)
print("completely positive:", report.cp)
print("closed-form parameter moduli vs generic extraction:")
generic = inverse(2.0 * c_hat.s)
print(f"  max |diag gap|  = {maxnorm(params.diag - generic.diag):.3e}")
print(f"  max |gamma gap| = {maxnorm(params.gamma - generic.gamma):.3e}")
print("margins (diagonals, then 1-|Gamma| by band):",
      np.round(report.margins, 4))
t0 = QubitChannelNF(t=(0.0, 0.0, 0.0), lam=(0.6, 0.3, 0.4))
c0, _ = qubit_nf_choi(t0)
l1, l2, l3 = 0.6, 0.3, 0.4
formula = -0.25 * (2 * math.log((1 + l3) / 2) + 2 * math.log((1 - l3) / 2)
                   + math.log(1 - ((l1 - l2) / (1 - l3)) ** 2)
                   + math.log(1 - ((l1 + l2) / (1 + l3)) ** 2))
print(f"t=0 capacity: engine {capacity_D(c0):.12f} vs formula {formula:.12f}")
