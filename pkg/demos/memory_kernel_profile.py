"""Tabulate the band-edge memory kernel and look at its shape.

The reservoir enters the atom dynamics only through the frequency-domain
kernel G(w) and its conjugate partner. Inside the gap the kernel is purely
imaginary (no decay channel, only a level shift); above the edge its real
part carries the emission rate through N(w) = 4 Re G(w). The amplitude
profile has a half-width set entirely by the edge curvature scale: its
FWHM is 4 omega_c regardless of where the atom sits.
"""

import numpy as np

from pbgfluor import (
    PhysicalParams,
    ReservoirModel,
    memory_kernel,
    memory_kernel_conj,
    noise_strength,
)

params = PhysicalParams.make(100.27, 1.0, ReservoirModel.band_edge(100.0))
res = params.reservoir
edge = res.omega_c - params.omega_a

w = np.linspace(-params.omega_a * (1 - 1e-9), edge + 6 * res.omega_c, 4001)
w = np.unique(np.append(w, edge))
g = memory_kernel(w, params)
gc = memory_kernel_conj(w, params)
n = noise_strength(w, params)

print(f"band edge sits at w = {edge:+.4g} beta relative to the laser")
print(f"G at line center: {memory_kernel(np.array([0.0]), params)[0]:.6g}")
print(f"effective decay rate 2 Re G(0) = {2 * g[np.argmin(np.abs(w))].real:.6g} beta")

in_gap = w < edge
print(f"max |Re G| inside the gap: {np.max(np.abs(g.real[in_gap])):.3g}  (pure level shift)")
print(f"max N inside the gap:      {np.max(np.abs(n[in_gap])):.3g}  (no emission channel)")

# the amplitude half-maximum points sit 4 omega_c apart
amp = np.abs(g)
half = amp.max() / 2
above = w[amp >= half]
print(f"|G| FWHM = {above.max() - above.min():.4g}  vs 4 omega_c = {4 * res.omega_c:.4g}")

out = np.column_stack([w, g.real, g.imag, np.abs(g), np.angle(g), gc.real, gc.imag, n])
np.savetxt("memory_kernel_profile.csv", out, delimiter=",", fmt="%.17g",
           header="omega,re_G,im_G,abs_G,phase_G,re_Gc,im_Gc,N", comments="")
print("wrote memory_kernel_profile.csv")
