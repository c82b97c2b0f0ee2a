"""Fluorescence spectra as the atom approaches the band edge.

Far above the edge the density of states is almost flat across the triplet
and the free-space picture survives. Close to the edge the lower sideband
runs into the gap: emission below the edge frequency is forbidden outright,
the surviving profile is chopped off with a vertical slope at the edge, and
the upper sideband grows instead.
"""

import numpy as np

from pbgfluor import PhysicalParams, ReservoirModel, compute_spectrum, peak_analysis

rabi = 1.0
for omega_a, label in ((1000.0, "far above the edge"), (100.27, "almost on the edge")):
    params = PhysicalParams.make(omega_a, rabi, ReservoirModel.band_edge(100.0))
    edge = params.reservoir.omega_c - params.omega_a
    result = compute_spectrum(params)
    table = peak_analysis(result)

    print(f"omega_a = {omega_a} beta  ({label})")
    print(f"  support starts at w = {edge:+.6g}; "
          f"{np.sum(result.s_inc[result.omega < edge] != 0)} nonzero samples below it")
    for pk in table.peaks:
        w_note = "" if np.isfinite(pk.fwhm) else "  (half level never reached: edge-cut)"
        print(f"  peak at {pk.location:+8.4f}: height {pk.height:10.3f}  "
              f"power {pk.power:8.4f}{w_note}")
    total = result.coherent_weight + np.trapezoid(result.s_inc, result.omega)
    print(f"  total power {total:.6f}  coherent weight {result.coherent_weight:.3e}")

    tag = str(omega_a).replace(".", "p")
    np.savetxt(f"band_edge_spectrum_wa{tag}.csv",
               np.column_stack([result.omega, result.s_inc]),
               delimiter=",", fmt="%.17g", header="omega,s_inc", comments="")
    print(f"  wrote band_edge_spectrum_wa{tag}.csv")
