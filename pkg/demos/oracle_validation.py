"""Run every independent cross-check the package carries.

Each check pits one implementation route against a different one: closed
forms against the regression-theorem oracle, the analytic kernel against
brute-force quadrature of its time-domain transform, algebraic identities
against dense sweeps. A fresh install should pass all of them.
"""

import time

from pbgfluor import PhysicalParams, ReservoirModel, kernel_transform_check, validate_suite

t0 = time.perf_counter()
checks = validate_suite()
elapsed = time.perf_counter() - t0

width = max(len(c.name) for c in checks)
for c in checks:
    status = "PASS" if c.passed else "FAIL"
    extra = f"  [{c.detail}]" if c.detail else ""
    print(f"{status}  {c.name:<{width}}  {c.value:11.3e} vs {c.threshold:8.1e}{extra}")
print(f"{sum(c.passed for c in checks)}/{len(checks)} passed in {elapsed:.1f} s")

# the transform round trip in more detail: forward-transform the raw
# time-domain kernel and compare against the analytic frequency profile
params = PhysicalParams.make(110.0, 1.0, ReservoirModel.band_edge(100.0))
report = kernel_transform_check(params)
print(f"\nkernel transform: max residual {report.max_residual:.3e} "
      f"over {report.omega.size} frequencies")
print(f"largest real fraction inside the gap: {report.gap_real_fraction:.3e}")
print(f"anticausal leakage: {report.causality_ratio:.3e}")
