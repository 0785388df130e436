"""Peak-to-average power ratio of the shaped spiral across design SNR.

PAPR falls as the design SNR rises (the shape flattens toward the disc) and
grows with constellation size; the high-SNR tail approaches the disc value
10*log10(2M/(M+1)).  Also contrasts the optimizer-chosen shaping with the
closed-form SNR-parametric one at M = 16.

Run from the repository root:  python demos/papr_vs_snr.py
"""

import math
import pathlib

from gam import papr_sweep
from gam.plotting import plot_papr_curves
from gam.sweep import PAPR_COLUMNS, write_csv

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

snr_grid = [float(s) for s in range(0, 41, 5)]
rows = papr_sweep("snr-form", [16, 64, 256, 1024], snr_grid)
csv_path = OUT / "papr_vs_snr.csv"
write_csv(csv_path, PAPR_COLUMNS, rows, meta={"variant": "snr-form"})
plot_papr_curves(csv_path, OUT / "papr_vs_snr.svg")
print(f"{len(rows)} rows -> {csv_path} and papr_vs_snr.svg")

print("\nPAPR [dB] of the SNR-parametric design:")
sizes = [16, 64, 256, 1024]
print("SNR[dB] " + " ".join(f"M={m:>5d}" for m in sizes))
table = {(r.M, r.snr_db): r.papr_db for r in rows}
for snr_db in snr_grid:
    print(f"{snr_db:7.0f} " + " ".join(f"{table[(m, snr_db)]:7.3f}" for m in sizes))
print("disc    " + " ".join(f"{10*math.log10(2*m/(m+1)):7.3f}" for m in sizes))

# %% Optimizer-chosen shaping at M=16 (quadrature objective, slower)
opt_rows = papr_sweep("optimized", [16], [0.0, 10.0, 20.0, 30.0])
print("\noptimized shaping, M=16:")
for r in opt_rows:
    print(f"  {r.snr_db:5.1f} dB: PAPR {r.papr_db:6.3f} dB "
          f"(rho_i={r.rho_i:.3f}, rho_o={r.rho_o:.3f})")
