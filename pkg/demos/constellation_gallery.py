"""Gallery of the constellation families.

Generates each family at M=64, prints its PAPR, and renders scatter plots,
then shows how the SNR-parametric shaping morphs a 256-point constellation
from a Gaussian-like cloud into a uniform disc as the design SNR rises.

Run from the repository root:  python demos/constellation_gallery.py
Outputs land in demos/output/.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gam import (
    ShapingParams,
    gen_disc_gam,
    gen_gb_gam,
    gen_square_qam,
    gen_tgb_gam,
    gen_tgb_gam_snr,
    papr_db,
)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# %% One of each family at M = 64
families = {
    "bell (gb-gam)": gen_gb_gam(64),
    "disc (disc-gam)": gen_disc_gam(64),
    "truncated bell (tgb-gam)": gen_tgb_gam(64, ShapingParams(0.0, 1.5)),
    "SNR-parametric (tgb-gam-snr, 15 dB)": gen_tgb_gam_snr(64, 10 ** 1.5),
    "square QAM": gen_square_qam(64),
}

print("M=64 constellations, unit mean power:")
fig, axes = plt.subplots(1, 5, figsize=(22, 4.5))
for ax, (name, c) in zip(axes, families.items()):
    print(f"  {name:38s} PAPR = {papr_db(c):5.2f} dB")
    ax.scatter(c.points.real, c.points.imag, s=12)
    ax.set_aspect("equal")
    ax.set_title(f"{name}\nPAPR {papr_db(c):.2f} dB", fontsize=9)
    ax.grid(alpha=0.3)
fig.savefig(OUT / "families_m64.svg", bbox_inches="tight")
print(f"-> {OUT/'families_m64.svg'}")

# %% Shape drift of the SNR-parametric design, M = 256
fig, axes = plt.subplots(1, 3, figsize=(13.5, 4.5))
for ax, snr_db in zip(axes, (10.0, 22.5, 35.0)):
    c = gen_tgb_gam_snr(256, 10 ** (snr_db / 10))
    ax.scatter(c.points.real, c.points.imag, s=4)
    ax.set_aspect("equal")
    ax.set_title(f"design SNR {snr_db} dB, PAPR {papr_db(c):.2f} dB")
    ax.grid(alpha=0.3)
fig.suptitle("SNR-parametric shaping, M=256: bell at low SNR, disc at high SNR")
fig.savefig(OUT / "shape_drift_m256.svg", bbox_inches="tight")
print(f"-> {OUT/'shape_drift_m256.svg'}")

# %% Magnitude profiles against the two closed-form limits
m = np.arange(1, 257)
fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(m, np.abs(gen_gb_gam(256).points), "k--", label="bell law")
ax.plot(m, np.abs(gen_disc_gam(256).points), "k:", label="disc law")
for snr_db in (10.0, 22.5, 35.0):
    c = gen_tgb_gam_snr(256, 10 ** (snr_db / 10))
    ax.plot(m, np.abs(c.points), label=f"snr-form @ {snr_db} dB")
ax.set_xlabel("point index m")
ax.set_ylabel("|x_m|")
ax.legend()
ax.grid(alpha=0.3)
fig.savefig(OUT / "magnitude_profiles_m256.svg", bbox_inches="tight")
print(f"-> {OUT/'magnitude_profiles_m256.svg'}")
