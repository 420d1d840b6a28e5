#!/usr/bin/env python3
"""Generates the frozen ECG fixture at data/ecg.csv.

Synthetic surface ECG with textbook adult resting morphology: per-beat
P/Q/R/S/T waves as Gaussian bumps, beat-to-beat interval and amplitude
jitter, slow baseline wander, and band-limited measurement noise.
Deterministic: fixed seed, frozen output. The committed CSV is the
fixture; this script documents its provenance.
"""

import numpy as np
from scipy import signal as sps

FS = 1000.0
DURATION = 12.0
SEED = 20260816

# (time offset s, width s, amplitude rel) per wave, R normalized to 1
WAVES = [
    (-0.200, 0.040, 0.15),   # P
    (-0.025, 0.012, -0.10),  # Q
    (0.000, 0.014, 1.00),    # R
    (0.025, 0.014, -0.25),   # S
    (0.250, 0.060, 0.35),    # T
]

MEAN_RR = 0.80
RR_JITTER = 0.04
AMP_JITTER = 0.05
PEAK_TO_PEAK = 0.30
OFFSET = 0.90
WANDER = [(0.25, 0.015), (0.08, 0.008)]  # (freq Hz, amplitude V)
NOISE_SIGMA = 0.0034
NOISE_CUTOFF = 300.0


def main():
    rng = np.random.default_rng(SEED)
    n = int(round(FS * DURATION))
    t = np.arange(n) / FS

    beat_times = []
    bt = 0.35
    while bt < DURATION + 0.5:
        beat_times.append(bt)
        bt += rng.normal(MEAN_RR, RR_JITTER)

    ecg = np.zeros(n)
    for beat in beat_times:
        gain = 1.0 + rng.normal(0.0, AMP_JITTER)
        for offset, width, amp in WAVES:
            ecg += gain * amp * np.exp(-0.5 * ((t - beat - offset) / width) ** 2)

    ecg *= PEAK_TO_PEAK / (ecg.max() - ecg.min())

    wander = np.zeros(n)
    for freq, amp in WANDER:
        wander += amp * np.sin(2 * np.pi * freq * t + rng.uniform(0, 2 * np.pi))

    b, a = sps.butter(2, NOISE_CUTOFF / (FS / 2))
    noise = sps.filtfilt(b, a, rng.normal(0.0, 1.0, n))
    noise *= NOISE_SIGMA / noise.std()

    v = OFFSET + ecg - np.mean(ecg) + wander + noise
    assert v.min() > 0.0 and v.max() < 1.8

    with open("data/ecg.csv", "w", newline="\n") as f:
        f.write("t,v\n")
        for i in range(n):
            f.write(f"{float(t[i])!r},{float(v[i])!r}\n")
    print(f"wrote data/ecg.csv: {n} samples, "
          f"{len([b for b in beat_times if b < DURATION])} beats, "
          f"span [{v.min():.4f}, {v.max():.4f}] V, p2p {v.max() - v.min():.4f} V")


if __name__ == "__main__":
    main()
