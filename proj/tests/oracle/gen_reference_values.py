#!/usr/bin/env python3
"""Reference-value generator for the link/qos formula tests.

Evaluates the transmission-delay chain (free-space path loss -> SNR ->
Shannon capacity -> delay), the window-sum throughput formula and the
drop-rate ratio term by term, independently of the C++ implementation,
and freezes the results into tests/unit/reference_values.inc as hex
float literals (exact doubles, no decimal rounding).

Rerun only to regenerate the table after deliberately changing the
reference ranges:  python3 tests/oracle/gen_reference_values.py
"""

import math
import random
from pathlib import Path

KB = 1.380649e-23          # Boltzmann constant, J/K
C_M_S = 299792458.0        # speed of light, m/s

OUT = Path(__file__).resolve().parents[1] / "unit" / "reference_values.inc"


def path_loss_linear(d_km: float, f_hz: float) -> float:
    d_m = d_km * 1000.0
    x = 4.0 * math.pi * d_m * f_hz / C_M_S
    return x * x


def delay_chain(d_km, f_hz, p_w, g, tau_k, b_hz, d_bits, bandwidth_scaled):
    loss = path_loss_linear(d_km, f_hz)
    noise = KB * tau_k * loss
    if bandwidth_scaled:
        noise *= b_hz
    snr = p_w * g * g / noise
    cap = b_hz * math.log2(1.0 + snr)
    t = d_bits / cap
    return loss, snr, cap, t


def throughput(windows, b_hz):
    num = sum(tc for tc, _ in windows) * b_hz
    den = sum(tc + tt for tc, tt in windows)
    return num / den


def hexlit(x: float) -> str:
    return float.hex(x)


def main() -> None:
    rng = random.Random(20250810)
    lines = []
    lines.append("// Generated by tests/oracle/gen_reference_values.py -- do not edit by hand.")
    lines.append("// Hex float literals: exact IEEE-754 doubles from the independent reference.")
    lines.append("")

    # --- transmission delay chain -------------------------------------------
    lines.append("struct DelayChainCase {")
    lines.append("  double distance_km, frequency_hz, power_w, gain, noise_temp_k, bandwidth_hz, packet_bits;")
    lines.append("  bool bandwidth_scaled;")
    lines.append("  double expect_loss, expect_snr, expect_capacity_bps, expect_t_trans_s;")
    lines.append("};")
    lines.append("inline constexpr DelayChainCase kDelayChainCases[] = {")
    for i in range(12):
        d = rng.uniform(500.0, 6000.0)
        f = rng.uniform(10e9, 40e9)
        p = rng.uniform(1.0, 50.0)
        g = rng.uniform(100.0, 5000.0)
        tau = rng.uniform(100.0, 600.0)
        b = rng.uniform(1e7, 1e9)
        bits = rng.uniform(1e3, 1e6)
        scaled = i % 2 == 1
        loss, snr, cap, t = delay_chain(d, f, p, g, tau, b, bits, scaled)
        lines.append(
            "  {%s, %s, %s, %s, %s, %s, %s, %s,\n   %s, %s, %s, %s},"
            % (hexlit(d), hexlit(f), hexlit(p), hexlit(g), hexlit(tau),
               hexlit(b), hexlit(bits), "true" if scaled else "false",
               hexlit(loss), hexlit(snr), hexlit(cap), hexlit(t)))
    lines.append("};")
    lines.append("")

    # --- window-sum throughput ----------------------------------------------
    lines.append("struct ThroughputCase {")
    lines.append("  int n_windows;")
    lines.append("  double t_connect_s[5], t_trans_s[5];")
    lines.append("  double bandwidth_hz, expect_tp_bps;")
    lines.append("};")
    lines.append("inline constexpr ThroughputCase kThroughputCases[] = {")
    for _ in range(12):
        n = rng.randint(1, 5)
        ws = [(rng.uniform(1.0, 500.0), rng.uniform(0.0, 10.0)) for _ in range(n)]
        b = rng.uniform(1e6, 1e9)
        tp = throughput(ws, b)
        tc = [hexlit(ws[k][0]) if k < n else "0.0" for k in range(5)]
        tt = [hexlit(ws[k][1]) if k < n else "0.0" for k in range(5)]
        lines.append("  {%d, {%s}, {%s},\n   %s, %s}," % (
            n, ", ".join(tc), ", ".join(tt), hexlit(b), hexlit(tp)))
    lines.append("};")
    lines.append("")

    # --- drop-rate ratio ------------------------------------------------------
    lines.append("struct DropRateCase {")
    lines.append("  unsigned long long lost, delivered;")
    lines.append("  double expect_rate;")
    lines.append("};")
    lines.append("inline constexpr DropRateCase kDropRateCases[] = {")
    for _ in range(12):
        delivered = rng.randint(1, 10**7)
        lost = rng.randint(0, 2 * delivered)  # the ratio may exceed 1 by definition
        lines.append("  {%dull, %dull, %s}," % (lost, delivered, hexlit(lost / delivered)))
    lines.append("};")
    lines.append("")

    # --- named spot checks quoted in unit tests -------------------------------
    spot_loss_db = 10.0 * math.log10(path_loss_linear(1000.0, 26e9))
    spot_snr = 1.0 * 1.0 / (KB * 290.0)  # P=1 W, G=1, tau=290 K, L=1, bandwidth-free
    loss_ref, snr_ref, cap_ref, t_ref = delay_chain(
        4277.4, 26e9, 10.0, 1000.0, 290.0, 100e6, 12000.0, False)
    lines.append("// d=1000 km, f=26 GHz free-space loss in dB; unity-everything SNR;")
    lines.append("// and the 4277.4 km / 26 GHz / 10 W / G=1000 / 290 K / 100 MHz / 12 kbit chain.")
    lines.append(f"inline constexpr double kSpotLossDb1000km26GHz = {hexlit(spot_loss_db)};")
    lines.append(f"inline constexpr double kSpotSnrUnity = {hexlit(spot_snr)};")
    lines.append(f"inline constexpr double kSpotChainLoss = {hexlit(loss_ref)};")
    lines.append(f"inline constexpr double kSpotChainSnr = {hexlit(snr_ref)};")
    lines.append(f"inline constexpr double kSpotChainCapacityBps = {hexlit(cap_ref)};")
    lines.append(f"inline constexpr double kSpotChainTTransS = {hexlit(t_ref)};")
    lines.append("")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}")
    print(f"  spot: loss(1000 km, 26 GHz) = {spot_loss_db:.6f} dB")
    print(f"  spot: snr(P=1,G=1,tau=290,L=1) = {spot_snr:.6e}")
    print(f"  spot: t_trans(4277.4 km chain) = {t_ref:.9e} s")


if __name__ == "__main__":
    main()
