"""Render scan output to figure files alongside the CSV."""

from __future__ import annotations

from typing import Any, Dict, List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _ok(rows: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return [r for r in rows if r.get("status") == "ok"]


def plot_rate_scan(rows: List[Dict[str, Any]], cfg: Dict[str, Any], path: str) -> None:
    rows = _ok(rows)
    axis = cfg["sweep.axis"]
    tc = cfg["material.Tc_K"] if cfg["material.model"] != "drude_bg" else None
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ys = [r["tau_s"] for r in rows]
    if axis == "temperature" and tc:
        xs = [r["T_K"] / tc for r in rows]
        ax.set_xlabel(r"$T/T_c$")
    elif axis == "temperature":
        xs = [r["T_K"] for r in rows]
        ax.set_xlabel("T [K]")
    elif axis == "thickness":
        xs = [r["H_m"] for r in rows]
        ax.set_xlabel("H [m]")
        ax.set_xscale("log")
    else:
        xs = [r["z_m"] for r in rows]
        ax.set_xlabel("z [m]")
        ax.set_xscale("log")
    ax.plot(xs, ys, "-", lw=1.2, color="C0")
    ax.set_yscale("log")
    ax.set_ylabel(r"$\tau_B$ [s]")
    ax.set_title(f"spin-flip lifetime ({cfg['material.model']})", fontsize=10)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def plot_conductivity(rows: List[Dict[str, Any]], cfg: Dict[str, Any], path: str) -> None:
    rows = _ok(rows)
    xs = [r["T_over_Tc"] if r["T_over_Tc"] != "" else r["T_K"] for r in rows]
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    s1 = [r["sigma1_norm"] for r in rows]
    s2 = [r["sigma2_norm"] for r in rows]
    ax.plot(xs, s1, "-", color="C0", label=r"$\sigma_1$ (normalized)")
    # rescale the inductive part onto the same axis as the dissipative one
    peak1 = max((abs(v) for v in s1), default=1.0) or 1.0
    peak2 = max((abs(v) for v in s2), default=1.0) or 1.0
    scale = 1.0
    if peak2 > 0 and peak2 > 10.0 * peak1:
        import math as _math
        scale = 10.0 ** _math.floor(_math.log10(peak1 / peak2))
    ax.plot(xs, [v * scale for v in s2], "-.", color="C3",
            label=rf"$\sigma_2$ (normalized) $\times$ {scale:g}")
    ax.set_xlabel(r"$T/T_c$")
    ax.set_ylabel("normalized conductivity")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def plot_compare(rows: List[Dict[str, Any]], cfg: Dict[str, Any], path: str) -> None:
    rows = _ok(rows)
    xs = [r["axis_value"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(5.5, 5.5), sharex=True)
    ax1.plot(xs, [r["tau_exact_s"] for r in rows], "-", color="C0", label="exact")
    ax1.plot(xs, [r["tau_analytic_s"] for r in rows], "--", color="C1", label="closed form")
    ax1.set_yscale("log")
    ax1.set_ylabel(r"$\tau_B$ [s]")
    ax1.legend(fontsize=8)
    ax1.grid(True, alpha=0.3)
    ax2.plot(xs, [r["ratio"] for r in rows], "-", color="C2")
    ax2.axhline(1.0, color="k", lw=0.6)
    ax2.set_ylabel("analytic / exact")
    ax2.set_xlabel(cfg["sweep.axis"])
    ax2.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def plot_gap(rows: List[Dict[str, Any]], cfg: Dict[str, Any], path: str) -> None:
    rows = _ok(rows)
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.plot([r["T_over_Tc"] for r in rows], [r["delta_meV"] for r in rows],
            "-", color="C0")
    ax.set_xlabel(r"$T/T_c$")
    ax.set_ylabel(r"$\Delta(T)$ [meV]")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
