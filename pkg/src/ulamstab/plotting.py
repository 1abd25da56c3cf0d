"""Figure rendering for the CLI report paths (matplotlib, file output only)."""

from __future__ import annotations

import math

import numpy as np


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_classification_figure(path, cycle, report) -> None:
    """Factor positions against the unit circle plus the per-residue sums."""
    plt = _pyplot()
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 4))
    theta = np.linspace(0.0, 2.0 * math.pi, 256)
    ax0.plot(np.cos(theta), np.sin(theta), "k--", lw=0.8, label="|1+hp| = 1")
    factors = np.asarray(cycle.factors, dtype=complex)
    ax0.scatter(factors.real, factors.imag, c="C0", zorder=3)
    for k, f in enumerate(factors):
        ax0.annotate(str(k), (f.real, f.imag), textcoords="offset points", xytext=(4, 4))
    ax0.axhline(0, color="0.8", lw=0.5)
    ax0.axvline(0, color="0.8", lw=0.5)
    ax0.set_aspect("equal")
    ax0.set_xlabel("Re(1 + h p_k)")
    ax0.set_ylabel("Im(1 + h p_k)")
    ax0.set_title(f"factors, rho = {report.rho:.6g}")
    ax0.legend(loc="best", fontsize=8)

    idx = np.arange(cycle.n)
    colors = ["C1" if k == report.argmax_residue else "C0" for k in idx]
    ax1.bar(idx, report.sums, color=colors)
    ax1.set_xlabel("residue k")
    ax1.set_ylabel("S_k")
    title = report.stability_class.value
    if report.K is not None:
        title += f", K = {report.K:.6g}"
    ax1.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_trajectory_figure(path, traj, residual_mags=None) -> None:
    plt = _pyplot()
    rows = 2 if residual_mags is not None else 1
    fig, axes = plt.subplots(rows, 1, figsize=(8, 3 * rows), sharex=True)
    axes = np.atleast_1d(axes)
    t = traj.times()
    mags = traj.magnitudes()
    if np.all(mags > 0.0) and mags.max() / max(mags.min(), 1e-300) > 1e3:
        axes[0].semilogy(t, mags, lw=0.9)
    else:
        axes[0].plot(t, mags, lw=0.9)
    axes[0].set_ylabel("|phi(t)|")
    if residual_mags is not None:
        axes[1].plot(t[: len(residual_mags)], residual_mags, lw=0.9, color="C1")
        axes[1].set_ylabel("|q(t)|")
    axes[-1].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_witness_figure(path, report) -> None:
    plt = _pyplot()
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 4))
    if report.kind == "sharpness":
        t = report.phi.times()
        ax0.plot(t, report.tracking_error, lw=0.9)
        ax0.axhline(report.target, color="C3", ls="--", lw=0.9, label="K eps")
        ax0.axhline(report.achieved_sup, color="C2", ls=":", lw=0.9, label="achieved")
        ax0.set_xlabel("t")
        ax0.set_ylabel("|phi - x|")
        ax0.legend(loc="lower right", fontsize=8)
        ax0.set_title("tracking error")
    else:
        ax0.plot(report.growth_step_counts, report.growth_min_sups, "o-", lw=0.9)
        ax0.set_xlabel("horizon (steps)")
        ax0.set_ylabel("min over probes of sup |phi - c e_p|")
        ax0.set_title("divergence from every candidate solution")
    idx = np.arange(len(report.residue_profile))
    ax1.bar(idx, report.residue_profile, color="C0")
    if report.kind == "sharpness":
        ax1.axhline(report.target, color="C3", ls="--", lw=0.9)
        ax1.set_ylabel("per-residue tracking limit")
    else:
        ax1.axhline(report.epsilon, color="C3", ls="--", lw=0.9)
        ax1.set_ylabel("per-residue residual magnitude")
    ax1.set_xlabel("residue k")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_boundedness_figure(path, verifications) -> None:
    """Per-family envelopes of max |phi(t)| with the bound and settle times."""
    plt = _pyplot()
    fig, axes = plt.subplots(
        len(verifications), 1, figsize=(8, 3 * len(verifications)), sharex=True
    )
    axes = np.atleast_1d(axes)
    for ax, ver in zip(axes, verifications):
        for row in ver.rows:
            ax.plot(
                row.envelope_times,
                row.envelope,
                lw=0.9,
                label=f"alpha = {row.alpha:g}",
            )
            if row.T_alpha > 0.0:
                ax.axvline(row.T_alpha, color="0.6", ls=":", lw=0.8)
        ax.axhline(ver.B, color="C3", ls="--", lw=1.0, label="B")
        ax.set_ylabel("max |phi(t)|")
        ax.set_yscale("log")
        ax.set_title(f"family: {ver.family}")
        ax.legend(loc="upper right", fontsize=8)
    axes[-1].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
