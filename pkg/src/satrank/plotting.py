"""Report figures written to files (Agg backend, no display needed)."""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .instanton import RankCertificate  # noqa: E402
from .signature_lab import JumpSpectrum  # noqa: E402


def signature_steps(spectrum: JumpSpectrum) -> tuple[list[float], list[int]]:
    """Breakpoints and values of t -> sigma(t) on (0, 1/2], built from the jumps."""
    xs, ys = [0.0], [0]
    sigma = 0
    for key, jump in spectrum.items():
        xs.append(float(key))
        sigma += 2 * jump
        ys.append(sigma)
    xs.append(0.5)
    ys.append(sigma)
    return xs, ys


def plot_signature_function(spectrum: JumpSpectrum, path, title: str = "") -> None:
    xs, ys = signature_steps(spectrum)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.step(xs, ys, where="post", color="k", lw=1.5)
    for key, jump in spectrum.items():
        ax.axvline(float(key), color="0.7", lw=0.8, ls=":")
    ax.set_xlim(0, 0.5)
    ax.set_xlabel("t  (zeta = exp(2 pi i t))")
    ax.set_ylabel("signature")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_certificate(cert: RankCertificate, path) -> None:
    idx = list(range(1, len(cert.entries) + 1))
    rhos = [float(e.rho) for e in cert.entries]
    bounds = [float(min(v for _, v in e.thresholds)) for e in cert.entries]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.semilogy(idx, bounds, "s--", color="0.5", label="min threshold")
    ax.semilogy(idx, rhos, "o-", color="k", label="rho(r, s)")
    for i, e in zip(idx, cert.entries):
        ax.annotate(f"T({e.r},{e.s})", (i, float(e.rho)), textcoords="offset points", xytext=(4, -12), fontsize=8)
    ax.set_xticks(idx)
    ax.set_xlabel("family index")
    pq = Fraction(cert.p, cert.q)
    ax.set_title(f"{cert.pattern}: l = {cert.l}, p/q = {pq}")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
