from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .fkappa import FKappaResult, doubling_bound  # noqa: E402


def plot_fkappa_histogram(result: FKappaResult, path: str) -> str:
    """Bar chart of qualifying systems by minimal max-norm; saved to ``path``."""
    norms = list(result.norm_histogram)
    counts = [result.norm_histogram[k] for k in norms]
    fig, ax = plt.subplots(figsize=(6, 3.7))
    ax.bar([str(k) for k in norms], counts, color="0.35")
    ax.set_yscale("log")
    ax.set_xlabel("smallest max-coordinate of a solution")
    ax.set_ylabel("qualifying systems")
    title = f"n={result.n}, kappa={result.kappa}, B={result.bound}: value {result.value}"
    if result.n >= 2:
        title += f" (doubling bound {doubling_bound(result.n)})"
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
