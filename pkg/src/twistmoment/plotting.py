"""Report figures (matplotlib, non-interactive backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_PNG_META = {"Software": None}


def moment_figures(report, out_dir: Path, stem: str = "moment") -> list[Path]:
    """Two figures: normalized moments against log X, and the ratio S_emp/S_main."""
    out_dir.mkdir(parents=True, exist_ok=True)
    X = np.array([r.X for r in report.rows])
    L = np.log(X)
    emp = np.array([r.S_emp for r in report.rows]) / (X * L**3)
    main = np.array([r.S_main for r in report.rows]) / (X * L**3)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(L, emp, "o-", label="empirical")
    ax.plot(L, main, "s--", label="main term")
    ax.axhline(report.coefficients["c3"], color="grey", lw=0.8, label="c3")
    if report.fit is not None:
        grid = np.linspace(L.min(), L.max(), 100)
        fitted = np.polyval(report.fit, grid) / grid**3
        ax.plot(grid, fitted, ":", label="log-polynomial fit")
    ax.set_xlabel("log X")
    ax.set_ylabel("S / (X log^3 X)")
    ax.legend()
    fig.tight_layout()
    p1 = out_dir / f"{stem}_normalized.png"
    fig.savefig(p1, dpi=120, metadata=_PNG_META)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(X, [r.ratio for r in report.rows], "o-")
    ax.axhline(1.0, color="grey", lw=0.8)
    ax.set_xlabel("X")
    ax.set_ylabel("S_emp / S_main")
    fig.tight_layout()
    p2 = out_dir / f"{stem}_ratio.png"
    fig.savefig(p2, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return [p1, p2]


def shifted_figure(rows, path: Path) -> Path:
    """LHS and RHS of the shifted identity across X."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    X = [r.X for r in rows]
    ax.loglog(X, [abs(r.LHS) for r in rows], "o-", label="|LHS|")
    ax.loglog(X, [abs(r.RHS) for r in rows], "s--", label="|RHS|")
    ax.set_xlabel("X")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path

