"""Friedman / Iman-Davenport tests with Holm post-hoc against a control method."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np
from scipy import stats as st


@dataclass(frozen=True)
class ResultMatrix:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    values: np.ndarray
    higher_is_better: bool = True

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(self.rows), len(self.cols)):
            raise ValueError(f"values shape {v.shape} does not match {len(self.rows)}x{len(self.cols)}")
        if np.isnan(v).any():
            raise ValueError("result matrix has missing cells")
        object.__setattr__(self, "values", v)

    @classmethod
    def read_csv(cls, source: TextIO, higher_is_better: bool = True) -> "ResultMatrix":
        """First column holds problem labels, header row holds method labels."""
        reader = csv.reader(source)
        header = next(reader)
        rows, vals = [], []
        for rec in reader:
            if rec:
                rows.append(rec[0])
                vals.append([float(x) for x in rec[1:]])
        return cls(tuple(rows), tuple(header[1:]), np.array(vals), higher_is_better)


def rank_rows(m: ResultMatrix) -> np.ndarray:
    """Per-row ranks, 1 = best, ties get the mean rank."""
    v = -m.values if m.higher_is_better else m.values
    return np.apply_along_axis(st.rankdata, 1, v)


def friedman_ranks(m: ResultMatrix) -> dict[str, float]:
    k, n = len(m.cols), len(m.rows)
    if k < 2 or n < 2:
        raise ValueError("need at least 2 methods and 2 problems")
    return dict(zip(m.cols, rank_rows(m).mean(axis=0).tolist()))


def friedman_statistic(ranks: Sequence[float], n: int, k: int) -> float:
    R = np.asarray(ranks, dtype=float)
    return float(12.0 * n / (k * (k + 1)) * (np.sum(R ** 2) - k * (k + 1) ** 2 / 4.0))


def iman_davenport(chi2: float, n: int, k: int) -> float:
    den = n * (k - 1) - chi2
    if den <= 0:
        return math.inf
    return (n - 1) * chi2 / den


def friedman_pvalue(chi2: float, k: int) -> float:
    return float(st.chi2.sf(chi2, k - 1))


def iman_davenport_pvalue(fid: float, n: int, k: int) -> float:
    if math.isinf(fid):
        return 0.0
    return float(st.f.sf(fid, k - 1, (n - 1) * (k - 1)))


def holm_adjust(pvals: Sequence[float], m: int | None = None) -> list[float]:
    """Holm step-down APVs: ``min(1, max_{j<=i} (m - j + 1) p_j)`` for ascending p."""
    p = np.asarray(pvals, dtype=float)
    if np.any(np.diff(p) < 0):
        raise ValueError("p-values must be sorted ascending")
    m = len(p) if m is None else m
    scaled = (m - np.arange(len(p))) * p
    return np.minimum(1.0, np.maximum.accumulate(scaled)).tolist()


@dataclass(frozen=True)
class HolmRow:
    method: str
    z: float
    p: float
    apv: float


@dataclass(frozen=True)
class FriedmanReport:
    ranks: dict[str, float]
    n: int
    k: int
    chi2: float
    chi2_p: float
    fid: float
    fid_p: float
    control: str
    holm: tuple[HolmRow, ...]

    def write_csv(self, sink: TextIO) -> None:
        w = csv.writer(sink)
        w.writerow(["section", "method", "value", "z", "p", "apv"])
        for meth, r in self.ranks.items():
            w.writerow(["rank", meth, repr(r), "", "", ""])
        w.writerow(["friedman_chi2", "", repr(self.chi2), "", repr(self.chi2_p), ""])
        w.writerow(["iman_davenport", "", repr(self.fid), "", repr(self.fid_p), ""])
        for h in self.holm:
            w.writerow(["holm", h.method, "", repr(h.z), repr(h.p), repr(h.apv)])


def compare(m: ResultMatrix) -> FriedmanReport:
    """Friedman ranks and statistics, then Holm against the best-ranked method.

    Post-hoc z uses ``(R_i - R_control) / sqrt(k(k+1)/(6n))`` and a one-sided
    lower-tail normal p-value for the control being better.
    """
    ranks = friedman_ranks(m)
    n, k = len(m.rows), len(m.cols)
    chi2 = friedman_statistic(list(ranks.values()), n, k)
    fid = iman_davenport(chi2, n, k)
    control = min(ranks, key=lambda c: (ranks[c], m.cols.index(c)))
    se = math.sqrt(k * (k + 1) / (6.0 * n))
    others = [(c, (ranks[control] - ranks[c]) / se) for c in m.cols if c != control]
    others = [(c, z, float(st.norm.cdf(z))) for c, z in others]
    others.sort(key=lambda t: t[2])
    apv = holm_adjust([t[2] for t in others], len(others))
    rows = tuple(HolmRow(c, z, p, a) for (c, z, p), a in zip(others, apv))
    return FriedmanReport(ranks, n, k, chi2, friedman_pvalue(chi2, k), fid,
                          iman_davenport_pvalue(fid, n, k), control, rows)
