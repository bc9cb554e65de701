"""Small FIS sweep across all methods, then the Friedman / Holm comparison.

Equivalent CLI:
    hawkim fis-sweep --graph net.txt --out results
    hawkim compare results/fis-sweep.csv --out results
"""
import tempfile
from pathlib import Path

import networkx as nx

from hawkim import harness

G = nx.powerlaw_cluster_graph(200, 3, 0.3, seed=7)
tmp = Path(tempfile.mkdtemp())
path = tmp / "plc200.txt"
path.write_text("".join(f"{u} {v}\n" for u, v in G.edges()))

cfg = harness.ExperimentConfig(graphs=[str(path)], runs=100, iters=30, seed=1)
records = harness.run_fis_sweep(cfg)
for r in records:
    print(f"{r.method:>9s} frac={r.fraction:<5} k={r.k:<3} FIS={r.fis_mean:.4f}  select {r.wall_ms:8.1f} ms")

report = harness.compare(records)
print("\naverage ranks:", {m: round(v, 3) for m, v in sorted(report.ranks.items(), key=lambda t: t[1])})
print(f"Friedman chi2 = {report.chi2:.3f} (p = {report.chi2_p:.3g}); "
      f"Iman-Davenport F = {report.fid:.3f} (p = {report.fid_p:.3g})")
for h in report.holm:
    print(f"  vs {h.method:>9s}: z = {h.z:6.2f}  p = {h.p:.3g}  Holm APV = {h.apv:.3g}")
