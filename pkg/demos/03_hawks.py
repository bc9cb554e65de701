"""Run the hawk optimizer and watch the best fitness climb."""
import networkx as nx

from hawkim import HHOConfig, from_edges, select_seeds
from hawkim.baselines import degree_rank, top_k
from hawkim.influence import lie

G = nx.powerlaw_cluster_graph(300, 4, 0.3, seed=5)
g = from_edges(G.number_of_nodes(), G.edges())

sel = select_seeds(g, HHOConfig(k=8, pop_size=20, iterations=50, seed=0))
trace = sel.result.trace
for it, best, ms in trace[:: max(1, len(trace) // 10)]:
    print(f"iter {it:3d}  best LIE (pruned graph) {best:8.3f}  {ms:7.1f} ms")
print("branch usage:", sel.result.branch_counts)

deg = top_k(degree_rank(g), 8)
print(f"LIE on full graph: hawks {lie(g, sel.seeds, 0.1):.3f} vs top-degree {lie(g, deg, 0.1):.3f}")
