"""Closed-form spread estimates versus simulated cascades.

LIE looks two hops out from the seeds, EDV only one. On a small clustered
graph both are compared with the mean Independent Cascade spread.
"""
import networkx as nx

from hawkim import edv, fis, from_edges, lie

G = nx.powerlaw_cluster_graph(120, 3, 0.4, seed=1)
g = from_edges(G.number_of_nodes(), G.edges())
seeds = [0, 1, 2]

for p in (0.05, 0.1, 0.2):
    sim = fis(g, seeds, p, runs=2000, seed=0)
    print(f"p={p:<5} LIE={lie(g, seeds, p):7.3f}  EDV={edv(g, seeds, p):7.3f}  "
          f"simulated={sim.mean_infected:7.3f} nodes")
