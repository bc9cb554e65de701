"""Louvain communities, pruning, and how the seed budget is split."""
import networkx as nx

from hawkim import from_edges, louvain, prune_intercommunity_edges, select_significant, allocate_budgets
from hawkim.community import significance_threshold

G = nx.planted_partition_graph(4, 30, 0.3, 0.01, seed=2)
g = from_edges(G.number_of_nodes(), G.edges())

part = louvain(g)
print(f"{part.count} communities, sizes {part.sizes()}, modularity {part.modularity:.3f}")

pruned = prune_intercommunity_edges(g, part)
print(f"pruning removed {g.edge_count - pruned.edge_count} of {g.edge_count} edges")

k = 6
sig = select_significant(part, significance_threshold(g.node_count, k))
plan = allocate_budgets(pruned, part, sig, k)
print("budgets:", plan.budget, "| candidate pool:", len(plan.candidates))
