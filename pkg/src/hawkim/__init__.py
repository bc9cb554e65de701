"""Community-restricted Harris' hawks seed selection for influence maximization."""

from .baselines import degree_rank, enc_rank, h_index_rank, kshell, pagerank, top_k
from .community import (
    BudgetPlan,
    CommunityPartition,
    allocate_budgets,
    louvain,
    modularity,
    prune_intercommunity_edges,
    select_significant,
)
from .diffusion import fis, ic_run
from .graph import Graph, from_edges, khop_neighborhood, load_edge_list
from .hho import HHOConfig, decode, optimize, select_seeds
from .influence import edv, lie

__version__ = "0.1.0"
