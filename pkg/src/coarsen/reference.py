"""Reference benchmark statistics used by the reproduction checks."""

# short name -> TUDataset directory name
DATASETS = {
    "CO": "COLLAB",
    "DD": "DD",
    "PTC": "PTC_MR",
    "PRO": "PROTEINS",
    "IB": "IMDB-BINARY",
    "IM": "IMDB-MULTI",
    "N1": "NCI1",
    "N109": "NCI109",
}

MOLECULES = ("N1", "N109")

# graphs, classes, avg nodes, avg edges
TABLE1 = {
    "CO": (5000, 3, 74.49, 2457.78),
    "DD": (1178, 2, 284.32, 715.66),
    "PTC": (344, 2, 25.56, 25.96),
    "PRO": (1113, 2, 39.06, 72.82),
    "IB": (1000, 2, 19.77, 96.53),
    "IM": (1500, 3, 13.00, 65.94),
    "N1": (4110, 2, 29.87, 32.30),
    "N109": (4127, 2, 29.68, 32.13),
}

# loop-and-clique coarsening: avg nodes, r_V, avg edges, r_E.
# N1 and PRO are keyed by the dataset whose original-graph averages they match.
TABLE6_LCC = {
    "CO": (12.52, -0.83, 29.38, -0.99),
    "IB": (3.45, -0.83, 3.07, -0.97),
    "IM": (2.01, -0.85, 1.22, -0.98),
    "DD": (1.6e2, -0.45, 3.1e2, -0.57),
    "PRO": (18.88, -0.52, 18.97, -0.74),
    "PTC": (20.49, -0.20, 20.07, -0.23),
    "N1": (25.85, -0.13, 40.54, +0.26),
    "N109": (18.73, -0.37, 18.85, -0.41),
}

MEAN_NODE_REDUCTION = 0.522
