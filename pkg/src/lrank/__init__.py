"""ℓ-rankings of graphs of bounded treewidth."""

__version__ = "0.1.0"
