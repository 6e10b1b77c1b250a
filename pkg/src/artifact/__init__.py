"""Width parameters, linked tree-decompositions, tree orders and cascades."""

__version__ = "0.1.0"
