"""Recognize changemaker Goeritz lattices of alternating diagrams and certify
the rational tangle replacement they encode."""

__version__ = "0.1.0"
