"""Exact invariants and truncated Gevrey series of GKZ hypergeometric systems."""

__version__ = "0.1.0"
