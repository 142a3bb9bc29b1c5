"""System-level LTE-U simulator: coverage CDFs and CA vs DC/standalone throughput."""

__version__ = "0.1.0"
