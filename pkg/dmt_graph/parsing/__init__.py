"""Readers and writers for the dmt-graph file formats."""
