"""Graph reconstruction from 2D density fields by persistence-guided discrete Morse theory."""


def __getattr__(name):
    """Lazy imports to avoid loading numpy and scipy at import time."""
    _imports = {
        "GridSpec": "dmt_graph.config",
        "NoiseParams": "dmt_graph.config",
        "ReconstructConfig": "dmt_graph.config",
        "RunConfig": "dmt_graph.config",
        "Cell": "dmt_graph.complex",
        "CubicalComplex": "dmt_graph.complex",
        "build_complex": "dmt_graph.complex",
        "DensityField": "dmt_graph.density",
        "PlanarGraph": "dmt_graph.density",
        "RegionLabel": "dmt_graph.density",
        "classify_point": "dmt_graph.density",
        "delta_range": "dmt_graph.density",
        "histogram_density": "dmt_graph.density",
        "kde_density": "dmt_graph.density",
        "synth_density": "dmt_graph.density",
        "PersistenceDiagram": "dmt_graph.persistence",
        "build_filtration": "dmt_graph.persistence",
        "oracle_reduce": "dmt_graph.persistence",
        "reduce": "dmt_graph.persistence",
        "CancelResult": "dmt_graph.morse",
        "DiscreteVectorField": "dmt_graph.morse",
        "cancel_pair": "dmt_graph.morse",
        "critical_cells": "dmt_graph.morse",
        "find_vpaths": "dmt_graph.morse",
        "init_trivial": "dmt_graph.morse",
        "simplify": "dmt_graph.morse",
        "ReconstructedGraph": "dmt_graph.extraction",
        "extract_graph": "dmt_graph.extraction",
        "graph_stats": "dmt_graph.extraction",
        "stable_manifold": "dmt_graph.extraction",
        "TheoremReport": "dmt_graph.verify",
        "check_theorem": "dmt_graph.verify",
        "hausdorff_distance": "dmt_graph.verify",
        "reconstruct": "dmt_graph.pipeline",
        "run_trial": "dmt_graph.pipeline",
    }
    if name in _imports:
        import importlib
        module = importlib.import_module(_imports[name])
        return getattr(module, name)
    raise AttributeError(f"module 'dmt_graph' has no attribute {name!r}")


__all__ = [
    "CancelResult",
    "Cell",
    "CubicalComplex",
    "DensityField",
    "DiscreteVectorField",
    "GridSpec",
    "NoiseParams",
    "PersistenceDiagram",
    "PlanarGraph",
    "ReconstructConfig",
    "ReconstructedGraph",
    "RegionLabel",
    "RunConfig",
    "TheoremReport",
    "build_complex",
    "build_filtration",
    "cancel_pair",
    "check_theorem",
    "classify_point",
    "critical_cells",
    "delta_range",
    "extract_graph",
    "find_vpaths",
    "graph_stats",
    "hausdorff_distance",
    "histogram_density",
    "init_trivial",
    "kde_density",
    "oracle_reduce",
    "reconstruct",
    "run_trial",
    "simplify",
    "stable_manifold",
    "synth_density",
]
