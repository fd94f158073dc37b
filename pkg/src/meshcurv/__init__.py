"""Curvature estimation on triangular meshes."""
