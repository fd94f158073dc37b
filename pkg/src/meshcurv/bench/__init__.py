"""Package for benchmarking curvature estimators on random polynomial
surfaces."""
