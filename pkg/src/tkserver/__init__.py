"""Time-optimal k-server simulator: metrics, algorithms, adversaries and an exact offline optimum."""
