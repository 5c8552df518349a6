"""Partition functions, phase-diagram bounds and localization tests for
inhomogeneous polymer chains (random and periodic copolymers, pinning/wetting
models over simple and {-1,0,+1} walks)."""

try:
    from ._copoly import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _copoly import *  # noqa: F401,F403  (in-tree build)
