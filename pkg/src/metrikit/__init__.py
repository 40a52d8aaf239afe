"""Finite metric-space toolkit: structural constants, induced (ultra)metrics,
eps-connectivity, Lipschitz calculus and Hausdorff content."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .connectivity import ComponentDecomposition, components, critical_epsilon, is_epsilon_connected
from .constructions import (
    ChainWitness,
    chain_metric,
    chain_ultrametric,
    find_snowflake_exponent,
    snowflake,
    snowflake_constant_bound,
)
from .core import (
    CantorSpec,
    FiniteDistanceSpace,
    PointCloud,
    cantor_points,
    cloud_to_space,
    diameter,
    line_space,
    validate_space,
)
from .hausdorff import ContentQuery, ContentResult, alpha_sweep, content
from .lipschitz import FiniteMap, RealFunction, distance_to_point, lipschitz_constant
from .norms import norm
from .properties import PropertyReport, classify

__all__ = [
    "BACKEND",
    "CantorSpec",
    "ChainWitness",
    "ComponentDecomposition",
    "ContentQuery",
    "ContentResult",
    "FiniteDistanceSpace",
    "FiniteMap",
    "PointCloud",
    "PropertyReport",
    "RealFunction",
    "alpha_sweep",
    "cantor_points",
    "chain_metric",
    "chain_ultrametric",
    "classify",
    "cloud_to_space",
    "components",
    "content",
    "critical_epsilon",
    "diameter",
    "distance_to_point",
    "find_snowflake_exponent",
    "is_epsilon_connected",
    "line_space",
    "lipschitz_constant",
    "norm",
    "snowflake",
    "snowflake_constant_bound",
    "validate_space",
]
