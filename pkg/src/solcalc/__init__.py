"""Ordered invariants and axiom checks for presentations of branched solenoids."""

__version__ = "0.1.0"

from .presentation import (  # noqa: E402
    Edge,
    Graph,
    Letter,
    Presentation,
    PresentationError,
    WrappingRule,
    load,
    make_stationary,
    orientability,
    parse_presentation,
    reorient,
    serialize,
    validate_presentation,
)
from .dimension import (  # noqa: E402
    LimitElement,
    SignClass,
    adjacency_matrix,
    check_simplicity,
    compare,
    interpolate,
    invariants_report,
    limit_add,
    limit_equal,
    limit_scale,
    limit_sign,
    perron_data,
    signed_transfer_matrix,
)


def example_path(name: str) -> str:
    """Path of a bundled presentation file: dyadic, fibonacci, ex4x or ex4y."""
    from importlib import resources

    return str(resources.files(__package__) / "data" / f"{name}.sol")
