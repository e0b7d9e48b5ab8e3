"""Critical point theory of planar spider linkages.

A spider is a set of fixed feet joined to one free body point by
articulated legs.  The package stratifies its work space, enumerates the
critical components of squared-distance, Hooke and Voronoi potentials on the
configuration space, and checks them against an independent numerical search.
"""

from . import arm, hooke, mechanism, morse, oracle, polynomial, polyspace, voronoi, workspace
from .errors import SpiderError
from .mechanism import SpiderMechanism, load_document, parse_document, validate

__version__ = "0.1.0"

__all__ = [
    "SpiderError",
    "SpiderMechanism",
    "arm",
    "hooke",
    "load_document",
    "mechanism",
    "morse",
    "oracle",
    "parse_document",
    "polynomial",
    "polyspace",
    "validate",
    "voronoi",
    "workspace",
]
