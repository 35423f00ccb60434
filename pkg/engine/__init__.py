"""Dynamic homomorphism engines and the counting index built on them."""

from .ahom import AHomState
from .index import ISubIndex

__all__ = ["AHomState", "ISubIndex"]
