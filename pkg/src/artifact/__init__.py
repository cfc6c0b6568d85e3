"""Relative Auslander-Reiten theory for generalised species over prime fields."""
from . import linalg
from .linalg import prime, set_prime

__all__ = ["linalg", "prime", "set_prime"]
__version__ = "0.1.0"
