"""Exhaustive reference counts used by tests and by the CLI's oracle modes."""

from .brute_force import dihom_bf, forks_bf, hom_bf, isub_bf, recompute_level_pairs, sub_bf

__all__ = ["dihom_bf", "forks_bf", "hom_bf", "isub_bf", "recompute_level_pairs", "sub_bf"]
