"""Naive reference implementations used for differential testing.

Nothing here runs the engines' automata or saturation code.
"""
from .bounded import BoundedVerdict, bounded_path_check
from .ctl import ctl_fixpoint_check, ctl_table
from .generators import gen_fairness_family, gen_micro_tiling, tiling_exists, tiling_violations
from .product import finite_product_check
from .sim import Runner

__all__ = ["BoundedVerdict", "bounded_path_check", "ctl_fixpoint_check", "ctl_table",
           "gen_fairness_family", "gen_micro_tiling", "tiling_exists", "tiling_violations",
           "finite_product_check", "Runner"]
