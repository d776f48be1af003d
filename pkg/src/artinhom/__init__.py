"""Integral homology of Artin monoids via discrete Morse theory."""
from .coxeter import CoxeterSystem, parse_system, load_system, classify_subset, enumerate_sf
from .monoid import ArtinMonoid
from .complex import BasedComplex, homology, smith_normal_form
from .bar import BarComplex
from .squier import SquierRoutes, compare_squier_vs_mu2
from .cmw import CMW, build_E, cmw_complex

__all__ = [
    "ArtinMonoid", "BarComplex", "BasedComplex", "CMW", "CoxeterSystem", "SquierRoutes",
    "build_E", "classify_subset", "cmw_complex", "compare_squier_vs_mu2", "enumerate_sf",
    "homology", "load_system", "parse_system", "smith_normal_form",
]
