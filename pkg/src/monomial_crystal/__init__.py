"""Monomial crystals of affine quantum algebras."""
from .cartan import (AffineType, CartanData, Shift, build_cartan, canonical_shift, d_ell,
                     finite_cartan, fundamental_seed, make_shift, parity_coloring,
                     parse_type, shift_for_pair)
from .crystal import (CrystalGraph, ZPeriod, decompose_I0, detect_z_period, export_graph,
                      generate_component, generate_quotient)
from .embed import phi_embed, seed_shift, verify_strict
from .monomial import (Monomial, eps_i, format_monomial, lower, p_i, parse, phi_i,
                       q_i, raise_op, tau_shift)
from .tableaux import (Tableau, affine_family, box, check_admissible, enumerate_tableaux,
                       monomial_of_tableau, sigma, sigma_prime, tau_lhr)
from .verify import check_fixture, load_fixture, oracle_bijection, weyl_dim

__all__ = [
    "AffineType", "CartanData", "Shift", "build_cartan", "canonical_shift", "d_ell",
    "finite_cartan", "fundamental_seed", "make_shift", "parity_coloring", "parse_type",
    "shift_for_pair",
    "CrystalGraph", "ZPeriod", "decompose_I0", "detect_z_period", "export_graph",
    "generate_component", "generate_quotient",
    "phi_embed", "seed_shift", "verify_strict",
    "Monomial", "eps_i", "format_monomial", "lower", "p_i", "parse", "phi_i", "q_i",
    "raise_op", "tau_shift",
    "Tableau", "affine_family", "box", "check_admissible", "enumerate_tableaux",
    "monomial_of_tableau", "sigma", "sigma_prime", "tau_lhr",
    "check_fixture", "load_fixture", "oracle_bijection", "weyl_dim",
]
