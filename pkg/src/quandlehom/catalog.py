"""Named constructions used by the CLI, the reproduction run, and the tests."""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import prod

from . import cocycle
from .quandle import FiniteQuandle, parse_quandle_spec

#: specs for every bundled quandle construction of size <= 27
BUILTIN_QUANDLE_SPECS = (
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:8",
    "takasaki:3,3",
    "takasaki:5,5",
    "takasaki:27",
    "takasaki:3,9",
    "takasaki:3,3,3",
    "core:g4_27",
    "core:heisenberg3",
    "extension:3,halved",
)


def builtin_quandles(max_size: int | None = None):
    """(spec, quandle) pairs for the bundled constructions."""
    out = []
    for spec in BUILTIN_QUANDLE_SPECS:
        if spec.startswith("extension:"):
            arg = spec.split(":", 1)[1]
            p_str, norm = arg.split(",")
            phi = cocycle.generator_cocycle(int(p_str), norm)
            q: FiniteQuandle = cocycle.central_extension(phi.quandle, phi.modulus, phi)
        else:
            q = parse_quandle_spec(spec)
        if max_size is None or q.n <= max_size:
            out.append((spec, q))
    return out


def odd_sweep_moduli(max_order: int = 81, pool=(3, 5, 7, 9, 27, 81)):
    """Moduli multisets over the pool with product <= max_order, sorted."""
    out = []
    for k in range(1, 8):
        for combo in combinations_with_replacement(sorted(pool), k):
            if prod(combo) <= max_order:
                out.append(tuple(combo))
        if all(prod(c) > max_order for c in combinations_with_replacement(sorted(pool), k)):
            break
    return sorted(set(out), key=lambda m: (prod(m), m))
