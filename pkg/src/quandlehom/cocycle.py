"""Quandle 2-cocycles with values in Z_m and the central extensions they define.

A 2-cocycle vanishes on the diagonal and satisfies
phi(a,c) + phi(a*c, b*c) - phi(a,b) - phi(a*b, c) = 0 for all triples,
i.e. it annihilates the degree-3 differential.  The central extension of Q
by Z_m along phi is the quandle on Q x Z_m with
(x1, a1) * (x2, a2) = (x1*x2, a1 + phi(x1, x2)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups
from .errors import InvalidModulusError, SpecParseError
from .intlinalg import _require_prime, _RrefGF
from .quandle import FiniteQuandle, parse_quandle_spec, takasaki


@dataclass(frozen=True)
class CocycleFailure:
    """Why a candidate table is not a cocycle: condition name plus witness."""

    kind: str  # "shape" | "diagonal" | "cocycle"
    witness: tuple[int, ...]

    def describe(self) -> str:
        return f"{self.kind} condition fails at {self.witness}"


class TwoCocycle:
    """A validated 2-cocycle on a finite quandle, stored as an n x n table."""

    def __init__(self, quandle: FiniteQuandle, modulus: int, values):
        if modulus < 2:
            raise InvalidModulusError(f"coefficient modulus {modulus} < 2")
        failure = _find_failure(quandle, modulus, values)
        if failure is not None:
            raise ValueError(f"not a cocycle: {failure.describe()}")
        self.quandle = quandle
        self.modulus = modulus
        self.values = tuple(tuple(int(v) % modulus for v in row) for row in values)

    def __call__(self, a: int, b: int) -> int:
        return self.values[a][b]

    def __eq__(self, other):
        return (
            isinstance(other, TwoCocycle)
            and self.modulus == other.modulus
            and self.quandle == other.quandle
            and self.values == other.values
        )

    def eval_chain(self, chain) -> int:
        """Pairing with a degree-2 chain, mod the coefficient modulus."""
        if chain.degree != 2:
            raise ValueError("cocycles pair with degree-2 chains")
        total = 0
        for (a, b), coeff in chain.terms.items():
            total += coeff * self.values[a][b]
        return total % self.modulus

    def add(self, other: "TwoCocycle") -> "TwoCocycle":
        if other.modulus != self.modulus or other.quandle != self.quandle:
            raise ValueError("cocycle mismatch")
        n = self.quandle.n
        vals = [
            [(self.values[a][b] + other.values[a][b]) % self.modulus for b in range(n)]
            for a in range(n)
        ]
        return TwoCocycle(self.quandle, self.modulus, vals)

    def scale(self, k: int) -> "TwoCocycle":
        n = self.quandle.n
        vals = [[(k * self.values[a][b]) % self.modulus for b in range(n)] for a in range(n)]
        return TwoCocycle(self.quandle, self.modulus, vals)

    def to_json(self) -> dict:
        return {
            "quandle": self.quandle.to_json(),
            "modulus": self.modulus,
            "values": [list(r) for r in self.values],
        }


def _find_failure(q: FiniteQuandle, m: int, values) -> CocycleFailure | None:
    values = [list(r) for r in values]
    n = q.n
    if len(values) != n or any(len(r) != n for r in values):
        return CocycleFailure("shape", (len(values),))
    v = np.asarray(values, dtype=np.int64) % m
    if v.min() < 0 or v.max() >= m:
        return CocycleFailure("shape", tuple(np.argwhere((v < 0) | (v >= m))[0]))
    rng = np.arange(n)
    diag = v[rng, rng]
    if diag.any():
        return CocycleFailure("diagonal", (int(np.flatnonzero(diag)[0]),))
    t = np.asarray(q.table, dtype=np.int64)
    # phi(a,c) + phi(a*c, b*c) - phi(a,b) - phi(a*b, c) over all triples
    ac = v[:, None, :]                                   # [a,b,c] -> phi(a, c)
    acbc = v[t[:, None, :], t[None, :, :]]               # phi(a*c, b*c)
    ab = v[:, :, None]                                   # phi(a, b)
    abc = v[t]                                           # phi(a*b, c)
    total = (ac + acbc - ab - abc) % m
    if total.any():
        a, b, c = (int(x) for x in np.argwhere(total)[0])
        return CocycleFailure("cocycle", (a, b, c))
    return None


def validate(q: FiniteQuandle, m: int, values):
    """Check a candidate table; returns a TwoCocycle or a CocycleFailure."""
    if m < 2:
        raise InvalidModulusError(f"coefficient modulus {m} < 2")
    failure = _find_failure(q, m, values)
    if failure is not None:
        return failure
    return TwoCocycle(q, m, values)


def is_coboundary(phi: TwoCocycle):
    """Whether phi(a,b) = psi(a) - psi(a*b) for some psi; returns (bool, psi).

    Solved as a linear system over Z_p, so the modulus must be prime.
    """
    _require_prime(phi.modulus)
    q, p = phi.quandle, phi.modulus
    n = q.n
    acc = _RrefGF(n + 1, p)
    for a in range(n):
        for b in range(n):
            target = q.table[a][b]
            vec = np.zeros(n + 1, dtype=np.float64)
            vec[a] += 1
            vec[target] -= 1
            vec[n] = phi.values[a][b]
            acc.insert(vec)
    pivcols, mat = acc.sorted_basis()
    if n in pivcols:
        return False, None
    psi = [0] * n
    for i, pc in enumerate(pivcols):
        psi[pc] = int(mat[i, n]) % p
    # pivots solve psi[pc] = rhs - (free vars, taken as 0)
    check = all(
        (psi[a] - psi[q.table[a][b]] - phi.values[a][b]) % p == 0
        for a in range(n)
        for b in range(n)
    )
    if not check:  # pragma: no cover - the RREF solution always satisfies
        return False, None
    return True, tuple(psi)


def coboundary(q: FiniteQuandle, m: int, psi) -> TwoCocycle:
    """The cocycle psi(a) - psi(a*b) of a 1-cochain psi."""
    psi = [int(x) % m for x in psi]
    vals = [[(psi[a] - psi[q.table[a][b]]) % m for b in range(q.n)] for a in range(q.n)]
    return TwoCocycle(q, m, vals)


def generator_cocycle(p: int, normalization: str = "halved") -> TwoCocycle:
    """The generating 2-cocycle on the Takasaki quandle of Z_p x Z_p.

    plain:  phi(x, y) = 2 * (x1*y2 - x2*y1) mod p, the determinant pairing
            of x with 2y - x;
    halved: the plain value divided by 2, which takes the value 1 on the
            standard basis pair (e1, e2).
    """
    if normalization not in ("plain", "halved"):
        raise ValueError(f"normalization must be plain or halved, not {normalization!r}")
    _require_prime(p)
    if p == 2:
        raise InvalidModulusError("need an odd prime")
    g = groups.make_group([p, p])
    q = takasaki(g)
    scale = 2 if normalization == "plain" else 1
    vals = [[0] * q.n for _ in range(q.n)]
    for ia in range(q.n):
        x1, x2 = g.element(ia)
        for ib in range(q.n):
            y1, y2 = g.element(ib)
            vals[ia][ib] = (scale * (x1 * y2 - x2 * y1)) % p
    return TwoCocycle(q, p, vals)


def central_extension(q: FiniteQuandle, m: int, phi: TwoCocycle) -> FiniteQuandle:
    """The quandle on Q x Z_m twisted by phi; pairs (x, a) indexed as x*m + a."""
    if phi.quandle != q or phi.modulus != m:
        raise ValueError("cocycle does not live on the given quandle/modulus")
    n = q.n
    table = [[0] * (n * m) for _ in range(n * m)]
    for x1 in range(n):
        row_q = q.table[x1]
        row_phi = phi.values[x1]
        for a1 in range(m):
            src = x1 * m + a1
            for x2 in range(n):
                base = row_q[x2] * m + (a1 + row_phi[x2]) % m
                for a2 in range(m):
                    table[src][x2 * m + a2] = base
    return FiniteQuandle(table, provenance="extension")


def cocycle_from_json(obj: dict) -> TwoCocycle:
    from .quandle import quandle_from_json

    q = quandle_from_json(obj["quandle"])
    return TwoCocycle(q, obj["modulus"], obj["values"])


def parse_cocycle_spec(text: str, quandle: FiniteQuandle | None = None) -> TwoCocycle:
    """Parse cocycle specs: generator:p[,plain|halved] or zero:m."""
    text = text.strip()
    head, _, rest = text.partition(":")
    if head == "generator" and rest:
        parts = [s.strip() for s in rest.split(",")]
        p = int(parts[0])
        norm = parts[1] if len(parts) > 1 else "halved"
        return generator_cocycle(p, norm)
    if head == "zero" and rest:
        if quandle is None:
            raise SpecParseError("zero cocycle needs a quandle to live on")
        m = int(rest)
        return TwoCocycle(quandle, m, [[0] * quandle.n for _ in range(quandle.n)])
    raise SpecParseError(
        f"unknown cocycle spec {text!r}; expected generator:p[,plain|halved] or zero:m"
    )
