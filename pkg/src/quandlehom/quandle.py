"""Finite quandles as operation tables.

A quandle is a set with a binary operation * that is idempotent
(a*a = a), right-invertible (a -> a*b is a bijection for each b), and
right self-distributive ((a*b)*c = (a*c)*(b*c)).  Every constructor here
verifies the axioms exhaustively, so a FiniteQuandle value is always
valid; candidate tables are only handled at the verify_axioms boundary.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass

import numpy as np

from . import groups
from .errors import NotAQuandleError, NotAQuasigroupError, SpecParseError


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of checking the three quandle axioms on a candidate table."""

    ok: bool
    failures: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{axiom} fails at {witness}" for axiom, witness in self.failures)


def verify_axioms(table) -> AxiomReport:
    """Check idempotency, right-invertibility and self-distributivity.

    Failures are reported as values (axiom name plus a witness tuple);
    malformed input (non-square, entries out of range) raises ValueError.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError(f"table is not square: shape {t.shape}")
    n = t.shape[0]
    if n == 0:
        raise ValueError("empty table")
    if t.min() < 0 or t.max() >= n:
        raise ValueError("table entries out of range")

    failures = []
    rng = np.arange(n)
    diag = t[rng, rng]
    if not (diag == rng).all():
        a = int(np.argwhere(diag != rng)[0][0])
        failures.append(("idempotency", (a,)))
    col_perm = (np.sort(t, axis=0) == rng[:, None]).all(axis=0)
    if not col_perm.all():
        b = int(np.argwhere(~col_perm)[0][0])
        failures.append(("right-invertibility", (b,)))
    # (a*b)*c vs (a*c)*(b*c), all via fancy indexing
    left = t[t]                                # left[a,b,c] = t[t[a,b], c]
    right = t[t[:, None, :], t[None, :, :]]    # right[a,b,c] = t[t[a,c], t[b,c]]
    if not (left == right).all():
        a, b, c = (int(x) for x in np.argwhere(left != right)[0])
        failures.append(("self-distributivity", (a, b, c)))
    return AxiomReport(ok=not failures, failures=tuple(failures))


class FiniteQuandle:
    """An n-element quandle with table[a][b] = a * b; immutable and valid."""

    def __init__(self, table, labels=None, provenance: str = "custom"):
        report = verify_axioms(table)
        if not report.ok:
            raise NotAQuandleError(report)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.n = len(self.table)
        self.labels = tuple(labels) if labels is not None else None
        self.provenance = provenance
        # column inverses exist by right-invertibility: _colinv[b][c] = c *bar b
        colinv = [[0] * self.n for _ in range(self.n)]
        for b in range(self.n):
            for a in range(self.n):
                colinv[b][self.table[a][b]] = a
        self._colinv = tuple(tuple(r) for r in colinv)
        self._rowinv = None

    def __eq__(self, other):
        return isinstance(other, FiniteQuandle) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteQuandle(n={self.n}, provenance={self.provenance!r})"

    def apply(self, a: int, b: int) -> int:
        """a * b"""
        return self.table[a][b]

    def left_divide(self, c: int, b: int) -> int:
        """The unique a with a * b = c."""
        return self._colinv[b][c]

    def is_kei(self) -> bool:
        """True iff (a*b)*b = a for all a, b."""
        t = self.table
        return all(t[t[a][b]][b] == a for a in range(self.n) for b in range(self.n))

    def is_quasigroup(self) -> bool:
        """True iff every row b -> a*b is a permutation."""
        rng = list(range(self.n))
        return all(sorted(row) == rng for row in self.table)

    def circ(self, a: int, c: int) -> int:
        """The unique b with a * b = c; defined for quasigroup quandles."""
        if self._rowinv is None:
            if not self.is_quasigroup():
                raise NotAQuasigroupError(
                    f"row {next(a for a in range(self.n) if sorted(self.table[a]) != list(range(self.n)))}"
                    " is not a permutation"
                )
            rowinv = [[0] * self.n for _ in range(self.n)]
            for x in range(self.n):
                for b in range(self.n):
                    rowinv[x][self.table[x][b]] = b
            object.__setattr__(self, "_rowinv", tuple(tuple(r) for r in rowinv))
        return self._rowinv[a][c]

    def orbits(self) -> list[list[int]]:
        """Connected components under a ~ a*b (and its inverses)."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in range(self.n):
            for b in range(self.n):
                ra, rb = find(a), find(self.table[a][b])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups_: dict[int, list[int]] = {}
        for a in range(self.n):
            groups_.setdefault(find(a), []).append(a)
        return [groups_[k] for k in sorted(groups_)]

    def to_json(self) -> dict:
        return {"n": self.n, "table": [list(r) for r in self.table]}


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def takasaki(g: groups.FinAbGroup) -> FiniteQuandle:
    """The quandle of the abelian group g with a * b = 2b - a.

    Works for any order; odd order makes it a quasigroup.
    """
    n = g.order
    elems = np.array([g.element(i) for i in range(n)], dtype=np.int64)
    mods = np.array(g.moduli, dtype=np.int64)
    radix = np.ones(len(g.moduli), dtype=np.int64)
    for k in range(len(g.moduli) - 2, -1, -1):
        radix[k] = radix[k + 1] * g.moduli[k + 1]
    res = (2 * elems[None, :, :] - elems[:, None, :]) % mods
    table = (res * radix).sum(axis=2)
    labels = tuple(str(g.element(i)) for i in range(n))
    return FiniteQuandle(table.tolist(), labels=labels, provenance="takasaki")


def core(g: groups.FiniteGroup) -> FiniteQuandle:
    """The core quandle of a group: a * b = b a^{-1} b."""
    m, inv = g.mult, g.inv
    table = [[m[b][m[inv[a]][b]] for b in range(g.n)] for a in range(g.n)]
    return FiniteQuandle(table, labels=g.labels, provenance="core")


def dihedral(n: int) -> FiniteQuandle:
    """Reflections of an n-gon: takasaki of Z_n (n = 1 handled directly)."""
    if n < 1:
        raise SpecParseError(f"dihedral size {n} < 1")
    if n == 1:
        return FiniteQuandle([[0]], provenance="dihedral")
    q = takasaki(groups.make_group([n]))
    return FiniteQuandle(q.table, labels=q.labels, provenance="dihedral")


def quandle_from_json(obj: dict) -> FiniteQuandle:
    table = obj["table"]
    if "n" in obj and obj["n"] != len(table):
        raise SpecParseError(f"declared n={obj['n']} but table has {len(table)} rows")
    try:
        return FiniteQuandle(table)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from None


_QUANDLE_SPEC_FORMS = ("takasaki:3,3", "dihedral:5", "core:heisenberg3", "core:g4_27")


def parse_quandle_spec(text: str) -> FiniteQuandle:
    """Parse specs like takasaki:3,3  dihedral:5  core:heisenberg3."""
    text = text.strip()
    head, _, rest = text.partition(":")
    if head == "takasaki" and rest:
        g = groups.parse_group_spec("abelian:" + rest)
        return takasaki(g)
    if head == "dihedral" and rest:
        try:
            return dihedral(int(rest))
        except ValueError:
            raise SpecParseError(f"bad dihedral size {rest!r}") from None
    if head == "core" and rest:
        g = groups.parse_group_spec(rest)
        if isinstance(g, groups.FinAbGroup):
            g = g.to_finite_group()
        return core(g)
    guesses = difflib.get_close_matches(text, _QUANDLE_SPEC_FORMS, n=2)
    hint = f"; did you mean {' or '.join(guesses)!s}?" if guesses else ""
    raise SpecParseError(f"unknown quandle spec {text!r}{hint}")
