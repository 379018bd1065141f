import itertools
import random
from math import gcd, prod

import pytest

from quandlehom import groups, intlinalg
from quandlehom.errors import (
    ElementMismatchError,
    InvalidModulusError,
    NotAGroupError,
    NotOddOrderError,
    SpecParseError,
)


def test_make_group_orders():
    assert groups.make_group([3, 3]).order == 9
    assert groups.make_group([27]).order == 27
    assert groups.make_group([3, 9]).order == 27


def test_make_group_rejects_small_moduli():
    with pytest.raises(InvalidModulusError):
        groups.make_group([3, 1])
    with pytest.raises(InvalidModulusError):
        groups.make_group([0])


def test_make_group_order_cap():
    with pytest.raises(InvalidModulusError):
        groups.make_group([2] * 13)  # 8192 > default cap
    groups.make_group([2] * 13, max_order=10000)


def test_enumeration_is_lexicographic():
    g = groups.make_group([2, 3])
    assert list(g.elements()) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    for i in range(g.order):
        assert g.index(g.element(i)) == i


def test_add_neg_zero(z5, z39):
    assert z5.add((3,), (4,)) == (2,)
    assert z39.add((2, 8), (1, 1)) == (0, 0)
    for g in (z5, z39):
        for a in g.elements():
            assert g.add(a, g.neg(a)) == g.zero()


def test_arity_mismatch(z39):
    with pytest.raises(ElementMismatchError):
        z39.add((1,), (1, 1))


def test_abelian_axioms_exhaustive():
    # commutativity and associativity on every pair/triple for small groups
    for moduli in ([4], [2, 2], [3, 3], [27]):
        g = groups.make_group(moduli)
        elems = list(g.elements())
        for a, b in itertools.product(elems, repeat=2):
            assert g.add(a, b) == g.add(b, a)
        for a, b, c in itertools.islice(itertools.product(elems, repeat=3), 2000):
            assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))


def test_halve(z5, z39):
    assert z5.halve((1,)) == (3,)
    assert z39.halve((1, 1)) == (2, 5)
    for g in (z5, z39):
        assert g.halve(g.zero()) == g.zero()
        for a in g.elements():
            assert g.double(g.halve(a)) == a
            assert g.halve(g.double(a)) == a


def test_halve_needs_odd_order():
    with pytest.raises(NotOddOrderError):
        groups.make_group([4]).halve((2,))


def test_exterior_square_components(z33, z39):
    assert z33.exterior_square().components == (((0, 1), 3),)
    assert groups.make_group([27]).exterior_square().components == ()
    assert z39.exterior_square().components == (((0, 1), 3),)
    sq = groups.make_group([3, 3, 3]).exterior_square()
    assert [d for _, d in sq.components] == [3, 3, 3]
    assert sq.order == 27


def test_exterior_square_order_vs_snf_oracle():
    # independent route: Smith form of the presentation of the exterior
    # square with generators e_i ^ e_j and relations m_i g, m_j g
    for moduli in ([3, 3], [3, 9], [4, 6], [2, 3, 4], [6, 10, 15]):
        g = groups.make_group(moduli)
        gens = list(itertools.combinations(range(len(moduli)), 2))
        entries = []
        col = 0
        for gi, (i, j) in enumerate(gens):
            entries.append((gi, col, moduli[i]))
            col += 1
            entries.append((gi, col, moduli[j]))
            col += 1
        m = intlinalg.SparseIntMatrix(len(gens), col, entries)
        s = intlinalg.smith(m)
        free = len(gens) - s.rank
        assert free == 0
        assert s.torsion == g.exterior_square().invariant_factors()
        assert g.exterior_square().order == prod(
            gcd(moduli[i], moduli[j]) for i, j in gens
        )


def test_wedge_basics(z33):
    e1, e2 = (1, 0), (0, 1)
    assert z33.wedge(e1, e2) == (1,)
    assert z33.wedge(e2, e1) == (2,)
    for x in z33.elements():
        assert z33.wedge(x, x) == (0,)


def test_wedge_bilinear_exhaustive(z33):
    sq = z33.exterior_square()
    elems = list(z33.elements())
    for x, xp, y in itertools.product(elems, repeat=3):
        left = z33.wedge(z33.add(x, xp), y)
        right = sq.add(z33.wedge(x, y), z33.wedge(xp, y))
        assert left == right


def test_wedge_bilinear_randomized_larger():
    g = groups.make_group([3, 5, 15])
    sq = g.exterior_square()
    rng = random.Random(11)
    for _ in range(300):
        x = g.element(rng.randrange(g.order))
        xp = g.element(rng.randrange(g.order))
        y = g.element(rng.randrange(g.order))
        assert g.wedge(g.add(x, xp), y) == sq.add(g.wedge(x, y), g.wedge(xp, y))
        assert g.wedge(x, y) == sq.neg(g.wedge(y, x))


def test_ext_square_element_ops():
    sq = groups.make_group([3, 3, 3]).exterior_square()
    z = sq.zero()
    assert z == (0, 0, 0)
    u = (1, 2, 0)
    assert sq.add(u, sq.neg(u)) == z
    assert sq.scale(u, 3) == z
    assert len(list(sq.elements())) == 27


def test_cyclic_group():
    g = groups.cyclic(27)
    assert g.n == 27 and g.is_abelian()
    assert g.element_order(1) == 27


def test_direct_product():
    g = groups.direct_product(groups.cyclic(3), groups.cyclic(9))
    assert g.n == 27 and g.is_abelian()


def test_heisenberg3_exponent_three():
    g = groups.heisenberg3()
    assert g.n == 27 and not g.is_abelian()
    for a in range(27):
        assert g.mul(g.mul(a, a), a) == g.identity


def test_heisenberg3_relations():
    g = groups.heisenberg3()
    # encoding (a, b, c) -> 9a + 3b + c; x central, yz = zyx
    x, y, z = 1, 9, 3
    assert g.mul(x, y) == g.mul(y, x)
    assert g.mul(x, z) == g.mul(z, x)
    assert g.mul(y, z) == g.mul(g.mul(z, y), x)


def test_g4_27_structure():
    g = groups.g4_27()
    assert g.n == 27 and not g.is_abelian()
    s = 3  # (1, 0) under the 3i + j indexing
    assert g.element_order(s) == 9


def test_g4_27_realizes_presentation():
    # exhaustively find witnesses (s, t) with s^9 = t^3 = 1 and s t = t s^4
    g = groups.g4_27()
    found = False
    for s in range(27):
        if g.element_order(s) != 9:
            continue
        s4 = s
        for _ in range(3):
            s4 = g.mul(s4, s)
        for t in range(27):
            if g.element_order(t) != 3:
                continue
            if g.mul(s, t) == g.mul(t, s4):
                found = True
                break
        if found:
            break
    assert found


def test_from_mult_table_validation_witnesses():
    with pytest.raises(NotAGroupError):
        groups.from_mult_table([[0, 0], [1, 1]])  # rows not permutations
    # break associativity but keep the latin-square property:
    # a quasigroup that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroupError) as err:
        groups.from_mult_table(table)
    assert err.value.witness is not None


def test_abelian_table_core_matches_takasaki(z39):
    from quandlehom.quandle import core, takasaki

    assert core(z39.to_finite_group()).table == takasaki(z39).table


def test_group_json_roundtrip(z39):
    assert groups.group_from_json(z39.to_json()).moduli == (3, 9)
    g = groups.g4_27()
    back = groups.group_from_json(g.to_json())
    assert back.mult == g.mult


def test_parse_group_spec():
    assert groups.parse_group_spec("abelian:3,9").moduli == (3, 9)
    assert groups.parse_group_spec("cyclic:27").n == 27
    assert groups.parse_group_spec("heisenberg3").n == 27
    assert groups.parse_group_spec("g4_27").n == 27
    with pytest.raises(SpecParseError) as err:
        groups.parse_group_spec("heisenburg3")
    assert "did you mean" in str(err.value)
