import itertools

import pytest
from hypothesis import given, settings, strategies as st

from api import errors, shcore, terms, universe as unv
from .strategies import V5, XYZ, el, sh_elements, substitutions, var_sets


class TestElements:
    def test_canonical_order(self):
        sh = el(XYZ, 'xyz', 'y', 'xz', 'x')
        assert list(sh) == [0b001, 0b010, 0b101, 0b111]
        assert str(sh) == '{x, y, xz, xyz}'
        assert str(shcore.bottom(XYZ)) == '{}'

    def test_invalid_groups(self):
        with pytest.raises(errors.SemanticError):
            shcore.ShElement(XYZ, frozenset({8}))
        with pytest.raises(errors.SemanticError):
            shcore.make_element(XYZ, [0])

    def test_mask_encoding(self):
        sh = el(XYZ, 'x', 'xy')
        assert sh.to_mask() == 0b101
        assert shcore.ShElement.from_mask(XYZ, sh.to_mask()) == sh
        assert shcore.top(XYZ).to_mask() == 0b1111111

    def test_universe_mismatch(self, xy):
        with pytest.raises(errors.UniverseMismatch):
            shcore.bin_union(el(XYZ, 'x'), el(xy, 'x'))
        with pytest.raises(errors.UniverseMismatch):
            _ = el(XYZ, 'x') <= el(xy, 'x')


class TestOperators:
    def test_bin_union(self):
        assert shcore.bin_union(el(XYZ, 'x', 'y'), el(XYZ, 'z')) == el(XYZ, 'xz', 'yz')
        assert shcore.bin_union(el(XYZ, 'x'), shcore.bottom(XYZ)) == shcore.bottom(XYZ)
        assert shcore.bin_union(el(XYZ, 'x'), el(XYZ, 'x')) == el(XYZ, 'x')

    def test_star_union(self):
        assert shcore.star_union(el(XYZ, 'x', 'y')) == el(XYZ, 'x', 'y', 'xy')
        assert shcore.star_union(shcore.bottom(XYZ)) == shcore.bottom(XYZ)
        assert shcore.star_union(el(XYZ, 'x', 'y', 'z')) == shcore.top(XYZ)

    def test_self_union(self):
        singletons = el(XYZ, 'x', 'y', 'z')
        assert shcore.self_union(singletons, 1) == singletons
        assert shcore.self_union(singletons, 2) == el(XYZ, 'x', 'y', 'z', 'xy', 'xz', 'yz')
        assert shcore.self_union(singletons, 3) == shcore.top(XYZ)
        with pytest.raises(errors.SemanticError):
            shcore.self_union(singletons, 0)

    def test_rel(self):
        sh = el(XYZ, 'x', 'xy', 'y', 'z')
        assert shcore.rel('x', sh) == el(XYZ, 'x', 'xy')
        assert shcore.rel(0, sh) == shcore.bottom(XYZ)
        assert shcore.rel(XYZ.full, sh) == sh

    def test_proj(self):
        assert shcore.proj(el(XYZ, 'xyz'), 'x') == el(XYZ, 'x', 'y', 'z')
        assert shcore.proj(el(XYZ, 'xy', 'z'), 'xy') == el(XYZ, 'xy', 'z')
        sh = el(XYZ, 'xz', 'y')
        assert shcore.proj(sh, XYZ.full) == sh

    def test_lub_glb(self):
        a, b = el(XYZ, 'x', 'xy'), el(XYZ, 'xy', 'z')
        assert shcore.lub(a, b) == el(XYZ, 'x', 'xy', 'z')
        assert shcore.glb(a, b) == el(XYZ, 'xy')


class TestAmgu:
    def test_binding(self):
        singletons = el(XYZ, 'x', 'y', 'z')
        assert shcore.amgu_binding(singletons, 'x', 'y') == el(XYZ, 'z', 'xy')
        assert shcore.amgu_binding(el(XYZ, 'x', 'xy', 'z'), 'x', 0) == el(XYZ, 'z')
        assert shcore.amgu_binding(shcore.bottom(XYZ), 'x', 'y') == shcore.bottom(XYZ)

    def test_substitution(self):
        singletons = el(XYZ, 'x', 'y', 'z')
        assert shcore.amgu(singletons, terms.Substitution()) == singletons
        assert shcore.amgu(singletons, terms.parse_subst(XYZ, '{x -> a, y -> b}')) == el(XYZ, 'z')
        assert shcore.amgu(singletons, terms.parse_subst(XYZ, '{x -> y}')) == el(XYZ, 'z', 'xy')
        assert shcore.amgu(singletons, terms.parse_subst(XYZ, '{x -> f(y, z)}')) == el(XYZ, 'xy', 'xz', 'xyz')

    def test_unknown_variable(self):
        with pytest.raises(errors.UnknownVariable):
            shcore.amgu_binding(el(XYZ, 'x'), 'w', 0)

    @settings(max_examples=50)
    @given(sh_elements(XYZ), st.data())
    def test_grounding_removes_groups(self, sh, data):
        v = data.draw(var_sets(XYZ))
        sigma = terms.ground(XYZ.names_of(v), 'c0')
        assert shcore.amgu(sh, sigma) == shcore.ShElement(XYZ, frozenset(g for g in sh.groups if not g & v))

    @settings(max_examples=50)
    @given(sh_elements(XYZ), substitutions(XYZ))
    def test_amgu_result_is_an_element(self, sh, sigma):
        result = shcore.amgu(sh, sigma)
        assert result.universe == XYZ
        bound = XYZ.mask_of(sigma.domain())
        # Groups that avoid every variable of the substitution are untouched.
        involved = bound | sum(m for _, m in sigma.lower(XYZ))
        assert {g for g in sh.groups if not g & involved} <= result.groups


class TestLaws:
    @given(sh_elements(V5, max_size=8), sh_elements(V5, max_size=8))
    def test_bin_commutative(self, a, b):
        assert shcore.bin_union(a, b) == shcore.bin_union(b, a)

    @given(sh_elements(V5, max_size=6), sh_elements(V5, max_size=6), sh_elements(V5, max_size=6))
    def test_bin_associative_and_monotone(self, a, b, c):
        assert shcore.bin_union(shcore.bin_union(a, b), c) == shcore.bin_union(a, shcore.bin_union(b, c))
        assert shcore.bin_union(a, b) <= shcore.bin_union(shcore.lub(a, c), b)

    @given(sh_elements(V5, max_size=10))
    def test_self_union_chain(self, sh):
        star = shcore.star_union(sh)
        previous = sh
        for j in range(1, 6):
            current = shcore.self_union(sh, j)
            assert previous <= current <= star
            previous = current
        assert shcore.self_union(sh, 31) == star

    @given(sh_elements(V5, max_size=10))
    def test_star_is_a_closure(self, sh):
        star = shcore.star_union(sh)
        assert sh <= star
        assert shcore.star_union(star) == star

    def test_star_monotone_exhaustively(self):
        u = unv.make_universe(['x', 'y'])
        elements = [shcore.ShElement.from_mask(u, m) for m in range(8)]
        for a, b in itertools.product(elements, repeat=2):
            if a <= b:
                assert shcore.star_union(a) <= shcore.star_union(b)

    @given(sh_elements(V5, max_size=10), var_sets(V5))
    def test_rel_proj(self, sh, v):
        r = shcore.rel(v, sh)
        assert r <= sh
        assert all(g & v for g in r.groups)
        p = shcore.proj(sh, v)
        assert all(not g & ~v or g.bit_count() == 1 for g in p.groups)
