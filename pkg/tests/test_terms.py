import pytest

from api import errors, terms
from api.terms import Binding, Compound, Var
from .strategies import XYZ


def test_parse_term():
    t = terms.parse_term(XYZ, 'f(x, g(y))')
    assert t == Compound('f', (Var('x'), Compound('g', (Var('y'),))))
    assert terms.parse_term(XYZ, str(t)) == t
    assert str(t) == 'f(x, g(y))'
    assert terms.parse_term(XYZ, ' x ') == Var('x')
    assert terms.parse_term(XYZ, 'a') == Compound('a')


def test_term_vars():
    assert terms.term_vars(terms.parse_term(XYZ, 'f(x, g(y, x), a)')) == {'x', 'y'}
    assert terms.term_vars(Compound('a')) == frozenset()


@pytest.mark.parametrize('text, column', [
    ('f(', 2),
    ('f()', 2),
    ('x(y)', 1),
    ('f(x', 3),
    ('f(x) y', 5),
    ('', 0),
])
def test_parse_term_errors(text, column):
    with pytest.raises(errors.ParseError) as e:
        terms.parse_term(XYZ, text)
    assert e.value.column == column


def test_parse_subst():
    s = terms.parse_subst(XYZ, '{x -> f(y, z), y -> a}')
    assert s.bindings == (Binding('x', Compound('f', (Var('y'), Var('z')))), Binding('y', Compound('a')))
    assert s.lower(XYZ) == [(0, 0b110), (1, 0)]
    assert len(terms.parse_subst(XYZ, '{ }')) == 0


@pytest.mark.parametrize('text, error', [
    ('{x -> x}', errors.SelfBinding),
    ('{x -> a, x -> b}', errors.DuplicateBinding),
    ('{q -> a}', errors.UnknownVariable),
    ('{x -> a', errors.ParseError),
    ('x -> a', errors.ParseError),
])
def test_parse_subst_errors(text, error):
    with pytest.raises(error):
        terms.parse_subst(XYZ, text)


def test_parse_subst_lines():
    s = terms.parse_subst_lines(XYZ, 'subst:\nx -> f(y)\n\nz -> a\nsubst:\ny -> b\n')
    assert [b.lhs for b in s] == ['x', 'z']
    assert terms.parse_subst_lines(XYZ, '{y -> b}').domain() == {'y'}


@pytest.mark.parametrize('text, expected', [
    ('{}', True),
    ('{x -> f(y)}', True),
    ('{x -> f(x)}', False),
    ('{x -> y, y -> a}', False),
    ('{x -> f(z), y -> z}', True),
])
def test_is_idempotent(text, expected):
    assert terms.is_idempotent(terms.parse_subst(XYZ, text)) == expected


def test_ground():
    s = terms.ground(['y', 'z'], 'c0')
    assert str(s) == '{y -> c0, z -> c0}'
    assert s.lower(XYZ) == [(1, 0), (2, 0)]
