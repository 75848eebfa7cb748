import pytest

from api import errors, operators as ops, pipeline as pl, terms
from .strategies import XYZ, el


class TestRegistry:
    def test_names(self):
        assert set(ops.get_operators_metadata()) == {'bin', 'star', 'self', 'rel', 'proj', 'amgu', 'lub', 'glb',
                                                     'closure'}

    def test_only_concrete_operators_are_registered(self):
        for name in ('operator', 'var_set_operator'):
            with pytest.raises(errors.ParseError):
                ops.create_operator(name)

    def test_metadata(self):
        metadata = ops.get_operators_metadata()
        assert metadata['self'].main_arg == 'j'
        assert metadata['self'].args['j'].type is int
        assert metadata['self'].args['j'].default_value == 2
        assert metadata['self'].args['j'].doc
        assert metadata['proj'].main_arg == 'v'
        assert metadata['star'].main_arg is None
        assert metadata['star'].doc.startswith('Star-union')

    def test_create(self):
        op = ops.create_operator('self', j=3)
        assert isinstance(op, ops.Self)
        assert str(op) == 'self[j=3]'
        assert str(ops.create_operator('star')) == 'star[]'
        with pytest.raises(errors.ParseError):
            ops.create_operator('nope')
        with pytest.raises(errors.SemanticError):
            ops.create_operator('self', j=0)


class TestApply:
    def test_missing_operands(self):
        with pytest.raises(errors.SemanticError):
            ops.create_operator('bin').apply(el(XYZ, 'x'), ops.Operands())
        with pytest.raises(errors.SemanticError):
            ops.create_operator('amgu').apply(el(XYZ, 'x'), ops.Operands())

    def test_var_set_operators(self):
        sh = el(XYZ, 'x', 'xy', 'z')
        assert ops.create_operator('rel', v='y').apply(sh, ops.Operands()) == el(XYZ, 'xy')
        assert ops.create_operator('proj', v='xy').apply(el(XYZ, 'xyz'), ops.Operands()) == el(XYZ, 'xy', 'z')
        assert ops.create_operator('rel').apply(sh, ops.Operands()) == el(XYZ)

    def test_closure(self):
        op = ops.create_operator('closure', domain='def')
        assert op.apply(el(XYZ, 'x', 'y'), ops.Operands()) == el(XYZ, 'x', 'y', 'xy')
        with pytest.raises(errors.ParseError):
            ops.create_operator('closure', domain='nope').apply(el(XYZ, 'x'), ops.Operands())


class TestPipeline:
    def test_empty(self):
        sh = el(XYZ, 'x')
        assert pl.Pipeline().execute(sh) is sh

    def test_sequence(self):
        operands = ops.Operands(sh2=el(XYZ, 'z'), subst=terms.parse_subst(XYZ, '{x -> y}'))
        pipeline = (pl.Pipeline()
                    .then(ops.create_operator('amgu'))
                    .then(ops.create_operator('lub'))
                    .then(ops.create_operator('star')))
        assert pipeline.execute(el(XYZ, 'x', 'y'), operands) == el(XYZ, 'xy', 'z', 'xyz')

    def test_logging_goes_to_stderr(self, capsys):
        pl.Pipeline(verbosity=pl.Logger.INTERMEDIARY_RESULTS).then(ops.create_operator('star')).execute(el(XYZ, 'x'))
        captured = capsys.readouterr()
        assert captured.out == ''
        assert '-> star[]' in captured.err
        assert 'value: {x}' in captured.err


def test_run_parallel_keeps_order():
    assert pl.run_parallel(lambda x: x * x, list(range(10)), jobs=3) == [x * x for x in range(10)]
    assert pl.run_parallel(lambda x: x + 1, [1, 2]) == [2, 3]


def test_run_parallel_reraises():
    def fail(x):
        raise errors.InternalError(str(x))

    with pytest.raises(errors.InternalError):
        pl.run_parallel(fail, [1, 2], jobs=2)
