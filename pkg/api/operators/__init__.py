import dataclasses
import inspect
import typing as typ

from . import _docstring_parser as dsp
from .. import errors
from ._core import *
from ._sharing import *


@dataclasses.dataclass(frozen=True)
class ArgMetadata:
    type: type
    default_value: typ.Any
    doc: str = None


@dataclasses.dataclass(frozen=True)
class OperatorMetadata:
    name: str
    args: dict[str, ArgMetadata]
    doc: str = None

    @property
    def main_arg(self) -> str | None:
        """The argument set by the short form `name:<value>`."""
        return next(iter(self.args), None)


_OPERATORS = {}
_OPS_METADATA = {}


def _init():
    for k, v in globals().items():
        if inspect.isclass(v) and issubclass(v, Operator) and not inspect.isabstract(v) and not k.startswith('_'):
            # noinspection PyTypeChecker
            op_name = Operator.format_operation_name(k)
            _OPERATORS[op_name] = v
            docstring = dsp.parse_docstring(v.__init__.__doc__)
            annotations = inspect.get_annotations(v.__init__, eval_str=True)
            annotations.pop('return', None)
            # Operators without parameters inherit object.__init__, which has no __defaults__.
            defaults = getattr(v.__init__, '__defaults__', None) or ()
            _OPS_METADATA[op_name] = OperatorMetadata(
                name=op_name,
                args={
                    n: ArgMetadata(type=t, default_value=defaults[i], doc=docstring.params.get(n, ''))
                    for i, (n, t) in enumerate(annotations.items())
                },
                doc=dsp.parse_docstring(v.__doc__).short_description,
            )


_init()

# Defined after `_init()`: on Python 3.10 `inspect.isclass` is true for generic aliases, which `issubclass` rejects.
OperatorsMetadata = dict[str, OperatorMetadata]


def get_operators_metadata() -> OperatorsMetadata:
    return _OPS_METADATA.copy()


def create_operator(name: str, **kwargs) -> Operator:
    """Instanciate the operator with the given name.

    :param name: The snake_case name of the operator.
    :param kwargs: The arguments of the operator.
    :return: The operator.
    :raises ParseError: If no operator has this name.
    """
    if name not in _OPERATORS:
        raise errors.ParseError(f'undefined operator: {name!r}')
    return _OPERATORS[name](**kwargs)
