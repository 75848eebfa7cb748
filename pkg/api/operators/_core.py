from __future__ import annotations

import abc
import dataclasses
import re
import typing as typ

from .. import errors
from ..shcore import ShElement
from ..terms import Substitution


@dataclasses.dataclass(frozen=True)
class Operands:
    """Extra operands an operator may need besides the element it is applied to."""
    sh2: ShElement = None
    subst: Substitution = None

    def require_sh2(self, op_name: str) -> ShElement:
        if self.sh2 is None:
            raise errors.SemanticError(f'operator {op_name!r} requires a second element (--sh2)')
        return self.sh2

    def require_subst(self, op_name: str) -> Substitution:
        if self.subst is None:
            raise errors.SemanticError(f'operator {op_name!r} requires a substitution (--subst)')
        return self.subst


class Operator(abc.ABC):
    """An operator is a function that maps an element of SH to another one."""

    @abc.abstractmethod
    def apply(self, sh: ShElement, operands: Operands) -> ShElement:
        """Applies this operator on the given element.

        :param sh: The element to transform.
        :param operands: The extra operands.
        :return: The transformed element.
        """
        pass

    def get_params(self) -> dict[str, typ.Any]:
        """Returns the configuration of this operator as a dict object.

        :return: The configuration dict.
        """
        return {}

    @property
    def name(self) -> str:
        return self.format_operation_name(self.__class__.__name__)

    def __str__(self):
        args = ','.join(f'{k}={v!r}' for k, v in self.get_params().items())
        return f'{self.name}[{args}]'

    @staticmethod
    def format_operation_name(s: str) -> str:
        """Formats the name of an operator from CamelCase to snake_case.

        :param s: The name to format.
        :return: The formatted string.
        """
        return re.sub(r'([A-Z])', r'_\1', s)[1:].lower()
