import typing as typ

from . import _core
from .. import closures, errors, shcore
from ..shcore import ShElement


class Bin(_core.Operator):
    """Binary union with the second element: { S1 ∪ S2 | S1 ∈ sh, S2 ∈ sh2 }."""

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.bin_union(sh, operands.require_sh2(self.name))


class Star(_core.Operator):
    """Star-union: all unions of non-empty subsets of the element."""

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.star_union(sh)


class Self(_core.Operator):
    """j-self-union: all unions of at most j groups of the element."""

    def __init__(self, j: int = 2):
        """Create a self-union operator.

        :param j: The maximal number of groups per union.
        """
        if j < 1:
            raise errors.SemanticError(f'self-union index must be positive, got {j}')
        self._j = j

    def get_params(self) -> dict[str, typ.Any]:
        return {'j': self._j}

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.self_union(sh, self._j)


class _VarSetOperator(_core.Operator):
    def __init__(self, v: str = ''):
        """Create an operator parametrized by a set of variables.

        :param v: The variables, e.g. `xy` or `v1+v2`; empty for no variable.
        """
        self._v = v

    def get_params(self) -> dict[str, typ.Any]:
        return {'v': self._v}


class Rel(_VarSetOperator):
    """Relevant component: the groups that meet the given variables."""

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.rel(sh.universe.parse_var_set(self._v), sh)


class Proj(_VarSetOperator):
    """Projection onto the given variables; the other ones become singleton groups."""

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.proj(sh, sh.universe.parse_var_set(self._v))


class Amgu(_core.Operator):
    """Abstract unification with the substitution, bindings applied in order."""

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.amgu(sh, operands.require_subst(self.name))


class Lub(_core.Operator):
    """Least upper bound with the second element (set union)."""

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.lub(sh, operands.require_sh2(self.name))


class Glb(_core.Operator):
    """Greatest lower bound with the second element (set intersection)."""

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return shcore.glb(sh, operands.require_sh2(self.name))


class Closure(_core.Operator):
    """Apply a closure operator such as `psd` or `ts:3`."""

    def __init__(self, domain: str = 'sh'):
        """Create a closure operator.

        :param domain: The name of the closure.
        """
        self._domain = domain

    def get_params(self) -> dict[str, typ.Any]:
        return {'domain': self._domain}

    def apply(self, sh: ShElement, operands: _core.Operands) -> ShElement:
        return closures.apply(closures.parse_closure(sh.universe, self._domain), sh)
