"""The fixed set VI of variables of interest and its encoding into bit positions.

Variable i of a universe is bit i of every sharing group; bit order is declaration order.
"""
from __future__ import annotations

import dataclasses
import re
import typing as typ

from . import errors, utils

MAX_VARS = 62

_IDENTIFIER_REGEX = re.compile(r'[A-Za-z][A-Za-z0-9_]*')

# A set of variables given either as a bit mask or as variable names.
VarSet = int | typ.Iterable[str]


@dataclasses.dataclass(frozen=True)
class VarUniverse:
    """A finite ordered set of distinct variable names."""
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise errors.SemanticError('universe must contain at least one variable')
        if len(self.names) > MAX_VARS:
            raise errors.SemanticError(f'universe has {len(self.names)} variables, at most {MAX_VARS} are supported')
        seen = set()
        for name in self.names:
            if not isinstance(name, str) or not _IDENTIFIER_REGEX.fullmatch(name):
                raise errors.ParseError(f'malformed identifier: {name!r}')
            if name in seen:
                raise errors.DuplicateName(f'duplicate variable name: {name!r}')
            seen.add(name)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        """The mask of the whole universe, i.e. the sharing group VI."""
        return (1 << self.n) - 1

    @property
    def single_char(self) -> bool:
        """Whether all names are one character long, which allows the compact text format."""
        return all(len(name) == 1 for name in self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise errors.UnknownVariable(f'unknown variable: {name!r}')

    def name_of(self, index: int) -> str:
        if not (0 <= index < self.n):
            raise errors.UnknownVariable(f'no variable at index {index}')
        return self.names[index]

    def mask_of(self, variables: VarSet) -> int:
        """Convert a set of variables into a mask.

        :param variables: Either a mask or an iterable of variable names.
        :return: The corresponding mask.
        :raises UnknownVariable: If a variable does not belong to this universe.
        """
        if isinstance(variables, int):
            if variables < 0 or variables & ~self.full:
                raise errors.UnknownVariable(f'variable set {variables:#b} is not included in the universe')
            return variables
        mask = 0
        for name in variables:
            mask |= 1 << self.index(name)
        return mask

    def names_of(self, mask: int) -> list[str]:
        """Return the names of the variables of a mask, in declaration order."""
        return [self.names[i] for i in utils.bits_of(mask)]

    def parse_var_set(self, text: str) -> int:
        """Parse a variable set written as `+`-separated names, or as concatenated single-character names.

        The empty string denotes the empty set.

        :param text: The text to parse.
        :return: The mask of the set.
        """
        text = text.strip()
        if not text:
            return 0
        if '+' in text or text in self.names:
            return self.mask_of(part.strip() for part in text.split('+'))
        if self.single_char:
            return self.mask_of(text)
        raise errors.UnknownVariable(f'unknown variable: {text!r}')

    def format_group(self, mask: int) -> str:
        if self.single_char:
            return ''.join(self.names_of(mask))
        return '+'.join(self.names_of(mask))

    def __str__(self):
        return ','.join(self.names)


def make_universe(names: typ.Sequence[str]) -> VarUniverse:
    """Create a universe whose bit order is the order of the given names.

    :param names: The variable names.
    :return: The universe.
    :raises SemanticError: If the list is empty or a name is repeated.
    :raises ParseError: If a name is not an identifier.
    """
    return VarUniverse(tuple(names))


def numbered_universe(n: int) -> VarUniverse:
    """Create the universe v1, …, vn."""
    if n < 1:
        raise errors.SemanticError(f'universe size must be positive, got {n}')
    return make_universe([f'v{i + 1}' for i in range(n)])


def parse_vars(text: str) -> VarUniverse:
    """Parse a comma-separated list of names, as given to `--vars`."""
    return make_universe([name.strip() for name in text.split(',') if name.strip()])


def var_index(u: VarUniverse, name: str) -> int:
    """Return the 0-based position of a variable.

    :raises UnknownVariable: If the name is not in the universe.
    """
    return u.index(name)
