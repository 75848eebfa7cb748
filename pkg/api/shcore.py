"""Sharing groups, elements of the set-sharing domain SH and its abstract operators.

A sharing group is a non-empty subset of VI encoded as a bit mask; an element of SH is a finite set of
sharing groups. All functions are pure.
"""
from __future__ import annotations

import dataclasses
import typing as typ

from . import errors, utils
from .terms import Substitution
from .universe import VarSet, VarUniverse

# A non-empty subset of VI, bit i standing for variable i.
SharingGroup = int


@dataclasses.dataclass(frozen=True)
class ShElement:
    """An element of SH: a set of sharing groups over a universe."""
    universe: VarUniverse
    groups: frozenset[SharingGroup] = frozenset()

    def __post_init__(self):
        full = self.universe.full
        for group in self.groups:
            if group <= 0 or group & ~full:
                raise errors.SemanticError(f'invalid sharing group {group:#b} for universe {self.universe}')

    def __iter__(self) -> typ.Iterator[SharingGroup]:
        """Iterate over groups in canonical order: cardinality, then bit pattern."""
        return iter(sorted(self.groups, key=utils.group_key))

    def __len__(self):
        return len(self.groups)

    def __contains__(self, group: SharingGroup) -> bool:
        return group in self.groups

    def __le__(self, other: ShElement) -> bool:
        _check_same_universe(self, other)
        return self.groups <= other.groups

    def __lt__(self, other: ShElement) -> bool:
        _check_same_universe(self, other)
        return self.groups < other.groups

    def to_mask(self) -> int:
        """Encode this element as a bit-vector indexed by group pattern (group g is bit g-1)."""
        mask = 0
        for group in self.groups:
            mask |= 1 << (group - 1)
        return mask

    @classmethod
    def from_mask(cls, u: VarUniverse, mask: int) -> ShElement:
        return cls(u, frozenset(b + 1 for b in utils.bits_of(int(mask))))

    def __str__(self):
        return '{' + ', '.join(self.universe.format_group(g) for g in self) + '}'


def make_element(u: VarUniverse, groups: typ.Iterable[VarSet]) -> ShElement:
    """Build an element from groups given as masks or as iterables of names.

    :raises SemanticError: If a group is empty.
    """
    masks = set()
    for group in groups:
        mask = u.mask_of(group)
        if mask == 0:
            raise errors.SemanticError('sharing groups cannot be empty')
        masks.add(mask)
    return ShElement(u, frozenset(masks))


def bottom(u: VarUniverse) -> ShElement:
    return ShElement(u)


def top(u: VarUniverse) -> ShElement:
    """The element SG containing every sharing group."""
    return ShElement(u, frozenset(range(1, u.full + 1)))


def _check_same_universe(*elements: ShElement):
    first = elements[0].universe
    for sh in elements[1:]:
        if sh.universe != first:
            raise errors.UniverseMismatch(f'universes differ: {first} vs {sh.universe}')


def lub(sh1: ShElement, sh2: ShElement) -> ShElement:
    """Least upper bound on SH, i.e. set union."""
    _check_same_universe(sh1, sh2)
    return ShElement(sh1.universe, sh1.groups | sh2.groups)


def glb(sh1: ShElement, sh2: ShElement) -> ShElement:
    """Greatest lower bound on SH, i.e. set intersection."""
    _check_same_universe(sh1, sh2)
    return ShElement(sh1.universe, sh1.groups & sh2.groups)


def _bin(groups1: typ.Iterable[int], groups2: typ.Iterable[int]) -> frozenset[int]:
    groups2 = tuple(groups2)
    return frozenset(a | b for a in groups1 for b in groups2)


def bin_union(sh1: ShElement, sh2: ShElement) -> ShElement:
    """Binary union: { S1 ∪ S2 | S1 ∈ sh1, S2 ∈ sh2 }.

    :raises UniverseMismatch: If the elements have different universes.
    """
    _check_same_universe(sh1, sh2)
    return ShElement(sh1.universe, _bin(sh1.groups, sh2.groups))


def star_groups(groups: typ.Iterable[int]) -> frozenset[int]:
    """Close a set of groups under pairwise union."""
    result = set(groups)
    frontier = list(result)
    while frontier:
        new = set()
        snapshot = tuple(result)
        for a in frontier:
            for b in snapshot:
                if (c := a | b) not in result:
                    new.add(c)
        result |= new
        frontier = list(new)
    return frozenset(result)


def star_union(sh: ShElement) -> ShElement:
    """Star-union: all unions of non-empty subsets of sh."""
    return ShElement(sh.universe, star_groups(sh.groups))


def self_union_groups(groups: typ.Iterable[int], j: int) -> frozenset[int]:
    base = frozenset(groups)
    result = base
    for _ in range(j - 1):
        extended = result | _bin(result, base)
        if extended == result:
            break
        result = extended
    return result


def self_union(sh: ShElement, j: int) -> ShElement:
    """j-self-union: all unions of at most j groups of sh.

    :param sh: The element.
    :param j: The maximal number of groups per union.
    :raises SemanticError: If j < 1.
    """
    if j < 1:
        raise errors.SemanticError(f'self-union index must be positive, got {j}')
    return ShElement(sh.universe, self_union_groups(sh.groups, j))


def rel_groups(v: int, groups: typ.Iterable[int]) -> frozenset[int]:
    return frozenset(g for g in groups if g & v)


def rel(v: VarSet, sh: ShElement) -> ShElement:
    """Relevant component: the groups of sh that meet V."""
    return ShElement(sh.universe, rel_groups(sh.universe.mask_of(v), sh.groups))


def proj(sh: ShElement, v: VarSet) -> ShElement:
    """Project sh onto V; variables outside V become singleton groups."""
    u = sh.universe
    mask = u.mask_of(v)
    groups = {g & mask for g in sh.groups if g & mask}
    groups.update(1 << i for i in utils.bits_of(u.full & ~mask))
    return ShElement(u, frozenset(groups))


def amgu_groups(groups: frozenset[int], x: int, t_vars: int) -> frozenset[int]:
    """Abstract unification of a binding on raw groups; x is a variable index, t_vars a mask."""
    v_x = 1 << x
    v_xt = v_x | t_vars
    kept = frozenset(g for g in groups if not g & v_xt)
    return kept | _bin(star_groups(rel_groups(v_x, groups)), star_groups(rel_groups(t_vars, groups)))


def amgu_binding(sh: ShElement, x: str | int, t_vars: VarSet) -> ShElement:
    """Abstract effect of a binding x -> t, where only vars(t) matters.

    :param sh: The element.
    :param x: The bound variable, as a name or an index.
    :param t_vars: The variables of the bound term.
    :raises UnknownVariable: If x or a variable of t is not in the universe.
    """
    u = sh.universe
    index = u.index(x) if isinstance(x, str) else u.index(u.name_of(x))
    return ShElement(u, amgu_groups(sh.groups, index, u.mask_of(t_vars)))


def amgu(sh: ShElement, sigma: Substitution) -> ShElement:
    """Fold `amgu_binding` over the bindings of sigma in their stored order."""
    groups = sh.groups
    for x, t_vars in sigma.lower(sh.universe):
        groups = amgu_groups(groups, x, t_vars)
    return ShElement(sh.universe, groups)
