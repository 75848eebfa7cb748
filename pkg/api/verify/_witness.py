"""Distinguishing contexts for elements with different TSD_k closures.

Let S be a group in ρ(sh1) but not in ρ(sh2) (sides swapped if needed). Grounding every variable outside S
keeps only the groups included in S. If S has at most k variables, S itself is a tuple held on one side only.
Otherwise some T ⊂ S with fewer than k variables has the groups above it covering S on one side but not on
the other, and T ∪ {x}, for a variable x of S missed by the other side, is such a tuple.
"""
from __future__ import annotations

import dataclasses

from .. import closures, errors, shcore, terms, utils
from ..shcore import ShElement, SharingGroup
from ..terms import Substitution

SH1 = 'sh1'
SH2 = 'sh2'
DIRECT = 'direct'
TUPLE = 'tuple'


@dataclasses.dataclass(frozen=True)
class Witness:
    """A ground substitution after which ρ_TSj tells the two elements apart.

    `tuple` is the group of at most k variables found in ρ_TSh of one side only, h being its size;
    `j` is the smallest index that distinguishes, so j ≤ h.
    """
    sigma: Substitution
    j: int
    side: str
    group: SharingGroup
    case: str
    tuple: SharingGroup

    def to_json(self, sh: ShElement) -> dict:
        u = sh.universe
        return {
            'sigma': str(self.sigma),
            'j': self.j,
            'side': self.side,
            'group': u.names_of(self.group),
            'case': self.case,
            'tuple': u.names_of(self.tuple),
        }


def fresh_constant(names: tuple[str, ...]) -> str:
    """The first of c0, c1, … that is not a variable name."""
    i = 0
    while f'c{i}' in names:
        i += 1
    return f'c{i}'


def _distinguishes(sh1: ShElement, sh2: ShElement, sigma: Substitution, j: int) -> bool:
    # ρ_TSj is determined by the j-tuples.
    return closures.tuples_k(shcore.amgu(sh1, sigma), j) != closures.tuples_k(shcore.amgu(sh2, sigma), j)


def _cover(groups: frozenset[int], t: int) -> int:
    cover = 0
    for g in groups:
        if g & t == t:
            cover |= g
    return cover


def _split_tuple(s: int, held: frozenset[int], other: frozenset[int], k: int) -> int | None:
    for size in range(k):
        for t in utils.subsets_of_size(s, size):
            if _cover(held, t) == s and (missed := s & ~_cover(other, t)):
                return t | (missed & -missed)
    return None


def find_witness(sh1: ShElement, sh2: ShElement, k: int) -> Witness:
    """Build a context that distinguishes two elements with different ρ_TSDk.

    :param sh1: The first element.
    :param sh2: The second element.
    :param k: The index of the dependency domain.
    :return: The witness, re-checked by direct evaluation.
    :raises PreconditionFailed: If both elements have the same closure.
    :raises InternalError: If the construction fails or no j ≤ k distinguishes the elements.
    """
    u = sh1.universe
    if sh2.universe != u:
        raise errors.UniverseMismatch(f'universes differ: {u} vs {sh2.universe}')
    r1, r2 = closures.rho_tsd(sh1, k), closures.rho_tsd(sh2, k)
    if r1 == r2:
        raise errors.PreconditionFailed(f'{sh1} and {sh2} have the same tsd:{k} closure {r1}')
    side = SH1
    diff = r1.groups - r2.groups
    if not diff:
        side, diff = SH2, r2.groups - r1.groups
    group = min(diff, key=utils.group_key)
    grounded = u.names_of(u.full & ~group)
    sigma = terms.ground(grounded, fresh_constant(u.names))
    a1, a2 = shcore.amgu(sh1, sigma), shcore.amgu(sh2, sigma)
    held, other = (a1, a2) if side == SH1 else (a2, a1)

    if utils.popcount(group) <= k:
        case, tup = DIRECT, group
    else:
        case, tup = TUPLE, _split_tuple(group, held.groups, other.groups, k)
    if tup is None:
        raise errors.InternalError(f'no tuple of {u.format_group(group)} separates {sh1} and {sh2} with k={k}')
    h = utils.popcount(tup)
    if (h > k or tup not in closures.rho_ts(held, h).groups
            or tup in closures.rho_ts(other, h).groups):
        raise errors.InternalError(f'witness for {sh1} and {sh2} failed its re-check')

    for j in range(1, h + 1):
        if closures.rho_ts(a1, j) != closures.rho_ts(a2, j):
            if sigma.domain() != frozenset(grounded) or not _distinguishes(sh1, sh2, sigma, j):
                raise errors.InternalError(f'witness for {sh1} and {sh2} failed its re-check')
            return Witness(sigma=sigma, j=j, side=side, group=group, case=case, tuple=tup)
    raise errors.InternalError(f'no witness found for {sh1} and {sh2} with k={k}')
