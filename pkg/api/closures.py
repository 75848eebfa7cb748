"""Upper closure operators on SH: tuple-sharing (TS_k), tuple-sharing dependency (TSD_k) and their named instances.

Named aliases: Con = TS(1), PS = TS(2), Def = TSD(1), PSD = TSD(2), SH = identity.
Domain membership is always tested as ρ(sh) == sh.
"""
from __future__ import annotations

import dataclasses
import enum
import itertools
import re

from . import errors, shcore, utils
from .shcore import ShElement
from .universe import VarUniverse


class ClosureKind(enum.Enum):
    TS = 'ts'
    TSD = 'tsd'
    PS_PRIME = 'ps-prime'
    IDENTITY = 'sh'
    TOP = 'top'


@dataclasses.dataclass(frozen=True)
class ClosureId:
    kind: ClosureKind
    k: int = None

    def __post_init__(self):
        indexed = self.kind in (ClosureKind.TS, ClosureKind.TSD)
        if indexed and (self.k is None or self.k < 1):
            raise errors.SemanticError(f'closure {self.kind.value} requires a positive index')
        if not indexed and self.k is not None:
            raise errors.SemanticError(f'closure {self.kind.value} takes no index')

    def check(self, u: VarUniverse):
        """Check that this closure is defined on the given universe.

        :raises SemanticError: If the index exceeds the number of variables.
        """
        if self.k is not None and self.k > u.n:
            raise errors.SemanticError(f'index {self.k} out of range for a universe of {u.n} variables')
        if self.kind == ClosureKind.PS_PRIME and u.n < 2:
            raise errors.SemanticError('ps-prime requires at least 2 variables')

    def __str__(self):
        return _ALIASES_BY_ID.get(self) or (f'{self.kind.value}:{self.k}' if self.k else self.kind.value)


CON = ClosureId(ClosureKind.TS, 1)
PS = ClosureId(ClosureKind.TS, 2)
DEF = ClosureId(ClosureKind.TSD, 1)
PSD = ClosureId(ClosureKind.TSD, 2)
PS_PRIME = ClosureId(ClosureKind.PS_PRIME)
IDENTITY = ClosureId(ClosureKind.IDENTITY)
TOP = ClosureId(ClosureKind.TOP)

_ALIASES = {
    'con': CON,
    'ps': PS,
    'def': DEF,
    'psd': PSD,
    'ps-prime': PS_PRIME,
    'sh': IDENTITY,
    'top': TOP,
}
_ALIASES_BY_ID = {v: k for k, v in _ALIASES.items()}
_INDEXED_REGEX = re.compile(r'(?P<kind>tsd?):(?P<k>\d+)')


def parse_closure(u: VarUniverse, name: str) -> ClosureId:
    """Resolve a closure name: `con`, `ps`, `ts:<k>`, `def`, `psd`, `tsd:<k>`, `ps-prime`, `sh` or `top`.

    :raises ParseError: If the name is unknown.
    :raises SemanticError: If the closure is not defined for the universe.
    """
    name = name.strip().lower()
    if name in _ALIASES:
        cid = _ALIASES[name]
    elif match := _INDEXED_REGEX.fullmatch(name):
        cid = ClosureId(ClosureKind(match.group('kind')), int(match.group('k')))
    else:
        raise errors.ParseError(f'unknown closure: {name!r}')
    cid.check(u)
    return cid


def _check_k(u: VarUniverse, k: int):
    if not (1 <= k <= u.n):
        raise errors.SemanticError(f'index {k} out of range [1, {u.n}]')


def _tuples(groups: frozenset[int], k: int) -> frozenset[int]:
    result = set()
    for group in groups:
        if utils.popcount(group) >= k:
            result.update(utils.subsets_of_size(group, k))
    return frozenset(result)


def tuples_k(sh: ShElement, k: int) -> frozenset[int]:
    """The k-element subsets of the groups of sh.

    :raises SemanticError: If k is not in [1, n].
    """
    _check_k(sh.universe, k)
    return _tuples(sh.groups, k)


def pairs(sh: ShElement) -> frozenset[int]:
    return tuples_k(sh, 2)


def _rho_ts(groups: frozenset[int], k: int, n: int) -> frozenset[int]:
    result = set()
    # Groups with fewer than k variables have no k-tuples.
    for size in range(1, k):
        result.update(sum(1 << i for i in c) for c in itertools.combinations(range(n), size))
    level = set(_tuples(groups, k))
    while level:
        result |= level
        # A group of size m+1 > k has all its k-tuples allowed iff each of its m-subsets has.
        candidates = {g | (1 << i) for g in level for i in range(n) if not g >> i & 1}
        level = {c for c in candidates if all((c & ~(1 << i)) in level for i in utils.bits_of(c))}
    return frozenset(result)


def rho_ts(sh: ShElement, k: int) -> ShElement:
    """Tuple-sharing closure: the groups all of whose k-tuples are k-tuples of sh."""
    u = sh.universe
    _check_k(u, k)
    return ShElement(u, _rho_ts(sh.groups, k, u.n))


def _rho_tsd(groups: frozenset[int], k: int) -> frozenset[int]:
    result = set()
    # The case T = ∅ restricts candidates to unions of groups of sh.
    for s in shcore.star_groups(groups):
        inside = [g for g in groups if not g & ~s]
        ok = True
        for size in range(k):
            for t in utils.subsets_of_size(s, size):
                covered = 0
                for g in inside:
                    if g & t == t:
                        covered |= g
                if covered != s:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            result.add(s)
    return frozenset(result)


def rho_tsd(sh: ShElement, k: int) -> ShElement:
    """Tuple-sharing dependency closure.

    S belongs to the result iff for every T ⊆ S with #T < k (T = ∅ included),
    S is the union of the groups U of sh with T ⊆ U ⊆ S.
    """
    u = sh.universe
    _check_k(u, k)
    if k == u.n:
        return sh
    return ShElement(u, _rho_tsd(sh.groups, k))


def rho_ps_prime(sh: ShElement) -> ShElement:
    """ρ_PS(sh) without the group VI, unless VI already belongs to sh."""
    u = sh.universe
    result = rho_ts(sh, 2)
    if u.full in sh:
        return result
    return ShElement(u, result.groups - {u.full})


def apply_groups(cid: ClosureId, groups: frozenset[int], u: VarUniverse) -> frozenset[int]:
    """Apply a closure on raw groups. The closure must have been checked against the universe."""
    match cid.kind:
        case ClosureKind.TS:
            return _rho_ts(groups, cid.k, u.n)
        case ClosureKind.TSD:
            return groups if cid.k == u.n else _rho_tsd(groups, cid.k)
        case ClosureKind.PS_PRIME:
            result = _rho_ts(groups, 2, u.n)
            return result if u.full in groups else result - {u.full}
        case ClosureKind.IDENTITY:
            return groups
        case ClosureKind.TOP:
            return frozenset(range(1, u.full + 1))


def apply(cid: ClosureId, sh: ShElement) -> ShElement:
    """Apply the closure identified by `cid` to sh."""
    cid.check(sh.universe)
    return ShElement(sh.universe, apply_groups(cid, sh.groups, sh.universe))


def is_member(cid: ClosureId, sh: ShElement) -> bool:
    """Tell whether sh is a fixpoint of the closure, i.e. belongs to its domain."""
    return apply(cid, sh) == sh


def ground_equiv_classes(sh: ShElement) -> list[frozenset[str]]:
    """Partition VI so that x ~ y iff rel({x}, sh) = rel({y}, sh).

    Classes are ordered by their first variable.
    """
    u = sh.universe
    classes: dict[frozenset[int], list[str]] = {}
    for i, name in enumerate(u.names):
        classes.setdefault(shcore.rel_groups(1 << i, sh.groups), []).append(name)
    return [frozenset(names) for names in classes.values()]
