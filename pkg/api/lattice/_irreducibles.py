"""Cover relation, dual-atoms and meet-irreducible elements of domain images.

The top element SG is meet-irreducible (it is the meet of the empty set) but is not a dual-atom.
"""
from __future__ import annotations

import dataclasses
import functools
import math

import numpy as np

from ._image import DomainImage
from .. import errors, utils
from ..pipeline import Logger, run_parallel
from ..shcore import ShElement
from ..universe import VarUniverse

BRUTEFORCE_LIMIT = 10_000
METHODS = ('bruteforce', 'covers')

_logger = Logger('lattice')


def _strict_uppers(array: np.ndarray, x: np.uint64) -> np.ndarray:
    return array[((array & x) == x) & (array != x)]


def upper_covers(d: DomainImage, sh: ShElement) -> list[ShElement]:
    """The elements of d covering sh, in canonical order.

    :param d: The image.
    :param sh: An element of d.
    :return: The minimal elements of d strictly above sh.
    :raises SemanticError: If sh does not belong to d.
    """
    if sh not in d:
        raise errors.SemanticError(f'{sh} does not belong to {d.label}')
    uppers = sorted((int(y) for y in _strict_uppers(d.elements, np.uint64(sh.to_mask()))), key=utils.popcount)
    covers = []
    for y in uppers:
        # y is processed after every upper it strictly contains.
        if not any(y & c == c for c in covers):
            covers.append(y)
    return sorted((ShElement.from_mask(d.universe, c) for c in covers), key=lambda e: sorted(e))


def _has_single_cover(array: np.ndarray, popcounts: np.ndarray, x: np.uint64) -> bool:
    selected = ((array & x) == x) & (array != x)
    uppers = array[selected]
    if len(uppers) == 0:
        return False
    counts = popcounts[selected]
    lowest = uppers[counts == counts.min()]
    if len(lowest) > 1:
        return False
    # The single lowest upper is a cover; any upper not above it hides another one.
    c = lowest[0]
    return bool(((uppers & c) == c).all())


def _mi_by_covers(d: DomainImage, jobs: int) -> frozenset[int]:
    array = d.elements
    popcounts = utils.np_popcount(array)
    top = np.uint64(d.top)

    def scan(chunk: np.ndarray) -> list[int]:
        return [int(x) for x in chunk if x == top or _has_single_cover(array, popcounts, x)]

    chunk_size = max(1, math.ceil(len(array) / max(jobs, 1)))
    chunks = [array[i:i + chunk_size] for i in range(0, len(array), chunk_size)]
    _logger.debug(f'scanning covers of {len(array)} elements')
    return frozenset(m for part in run_parallel(scan, chunks, jobs) for m in part)


def _mi_by_bruteforce(d: DomainImage) -> frozenset[int]:
    if len(d) > BRUTEFORCE_LIMIT:
        raise errors.CapExceeded(
            f'bruteforce method is limited to {BRUTEFORCE_LIMIT} elements, {d.label} has {len(d)}')
    array = d.elements
    result = set()
    for x in array:
        uppers = _strict_uppers(array, x)
        if not (np.bitwise_and.outer(uppers, uppers) == x).any():
            result.add(int(x))
    return frozenset(result)


@functools.lru_cache(maxsize=32)
def meet_irreducible_masks(d: DomainImage, method: str = 'covers', jobs: int = 1) -> frozenset[int]:
    """Bit-vectors of the meet-irreducible elements of d, top included.

    :param d: The image.
    :param method: `covers` (exactly one upper cover) or `bruteforce` (no pair of strict uppers meets to x).
    :param jobs: Number of threads used by the covers method.
    :raises CapExceeded: If the bruteforce method is used on more than 10⁴ elements.
    :raises ParseError: If the method is unknown.
    """
    match method:
        case 'covers':
            return _mi_by_covers(d, jobs)
        case 'bruteforce':
            return _mi_by_bruteforce(d)
        case _:
            raise errors.ParseError(f'unknown method: {method!r}')


def meet_irreducibles(d: DomainImage, method: str = 'covers', jobs: int = 1) -> list[ShElement]:
    """The meet-irreducible elements of d in canonical order."""
    return _to_elements(d.universe, meet_irreducible_masks(d, method, jobs))


def dual_atom_masks(d: DomainImage) -> frozenset[int]:
    array = d.elements
    top = np.uint64(d.top)
    return frozenset(int(x) for x in array if x != top and len(_strict_uppers(array, x)) == 1)


def dual_atoms(d: DomainImage) -> list[ShElement]:
    """The elements of d covered by top only, in canonical order."""
    return _to_elements(d.universe, dual_atom_masks(d))


def _to_elements(u: VarUniverse, masks: frozenset[int]) -> list[ShElement]:
    return [ShElement.from_mask(u, m) for m in sorted(masks, key=lambda m: (utils.popcount(m), _key(m)))]


def _key(mask: int) -> list[tuple[int, int]]:
    return sorted(utils.group_key(b + 1) for b in utils.bits_of(mask))


@dataclasses.dataclass(frozen=True)
class MiCounts:
    """Cardinalities of the dual-atoms, of the set M_k and of the meet-irreducibles of TSD_k."""
    dual_atoms: int
    m: int
    mi: int

    def __str__(self):
        return f'dAtoms={self.dual_atoms} M={self.m} MI={self.mi}'


def _check_index(u: VarUniverse, k: int):
    if not (1 <= k <= u.n):
        raise errors.SemanticError(f'index {k} out of range [1, {u.n}]')


def formula_counts(n: int, k: int) -> MiCounts:
    """Closed-form cardinalities for TSD_k over n variables."""
    return MiCounts(
        dual_atoms=sum(math.comb(n, j) for j in range(1, k + 1)),
        m=math.comb(n, k) * (2 ** (n - k) - 1),
        mi=sum(math.comb(n, j) for j in range(k)) + math.comb(n, k) * 2 ** (n - k),
    )


def mi_formula_masks(u: VarUniverse, k: int) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Build the meet-irreducibles of TSD_k without enumerating the lattice.

    :return: A tuple (dual-atoms, M_k, all meet-irreducibles) of bit-vector sets.
    """
    _check_index(u, k)
    top = (1 << u.full) - 1
    groups = range(1, u.full + 1)
    atoms = frozenset(top & ~(1 << (s - 1)) for s in groups if utils.popcount(s) <= k)
    m_k = set()
    for t in groups:
        if utils.popcount(t) != k:
            continue
        for s in groups:
            if s != t and s & t == t:
                removed = sum(1 << (g - 1) for g in groups if g & t == t and not g & ~s)
                m_k.add(top & ~removed)
    m_k = frozenset(m_k)
    return atoms, m_k, atoms | m_k | {top}


def mi_formula(u: VarUniverse, k: int) -> tuple[list[ShElement], MiCounts]:
    """The meet-irreducibles of TSD_k, built from their closed-form description.

    They are SG, the elements SG∖{S} with #S ≤ k, and for each T ⊊ S with #T = k,
    the element SG∖{U | T ⊆ U ⊆ S}.

    :param u: The universe.
    :param k: The index of the dependency domain.
    :return: The elements in canonical order, and the cardinalities of the constructed sets.
    :raises SemanticError: If k is not in [1, n].
    """
    atoms, m_k, mi = mi_formula_masks(u, k)
    return _to_elements(u, mi), MiCounts(dual_atoms=len(atoms), m=len(m_k), mi=len(mi))


def counts_of(d: DomainImage, method: str = 'covers', jobs: int = 1) -> MiCounts:
    """Cardinalities measured on an enumerated image; M counts the meet-irreducibles other than top and dual-atoms."""
    mi = meet_irreducible_masks(d, method, jobs)
    atoms = dual_atom_masks(d)
    return MiCounts(dual_atoms=len(atoms), m=len(mi - atoms - {d.top}), mi=len(mi))
