"""Explicit finite lattices of SH elements.

Inside a `DomainImage`, an element of SH is a bit-vector of 2ⁿ-1 bits indexed by group pattern
(bit g-1 stands for group g), stored in a `numpy.uint64` array. The meet is bitwise AND.
"""
from __future__ import annotations

import functools
import typing as typ

import numpy as np

from .. import closures, errors, utils
from ..closures import ClosureId
from ..pipeline import Logger, run_parallel
from ..shcore import ShElement
from ..universe import VarUniverse

ENUMERATION_CAP = 4
# 2ⁿ-1 group bits must fit in a uint64.
MAX_IMAGE_VARS = 6
# Largest SH that is ever materialised, with or without --force.
MAX_ENUMERATED = 1 << 24
# Tuple-sharing images are powersets of the k-tuples.
_MAX_TUPLES = 20
# Above this size the Moore-family invariant is trusted instead of checked pairwise.
_CHECK_LIMIT = 1 << 12
_CHUNK_SIZE = 1 << 11

_logger = Logger('lattice')


def check_cap(u: VarUniverse, force: bool = False):
    """Check that images may be built for the given universe.

    :param u: The universe.
    :param force: Whether to lift the cap.
    :raises CapExceeded: If n exceeds the enumeration cap and `force` is false.
    """
    if u.n > ENUMERATION_CAP:
        if not force:
            raise errors.CapExceeded(
                f'building images for {u.n} variables exceeds the cap of {ENUMERATION_CAP}, use --force to lift it')
        _logger.warning(f'building an image for {u.n} variables')


def check_enumerable(u: VarUniverse, force: bool = False):
    """Check that SH can be enumerated for the given universe.

    :param u: The universe.
    :param force: Whether to lift the cap.
    :raises CapExceeded: If SH has more than `MAX_ENUMERATED` elements, or n exceeds the cap and `force` is false.
    """
    if 1 << u.full > MAX_ENUMERATED:
        raise errors.CapExceeded(f'SH has 2^{u.full} elements for {u.n} variables'
                                 ' and cannot be enumerated, even with --force')
    check_cap(u, force)


def top_mask(u: VarUniverse) -> int:
    return (1 << u.full) - 1


class DomainImage:
    """A Moore family of SH elements: closed under intersection and containing SG."""

    def __init__(self, universe: VarUniverse, elements: typ.Iterable[int] | np.ndarray, label: str = None,
                 check: bool = True):
        """Create a domain image.

        :param universe: The universe of the elements.
        :param elements: The elements as bit-vectors; duplicates are removed.
        :param label: A description of the domain.
        :param check: Whether to assert the Moore-family invariant.
        :raises InternalError: If the elements do not form a Moore family.
        :raises CapExceeded: If the universe has more than 6 variables.
        """
        if universe.n > MAX_IMAGE_VARS:
            raise errors.CapExceeded(f'domain images support at most {MAX_IMAGE_VARS} variables, got {universe.n}')
        self._universe = universe
        array = np.unique(np.fromiter((int(e) for e in elements), dtype=np.uint64)
                          if not isinstance(elements, np.ndarray) else elements.astype(np.uint64))
        array.setflags(write=False)
        self._elements = array
        self._label = label
        if check:
            self._check_moore()

    def _check_moore(self):
        top = np.uint64(top_mask(self._universe))
        if not self.contains(top):
            raise errors.InternalError(f'domain {self._label!r} does not contain SG')
        if len(self._elements) > _CHECK_LIMIT:
            return
        for e in self._elements:
            if not np.isin(self._elements & e, self._elements).all():
                raise errors.InternalError(f'domain {self._label!r} is not closed under intersection')

    @property
    def universe(self) -> VarUniverse:
        return self._universe

    @property
    def elements(self) -> np.ndarray:
        """The sorted, read-only array of element bit-vectors."""
        return self._elements

    @property
    def label(self) -> str | None:
        return self._label

    @property
    def top(self) -> int:
        return top_mask(self._universe)

    def relabel(self, label: str) -> DomainImage:
        return DomainImage(self._universe, self._elements, label=label, check=False)

    def contains(self, mask: int | np.uint64) -> bool:
        i = np.searchsorted(self._elements, np.uint64(mask))
        return bool(i < len(self._elements) and self._elements[i] == np.uint64(mask))

    def __contains__(self, sh: ShElement) -> bool:
        return sh.universe == self._universe and self.contains(sh.to_mask())

    def __len__(self):
        return len(self._elements)

    def __iter__(self) -> typ.Iterator[ShElement]:
        """Iterate over elements in canonical order."""
        for mask in self.canonical_masks():
            yield ShElement.from_mask(self._universe, mask)

    def __eq__(self, other):
        if not isinstance(other, DomainImage):
            return NotImplemented
        return self._universe == other._universe and np.array_equal(self._elements, other._elements)

    def __hash__(self):
        return hash((self._universe, self._elements.tobytes()))

    def issubset(self, other: DomainImage) -> bool:
        return bool(np.isin(self._elements, other._elements).all())

    def masks(self) -> frozenset[int]:
        return frozenset(int(e) for e in self._elements)

    def canonical_masks(self) -> list[int]:
        """Element bit-vectors sorted by number of groups, then by canonical group list."""
        return sorted((int(e) for e in self._elements), key=lambda m: (utils.popcount(m), _groups_key(m)))

    def filter(self, predicate: typ.Callable[[ShElement], bool], label: str = None) -> DomainImage:
        """Build the sub-image of the elements satisfying a predicate."""
        kept = [int(e) for e in self._elements if predicate(ShElement.from_mask(self._universe, int(e)))]
        return DomainImage(self._universe, kept, label=label)

    def __repr__(self):
        return f'DomainImage({self._label or "?"}, n={self._universe.n}, size={len(self)})'


def _groups_key(mask: int) -> list[tuple[int, int]]:
    return sorted(utils.group_key(b + 1) for b in utils.bits_of(mask))


def _check_same_universe(*images: DomainImage):
    first = images[0].universe
    for d in images[1:]:
        if d.universe != first:
            raise errors.UniverseMismatch(f'universes differ: {first} vs {d.universe}')


def enumerate_sh(u: VarUniverse, force: bool = False) -> DomainImage:
    """All 2^(2ⁿ-1) elements of SH.

    :raises CapExceeded: If n exceeds the enumeration cap.
    """
    check_enumerable(u, force)
    return DomainImage(u, np.arange(top_mask(u) + 1, dtype=np.uint64), label='sh', check=False)


def _apply_to_masks(u: VarUniverse, cid: ClosureId, masks: np.ndarray) -> np.ndarray:
    out = np.empty(len(masks), dtype=np.uint64)
    for i, mask in enumerate(masks):
        groups = frozenset(b + 1 for b in utils.bits_of(int(mask)))
        image = closures.apply_groups(cid, groups, u)
        out[i] = sum(1 << (g - 1) for g in image)
    return out


@functools.lru_cache(maxsize=64)
def _image_of(u: VarUniverse, cid: ClosureId, force: bool, jobs: int) -> DomainImage:
    if cid.kind == closures.ClosureKind.IDENTITY or (cid.kind == closures.ClosureKind.TSD and cid.k == u.n):
        return enumerate_sh(u, force).relabel(str(cid))
    if cid.kind == closures.ClosureKind.TOP:
        return DomainImage(u, [top_mask(u)], label=str(cid))
    if cid.kind == closures.ClosureKind.TS:
        # TS_k is isomorphic to the powerset of the k-tuples of VI.
        check_cap(u, force)
        tuples = list(utils.subsets_of_size(u.full, cid.k))
        if len(tuples) > _MAX_TUPLES:
            raise errors.CapExceeded(f'{cid} has 2^{len(tuples)} elements for {u.n} variables')
        sources = np.array([sum(1 << (tuples[i] - 1) for i in utils.bits_of(m)) for m in range(1 << len(tuples))],
                           dtype=np.uint64)
        return DomainImage(u, _apply_to_masks(u, cid, sources), label=str(cid))
    check_enumerable(u, force)
    everything = np.arange(top_mask(u) + 1, dtype=np.uint64)
    chunks = [everything[i:i + _CHUNK_SIZE] for i in range(0, len(everything), _CHUNK_SIZE)]
    _logger.debug(f'applying {cid} to {len(everything)} elements in {len(chunks)} chunks')
    parts = run_parallel(lambda chunk: _apply_to_masks(u, cid, chunk), chunks, jobs)
    return DomainImage(u, np.concatenate(parts), label=str(cid))


def image_of(u: VarUniverse, cid: ClosureId, force: bool = False, jobs: int = 1) -> DomainImage:
    """The set of fixpoints { ρ(sh) | sh ∈ SH } of a closure.

    :param u: The universe.
    :param cid: The closure.
    :param force: Whether to lift the enumeration cap.
    :param jobs: Number of threads used to apply the closure.
    :raises CapExceeded: If n exceeds the enumeration cap.
    """
    cid.check(u)
    if u.n > MAX_IMAGE_VARS:
        raise errors.CapExceeded(f'domain images support at most {MAX_IMAGE_VARS} variables, got {u.n}')
    return _image_of(u, cid, force, jobs)
