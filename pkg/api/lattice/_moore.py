import typing as typ

import numpy as np

from ._image import DomainImage, _check_same_universe, top_mask
from ..shcore import ShElement
from ..universe import VarUniverse


def moore_masks(u: VarUniverse, masks: typ.Iterable[int]) -> np.ndarray:
    """Close a set of bit-vectors under intersection, the empty intersection SG included."""
    closed = np.array([top_mask(u)], dtype=np.uint64)
    for mask in masks:
        x = np.uint64(mask)
        i = np.searchsorted(closed, x)
        if i < len(closed) and closed[i] == x:
            continue
        # Meets of x with a closed family are closed under intersection too.
        closed = np.union1d(closed, closed & x)
    return closed


def moore(u: VarUniverse, elements: typ.Iterable[ShElement | int], label: str = None) -> DomainImage:
    """Moore completion: all intersections of subsets of the given elements.

    :param u: The universe of the elements.
    :param elements: The generators, as elements or bit-vectors.
    :param label: The label of the resulting image.
    :return: The smallest Moore family containing the generators.
    """
    masks = (e.to_mask() if isinstance(e, ShElement) else int(e) for e in elements)
    return DomainImage(u, moore_masks(u, masks), label=label, check=False)


def reduced_product(d1: DomainImage, d2: DomainImage) -> DomainImage:
    """The reduced product d1 ⊓ d2, whose image is the Moore completion of the union of both images.

    :raises UniverseMismatch: If the images have different universes.
    """
    _check_same_universe(d1, d2)
    u = d1.universe
    elements = np.union1d(d1.elements, d2.elements)
    return DomainImage(u, moore_masks(u, elements), label=f'({d1.label} * {d2.label})', check=False)
