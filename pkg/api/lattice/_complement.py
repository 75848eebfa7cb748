from ._image import DomainImage, _check_same_universe
from ._irreducibles import meet_irreducible_masks
from ._moore import moore
from .. import errors


def complement(reference: DomainImage, abstraction: DomainImage, method: str = 'covers',
               jobs: int = 1) -> DomainImage:
    """Weak relative pseudo-complement of an abstraction within a reference domain.

    It is the Moore completion of the meet-irreducibles of the reference that the abstraction lacks.

    :param reference: The domain to decompose.
    :param abstraction: The domain to remove, a sub-family of the reference.
    :param method: The method used to compute the meet-irreducibles of the reference.
    :param jobs: Number of threads for the meet-irreducibles scan.
    :return: The complement image.
    :raises UniverseMismatch: If the images have different universes.
    :raises NotASubdomain: If the abstraction is not included in the reference.
    """
    _check_same_universe(reference, abstraction)
    if not abstraction.issubset(reference):
        raise errors.NotASubdomain(f'{abstraction.label} is not included in {reference.label}')
    removed = abstraction.masks()
    kept = sorted(m for m in meet_irreducible_masks(reference, method, jobs) if m not in removed)
    return moore(reference.universe, kept, label=f'({reference.label} ~ {abstraction.label})')
