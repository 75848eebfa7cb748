"""Sub-domains of SH defined by predicates, as they arise when complementing dependency domains.

Names:

- `sh_plus:<j>`: elements of SH containing every group of at most j variables;
  `sh_plus_def` and `sh_plus_psd` for j = 1 and j = 2.
- `tsd_plus:<k>:<j>`: elements of TSD_k containing every group of at most j variables; `psd_plus` is `tsd_plus:2:1`.
- `tsd_oplus:<k>`: elements of TSD_k containing VI; `def_oplus` and `psd_oplus` for k = 1 and k = 2.
- `psd_ddagger`: elements of PSD containing VI and every singleton.
- `sh_plus_def_oplus`: elements of `sh_plus_def` containing VI.
- `def_minus`: the complement of `psd_plus` in PSD.
"""
import re

import numpy as np

from ._complement import complement
from ._image import DomainImage, enumerate_sh, image_of
from .. import closures, errors, utils
from ..closures import ClosureId
from ..universe import VarUniverse

_INDEXED_NAMES_REGEX = re.compile(r'(?P<kind>sh_plus|tsd_plus|tsd_oplus):(?P<a>\d+)(?::(?P<b>\d+))?')
_ALIASES = {
    'sh_plus_def': 'sh_plus:1',
    'sh_plus_psd': 'sh_plus:2',
    'psd_plus': 'tsd_plus:2:1',
    'def_oplus': 'tsd_oplus:1',
    'psd_oplus': 'tsd_oplus:2',
}
SUBDOMAIN_NAMES = (*_ALIASES, 'psd_ddagger', 'sh_plus_def_oplus', 'def_minus', 'sh_plus:<j>', 'tsd_plus:<k>:<j>',
                   'tsd_oplus:<k>')


def _group_bit(group: int) -> int:
    return 1 << (group - 1)


def _small_groups(u: VarUniverse, j: int) -> int:
    if not (1 <= j <= u.n):
        raise errors.SemanticError(f'index {j} out of range [1, {u.n}]')
    return sum(_group_bit(g) for g in range(1, u.full + 1) if utils.popcount(g) <= j)


def _requiring(d: DomainImage, required: int, label: str) -> DomainImage:
    """Keep the elements of d that contain every group of the `required` bit-vector."""
    r = np.uint64(required)
    return DomainImage(d.universe, d.elements[(d.elements & r) == r], label=label)


def is_subdomain_name(name: str) -> bool:
    name = name.strip().lower()
    return (name in _ALIASES or name in ('psd_ddagger', 'sh_plus_def_oplus', 'def_minus')
            or _INDEXED_NAMES_REGEX.fullmatch(name) is not None)


def named_subdomain(u: VarUniverse, name: str, force: bool = False, jobs: int = 1) -> DomainImage:
    """Build a named sub-domain by filtering its parent image.

    :param u: The universe.
    :param name: The name of the sub-domain.
    :param force: Whether to lift the enumeration cap.
    :param jobs: Number of threads used to enumerate the parent image.
    :return: The image, labelled with the given name.
    :raises ParseError: If the name is unknown.
    :raises SemanticError: If an index is out of range.
    :raises CapExceeded: If n exceeds the enumeration cap.
    """
    label = name.strip().lower()
    canonical = _ALIASES.get(label, label)
    vi = _group_bit(u.full)
    singletons = sum(_group_bit(1 << i) for i in range(u.n))
    match canonical:
        case 'psd_ddagger':
            return _requiring(image_of(u, closures.PSD, force, jobs), vi | singletons, label)
        case 'sh_plus_def_oplus':
            return _requiring(enumerate_sh(u, force), vi | singletons, label)
        case 'def_minus':
            psd = image_of(u, closures.PSD, force, jobs)
            psd_plus = _requiring(psd, singletons, 'psd_plus')
            return complement(psd, psd_plus, jobs=jobs).relabel(label)
    match_ = _INDEXED_NAMES_REGEX.fullmatch(canonical)
    if match_ is None:
        raise errors.ParseError(f'unknown domain: {name!r}')
    a, b = int(match_.group('a')), match_.group('b')
    match match_.group('kind'), b:
        case 'sh_plus', None:
            return _requiring(enumerate_sh(u, force), _small_groups(u, a), label)
        case 'tsd_plus', str():
            tsd = image_of(u, ClosureId(closures.ClosureKind.TSD, a), force, jobs)
            return _requiring(tsd, _small_groups(u, int(b)), label)
        case 'tsd_oplus', None:
            return _requiring(image_of(u, ClosureId(closures.ClosureKind.TSD, a), force, jobs), vi, label)
        case _:
            raise errors.ParseError(f'unknown domain: {name!r}')


def image_by_name(u: VarUniverse, name: str, force: bool = False, jobs: int = 1) -> DomainImage:
    """Resolve a domain name to its image: either a closure name or a named sub-domain.

    :raises ParseError: If the name is unknown.
    """
    if is_subdomain_name(name):
        return named_subdomain(u, name, force, jobs)
    return image_of(u, closures.parse_closure(u, name), force, jobs)
