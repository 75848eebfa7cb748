"""This module defines various utility functions on bit-sets and CLI arguments."""
import itertools
import pathlib
import typing as typ

import numpy as np

from . import errors


def popcount(mask: int) -> int:
    """Count the set bits of a non-negative integer.

    :param mask: The integer.
    :return: The number of bits set to 1.
    """
    return bin(mask).count('1')


def bits_of(mask: int) -> list[int]:
    """Return the positions of the set bits of an integer, in ascending order.

    :param mask: The integer.
    :return: The list of bit positions.
    """
    positions = []
    i = 0
    while mask:
        if mask & 1:
            positions.append(i)
        mask >>= 1
        i += 1
    return positions


def subsets_of_size(mask: int, size: int) -> typ.Iterator[int]:
    """Iterate over the sub-masks of the given mask that have exactly `size` bits set.

    :param mask: The mask to take subsets of.
    :param size: The number of bits of each yielded subset.
    :return: An iterator over the sub-masks, in lexicographic order of bit positions.
    """
    for combination in itertools.combinations(bits_of(mask), size):
        yield sum(1 << i for i in combination)


def group_key(group: int) -> tuple[int, int]:
    """Sort key of sharing groups: cardinality first, then bit pattern."""
    return popcount(group), group


def np_popcount(array: np.ndarray) -> np.ndarray:
    """Count the set bits of each entry of an array of unsigned 64-bit integers.

    :param array: A 1-dimensional uint64 array.
    :return: An int array of the same length.
    """
    array = np.ascontiguousarray(array, dtype=np.uint64)
    if array.size == 0:
        return np.zeros(0, dtype=np.int64)
    return np.unpackbits(array.view(np.uint8)).reshape(-1, 64).sum(axis=1).astype(np.int64)


def load_argument(value: str) -> tuple[str, list[str] | None]:
    """Resolve a CLI value that may use the `@path` form.

    A file may start with a header line `vars: x, y, z`; it is stripped from the returned text.

    :param value: The raw CLI value.
    :return: A tuple (text, variable names from the header or None).
    :raises ParseError: If the file cannot be read.
    """
    if not value.startswith('@'):
        return value, None
    path = pathlib.Path(value[1:])
    try:
        text = path.read_text(encoding='utf8')
    except OSError as e:
        raise errors.ParseError(f'could not open file: {e}')
    names = None
    lines = text.splitlines()
    for i, line in enumerate(lines):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith('vars:'):
            names = [n.strip() for n in stripped[len('vars:'):].split(',') if n.strip()]
            text = '\n'.join(lines[i + 1:])
        break
    return text, names
