'''
Description: Sign kernel for products of Grassmann monomials.
A monomial xi_{i1}...xi_{ik} (i1 < ... < ik) is stored as the bitmask with bit (i-1)
set for each generator i.
'''
from functools import lru_cache
from typing import Tuple

import numpy as np

try:
    from GRASSMANN.Kernel.sign_cy import merge_sign_cy as _merge_sign_fast
except ImportError:  # extension not built
    _merge_sign_fast = None


def key_to_mask(key) -> int:
    mask = 0
    for i in key:
        mask |= 1 << (i - 1)
    return mask


def mask_to_key(mask: int) -> Tuple[int, ...]:
    key = []
    i = 1
    while mask:
        if mask & 1:
            key.append(i)
        mask >>= 1
        i += 1
    return tuple(key)


def merge_sign(a: int, b: int) -> int:
    '''
    Sign of xi_A * xi_B once rewritten as +-xi_{A u B}, 0 when A and B overlap.
    Counts the pairs (i in A, j in B) with i > j, ie. the inversions of the
    concatenated index sequence.
    '''
    if a & b:
        return 0
    count = 0
    a >>= 1
    while a:
        count += bin(a & b).count("1")
        a >>= 1
    return -1 if count & 1 else 1


@lru_cache(maxsize=None)
def product_table(num_generators: int):
    '''
    All non-vanishing monomial products for L generators as four int arrays
    (I, J, K, S): xi_I * xi_J = S * xi_K.
    '''
    sign = _merge_sign_fast or merge_sign
    size = 1 << num_generators
    rows = []
    for i in range(size):
        for j in range(size):
            s = sign(i, j)
            if s:
                rows.append((i, j, i | j, s))
    table = np.array(rows, dtype=np.int64).reshape(-1, 4)
    return table[:, 0], table[:, 1], table[:, 2], table[:, 3]
