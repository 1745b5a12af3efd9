"""nopython kernels for bulk stack-sorting; every routine releases the GIL so callers can use threads"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def sorted_descents(perm, stack):
    """des(s(perm)) from one pass through a stack, counting output descents on the fly"""
    top = 0
    prev = -1
    des = 0
    for v in perm:
        while top > 0 and stack[top - 1] < v:
            top -= 1
            if prev > stack[top]:
                des += 1
            prev = stack[top]
        stack[top] = v
        top += 1
    while top > 0:
        top -= 1
        if prev > stack[top]:
            des += 1
        prev = stack[top]
    return des


@njit(cache=True, nogil=True)
def next_permutation(a):
    """Advance ``a`` in place to its lexicographic successor; False once ``a`` is the last permutation"""
    i = a.shape[0] - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = a.shape[0] - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1 :] = a[i + 1 :][::-1].copy()
    return True


@njit(cache=True, nogil=True)
def count_with_first(n, first, counts):
    """Add des(s(pi)) + 1 over all permutations of 1..n with pi_1 = first into ``counts``"""
    rest = np.empty(n - 1, dtype=np.int64)
    k = 0
    for v in range(1, n + 1):
        if v != first:
            rest[k] = v
            k += 1

    perm = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    perm[0] = first
    while True:
        perm[1:] = rest
        counts[sorted_descents(perm, stack) + 1] += 1
        if not next_permutation(rest):
            break


@njit(cache=True, nogil=True)
def count_samples(n, draws, counts):
    """Fisher-Yates with draws[r, k] uniform on [0, n - k), then tally des(s(pi)) + 1"""
    perm = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    for r in range(draws.shape[0]):
        for i in range(n):
            perm[i] = i + 1
        for k in range(n - 1):
            i = n - 1 - k
            j = draws[r, k]
            perm[i], perm[j] = perm[j], perm[i]
        counts[sorted_descents(perm, stack) + 1] += 1
