from typing import Iterable, Tuple, Union

import attrs


def _as_entries(values: Union[str, Iterable[int]]) -> Tuple[int, ...]:
    if isinstance(values, str):
        # one-line notation "231"; only meaningful for n <= 9
        values = [int(c) for c in values]
    return tuple(int(v) for v in values)


def _check_entries(instance, attribute, value):
    if sorted(value) != list(range(1, len(value) + 1)):
        raise ValueError(f"{value} is not a permutation of 1..{len(value)}")


@attrs.define(frozen=True)
class Permutation:
    """A permutation of {1, ..., n} in one-line notation"""

    entries: Tuple[int, ...] = attrs.field(converter=_as_entries, validator=_check_entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return " ".join(map(str, self.entries)) if len(self) > 9 else "".join(map(str, self.entries))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))


def _stack_sort(entries: Tuple[int, ...]) -> Tuple[int, ...]:
    if not entries:
        return ()
    i = entries.index(max(entries))
    return _stack_sort(entries[:i]) + _stack_sort(entries[i + 1 :]) + (entries[i],)


def stack_sort(p: Permutation) -> Permutation:
    """West's stack-sorting map, s(L n R) = s(L) s(R) n with n the largest entry"""
    return Permutation(_stack_sort(p.entries))


def stack_sort_single_pass(p: Permutation) -> Permutation:
    """One pass through a stack: before pushing v, pop every entry smaller than v to the output"""
    stack, out = [], []
    for v in p.entries:
        while stack and stack[-1] < v:
            out.append(stack.pop())
        stack.append(v)
    out.extend(reversed(stack))
    return Permutation(out)


def descents(p: Permutation) -> int:
    return sum(a > b for a, b in zip(p.entries, p.entries[1:]))


def sorted_descent_statistic(p: Permutation) -> int:
    """des(s(p)) + 1"""
    return descents(stack_sort(p)) + 1
