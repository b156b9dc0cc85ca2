"""Three families of maximal planes whose weight is 1 - 1/(n-1).

Each member is listed with its coordinates in the order written below;
coordinate permutations give further members.
"""
from __future__ import annotations

from cubecover.core import Hyperplane


def family_a(n: int) -> list[Hyperplane]:
    """x_1 + ... + x_{n-2} - k x_{n-1} - (n-2-k) x_n = 1, 1 <= k <= (n-2)//2."""
    return [Hyperplane([1] * (n - 2) + [-k, -(n - 2 - k)]) for k in range(1, (n - 2) // 2 + 1)]


def family_b(n: int) -> list[Hyperplane]:
    """x_1 + ... + x_{n-2} + 2 x_{n-1} - k x_n = 1, 1 <= k <= n-3."""
    return [Hyperplane([1] * (n - 2) + [2, -k]) for k in range(1, n - 2)]


def family_c(n: int) -> list[Hyperplane]:
    """x_1 + ... + x_{n-3} + 2 x_{n-2} - k x_{n-1} - (n-2-k) x_n = 1, 1 <= k <= (n-2)//2."""
    return [Hyperplane([1] * (n - 3) + [2, -k, -(n - 2 - k)]) for k in range(1, (n - 2) // 2 + 1)]


def all_families(n: int) -> dict[str, list[Hyperplane]]:
    return {"a": family_a(n), "b": family_b(n), "c": family_c(n)}
