"""Stated piecewise formulas for the Picard groups, kept apart from the computation.

Each function returns cyclic orders (0 for a copy of Z) exactly as the
formula writes them; compare with computed groups via ``AbelianGroup``.
"""

from __future__ import annotations

from ..abelian import AbelianGroup


def stated_pic(k: int, g: int) -> tuple[int, ...]:
    if k == 3:
        if g == 2:
            return (10,)
        if g % 3:
            return (0,)
        return (0, 9) if g % 9 == 3 else (0, 3)
    if k in (4, 5):
        return (0, 10) if g == 2 else (0, 0)
    raise ValueError(f"no formula for k={k}")


def stated_pic_simple(k: int, g: int) -> tuple[int, ...]:
    if k == 3:
        if g == 2:
            return (2,)
        return (4 * g + 6, 3) if g % 2 else (8 * g + 12, 3)
    if k == 4:
        if g == 2:
            return (18, 2)
        return (8 * g + 20, 12) if g % 2 else (4 * g + 10, 12)
    if k == 5:
        if g == 2:
            return (44, 2)
        return (4 * g + 14, 12) if g % 2 else (8 * g + 28, 12)
    raise ValueError(f"no formula for k={k}")


def stated_group(k: int, g: int, simple: bool = False) -> AbelianGroup:
    orders = stated_pic_simple(k, g) if simple else stated_pic(k, g)
    return AbelianGroup.from_cyclic_orders(orders)
