"""Pure-Python enumeration kernels.

Reference implementation of the two hot loops; the compiled extension in
``_speedups`` mirrors the exact semantics and output order, so results are
interchangeable. Kept free of package imports apart from the cap error.

Conventions shared by both backends:

* ``simple_cycles``: every directed simple cycle appears exactly once, as the
  rotation starting at its smallest node; discovery order is depth-first with
  ascending roots and ascending successors.
* ``disjoint_subsets`` / ``accumulate_condition``: subsets of pairwise
  node-disjoint cycles enumerated in lexicographic index order, the empty
  subset first. The cap counts every generated subset including the empty
  one.
"""

from __future__ import annotations

from math import gcd

from .errors import OrbitCapExceededError


def simple_cycles(succ: list[list[int]], cap: int) -> list[tuple[int, ...]]:
    """All simple directed cycles of the graph given by successor lists."""
    n = len(succ)
    ordered = [sorted(s) for s in succ]
    cycles: list[tuple[int, ...]] = []
    for root in range(n):
        # depth-first over paths root -> ... restricted to nodes >= root
        path = [root]
        on_path = [False] * n
        on_path[root] = True
        iters = [iter(ordered[root])]
        while iters:
            found = None
            for w in iters[-1]:
                if w == root:
                    if len(cycles) >= cap:
                        raise OrbitCapExceededError(
                            f"cycle enumeration exceeded the cap of {cap}"
                        )
                    cycles.append(tuple(path))
                elif w > root and not on_path[w]:
                    found = w
                    break
            if found is None:
                on_path[path.pop()] = False
                iters.pop()
            else:
                path.append(found)
                on_path[found] = True
                iters.append(iter(ordered[found]))
    return cycles


def disjoint_subsets(masks: list[int], cap: int) -> list[tuple[int, ...]]:
    """All subsets of pairwise disjoint masks, as index tuples."""
    out: list[tuple[int, ...]] = []
    n = len(masks)
    chosen: list[int] = []

    def walk(start: int, used: int) -> None:
        if len(out) >= cap:
            raise OrbitCapExceededError(
                f"pseudo-orbit enumeration exceeded the cap of {cap}"
            )
        out.append(tuple(chosen))
        for i in range(start, n):
            if masks[i] & used:
                continue
            chosen.append(i)
            walk(i + 1, used | masks[i])
            chosen.pop()

    walk(0, 0)
    return out


def accumulate_condition(
    masks: list[int],
    lengths: list[int],
    amp_num: list[int],
    amp_den: list[int],
    cap: int,
) -> dict[int, tuple[int, int]]:
    """Sum (-1)^m * prod(amplitudes) into a coefficient per total length.

    Same enumeration as ``disjoint_subsets`` without materializing subsets.
    Lengths are pre-scaled integers; amplitudes exact integer fractions.
    Returns {total_length: (num, den)} including the empty subset's
    contribution of +1 at length 0; exact zero sums are dropped.
    """
    n = len(masks)
    coeff_num: dict[int, int] = {}
    coeff_den: dict[int, int] = {}
    generated = 0

    def add(length: int, num: int, den: int) -> None:
        cn = coeff_num.get(length, 0)
        cd = coeff_den.get(length, 1)
        new_num = cn * den + num * cd
        new_den = cd * den
        if new_num == 0:
            coeff_num.pop(length, None)
            coeff_den.pop(length, None)
            return
        g = gcd(abs(new_num), new_den)
        coeff_num[length] = new_num // g
        coeff_den[length] = new_den // g

    def walk(start: int, used: int, length: int, num: int, den: int) -> None:
        nonlocal generated
        generated += 1
        if generated > cap:
            raise OrbitCapExceededError(
                f"pseudo-orbit enumeration exceeded the cap of {cap}"
            )
        add(length, num, den)
        for i in range(start, n):
            if masks[i] & used:
                continue
            nn = -num * amp_num[i]
            nd = den * amp_den[i]
            g = gcd(abs(nn), nd)
            walk(i + 1, used | masks[i], length + lengths[i], nn // g, nd // g)

    walk(0, 0, 0, 1, 1)
    return {l: (coeff_num[l], coeff_den[l]) for l in coeff_num}
