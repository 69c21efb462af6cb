"""Builders for the named geometry families plus random and exhaustive
generators used by the theorem suite."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator, Sequence

from .errors import ParamRange
from .geometry import (ConvexGeometry, SetFamily, linear_geometry_masks,
                       validate_convex_geometry, _canonical)
from .order import _popcount


def linear_geometry(perm: Sequence[int]) -> ConvexGeometry:
    """Initial segments of a 1-based permutation: a chain with n+1 members."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ParamRange(f"not a permutation of 1..{n}: {perm!r}")
    fam = SetFamily.from_masks(n, linear_geometry_masks(perm))
    return validate_convex_geometry(fam)


def boolean_algebra(n: int) -> ConvexGeometry:
    """All subsets of {1..n}."""
    if n < 1:
        raise ParamRange("n must be >= 1")
    fam = SetFamily.from_masks(n, range(1 << n))
    return validate_convex_geometry(fam)


def pkn_member(mask: int, k: int) -> bool:
    """Membership rule: a set of size k+i-1 must contain the prefix {1..i-1}."""
    s = _popcount(mask)
    if s <= k:
        return True
    i = s - k + 1
    prefix = (1 << (i - 1)) - 1
    return mask & prefix == prefix

def _check_kn(k: int, n: int) -> None:
    if not 1 <= k <= n - 2:
        raise ParamRange(f"need 1 <= k <= n-2, got k={k}, n={n}")


def pkn(k: int, n: int) -> ConvexGeometry:
    """The prefix-forcing family on {1..n}: small sets are free, larger sets
    must contain an initial segment growing with their size.

    Members of size s > k are exactly prefix {1..s-k} union a k-subset of
    the remaining tail, so the family is generated combinatorially instead
    of filtering all 2^n subsets.
    """
    _check_kn(k, n)
    masks = []
    for s in range(k + 1):
        for c in combinations(range(n), s):
            masks.append(sum(1 << e for e in c))
    for s in range(k + 1, n + 1):
        i = s - k + 1
        prefix = (1 << (i - 1)) - 1
        for c in combinations(range(i - 1, n), k):
            masks.append(prefix | sum(1 << e for e in c))
    return validate_convex_geometry(SetFamily.from_masks(n, masks))


def jkn(k: int, n: int) -> SetFamily:
    """The meet-irreducible members of pkn(k, n), built directly.

    Sets have the shape {1..i-1} union B with every element of B above i,
    |B| <= k, and B forced to be the full tail {i+1..n} when |B| < k.
    """
    _check_kn(k, n)
    masks = set()
    for i in range(1, n + 1):
        prefix = (1 << (i - 1)) - 1
        tail = [j for j in range(i + 1, n + 1)]
        for b_size in range(k + 1):
            if b_size < k:
                if len(tail) == b_size:
                    masks.add(prefix | sum(1 << (j - 1) for j in tail))
            else:
                for bs in combinations(tail, b_size):
                    masks.add(prefix | sum(1 << (j - 1) for j in bs))
    return SetFamily.from_masks(n, masks)


def _staircase_mask(n: int, i: int, j: int, k: int) -> int:
    m = (1 << i) - 1
    m |= ((1 << j) - 1) << 2
    m |= ((1 << k) - 1) << (2 + n)
    return m


def qn_pn(n: int):
    """The dimension-3 separation pair on a three-block ground set.

    Ground set: a 2-element block plus two n-element blocks (2n+2 elements).
    Members are prefix staircases [i]|[j]|[k]. The full grid of staircases is
    the first geometry; the second keeps the upper block free but caps the
    row+column budget of the other layers at n, which pins the width of its
    meet-irreducibles to exactly n+1 while order dimension stays 3.
    """
    if n < 3:
        raise ParamRange("need n >= 3")
    ground = 2 + 2 * n
    labels = None
    q_masks = []
    p_masks = []
    for i in range(3):
        for j in range(n + 1):
            for k in range(n + 1):
                m = _staircase_mask(n, i, j, k)
                q_masks.append(m)
                if i == 2 or j + k <= n:
                    p_masks.append(m)
    qg = validate_convex_geometry(SetFamily.from_masks(ground, q_masks))
    pg = validate_convex_geometry(SetFamily.from_masks(ground, p_masks))
    return qg, pg


def qn_grid_realizer(n: int):
    """Three linear extensions of qn's inclusion order, each sorting the
    staircase triples lexicographically under a cyclic rotation of the
    coordinate priorities. Witnesses order dimension <= 3 for the grid."""
    triples = [(i, j, k) for i in range(3) for j in range(n + 1)
               for k in range(n + 1)]
    masks = _canonical([_staircase_mask(n, *t) for t in triples])
    pos = {_staircase_mask(n, *t): t for t in triples}
    exts = []
    for rot in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        order = sorted(range(len(masks)),
                       key=lambda x: tuple(pos[masks[x]][r] for r in rot))
        exts.append(tuple(order))
    return exts


def random_geometry(n: int, t: int, seed: int) -> ConvexGeometry:
    """Join of t uniformly random linear geometries; deterministic per seed."""
    if n < 1 or t < 1:
        raise ParamRange("need n >= 1 and t >= 1")
    rng = random.Random(seed)
    current = None
    for _ in range(t):
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        masks = linear_geometry_masks(perm)
        if current is None:
            current = set(masks)
        else:
            current = {a & b for a in current for b in masks}
    return validate_convex_geometry(SetFamily.from_masks(n, current))


def enumerate_geometries(n: int, allow_ground_5: bool = False) -> Iterator[ConvexGeometry]:
    """Every labeled convex geometry on {1..n}, exactly once.

    Families are grown one set at a time in canonical (size, value) order,
    keeping intersection closure and one-element accessibility as invariants;
    a state is emitted when it contains the ground set and passes the
    extension axiom. Hard cap at n=4; n=5 only behind the override flag
    (59k geometries, noticeably slower).
    """
    if n < 1 or n > 5 or (n == 5 and not allow_ground_5):
        raise ParamRange("enumeration supports 1 <= n <= 4 "
                         "(n=5 with allow_ground_5=True)")
    full = (1 << n) - 1
    key = lambda m: (_popcount(m), m)
    results = []

    def extension_holds(members: set) -> bool:
        for a in members:
            if a == full:
                continue
            if not any(not (a >> e) & 1 and (a | (1 << e)) in members
                       for e in range(n)):
                return False
        return True

    def candidates(fam: list, members: set, last: int):
        seen = set()
        for a in fam:
            for e in range(n):
                b = a | (1 << e)
                if b != a and b not in members and b not in seen and key(b) > key(last):
                    seen.add(b)
                    if all((b & c) in members for c in fam):
                        yield b

    def rec(fam: list, members: set):
        if full in members and extension_holds(members):
            results.append(tuple(fam))
        last = fam[-1]
        for b in sorted(candidates(fam, members, last), key=key):
            fam.append(b)
            members.add(b)
            rec(fam, members)
            members.discard(b)
            fam.pop()

    rec([0], {0})
    for masks in sorted(results):
        yield validate_convex_geometry(SetFamily.from_masks(n, masks))
