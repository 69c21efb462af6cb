"""Set families over a finite ground set and the convex geometry axioms.

Subsets of the ground set {1..n} are bitmasks (element i is bit i-1).
A ConvexGeometry is a validated family together with its inclusion poset,
cover relation, and the irreducible elements every dimension solver needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (AxiomViolation, GroundMismatch, NotMeetIrreducible,
                     ParamRange)
from .order import Poset, _bits, _popcount, poset_from_up_rows


def set_to_mask(elements: Iterable[int]) -> int:
    """1-based element list to bitmask."""
    m = 0
    for e in elements:
        if e < 1:
            raise ParamRange(f"elements are 1-based, got {e}")
        m |= 1 << (e - 1)
    return m


def mask_to_set(mask: int) -> tuple:
    """Bitmask to sorted 1-based element tuple."""
    return tuple(b + 1 for b in _bits(mask))


def set_label(mask: int, element_labels: Optional[Sequence[str]] = None) -> str:
    """Compact display form: elements concatenated, no braces or commas."""
    if mask == 0:
        return "∅"
    parts = [element_labels[b] if element_labels else str(b + 1)
             for b in _bits(mask)]
    sep = "" if all(len(p) == 1 for p in parts) else ","
    return sep.join(parts)


def _canonical(masks: Iterable[int]) -> tuple:
    return tuple(sorted(set(masks), key=lambda m: (_popcount(m), m)))


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated family of subsets of {1..ground_n}, canonically sorted by
    (cardinality, numeric value)."""

    ground_n: int
    masks: tuple

    @classmethod
    def from_masks(cls, ground_n: int, masks: Iterable[int]) -> "SetFamily":
        if ground_n < 1:
            raise ParamRange("ground set must be non-empty")
        masks = _canonical(masks)
        full = (1 << ground_n) - 1
        for m in masks:
            if m & ~full:
                raise ParamRange(f"set {bin(m)} leaves the ground set")
        return cls(ground_n, masks)

    @classmethod
    def from_sets(cls, ground_n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls.from_masks(ground_n, [set_to_mask(s) for s in sets])

    def __len__(self):
        return len(self.masks)

    @cached_property
    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.masks)}

    def __contains__(self, mask: int) -> bool:
        return mask in self.index

    def sets(self) -> list:
        return [mask_to_set(m) for m in self.masks]


def _inclusion_rows(masks: Sequence[int], ground_n: int) -> list:
    """up[i] = bitmask over family positions j with masks[i] subset of masks[j]."""
    m = len(masks)
    if ground_n <= 63 and m > 128:
        arr = np.array(masks, dtype=np.uint64)
        rows = []
        nbytes = (m + 7) // 8
        chunk = max(1, (1 << 22) // max(m, 1))
        for lo in range(0, m, chunk):
            hi = min(m, lo + chunk)
            sub = (arr[lo:hi, None] & ~arr[None, :]) == 0
            packed = np.packbits(sub, axis=1, bitorder="little")
            for r in range(hi - lo):
                rows.append(int.from_bytes(packed[r].tobytes(), "little"))
        return rows
    rows = []
    for a in masks:
        row = 0
        for j, b in enumerate(masks):
            if a & ~b == 0:
                row |= 1 << j
        rows.append(row)
    return rows


def _covers_graded(masks: Sequence[int]) -> list:
    """Cover pairs of the inclusion order assuming the family is graded by
    cardinality (true for validated geometries: covers add one element)."""
    by_size = {}
    for i, m in enumerate(masks):
        by_size.setdefault(_popcount(m), []).append(i)
    out = []
    for s, level in sorted(by_size.items()):
        above = by_size.get(s + 1, ())
        for i in level:
            mi = masks[i]
            for j in above:
                if mi & ~masks[j] == 0:
                    out.append((i, j))
    return out


@dataclass(frozen=True)
class ConvexGeometry:
    """A validated convex geometry: family plus inclusion poset and caches."""

    family: SetFamily
    poset: Poset
    meet_irr: tuple    # poset indices with exactly one upper cover
    join_irr: tuple    # poset indices with exactly one lower cover

    @property
    def ground_n(self) -> int:
        return self.family.ground_n

    @property
    def masks(self) -> tuple:
        return self.family.masks

    def member_index(self, mask: int) -> int:
        return self.family.index[mask]

    def _require_member(self, mask: int) -> None:
        if mask not in self.family.index:
            raise ParamRange(f"{mask_to_set(mask)} is not a member of the family")

    def meet(self, a: int, b: int) -> int:
        """Meet of two member masks: plain intersection."""
        self._require_member(a)
        self._require_member(b)
        return a & b

    def join(self, a: int, b: int) -> int:
        """Join of two member masks: least member containing their union."""
        self._require_member(a)
        self._require_member(b)
        union = a | b
        out = (1 << self.ground_n) - 1
        for c in self.masks:
            if union & ~c == 0:
                out &= c
        return out

    def upper_cover(self, i: int) -> int:
        """The unique poset index covering meet-irreducible i."""
        mask = self.poset.up_covers[i]
        if _popcount(mask) != 1:
            raise NotMeetIrreducible(f"member {i} has up-degree {_popcount(mask)}")
        return mask.bit_length() - 1


def validate_convex_geometry(family: SetFamily) -> ConvexGeometry:
    """Check the three axioms and build the inclusion poset.

    Raises AxiomViolation naming the first failing axiom with a witness in
    1-based set notation.
    """
    n = family.ground_n
    masks = family.masks
    full = (1 << n) - 1
    if 0 not in family:
        raise AxiomViolation("base", (), "empty set missing")
    if full not in family:
        raise AxiomViolation("base", mask_to_set(full), "ground set missing")
    _check_intersections(family)
    for a in masks:
        if a == full:
            continue
        if not any(not (a >> e) & 1 and (a | (1 << e)) in family
                   for e in range(n)):
            raise AxiomViolation("extension", mask_to_set(a))
    return _build_geometry(family)


def _check_intersections(family: SetFamily) -> None:
    masks = family.masks
    m = len(masks)
    if family.ground_n <= 63 and m > 128:
        arr = np.array(masks, dtype=np.uint64)
        sorted_arr = np.sort(arr)
        chunk = max(1, (1 << 22) // m)
        for lo in range(0, m, chunk):
            hi = min(m, lo + chunk)
            ands = arr[lo:hi, None] & arr[None, :]
            idx = np.searchsorted(sorted_arr, ands)
            ok = sorted_arr[np.minimum(idx, m - 1)] == ands
            if not ok.all():
                i, j = np.argwhere(~ok)[0]
                raise AxiomViolation(
                    "intersection",
                    (mask_to_set(masks[lo + int(i)]), mask_to_set(masks[int(j)])))
        return
    index = family.index
    for i, a in enumerate(masks):
        for b in masks[:i]:
            if a & b not in index:
                raise AxiomViolation("intersection", (mask_to_set(b), mask_to_set(a)))


def _build_geometry(family: SetFamily) -> ConvexGeometry:
    masks = family.masks
    labels = tuple(set_label(m) for m in masks)
    rows = _inclusion_rows(masks, family.ground_n)
    poset = poset_from_up_rows(rows, labels)
    poset.with_covers(_covers_graded(masks))
    ud = [_popcount(m) for m in poset.up_covers]
    dd = [_popcount(m) for m in poset.down_covers]
    meet_irr = tuple(i for i in range(len(masks)) if ud[i] == 1)
    join_irr = tuple(i for i in range(len(masks)) if dd[i] == 1)
    return ConvexGeometry(family, poset, meet_irr, join_irr)


def meet_irreducibles(G: ConvexGeometry) -> tuple:
    return G.meet_irr


def join_irreducibles(G: ConvexGeometry) -> tuple:
    return G.join_irr


def critical_pair_of_meet_irreducible(G: ConvexGeometry, b_index: int):
    """The pair (A, B) attached to meet-irreducible B.

    With Y the unique cover of B and {alpha} = Y - B, A is the intersection
    of all members containing alpha. Returns poset indices (a_index, b_index).
    When A and B are incomparable this is the unique critical pair with
    second coordinate B; the degenerate outcome A = Y (every member holding
    alpha already holds all of Y, as on every member of a chain) yields a
    comparable pair and no critical pair at all.
    """
    y = G.upper_cover(b_index)
    diff = G.masks[y] & ~G.masks[b_index]
    if _popcount(diff) != 1:
        raise AssertionError("graded cover should add exactly one element")
    a_mask = (1 << G.ground_n) - 1
    for c in G.masks:
        if c & diff:
            a_mask &= c
    return G.member_index(a_mask), b_index


def geometry_critical_pairs(G: ConvexGeometry) -> list:
    """All critical pairs of the inclusion poset via the meet-irreducible
    correspondence (far cheaper than the generic definition scan).

    Meet-irreducibles whose attached pair degenerates to a comparable pair
    are skipped; the rest biject onto the critical pairs.
    """
    out = []
    for b in G.meet_irr:
        a, bb = critical_pair_of_meet_irreducible(G, b)
        if G.poset.incomparable(a, bb):
            out.append((a, bb))
    return sorted(out)


def vc_dimension_shattering(family: SetFamily) -> int:
    """Exact VC dimension by shattering search, smallest size first.

    Trace sets are computed per candidate subset; the search stops at the
    first size with no shattered subset (traces of subsets of a shattered set
    are shattered, so the exit is sound).
    """
    from itertools import combinations
    n = family.ground_n
    masks = family.masks
    best = 0
    for size in range(1, n + 1):
        shattered = None
        want = 1 << size
        for cand in combinations(range(n), size):
            traces = set()
            for m in masks:
                tr = 0
                for i, e in enumerate(cand):
                    if (m >> e) & 1:
                        tr |= 1 << i
                traces.add(tr)
                if len(traces) == want:
                    break
            if len(traces) == want:
                shattered = cand
                break
        if shattered is None:
            break
        best = size
    return best


def check_boolean_property(P: Poset):
    """Every nonzero element y must sit atop a Boolean interval.

    With X the meet of the lower covers of y, the interval [X, y] has to be
    isomorphic to the cube with one coordinate per lower cover. Holds on all
    convex geometry posets; fails on non-meet-distributive lattices. Returns
    (True, None) or (False, witness_index).
    """
    for y in range(P.n):
        covs = list(_bits(P.down_covers[y]))
        m = len(covs)
        if m == 0:
            continue
        common = P.down[covs[0]]
        for c in covs[1:]:
            common &= P.down[c]
        maximal = [z for z in _bits(common) if not (P.up[z] & common & ~(1 << z))]
        if len(maximal) != 1:
            return False, y
        x = maximal[0]
        interval = list(_bits(P.up[x] & P.down[y]))
        if len(interval) != 1 << m:
            return False, y
        # signature: which of y's lower covers sit above z; a Boolean interval
        # is exactly one where signatures are all distinct and order-reversing
        sig = {}
        for z in interval:
            s = 0
            for i, c in enumerate(covs):
                if (P.up[z] >> c) & 1:
                    s |= 1 << i
            sig[z] = s
        if len(set(sig.values())) != 1 << m:
            return False, y
        for z in interval:
            for w in interval:
                if ((sig[z] | sig[w]) == sig[z]) != P.leq(z, w):
                    return False, y
    return True, None


def join_geometries(parts: Sequence[ConvexGeometry]) -> ConvexGeometry:
    """The join: all intersections picking one member from each part.

    Computed by iterated pairwise closure, which saturates quickly instead of
    walking the full product. The result is revalidated defensively.
    """
    if not parts:
        raise ParamRange("need at least one geometry")
    n = parts[0].ground_n
    for g in parts[1:]:
        if g.ground_n != n:
            raise GroundMismatch(f"ground sets differ: {n} vs {g.ground_n}")
    current = set(parts[0].masks)
    for g in parts[1:]:
        current = {a & b for a in current for b in g.masks}
    return validate_convex_geometry(SetFamily.from_masks(n, current))


@dataclass(frozen=True)
class ConvexRealizer:
    """Compatible orders whose linear geometries join back to the geometry."""
    perms: tuple   # tuples of 1-based elements


def linear_geometry_masks(perm: Sequence[int]) -> list:
    """Initial segments of a 1-based permutation, as masks (empty included)."""
    masks = [0]
    m = 0
    for e in perm:
        m |= 1 << (e - 1)
        masks.append(m)
    return masks


def verify_convex_realizer(G: ConvexGeometry, perms: Sequence[Sequence[int]]) -> bool:
    """True iff the joined initial-segment families equal the geometry exactly."""
    n = G.ground_n
    for p in perms:
        if sorted(p) != list(range(1, n + 1)):
            return False
    current = set(linear_geometry_masks(perms[0]))
    for p in perms[1:]:
        other = linear_geometry_masks(p)
        current = {a & b for a in current for b in other}
    return _canonical(current) == G.masks


def maximal_chains(G: ConvexGeometry) -> list:
    """Every maximal chain, reported as its compatible order (1-based)."""
    n = G.ground_n
    bottom = G.member_index(0)
    top = G.member_index((1 << n) - 1)
    out = []
    path = []

    def rec(i):
        if i == top:
            out.append(tuple(path))
            return
        for j in _bits(G.poset.up_covers[i]):
            added = G.masks[j] & ~G.masks[i]
            path.append(added.bit_length())  # single added element, 1-based
            rec(j)
            path.pop()

    rec(bottom)
    return out
