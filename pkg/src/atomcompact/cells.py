"""Orbit cells over a finite support.

A cell is a complete syntactic description of one orbit of tuples under
the automorphisms fixing a finite support.  For EQ atoms a cell records,
per coordinate, either a support constant or an equality block; block
values are pairwise distinct and distinct from every support atom.  For
DLO atoms a cell pins coordinates to support constants or to open
intervals between consecutive support atoms, together with a weak order
on the coordinates sharing an interval.

Cells over a common support are pairwise disjoint and tile the full
power of the atom set, which makes Boolean algebra on definable sets a
matter of list manipulation.  The single source of truth is
``cell_from_values``: the canonical cell of a concrete (or shadow)
tuple.  Membership, products and refinement are all derived from it.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .atoms import DLO, EQ
from .errors import ArityMismatch, SchemaError

CONST = "c"
BLOCK = "b"
INTERVAL = "i"


@dataclass(frozen=True)
class EqCell:
    """One orbit of EQ tuples: constants plus an equality partition."""

    arity: int
    assign: tuple  # per coordinate: ('c', atom) or ('b', block_index)

    def __post_init__(self):
        if len(self.assign) != self.arity:
            raise SchemaError("assign length does not match arity")
        seen = []
        for kind, val in self.assign:
            if kind == BLOCK:
                if val == len(seen):
                    seen.append(val)
                elif val > len(seen) or val < 0:
                    raise SchemaError("block indices must be canonical")
            elif kind != CONST:
                raise SchemaError(f"bad EQ assignment kind {kind!r}")

    @property
    def n_blocks(self) -> int:
        return 1 + max((v for k, v in self.assign if k == BLOCK), default=-1)

    def blocks(self):
        out = [[] for _ in range(self.n_blocks)]
        for i, (kind, val) in enumerate(self.assign):
            if kind == BLOCK:
                out[val].append(i)
        return [tuple(b) for b in out]

    def const_atoms(self):
        return {val for kind, val in self.assign if kind == CONST}

    def key(self):
        return (self.arity, self.assign)


@dataclass(frozen=True)
class DloCell:
    """One orbit of DLO tuples: constants, intervals, and a weak order."""

    arity: int
    assign: tuple  # per coordinate: ('c', Fraction) or ('i', gap_index)
    order: tuple  # per gap index: ordered partition of its coordinates

    def __post_init__(self):
        if len(self.assign) != self.arity:
            raise SchemaError("assign length does not match arity")
        per_gap = {}
        for i, (kind, val) in enumerate(self.assign):
            if kind == INTERVAL:
                per_gap.setdefault(val, set()).add(i)
            elif kind != CONST:
                raise SchemaError(f"bad DLO assignment kind {kind!r}")
        n_gaps = len(self.order)
        listed = {}
        for j, part in enumerate(self.order):
            coords = set()
            for blk in part:
                if not blk:
                    raise SchemaError("empty block in interval order")
                if tuple(sorted(blk)) != tuple(blk):
                    raise SchemaError("block coordinates must be sorted")
                coords.update(blk)
            if coords:
                listed[j] = coords
        for j, coords in per_gap.items():
            if j < 0 or j >= n_gaps:
                raise SchemaError("interval index out of range")
            if listed.get(j) != coords:
                raise SchemaError("interval order does not match assignment")
        for j, coords in listed.items():
            if per_gap.get(j) != coords:
                raise SchemaError("interval order mentions unassigned coords")

    def interval_blocks(self):
        """All interval blocks as (gap_index, coord_tuple), in value order."""
        out = []
        for j, part in enumerate(self.order):
            for blk in part:
                out.append((j, blk))
        return out

    def const_atoms(self):
        return {val for kind, val in self.assign if kind == CONST}

    def key(self):
        return (self.arity, self.assign, self.order)


def cell_key(cell):
    return cell.key()


# ---------------------------------------------------------------------------
# canonical read-back


def eq_cell_from_values(values, support) -> EqCell:
    """The canonical cell (over ``support``) containing a value tuple.

    Values outside the support are grouped into blocks by equality; they
    may be arbitrary hashable markers, which is how refinement and
    products rebuild cells symbolically.
    """
    support = set(support)
    assign = []
    block_of = {}
    for v in values:
        if v in support:
            assign.append((CONST, v))
        else:
            if v not in block_of:
                block_of[v] = len(block_of)
            assign.append((BLOCK, block_of[v]))
    return EqCell(len(values), tuple(assign))


def dlo_cell_from_values(values, support) -> DloCell:
    """The canonical DLO cell (over sorted ``support``) of a value tuple."""
    support = list(support)
    assign = []
    per_gap = {}
    for i, v in enumerate(values):
        pos = bisect_left(support, v)
        if pos < len(support) and support[pos] == v:
            assign.append((CONST, v))
        else:
            assign.append((INTERVAL, pos))
            per_gap.setdefault(pos, []).append((v, i))
    order = []
    for j in range(len(support) + 1):
        part = []
        if j in per_gap:
            groups = {}
            for v, i in per_gap[j]:
                groups.setdefault(v, []).append(i)
            for v in sorted(groups):
                part.append(tuple(sorted(groups[v])))
        order.append(tuple(part))
    return DloCell(len(values), tuple(assign), tuple(order))


def cell_from_values(theory, values, support):
    if theory == EQ:
        return eq_cell_from_values(values, support)
    return dlo_cell_from_values(values, support)


def cell_member(theory, cell, support, values) -> bool:
    if len(values) != cell.arity:
        raise ArityMismatch(
            f"tuple of length {len(values)} against cell of arity {cell.arity}"
        )
    return cell_from_values(theory, values, support) == cell


# ---------------------------------------------------------------------------
# representatives

_EQ_MARKER_BASE = 10**9


def eq_representative(cell: EqCell, support):
    """A concrete tuple in the cell, using fresh integers for blocks."""
    top = max([a for a in support if isinstance(a, int)], default=0)
    top = max(top, _EQ_MARKER_BASE)
    out = []
    for kind, val in cell.assign:
        out.append(val if kind == CONST else top + 1 + val)
    return tuple(out)


def dlo_gap_bounds(support, j):
    """The open interval (lo, hi) of gap ``j``; None marks an infinite end."""
    support = list(support)
    lo = support[j - 1] if j > 0 else None
    hi = support[j] if j < len(support) else None
    return lo, hi


def dlo_gap_points(support, j, count):
    """``count`` increasing rationals strictly inside gap ``j``."""
    lo, hi = dlo_gap_bounds(support, j)
    if count == 0:
        return []
    if lo is None and hi is None:
        return [Fraction(i) for i in range(count)]
    if lo is None:
        return [hi - count + i for i in range(count)]
    if hi is None:
        return [lo + 1 + i for i in range(count)]
    step = Fraction(hi - lo, count + 1)
    return [lo + step * (i + 1) for i in range(count)]


def dlo_representative(cell: DloCell, support):
    out = [None] * cell.arity
    for i, (kind, val) in enumerate(cell.assign):
        if kind == CONST:
            out[i] = val
    for j, part in enumerate(cell.order):
        points = dlo_gap_points(support, j, len(part))
        for blk, v in zip(part, points):
            for i in blk:
                out[i] = v
    return tuple(out)


def cell_representative(theory, cell, support):
    if theory == EQ:
        return eq_representative(cell, support)
    return dlo_representative(cell, support)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_eq_cells(arity, support):
    """All canonical EQ cells of the given arity over the support."""
    support = sorted(support)

    def rec(i, assign, n_blocks):
        if i == arity:
            yield EqCell(arity, tuple(assign))
            return
        for a in support:
            assign.append((CONST, a))
            yield from rec(i + 1, assign, n_blocks)
            assign.pop()
        for b in range(n_blocks + 1):
            assign.append((BLOCK, b))
            yield from rec(i + 1, assign, max(n_blocks, b + 1))
            assign.pop()

    yield from rec(0, [], 0)


def ordered_partitions(items):
    """All ordered partitions of ``items`` into nonempty blocks."""
    items = list(items)
    if not items:
        yield ()
        return
    rest = set(items)
    for size in range(1, len(items) + 1):
        for blk in itertools.combinations(items, size):
            if items[0] not in blk:
                continue
            remaining = sorted(rest - set(blk))
            for tail in ordered_partitions(remaining):
                yield (tuple(sorted(blk)),) + tail
    # note: requiring items[0] in the first block would bias the order;
    # instead enumerate every subset as the *least* block is wrong, so
    # fall through to the general case below.


def _ordered_partitions(items):
    items = list(items)
    if not items:
        yield ()
        return
    indices = list(range(len(items)))
    for size in range(1, len(items) + 1):
        for blk_idx in itertools.combinations(indices, size):
            blk = tuple(items[i] for i in blk_idx)
            remaining = [items[i] for i in indices if i not in blk_idx]
            for tail in _ordered_partitions(remaining):
                yield (blk,) + tail


def enumerate_dlo_cells(arity, support):
    """All canonical DLO cells of the given arity over the support."""
    support = sorted(support)
    n_gaps = len(support) + 1
    slots = [(CONST, a) for a in support] + [(INTERVAL, j) for j in range(n_gaps)]
    for assign in itertools.product(slots, repeat=arity):
        per_gap = {}
        for i, (kind, val) in enumerate(assign):
            if kind == INTERVAL:
                per_gap.setdefault(val, []).append(i)
        gap_choices = []
        for j in range(n_gaps):
            coords = per_gap.get(j, [])
            gap_choices.append(list(_ordered_partitions(coords)))
        for combo in itertools.product(*gap_choices):
            yield DloCell(arity, tuple(assign), tuple(combo))


def enumerate_cells(theory, arity, support):
    if theory == EQ:
        yield from enumerate_eq_cells(arity, support)
    else:
        yield from enumerate_dlo_cells(arity, support)


# ---------------------------------------------------------------------------
# refinement


def refine_eq_cell(cell: EqCell, old_support, new_support):
    """All cells over the larger support whose union is the given cell."""
    added = sorted(set(new_support) - set(old_support))
    n = cell.n_blocks
    results = []
    for k in range(0, min(n, len(added)) + 1):
        for blocks in itertools.combinations(range(n), k):
            for atoms in itertools.permutations(added, k):
                mapping = dict(zip(blocks, atoms))
                values = []
                for kind, val in cell.assign:
                    if kind == CONST:
                        values.append(val)
                    elif val in mapping:
                        values.append(mapping[val])
                    else:
                        values.append(("blk", val))
                results.append(eq_cell_from_values(values, new_support))
    return results


def _placements(n_blocks, n_points):
    """Weakly increasing maps of a block chain into alternating gap/point
    positions (2*n_points+1 of them), injective on point positions."""

    def rec(i, minpos, acc):
        if i == n_blocks:
            yield tuple(acc)
            return
        for pos in range(minpos, 2 * n_points + 1):
            point = pos % 2 == 1
            acc.append(pos)
            yield from rec(i + 1, pos + 1 if point else pos, acc)
            acc.pop()

    yield from rec(0, 0, [])


def refine_dlo_cell(cell: DloCell, old_support, new_support):
    old_support = sorted(old_support)
    new_support = sorted(new_support)
    added_per_gap = []
    for j in range(len(old_support) + 1):
        lo, hi = dlo_gap_bounds(old_support, j)
        added = [
            t
            for t in new_support
            if t not in old_support
            and (lo is None or t > lo)
            and (hi is None or t < hi)
        ]
        added_per_gap.append(sorted(added))

    gap_options = []  # per old gap: list of {old block index -> value or gap marker}
    for j, part in enumerate(cell.order):
        added = added_per_gap[j]
        lo, hi = dlo_gap_bounds(old_support, j)
        options = []
        for placement in _placements(len(part), len(added)):
            # positions: 0,2,4.. are sub-gaps, 1,3,.. are the added points
            sub_counts = {}
            for pos in placement:
                if pos % 2 == 0:
                    sub_counts[pos] = sub_counts.get(pos, 0) + 1
            sub_values = {}
            for pos, count in sub_counts.items():
                m = pos // 2
                sub_lo = lo if m == 0 else added[m - 1]
                sub_hi = hi if m == len(added) else added[m]
                bounds = [sub_lo] if sub_lo is not None else []
                bounds += [sub_hi] if sub_hi is not None else []
                pts = dlo_gap_points(sorted(bounds), 1 if sub_lo is not None else 0, count)
                if sub_lo is None and sub_hi is None:
                    pts = dlo_gap_points([], 0, count)
                elif sub_lo is None:
                    pts = dlo_gap_points([sub_hi], 0, count)
                elif sub_hi is None:
                    pts = dlo_gap_points([sub_lo], 1, count)
                else:
                    pts = dlo_gap_points([sub_lo, sub_hi], 1, count)
                sub_values[pos] = list(pts)
            mapping = {}
            for bidx, pos in enumerate(placement):
                if pos % 2 == 1:
                    mapping[bidx] = added[pos // 2]
                else:
                    mapping[bidx] = sub_values[pos].pop(0)
            options.append(mapping)
        gap_options.append(options)

    results = []
    for combo in itertools.product(*gap_options):
        values = [None] * cell.arity
        for i, (kind, val) in enumerate(cell.assign):
            if kind == CONST:
                values[i] = val
        for j, part in enumerate(cell.order):
            mapping = combo[j]
            for bidx, blk in enumerate(part):
                for i in blk:
                    values[i] = mapping[bidx]
        results.append(dlo_cell_from_values(values, new_support))
    return results


def refine_cell(theory, cell, old_support, new_support):
    if set(old_support) == set(new_support):
        return [cell]
    if theory == EQ:
        return refine_eq_cell(cell, old_support, new_support)
    return refine_dlo_cell(cell, old_support, new_support)


# ---------------------------------------------------------------------------
# products


def eq_product_cells(c1: EqCell, c2: EqCell, support):
    """All cells of the concatenated tuple compatible with both factors."""
    n1, n2 = c1.n_blocks, c2.n_blocks
    results = []
    for k in range(0, min(n1, n2) + 1):
        for left in itertools.combinations(range(n1), k):
            for right in itertools.permutations(range(n2), k):
                mapping = dict(zip(left, right))
                values = []
                for kind, val in c1.assign:
                    if kind == CONST:
                        values.append(val)
                    elif val in mapping:
                        values.append(("m", mapping[val]))
                    else:
                        values.append(("l", val))
                for kind, val in c2.assign:
                    if kind == CONST:
                        values.append(val)
                    elif val in mapping.values():
                        values.append(("m", val))
                    else:
                        values.append(("r", val))
                results.append(eq_cell_from_values(values, support))
    return results


def _chain_merges(left, right):
    """All interleavings of two chains, allowing one-to-one merges.

    Elements of the output are lists of ('l', i) / ('r', j) / ('m', i, j)
    entries in increasing value order.
    """
    if not left and not right:
        yield []
        return
    if left:
        for tail in _chain_merges(left[1:], right):
            yield [("l", left[0])] + tail
    if right:
        for tail in _chain_merges(left, right[1:]):
            yield [("r", right[0])] + tail
    if left and right:
        for tail in _chain_merges(left[1:], right[1:]):
            yield [("m", left[0], right[0])] + tail


def dlo_product_cells(c1: DloCell, c2: DloCell, support):
    support = sorted(support)
    n1 = c1.arity
    gap_plans = []
    for j in range(len(support) + 1):
        part1 = c1.order[j] if j < len(c1.order) else ()
        part2 = c2.order[j] if j < len(c2.order) else ()
        merges = list(_chain_merges(list(range(len(part1))), list(range(len(part2)))))
        gap_plans.append((part1, part2, merges))

    results = []
    for combo in itertools.product(*(range(len(m)) for _, _, m in gap_plans)):
        values = [None] * (c1.arity + c2.arity)
        for i, (kind, val) in enumerate(c1.assign):
            if kind == CONST:
                values[i] = val
        for i, (kind, val) in enumerate(c2.assign):
            if kind == CONST:
                values[n1 + i] = val
        ok = True
        for j, choice in enumerate(combo):
            part1, part2, merges = gap_plans[j]
            seq = merges[choice]
            points = dlo_gap_points(support, j, len(seq))
            for entry, v in zip(seq, points):
                if entry[0] in ("l", "m"):
                    for i in part1[entry[1]]:
                        values[i] = v
                if entry[0] == "r":
                    for i in part2[entry[1]]:
                        values[n1 + i] = v
                elif entry[0] == "m":
                    for i in part2[entry[2]]:
                        values[n1 + i] = v
        if ok:
            results.append(dlo_cell_from_values(values, support))
    return results


def product_cells(theory, c1, c2, support):
    if theory == EQ:
        return eq_product_cells(c1, c2, support)
    return dlo_product_cells(c1, c2, support)
