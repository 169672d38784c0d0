"""Finite G-sets with explicit actions.

A GSet stores one image row per group element (aligned with the group's
canonical element order), so every operation is a table computation.  The
composition convention is the left-action one fixed in perm.py:
action(gh, x) = action(g, action(h, x)).

Canonical forms are Burnside-style: the multiset of orbit stabilizer
conjugacy classes, always cross-checked against fixed-point counts
(the mark vector).  Two G-sets are isomorphic iff their canonical forms
are equal.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import reduce

from .config import DEFAULT_LIMITS, Limits
from .errors import (EnumerationCapExceeded, GroupMismatch, MarkMismatch,
                     SubgroupMismatch)
from .groups import (PermGroup, SubgroupHandle, _lattice, _tables, as_group,
                     element_index, left_coset_transversal, rebase,
                     require_subgroup, right_coset_transversal,
                     subgroup_from_elements, trivial_subgroup)
from .perm import Perm, compose, format_perm, inverse


class GSet:
    """A finite set with explicit G-action."""

    __slots__ = ("group", "points", "rows", "_point_index")

    def __init__(self, group: PermGroup, points: tuple[str, ...],
                 rows: tuple[tuple[int, ...], ...], validate: bool = False):
        self.group = group
        self.points = points
        self.rows = rows
        self._point_index = None
        if validate:
            self._validate()

    def _validate(self) -> None:
        n = len(self.points)
        if len(self.rows) != self.group.order:
            raise GroupMismatch("action table size differs from group order")
        ident = element_index(self.group, self.group.identity)
        if self.rows[ident] != tuple(range(n)):
            raise MarkMismatch("identity element does not act trivially")
        for row in self.rows:
            if sorted(row) != list(range(n)):
                raise MarkMismatch("an element row is not a bijection")
        t = _tables(self.group)
        gen_idx = [t.index[p] for p in self.group.generators]
        for gi in gen_idx:
            grow = self.rows[gi]
            for hi, hrow in enumerate(self.rows):
                expected = self.rows[t.mul(gi, hi)]
                if tuple(grow[x] for x in hrow) != expected:
                    raise MarkMismatch(
                        "action is not compatible with composition")

    @property
    def size(self) -> int:
        return len(self.points)

    def point_index(self, label: str) -> int:
        if self._point_index is None:
            self._point_index = {p: i for i, p in enumerate(self.points)}
        return self._point_index[label]

    def act(self, g: Perm, label: str) -> str:
        row = self.rows[element_index(self.group, g)]
        return self.points[row[self.point_index(label)]]

    def __repr__(self) -> str:
        return f"GSet({self.group.id}, {self.size} points)"


@dataclass(frozen=True)
class GSetIsoClass:
    """Multiset of orbit stabilizer classes; a complete isomorphism
    invariant for finite G-sets."""
    group_id: str
    orbits: tuple[tuple[str, int], ...]  # (stabilizer class id, multiplicity)

    def as_dict(self) -> dict[str, int]:
        return dict(self.orbits)

    def __str__(self) -> str:
        inner = ", ".join(f"[G/{cid}]:{m}" for cid, m in self.orbits)
        return "{" + inner + "}"


def iso_class_sum(group_id: str,
                  parts: list[GSetIsoClass]) -> GSetIsoClass:
    total: Counter = Counter()
    for part in parts:
        if part.group_id != group_id:
            raise GroupMismatch("iso classes over different groups")
        total.update(dict(part.orbits))
    ordered = tuple(sorted(total.items(), key=_class_sort_key))
    return GSetIsoClass(group_id=group_id, orbits=ordered)


def _class_sort_key(item: tuple[str, int]) -> tuple:
    cid = item[0]
    order, idx = cid[1:].split(".")
    return (int(order), int(idx))


# ---------------------------------------------------------------------------
# construction

def gset_from_generator_rows(group: PermGroup, points: tuple[str, ...],
                             gen_rows: list[tuple[int, ...]]) -> GSet:
    """Extend generator image rows to all elements along the Cayley graph.
    The result satisfies the action axioms by construction."""
    t = _tables(group)
    n_pts = len(points)
    ident = t.index[group.identity]
    rows: list = [None] * group.order
    rows[ident] = tuple(range(n_pts))
    gen_idx = [t.index[p] for p in group.generators]
    for grow in gen_rows:
        if sorted(grow) != list(range(n_pts)):
            raise MarkMismatch("generator row is not a bijection")
    frontier = [ident]
    while frontier:
        new = []
        for hi in frontier:
            hrow = rows[hi]
            for gi, grow in zip(gen_idx, gen_rows):
                pi = t.mul(gi, hi)
                if rows[pi] is None:
                    rows[pi] = tuple(grow[x] for x in hrow)
                    new.append(pi)
        frontier = new
    assert all(r is not None for r in rows)
    return GSet(group, points, tuple(rows))


def gset_from_action_table(group: PermGroup, points: list[str],
                           action: dict[str, dict[str, str]],
                           validate: bool = True) -> GSet:
    """Build from the JSON form {element_cycles: {point: point}}."""
    pts = tuple(points)
    index = {p: i for i, p in enumerate(pts)}
    rows = []
    for elem in group.elements:
        key = format_perm(elem)
        try:
            mapping = action[key]
            rows.append(tuple(index[mapping[p]] for p in pts))
        except KeyError as exc:
            raise GroupMismatch(f"action table incomplete at {exc}")
    return GSet(group, pts, tuple(rows), validate=validate)


def gset_to_json(x: GSet) -> dict:
    return {
        "group_id": x.group.id,
        "points": list(x.points),
        "action": {format_perm(e): {x.points[p]: x.points[row[p]]
                                    for p in range(x.size)}
                   for e, row in zip(x.group.elements, x.rows)},
    }


def trivial_gset(group: PermGroup, n: int, tag: str = "t") -> GSet:
    points = tuple(f"{tag}{i + 1}" for i in range(n))
    ident = tuple(range(n))
    return GSet(group, points, tuple(ident for _ in group.elements))


def coset_gset(group: PermGroup, h: SubgroupHandle) -> GSet:
    """G/H with left translation action."""
    require_subgroup(h, group)
    h = rebase(h, group)
    reps = left_coset_transversal(group, h)
    t = _tables(group)
    h_idx = [t.index[p] for p in h.elements]
    coset_of = [None] * group.order
    for i, rep in enumerate(reps):
        ri = t.index[rep]
        for hi in h_idx:
            coset_of[t.mul(ri, hi)] = i
    points = tuple(f"c[{format_perm(rep)}]" for rep in reps)
    gen_rows = []
    for g in group.generators:
        gi = t.index[g]
        gen_rows.append(tuple(coset_of[t.mul(gi, t.index[rep])]
                              for rep in reps))
    return gset_from_generator_rows(group, points, gen_rows)


def regular_gset(group: PermGroup) -> GSet:
    return coset_gset(group, trivial_subgroup(group))


# ---------------------------------------------------------------------------
# basic operations

def orbit_partition(x: GSet) -> list[list[int]]:
    """Point indices grouped into orbits, ordered by minimal point label."""
    gen_rows = [x.rows[element_index(x.group, g)] for g in x.group.generators]
    seen = [False] * x.size
    orbits = []
    for start in range(x.size):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            p = frontier.pop()
            for row in gen_rows:
                q = row[p]
                if not seen[q]:
                    seen[q] = True
                    orbit.append(q)
                    frontier.append(q)
        orbits.append(sorted(orbit))
    orbits.sort(key=lambda orb: min(x.points[p] for p in orb))
    return orbits


def subset_gset(x: GSet, indices: list[int]) -> GSet:
    """The G-subset on the given points; they must be action-stable."""
    index_map = {p: i for i, p in enumerate(indices)}
    rows = []
    for row in x.rows:
        try:
            rows.append(tuple(index_map[row[p]] for p in indices))
        except KeyError:
            raise GroupMismatch("point subset is not stable under the action")
    return GSet(x.group, tuple(x.points[p] for p in indices), tuple(rows))


def orbits(x: GSet) -> list[GSet]:
    return [subset_gset(x, orb) for orb in orbit_partition(x)]


def combine(kind: str, a: GSet, b: GSet) -> GSet:
    """disjoint_union or product (diagonal action) of two G-sets."""
    if a.group != b.group:
        raise GroupMismatch(
            f"cannot combine G-sets over {a.group.id} and {b.group.id}")
    if kind == "disjoint_union":
        points = tuple(f"u0:{p}" for p in a.points) + \
            tuple(f"u1:{p}" for p in b.points)
        off = a.size
        rows = tuple(tuple(ra) + tuple(off + v for v in rb)
                     for ra, rb in zip(a.rows, b.rows))
        return GSet(a.group, points, rows)
    if kind == "product":
        points = tuple(f"({p},{q})" for p in a.points for q in b.points)
        nb = b.size
        rows = tuple(
            tuple(ra[p] * nb + rb[q]
                  for p in range(a.size) for q in range(b.size))
            for ra, rb in zip(a.rows, b.rows))
        return GSet(a.group, points, rows)
    raise GroupMismatch(f"unknown combine kind {kind!r}")


def disjoint_union_many(xs: list[GSet]) -> tuple[GSet, list[int]]:
    """Union of several G-sets; returns (union, component offsets)."""
    if not xs:
        raise GroupMismatch("need at least one G-set")
    group = xs[0].group
    offsets = []
    points: list[str] = []
    total = 0
    for i, x in enumerate(xs):
        if x.group != group:
            raise GroupMismatch("disjoint union over different groups")
        offsets.append(total)
        points.extend(f"u{i}:{p}" for p in x.points)
        total += x.size
    rows = []
    for ei in range(group.order):
        row: list[int] = []
        for off, x in zip(offsets, xs):
            row.extend(off + v for v in x.rows[ei])
        rows.append(tuple(row))
    return GSet(group, tuple(points), tuple(rows)), offsets


def product_many(xs: list[GSet]) -> GSet:
    return reduce(lambda a, b: combine("product", a, b), xs)


def restrict(x: GSet, k: SubgroupHandle) -> GSet:
    """Same points, action restricted to the subgroup."""
    require_subgroup(k, x.group)
    sub = as_group(rebase(k, x.group))
    if sub is x.group:
        return x
    rows = tuple(x.rows[element_index(x.group, e)] for e in sub.elements)
    return GSet(sub, x.points, rows)


def fixed_points(x: GSet, k: SubgroupHandle) -> tuple[str, ...]:
    """Points fixed by every element of the subgroup."""
    require_subgroup(k, x.group)
    gen_rows = [x.rows[element_index(x.group, g)] for g in k.generators]
    return tuple(x.points[p] for p in range(x.size)
                 if all(row[p] == p for row in gen_rows))


# ---------------------------------------------------------------------------
# induction and coinduction

def _require_plain_subgroup(sub: PermGroup, group: PermGroup) -> SubgroupHandle:
    if sub.degree != group.degree or \
            not frozenset(sub.elements) <= frozenset(group.elements):
        raise SubgroupMismatch(
            f"{sub.id} is not a subgroup of {group.id}")
    return subgroup_from_elements(group, frozenset(sub.elements))


def induce(x: GSet, group: PermGroup) -> GSet:
    """G x_K X: pairs (coset representative, point) with the translated
    action; |result| = [G:K] |X|."""
    k = _require_plain_subgroup(x.group, group)
    reps = left_coset_transversal(group, k)
    t = _tables(group)
    k_idx = [t.index[p] for p in k.elements]
    coset_of = [None] * group.order
    for i, rep in enumerate(reps):
        ri = t.index[rep]
        for hi in k_idx:
            coset_of[t.mul(ri, hi)] = i
    rep_idx = [t.index[rep] for rep in reps]
    rep_inv = [t.inv[ri] for ri in rep_idx]
    nx = x.size
    points = tuple(f"({format_perm(rep)},{p})"
                   for rep in reps for p in x.points)
    gen_rows = []
    for g in group.generators:
        gi = t.index[g]
        row: list[int] = []
        for i in range(len(reps)):
            gri = t.mul(gi, rep_idx[i])
            j = coset_of[gri]
            k_elt = group.elements[t.mul(rep_inv[j], gri)]
            k_row = x.rows[element_index(x.group, k_elt)]
            row.extend(j * nx + k_row[p] for p in range(nx))
        gen_rows.append(tuple(row))
    return gset_from_generator_rows(group, points, gen_rows)


def coinduce(x: GSet, group: PermGroup,
             limits: Limits = DEFAULT_LIMITS) -> GSet:
    """Map_H(G, X): H-equivariant functions G -> X, encoded by their values
    on the minimal right-coset transversal of H\\G; G acts by right
    translation of the argument.  |result| = |X|^[G:H]."""
    h = _require_plain_subgroup(x.group, group)
    reps = right_coset_transversal(group, h)
    m = len(reps)
    count = x.size ** m
    if count > limits.enumeration:
        raise EnumerationCapExceeded(
            f"coinduction needs {count} points, cap is {limits.enumeration}")
    t = _tables(group)
    h_idx = [t.index[p] for p in h.elements]
    coset_of = [None] * group.order
    rep_idx = [t.index[rep] for rep in reps]
    rep_inv = [t.inv[ri] for ri in rep_idx]
    for a, ri in enumerate(rep_idx):
        for hi in h_idx:
            coset_of[t.mul(hi, ri)] = a
    funcs = list(itertools.product(range(x.size), repeat=m))
    func_index = {f: i for i, f in enumerate(funcs)}
    points = tuple("fn:[" + ",".join(x.points[v] for v in f) + "]"
                   for f in funcs)
    gen_rows = []
    for g in group.generators:
        gi = t.index[g]
        # (g.f)(t_a) = f(t_a g) = h . f(t_b)  where t_a g = h t_b
        moves = []
        for a in range(m):
            tg = t.mul(rep_idx[a], gi)
            b = coset_of[tg]
            h_elt = group.elements[t.mul(tg, rep_inv[b])]
            moves.append((b, x.rows[element_index(x.group, h_elt)]))
        grow = tuple(
            func_index[tuple(hrow[f[b]] for b, hrow in moves)]
            for f in funcs)
        gen_rows.append(grow)
    return gset_from_generator_rows(group, points, gen_rows)


def coinduction_size(x_size: int, index: int) -> int:
    return x_size ** index


# ---------------------------------------------------------------------------
# canonical form

def canonical_form(x: GSet, limits: Limits = DEFAULT_LIMITS) -> GSetIsoClass:
    """Stabilizer-class multiset of the orbits, cross-checked against the
    fixed-point counts of every subgroup class."""
    group = x.group
    lat = _lattice(group, limits)
    t = _tables(group)
    counts: Counter = Counter()
    for orb in orbit_partition(x):
        p = orb[0]
        stab = frozenset(ei for ei in range(group.order)
                         if x.rows[ei][p] == p)
        cls = lat.class_of_set[stab]
        counts[cls.id] += 1
    # mark-vector cross-check, always on
    class_by_id = {c.id: c for c in lat.classes}
    for k_cls in lat.classes:
        gen_rows = [x.rows[element_index(group, g)]
                    for g in k_cls.representative.generators]
        actual = sum(1 for p in range(x.size)
                     if all(row[p] == p for row in gen_rows))
        expected = sum(mult * lat.mark(class_by_id[cid], k_cls)
                       for cid, mult in counts.items())
        if actual != expected:
            raise MarkMismatch(
                f"fixed points of {k_cls.id} on {x!r}: counted {actual}, "
                f"stabilizer multiset predicts {expected}")
    ordered = tuple(sorted(counts.items(), key=_class_sort_key))
    return GSetIsoClass(group_id=group.id, orbits=ordered)


def iso_class_to_json(c: GSetIsoClass) -> dict:
    return {"group_id": c.group_id,
            "orbits": [{"stabilizer_class": cid, "multiplicity": m}
                       for cid, m in c.orbits]}


# ---------------------------------------------------------------------------
# explicit isomorphism search (independent oracle used by the test suite)

def equivariant_bijection(a: GSet, b: GSet) -> dict[str, str] | None:
    """Backtracking search for an explicit equivariant bijection.  Returns
    a label mapping or None.  Deliberately ignorant of stabilizers and
    canonical forms."""
    if a.group != b.group:
        raise GroupMismatch("isomorphism search needs a common group")
    if a.size != b.size:
        return None
    group = a.group
    orbs = orbit_partition(a)

    def extend(orbit_rep: int, target: int) -> dict[int, int] | None:
        mapping: dict[int, int] = {}
        for ei in range(group.order):
            src = a.rows[ei][orbit_rep]
            dst = b.rows[ei][target]
            if src in mapping:
                if mapping[src] != dst:
                    return None
            else:
                mapping[src] = dst
        if len(set(mapping.values())) != len(mapping):
            return None
        return mapping

    def search(i: int, used: set[int],
               acc: dict[int, int]) -> dict[int, int] | None:
        if i == len(orbs):
            return acc
        rep = orbs[i][0]
        for target in range(b.size):
            if target in used:
                continue
            mapping = extend(rep, target)
            if mapping is None or any(v in used for v in mapping.values()):
                continue
            result = search(i + 1, used | set(mapping.values()),
                            {**acc, **mapping})
            if result is not None:
                return result
        return None

    found = search(0, set(), {})
    if found is None:
        return None
    return {a.points[p]: b.points[q] for p, q in found.items()}


def shuffle_gset(x: GSet, rng) -> GSet:
    """Reorder points and rename labels; isomorphic to x by construction."""
    perm = list(range(x.size))
    rng.shuffle(perm)
    inv = [0] * x.size
    for i, j in enumerate(perm):
        inv[j] = i
    points = tuple(f"s{inv[p]}:{x.points[p]}" for p in perm)
    rows = tuple(tuple(inv[row[perm[i]]] for i in range(x.size))
                 for row in x.rows)
    return GSet(x.group, points, rows)
