"""Finite permutation groups with full element lists.

Everything downstream (G-sets, posets, towers) works over a PermGroup:
an explicitly enumerated subgroup of Sym(degree).  Groups are immutable;
derived data (index tables, subgroup lattice, conjugacy classes, marks)
is memoized per group and invisible to callers.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .config import DEFAULT_LIMITS, Limits
from .errors import MalformedSpec, OrderCapExceeded, SubgroupMismatch
from .perm import (Perm, compose, format_perm, identity_perm, inverse,
                   parse_perm, parse_perm_list, shift_perm)


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group on points 1..degree."""
    degree: int
    generators: tuple[Perm, ...] = field(hash=False)
    elements: tuple[Perm, ...] = field(hash=False)  # sorted lexicographically
    id: str

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def __contains__(self, p: Perm) -> bool:
        return p in _tables(self).index

    def __repr__(self) -> str:
        return f"PermGroup({self.id!r}, order={self.order})"


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup given by its explicit element subset of a parent group."""
    parent: PermGroup
    elements: frozenset[Perm]
    generators: tuple[Perm, ...] = field(hash=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def parent_id(self) -> str:
        return self.parent.id

    def gen_text(self) -> str:
        if not self.generators:
            return "e"
        return ",".join(format_perm(p) for p in self.generators)

    def __repr__(self) -> str:
        return f"Subgroup<{self.gen_text()}> of {self.parent.id}"


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups; equal iff same parent and class id."""
    parent_id: str
    id: str
    order: int
    class_size: int
    representative: SubgroupHandle = field(hash=False, compare=False)

    def __repr__(self) -> str:
        return f"[{self.id}]"


def mulclose(gens: list[Perm], degree: int, cap: int | None = None,
             within: frozenset[Perm] | None = None) -> set[Perm]:
    """Close a generator list under composition.  Raises OrderCapExceeded
    past ``cap``."""
    els = {identity_perm(degree)}
    els.update(gens)
    frontier = list(els)
    while frontier:
        new = []
        for a in gens:
            for b in frontier:
                c = compose(a, b)
                if c not in els:
                    if within is not None and c not in within:
                        raise SubgroupMismatch(
                            "generators do not stay inside the parent group")
                    els.add(c)
                    new.append(c)
                    if cap is not None and len(els) > cap:
                        raise OrderCapExceeded(
                            f"group order exceeds cap {cap}")
        frontier = new
    return els


# ---------------------------------------------------------------------------
# catalog and construction

_CATALOG_PART = re.compile(r"^([CDS])(\d+)$")


def _catalog_part_gens(name: str) -> tuple[int, list[Perm]]:
    m = _CATALOG_PART.match(name)
    if not m:
        raise MalformedSpec(f"unknown catalog name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise MalformedSpec(f"bad size in catalog name {name!r}")
    if kind == "C":
        full = tuple((i + 1) % n for i in range(n))
        return n, [full]
    if kind == "D":
        if n < 3:
            raise MalformedSpec(
                f"dihedral catalog needs n >= 3 (got {name!r}); "
                "use C2 or C2xC2 instead")
        rot = tuple((i + 1) % n for i in range(n))
        refl = tuple((n - i) % n for i in range(n))
        return n, [rot, refl]
    if kind == "S":
        if n > 7:
            raise MalformedSpec(f"symmetric catalog capped at S7 (got {name!r})")
        if n == 1:
            return 1, [identity_perm(1)]
        full = tuple((i + 1) % n for i in range(n))
        swap = (1, 0) + tuple(range(2, n))
        return n, [swap, full]
    raise MalformedSpec(f"unknown catalog name {name!r}")


def catalog_group(spec: str, limits: Limits = DEFAULT_LIMITS) -> PermGroup:
    """Build a group from a catalog spec: Cn, Dn, Sn (n<=7) or products
    joined with 'x', e.g. "C2xS3".  Product factors act on disjoint points."""
    name = spec.replace(" ", "")
    if not name:
        raise MalformedSpec("empty group spec")
    parts = name.split("x")
    blocks = [_catalog_part_gens(p) for p in parts]
    degree = sum(d for d, _ in blocks)
    gens: list[Perm] = []
    offset = 0
    for d, part_gens in blocks:
        gens.extend(shift_perm(p, offset, degree) for p in part_gens)
        offset += d
    elements = mulclose(gens, degree, cap=limits.group_order)
    return PermGroup(degree=degree, generators=tuple(gens),
                     elements=tuple(sorted(elements)), id=name)


def group_from_generators(gens_text: str, degree: int,
                          limits: Limits = DEFAULT_LIMITS) -> PermGroup:
    if degree < 1:
        raise MalformedSpec("degree must be positive")
    gens = parse_perm_list(gens_text, degree)
    elements = mulclose(gens, degree, cap=limits.group_order)
    canon = ",".join(format_perm(p) for p in gens)
    return PermGroup(degree=degree, generators=tuple(gens),
                     elements=tuple(sorted(elements)), id=f"g{degree}[{canon}]")


def build_group(spec: str, gens: str | None = None, degree: int | None = None,
                limits: Limits = DEFAULT_LIMITS) -> PermGroup:
    """Catalog name, or explicit generators in cycle notation plus a degree."""
    if gens is not None:
        if degree is None:
            raise MalformedSpec("explicit generators require a degree")
        return group_from_generators(gens, degree, limits)
    return catalog_group(spec, limits)


def group_to_json(group: PermGroup) -> dict:
    return {"id": group.id, "degree": group.degree,
            "generators": [format_perm(p) for p in group.generators]}


def group_from_json(data: dict, limits: Limits = DEFAULT_LIMITS) -> PermGroup:
    degree = int(data["degree"])
    gens = [parse_perm(s, degree) for s in data["generators"]]
    elements = mulclose(gens, degree, cap=limits.group_order)
    return PermGroup(degree=degree, generators=tuple(gens),
                     elements=tuple(sorted(elements)), id=str(data["id"]))


# ---------------------------------------------------------------------------
# per-group index tables

class _Tables:
    """Element index map plus multiplication/inverse tables on indices."""

    __slots__ = ("group", "index", "inv", "_mult")

    def __init__(self, group: PermGroup):
        self.group = group
        self.index = {p: i for i, p in enumerate(group.elements)}
        self.inv = [self.index[inverse(p)] for p in group.elements]
        if group.order <= 1500:
            els, idx = group.elements, self.index
            self._mult = [[idx[compose(a, b)] for b in els] for a in els]
        else:
            self._mult = None

    def mul(self, i: int, j: int) -> int:
        if self._mult is not None:
            return self._mult[i][j]
        els = self.group.elements
        return self.index[compose(els[i], els[j])]

    def conj(self, i: int, by: int) -> int:
        return self.mul(self.mul(by, i), self.inv[by])


@lru_cache(maxsize=None)
def _tables(group: PermGroup) -> _Tables:
    return _Tables(group)


def element_index(group: PermGroup, p: Perm) -> int:
    try:
        return _tables(group).index[p]
    except KeyError:
        raise SubgroupMismatch(f"element {format_perm(p)} not in {group.id}")


# ---------------------------------------------------------------------------
# subgroup handles

def subgroup_from_gens(parent: PermGroup, gens: list[Perm]) -> SubgroupHandle:
    for p in gens:
        if p not in parent:
            raise SubgroupMismatch(
                f"generator {format_perm(p)} is not in {parent.id}")
    elements = mulclose(gens, parent.degree,
                        within=frozenset(parent.elements))
    gens = [p for p in gens if p != parent.identity] or []
    return SubgroupHandle(parent=parent, elements=frozenset(elements),
                          generators=tuple(gens))


def subgroup_from_elements(parent: PermGroup,
                           elements: frozenset[Perm]) -> SubgroupHandle:
    if not elements <= frozenset(parent.elements):
        raise SubgroupMismatch("elements are not a subset of the parent group")
    gens = _canonical_gens_for(parent, elements)
    closure = mulclose(list(gens), parent.degree)
    if frozenset(closure) != elements:
        raise SubgroupMismatch("element set is not closed under composition")
    return SubgroupHandle(parent=parent, elements=frozenset(elements),
                          generators=gens)


def _canonical_gens_for(parent: PermGroup,
                        elements: frozenset[Perm]) -> tuple[Perm, ...]:
    """Greedy minimal generating sequence, deterministic from the element
    set: scan elements in canonical order, keep those enlarging the span."""
    gens: list[Perm] = []
    span = {parent.identity}
    for p in sorted(elements):
        if p in span:
            continue
        gens.append(p)
        span = mulclose(gens, parent.degree)
        if len(span) == len(elements):
            break
    return tuple(gens)


def trivial_subgroup(parent: PermGroup) -> SubgroupHandle:
    return SubgroupHandle(parent=parent,
                          elements=frozenset({parent.identity}),
                          generators=())


def full_subgroup(parent: PermGroup) -> SubgroupHandle:
    return SubgroupHandle(parent=parent, elements=frozenset(parent.elements),
                          generators=tuple(parent.generators))


def subgroup_from_text(parent: PermGroup, text: str) -> SubgroupHandle:
    """Resolve "e" or a generator list in cycle notation to a subgroup."""
    text = text.strip()
    if text in ("e", "", "()", "1"):
        return trivial_subgroup(parent)
    gens = parse_perm_list(text, parent.degree)
    return subgroup_from_gens(parent, gens)


def is_subgroup_handle_of(handle: SubgroupHandle, group: PermGroup) -> bool:
    return (handle.parent.degree == group.degree
            and handle.elements <= frozenset(group.elements))


def require_subgroup(handle: SubgroupHandle, group: PermGroup) -> None:
    if not is_subgroup_handle_of(handle, group):
        raise SubgroupMismatch(
            f"{handle!r} is not a subgroup of {group.id}")


def rebase(handle: SubgroupHandle, group: PermGroup) -> SubgroupHandle:
    """Express the same subgroup with a different parent group."""
    require_subgroup(handle, group)
    if handle.parent is group:
        return handle
    return SubgroupHandle(parent=group, elements=handle.elements,
                          generators=handle.generators)


@lru_cache(maxsize=None)
def as_group(handle: SubgroupHandle) -> PermGroup:
    """A subgroup as a standalone PermGroup on the same points."""
    parent = handle.parent
    if len(handle.elements) == parent.order:
        return parent
    gens = _canonical_gens_for(parent, handle.elements)
    canon = ",".join(format_perm(p) for p in gens) or "e"
    return PermGroup(degree=parent.degree, generators=gens,
                     elements=tuple(sorted(handle.elements)),
                     id=f"{parent.id}/sub[{canon}]")


# ---------------------------------------------------------------------------
# subgroup lattice, conjugacy classes, marks

class _Lattice:
    __slots__ = ("group", "subgroup_sets", "handles", "classes",
                 "class_of_set", "members", "_subconj", "_marks")

    def __init__(self, group, subgroup_sets, handles, classes, class_of_set,
                 members):
        self.group = group
        self.subgroup_sets = subgroup_sets
        self.handles = handles
        self.classes = classes
        self.class_of_set = class_of_set
        self.members = members
        self._subconj: dict[tuple[str, str], bool] = {}
        self._marks: dict[tuple[str, str], int] = {}

    def subconjugate(self, a: SubgroupClass, b: SubgroupClass) -> bool:
        """Is some conjugate of a's representative contained in b's?"""
        key = (a.id, b.id)
        if key not in self._subconj:
            if a.order == 1:
                self._subconj[key] = True
            elif b.order % a.order != 0:
                self._subconj[key] = False
            else:
                target = self.members[b.id][0]
                self._subconj[key] = any(m <= target
                                         for m in self.members[a.id])
        return self._subconj[key]

    def mark(self, s: SubgroupClass, k: SubgroupClass) -> int:
        """Number of K-fixed cosets of G/S, i.e. #{g : g^-1 K g <= S} / |S|."""
        key = (s.id, k.id)
        if key not in self._marks:
            t = _tables(self.group)
            s_set = frozenset(_indices(self.group,
                                       self.members[s.id][0]))
            k_idx = _indices(self.group, self.members[k.id][0])
            count = 0
            for g in range(self.group.order):
                gi = t.inv[g]
                if all(t.mul(t.mul(gi, x), g) in s_set for x in k_idx):
                    count += 1
            assert count % s.order == 0
            self._marks[key] = count // s.order
        return self._marks[key]


def _indices(group: PermGroup, elements: frozenset[Perm]) -> list[int]:
    idx = _tables(group).index
    return sorted(idx[p] for p in elements)


def _cycle_indices(t: _Tables, a: int, ident: int) -> frozenset[int]:
    out = {ident}
    cur = a
    while cur != ident:
        out.add(cur)
        cur = t.mul(cur, a)
    return frozenset(out)


def _join_closure(group: PermGroup) -> dict[frozenset[int], tuple[int, ...]]:
    """All subgroups as index sets, mapped to a generating index tuple.

    Seeds with the cyclic subgroups and closes under pairwise join; exact
    because every subgroup is an iterated join of cyclic ones.
    """
    t = _tables(group)
    n = group.order
    ident = t.index[group.identity]
    half = n // 2
    full_set = frozenset(range(n))

    def close(gens: tuple[int, ...]) -> frozenset[int]:
        els = {ident}
        els.update(gens)
        frontier = list(els)
        while frontier:
            new = []
            for a in gens:
                for b in frontier:
                    c = t.mul(a, b)
                    if c not in els:
                        els.add(c)
                        new.append(c)
            if len(els) > half:
                return full_set  # order divides n, so past n/2 it is G
            frontier = new
        return frozenset(els)

    subs: dict[frozenset[int], tuple[int, ...]] = {frozenset({ident}): ()}
    for a in range(n):
        if a == ident:
            continue
        fs = _cycle_indices(t, a, ident)
        if fs not in subs:
            subs[fs] = (min(x for x in fs if x != ident),)
    subs.setdefault(full_set, tuple(t.index[p] for p in group.generators))

    work = list(subs)
    done_pairs: set[tuple[frozenset, frozenset]] = set()
    while work:
        a_set = work.pop()
        a_gens = subs[a_set]
        for b_set in list(subs):
            if (a_set, b_set) in done_pairs or (b_set, a_set) in done_pairs:
                continue
            done_pairs.add((a_set, b_set))
            if a_set <= b_set or b_set <= a_set:
                continue
            joined = close(a_gens + subs[b_set])
            if joined not in subs:
                subs[joined] = a_gens + subs[b_set]
                work.append(joined)
    return subs


@lru_cache(maxsize=None)
def _lattice(group: PermGroup, limits: Limits = DEFAULT_LIMITS) -> _Lattice:
    if group.order > limits.subgroup_enumeration:
        raise OrderCapExceeded(
            f"|{group.id}| = {group.order} exceeds subgroup enumeration cap "
            f"{limits.subgroup_enumeration}")
    t = _tables(group)
    subs = _join_closure(group)

    def key(fs: frozenset[int]) -> tuple:
        return (len(fs), tuple(sorted(fs)))

    ordered = sorted(subs, key=key)

    # conjugation orbits
    gen_idx = [t.index[p] for p in group.generators]
    class_data: list[tuple[frozenset[int], list[frozenset[int]]]] = []
    classified: set[frozenset[int]] = set()
    for fs in ordered:
        if fs in classified:
            continue
        orbit = {fs}
        frontier = [fs]
        while frontier:
            cur = frontier.pop()
            for g in gen_idx:
                img = frozenset(t.conj(x, g) for x in cur)
                if img not in orbit:
                    orbit.add(img)
                    frontier.append(img)
        members = sorted(orbit, key=key)
        classified.update(orbit)
        class_data.append((members[0], members))

    class_data.sort(key=lambda cm: key(cm[0]))
    per_order_counter: dict[int, int] = {}
    classes: list[SubgroupClass] = []
    class_of_set: dict[frozenset[int], SubgroupClass] = {}
    members_map: dict[str, list[frozenset[Perm]]] = {}
    handles: list[SubgroupHandle] = []
    els = group.elements
    for rep_set, members in class_data:
        order = len(rep_set)
        i = per_order_counter.get(order, 0)
        per_order_counter[order] = i + 1
        cid = f"o{order}.{i}"
        rep_elements = frozenset(els[x] for x in rep_set)
        rep_handle = SubgroupHandle(
            parent=group, elements=rep_elements,
            generators=_canonical_gens_for(group, rep_elements))
        cls = SubgroupClass(parent_id=group.id, id=cid, order=order,
                            class_size=len(members),
                            representative=rep_handle)
        classes.append(cls)
        members_map[cid] = [frozenset(els[x] for x in m) for m in members]
        for m in members:
            class_of_set[m] = cls
    # handles for every subgroup, canonical order
    for fs in ordered:
        elements = frozenset(els[x] for x in fs)
        handles.append(SubgroupHandle(
            parent=group, elements=elements,
            generators=_canonical_gens_for(group, elements)))
    return _Lattice(group, ordered, tuple(handles), tuple(classes),
                    class_of_set, members_map)


def enumerate_subgroups(group: PermGroup,
                        limits: Limits = DEFAULT_LIMITS) -> tuple[SubgroupHandle, ...]:
    """Every subgroup exactly once, sorted by (order, element-set key)."""
    return _lattice(group, limits).handles


def subgroup_classes(group: PermGroup,
                     limits: Limits = DEFAULT_LIMITS) -> tuple[SubgroupClass, ...]:
    return _lattice(group, limits).classes


def class_of(group: PermGroup, handle: SubgroupHandle,
             limits: Limits = DEFAULT_LIMITS) -> SubgroupClass:
    require_subgroup(handle, group)
    lat = _lattice(group, limits)
    fs = frozenset(_indices(group, handle.elements))
    try:
        return lat.class_of_set[fs]
    except KeyError:
        raise SubgroupMismatch("handle is not a subgroup of the group")


def subconjugate_classes(group: PermGroup, a: SubgroupClass,
                         b: SubgroupClass,
                         limits: Limits = DEFAULT_LIMITS) -> bool:
    return _lattice(group, limits).subconjugate(a, b)


def mark(group: PermGroup, s: SubgroupClass, k: SubgroupClass,
         limits: Limits = DEFAULT_LIMITS) -> int:
    return _lattice(group, limits).mark(s, k)


def are_conjugate(group: PermGroup, a: SubgroupHandle,
                  b: SubgroupHandle) -> bool:
    if len(a.elements) != len(b.elements):
        return False
    t = _tables(group)
    a_idx = frozenset(_indices(group, a.elements))
    b_idx = frozenset(_indices(group, b.elements))
    return any(frozenset(t.conj(x, g) for x in a_idx) == b_idx
               for g in range(group.order))


# ---------------------------------------------------------------------------
# double cosets and normalizers

def double_cosets(group: PermGroup, k: SubgroupHandle,
                  h: SubgroupHandle) -> list[tuple[Perm, int]]:
    """The K\\G/H partition as (minimal representative, size) pairs, ordered
    by representative."""
    require_subgroup(k, group)
    require_subgroup(h, group)
    t = _tables(group)
    k_idx = _indices(group, k.elements)
    h_idx = _indices(group, h.elements)
    n = group.order
    seen = [False] * n
    out: list[tuple[Perm, int]] = []
    for g0 in range(n):
        if seen[g0]:
            continue
        kg = [t.mul(ki, g0) for ki in k_idx]
        coset = {t.mul(x, hi) for x in kg for hi in h_idx}
        for x in coset:
            seen[x] = True
        out.append((group.elements[g0], len(coset)))
    assert sum(size for _, size in out) == n
    return out


def double_coset_count(group: PermGroup, k: SubgroupHandle,
                       h: SubgroupHandle) -> int:
    return len(double_cosets(group, k, h))


def normalizer(group: PermGroup, k: SubgroupHandle) -> SubgroupHandle:
    require_subgroup(k, group)
    t = _tables(group)
    k_set = frozenset(_indices(group, k.elements))
    norm = frozenset(g for g in range(group.order)
                     if frozenset(t.conj(x, g) for x in k_set) == k_set)
    elements = frozenset(group.elements[x] for x in norm)
    return subgroup_from_elements(group, elements)


def normalizer_quotient_order(group: PermGroup, k: SubgroupHandle) -> int:
    """|N_G(K)| / |K| (the Weyl group order of K in G)."""
    n = normalizer(group, k)
    return n.order // k.order


# ---------------------------------------------------------------------------
# cosets

def left_coset_transversal(group: PermGroup,
                           h: SubgroupHandle) -> list[Perm]:
    """Minimal representatives of G/H (cosets gH), ascending."""
    require_subgroup(h, group)
    t = _tables(group)
    h_idx = _indices(group, h.elements)
    seen = [False] * group.order
    reps = []
    for g0 in range(group.order):
        if seen[g0]:
            continue
        reps.append(group.elements[g0])
        for hi in h_idx:
            seen[t.mul(g0, hi)] = True
    return reps


def right_coset_transversal(group: PermGroup,
                            h: SubgroupHandle) -> list[Perm]:
    """Minimal representatives of H\\G (cosets Hg), ascending."""
    require_subgroup(h, group)
    t = _tables(group)
    h_idx = _indices(group, h.elements)
    seen = [False] * group.order
    reps = []
    for g0 in range(group.order):
        if seen[g0]:
            continue
        reps.append(group.elements[g0])
        for hi in h_idx:
            seen[t.mul(hi, g0)] = True
    return reps


def intersect_with_conjugate(group: PermGroup, k: SubgroupHandle,
                             h: SubgroupHandle, g: Perm) -> SubgroupHandle:
    """K n gHg^-1 as a subgroup handle of the group."""
    require_subgroup(k, group)
    require_subgroup(h, group)
    gi = inverse(g)
    conj_h = frozenset(compose(compose(g, x), gi) for x in h.elements)
    return subgroup_from_elements(group, k.elements & conj_h)
