"""Permutations of {1..degree} stored in one-line form.

A permutation is a tuple ``p`` of length ``degree`` with 0-based entries:
point ``i+1`` maps to ``p[i]+1``.  Composition follows the left-action
convention used everywhere in this package:

    compose(p, q)(x) = p(q(x))

so ``compose(p, q)`` is "apply q first".  Canonical ordering of group
elements is plain lexicographic order on these tuples.
"""
from __future__ import annotations

import re

from .errors import MalformedSpec

Perm = tuple[int, ...]


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conjugate(p: Perm, by: Perm) -> Perm:
    """Return by * p * by^-1."""
    return compose(compose(by, p), inverse(by))


def cycles_of(p: Perm, include_fixed: bool = False) -> list[list[int]]:
    """Disjoint cycles as 0-based point lists, each starting at its minimum,
    ordered by minimum."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cur, cyc = start, []
        while not seen[cur]:
            seen[cur] = True
            cyc.append(cur)
            cur = p[cur]
        if len(cyc) > 1 or include_fixed:
            out.append(cyc)
    return out


def format_perm(p: Perm) -> str:
    """Cycle notation with 1-based labels; identity renders as "()"."""
    cycles = cycles_of(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int) -> Perm:
    """Parse one permutation written as a product of cycles, e.g.
    "(1 2 3)(4 5)".  "e" and "()" denote the identity."""
    text = text.strip()
    if text in ("e", "()", ""):
        return identity_perm(degree)
    body = _CYCLE_RE.sub("", text)
    if body.strip():
        raise MalformedSpec(f"stray characters outside cycles: {text!r}")
    if text.count("(") != text.count(")") or not _CYCLE_RE.findall(text):
        raise MalformedSpec(f"unbalanced cycle notation: {text!r}")
    images = list(range(degree))
    touched: set[int] = set()
    for cyc_text in _CYCLE_RE.findall(text):
        labels = cyc_text.replace(",", " ").split()
        try:
            pts = [int(s) - 1 for s in labels]
        except ValueError:
            raise MalformedSpec(f"non-integer point in cycle: {cyc_text!r}")
        if not pts:
            continue
        for x in pts:
            if not 0 <= x < degree:
                raise MalformedSpec(
                    f"point {x + 1} outside 1..{degree} in {text!r}")
            if x in touched:
                raise MalformedSpec(f"point {x + 1} repeated in {text!r}")
            touched.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return tuple(images)


def parse_perm_list(text: str, degree: int) -> list[Perm]:
    """Parse a comma-separated list of permutations in cycle notation.

    Commas inside parentheses separate cycle entries, commas outside separate
    generators; "(1 2 3),(1 2)" is two generators.
    """
    gens: list[Perm] = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise MalformedSpec(f"unbalanced parentheses: {text!r}")
        if ch == "," and depth == 0:
            gens.append(parse_perm("".join(cur), degree))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise MalformedSpec(f"unbalanced parentheses: {text!r}")
    if "".join(cur).strip():
        gens.append(parse_perm("".join(cur), degree))
    if not gens:
        raise MalformedSpec(f"empty generator list: {text!r}")
    return gens


def shift_perm(p: Perm, offset: int, degree: int) -> Perm:
    """Embed a permutation of a block into degree points starting at offset."""
    images = list(range(degree))
    for i, j in enumerate(p):
        images[offset + i] = offset + j
    return tuple(images)
