"""Blank-node-aware graph equality.

Two routes to the same answer:

* :func:`graph_isomorphic` first compares ground triples, then runs colour
  refinement over blank nodes and finishes with an exact backtracking
  search (up to ``brute_force_bound`` blanks).  Above the bound it only
  answers when refinement pins every blank down to a singleton class,
  otherwise it raises :class:`TooLargeForExactCheckError`.
* :func:`brute_force_isomorphic` tries every blank-node bijection outright
  and exists as an independent oracle for tests.
"""

from __future__ import annotations

from itertools import permutations

from ..errors import TooLargeForExactCheckError
from .model import BlankNode, Graph, Triple
from .serialize import term_to_ntriples

BRUTE_FORCE_BOUND = 12


def _split(g: Graph):
    ground, blankful = set(), []
    for t in g:
        if isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode):
            blankful.append(t)
        else:
            ground.add(t)
    return ground, blankful


def _adjacency(blankful):
    """label -> list of (role, predicate, other) features.

    ``other`` is ("g", ntriples-term) for ground neighbours and
    ("b", label) for blank neighbours; "so" marks self-loops.
    """
    adj: dict = {}
    for t in blankful:
        s_blank = isinstance(t.subject, BlankNode)
        o_blank = isinstance(t.object, BlankNode)
        p = t.predicate.value
        if s_blank and o_blank and t.subject.label == t.object.label:
            adj.setdefault(t.subject.label, []).append(("so", p, ("g", "")))
            continue
        if s_blank:
            other = ("b", t.object.label) if o_blank else ("g", term_to_ntriples(t.object))
            adj.setdefault(t.subject.label, []).append(("s", p, other))
        if o_blank:
            other = ("b", t.subject.label) if s_blank else ("g", term_to_ntriples(t.subject))
            adj.setdefault(t.object.label, []).append(("o", p, other))
    return adj


def _refine(adj_a: dict, adj_b: dict):
    """Joint colour refinement.  Returns (colors_a, colors_b) or None when
    the colour multisets diverge (graphs cannot be isomorphic)."""
    colors_a = {lbl: 0 for lbl in adj_a}
    colors_b = {lbl: 0 for lbl in adj_b}
    n = len(colors_a)
    for _ in range(n + 1):
        table: dict = {}

        def recolor(adj, colors):
            result = {}
            for lbl, feats in adj.items():
                sig = []
                for role, pred, (kind, other) in feats:
                    if kind == "g":
                        sig.append((role, pred, 0, other, -1))
                    else:
                        sig.append((role, pred, 1, "", colors[other]))
                key = (colors[lbl], tuple(sorted(sig)))
                result[lbl] = table.setdefault(key, len(table))
            return result

        new_a = recolor(adj_a, colors_a)
        new_b = recolor(adj_b, colors_b)
        if sorted(new_a.values()) != sorted(new_b.values()):
            return None
        stable = len(set(new_a.values())) == len(set(colors_a.values()))
        colors_a, colors_b = new_a, new_b
        if stable:
            break
    return colors_a, colors_b


def _substitute(blankful, mapping):
    out = set()
    for t in blankful:
        s = BlankNode(mapping[t.subject.label]) if isinstance(t.subject, BlankNode) else t.subject
        o = BlankNode(mapping[t.object.label]) if isinstance(t.object, BlankNode) else t.object
        out.add(Triple(s, t.predicate, o))
    return out


def _backtrack(blankful_a, blankful_b, candidates):
    """Exact search for a bijection consistent with the candidate sets."""
    b_set = set(blankful_b)
    triples_by_label: dict = {}
    for t in blankful_a:
        for term in (t.subject, t.object):
            if isinstance(term, BlankNode):
                triples_by_label.setdefault(term.label, []).append(t)

    order = sorted(candidates, key=lambda lbl: (len(candidates[lbl]), lbl))
    assignment: dict = {}
    used: set = set()

    def consistent(lbl) -> bool:
        for t in triples_by_label[lbl]:
            s, o = t.subject, t.object
            if isinstance(s, BlankNode):
                if s.label not in assignment:
                    continue
                s = BlankNode(assignment[s.label])
            if isinstance(o, BlankNode):
                if o.label not in assignment:
                    continue
                o = BlankNode(assignment[o.label])
            if Triple(s, t.predicate, o) not in b_set:
                return False
        return True

    def place(i) -> bool:
        if i == len(order):
            return _substitute(blankful_a, assignment) == b_set
        lbl = order[i]
        for cand in sorted(candidates[lbl]):
            if cand in used:
                continue
            assignment[lbl] = cand
            used.add(cand)
            if consistent(lbl) and place(i + 1):
                return True
            del assignment[lbl]
            used.discard(cand)
        return False

    return place(0)


def graph_isomorphic(a: Graph, b: Graph, brute_force_bound: int = BRUTE_FORCE_BOUND) -> bool:
    """True iff some blank-node bijection makes the triple sets equal.

    Ground (blank-free) triples must match exactly.  Raises
    :class:`TooLargeForExactCheckError` when there are more than
    ``brute_force_bound`` blank nodes and refinement is inconclusive.
    """
    if len(a) != len(b):
        return False
    ground_a, blankful_a = _split(a)
    ground_b, blankful_b = _split(b)
    if ground_a != ground_b:
        return False
    adj_a, adj_b = _adjacency(blankful_a), _adjacency(blankful_b)
    if len(adj_a) != len(adj_b):
        return False
    if not adj_a:
        return True  # no blanks; ground parts already matched
    refined = _refine(adj_a, adj_b)
    if refined is None:
        return False
    colors_a, colors_b = refined

    by_color_b: dict = {}
    for lbl, c in colors_b.items():
        by_color_b.setdefault(c, set()).add(lbl)
    candidates = {lbl: by_color_b.get(c, set()) for lbl, c in colors_a.items()}
    if any(not c for c in candidates.values()):
        return False

    n_blanks = len(adj_a)
    if n_blanks <= brute_force_bound:
        return _backtrack(blankful_a, blankful_b, candidates)

    if all(len(c) == 1 for c in candidates.values()):
        # refinement pinned every blank: the only colour-respecting
        # bijection either works or no bijection does
        mapping = {lbl: next(iter(c)) for lbl, c in candidates.items()}
        return _substitute(blankful_a, mapping) == set(blankful_b)

    raise TooLargeForExactCheckError(
        f"{n_blanks} blank nodes exceed the exact-search bound "
        f"({brute_force_bound}) and refinement is inconclusive"
    )


def brute_force_isomorphic(a: Graph, b: Graph, max_blanks: int = 8) -> bool:
    """Try all blank-node bijections.  Test oracle; factorial cost."""
    if len(a) != len(b):
        return False
    ground_a, blankful_a = _split(a)
    ground_b, blankful_b = _split(b)
    if ground_a != ground_b:
        return False
    labels_a = sorted(a.blank_labels())
    labels_b = sorted(b.blank_labels())
    if len(labels_a) != len(labels_b):
        return False
    if len(labels_a) > max_blanks:
        raise TooLargeForExactCheckError(
            f"{len(labels_a)} blank nodes exceed the oracle bound ({max_blanks})"
        )
    if not labels_a:
        return True
    target = set(blankful_b)
    for perm in permutations(labels_b):
        mapping = dict(zip(labels_a, perm))
        if _substitute(blankful_a, mapping) == target:
            return True
    return False
