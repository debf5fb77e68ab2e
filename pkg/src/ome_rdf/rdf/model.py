"""Core RDF data model: terms, triples, and immutable graphs.

Graphs are value objects: every operation returns a new graph and never
mutates its inputs, so graph values can be shared freely across threads.
Canonical text output is handled by :mod:`ome_rdf.rdf.serialize`; note that
plain iteration over a graph is *not* deterministic across interpreter runs
(string hash randomisation), which is why all serializers sort.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Union

from ..errors import (
    BlankNodeCollisionError,
    InvalidBlankNodeError,
    InvalidIriError,
    InvalidLiteralError,
)
from ..namespaces import NUMERIC_DATATYPES, RDF_LANGSTRING, XSD_STRING

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")
# Characters an IRI may never contain if it is to survive <...> quoting in
# N-Triples: angle brackets, quotes, braces, pipes, carets, backquotes,
# backslashes and anything at or below U+0020.
_IRI_FORBIDDEN = set('<>"{}|^`\\')

_BLANK_LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")
_LANG_TAG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")
_PREFIX_NAME_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_.-]*[A-Za-z0-9_-]|[A-Za-z])?$")

_INTEGER_LEXICAL_RE = re.compile(r"^[+-]?[0-9]+$")
_DECIMAL_LEXICAL_RE = re.compile(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$")
_FLOAT_LEXICAL_RE = re.compile(
    r"^([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?|[+-]?INF|NaN)$"
)

_INTEGER_FAMILY_LOCAL = {
    "integer", "int", "long", "short", "byte",
    "nonNegativeInteger", "positiveInteger", "unsignedInt", "unsignedLong",
}


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI.  Validated on construction."""

    value: str

    def __post_init__(self):
        v = self.value
        if not v:
            raise InvalidIriError("empty IRI")
        if not _SCHEME_RE.match(v):
            raise InvalidIriError(f"missing scheme in {v!r}")
        for ch in v:
            if ch.isspace() or ch in _IRI_FORBIDDEN or ord(ch) <= 0x20:
                raise InvalidIriError(f"forbidden character {ch!r} in {v!r}")

    def __str__(self):
        return self.value


def make_iri(s: str) -> Iri:
    """Validate ``s`` and return it as an :class:`Iri`.

    Raises :class:`InvalidIriError` for empty strings, strings without a
    scheme, or strings containing whitespace or angle-bracket/quote
    characters.
    """
    return Iri(s)


@dataclass(frozen=True, slots=True)
class BlankNode:
    """A graph-local node.  Labels match ``[A-Za-z][A-Za-z0-9]*``."""

    label: str

    def __post_init__(self):
        if not _BLANK_LABEL_RE.match(self.label):
            raise InvalidBlankNodeError(f"bad blank node label {self.label!r}")

    def __str__(self):
        return "_:" + self.label


def _check_numeric_lexical(lexical: str, datatype: Iri):
    local = datatype.value.rsplit("#", 1)[-1]
    if local in _INTEGER_FAMILY_LOCAL:
        ok = bool(_INTEGER_LEXICAL_RE.match(lexical))
    elif local == "decimal":
        ok = bool(_DECIMAL_LEXICAL_RE.match(lexical))
    else:  # float, double
        ok = bool(_FLOAT_LEXICAL_RE.match(lexical))
    if not ok:
        raise InvalidLiteralError(
            f"lexical form {lexical!r} does not parse as {datatype.value}"
        )


@dataclass(frozen=True, slots=True)
class Literal:
    """An RDF literal: lexical form, datatype IRI, optional language tag.

    ``Literal("x")`` is an ``xsd:string``; ``Literal("x", language="en")``
    is an ``rdf:langString``.  A language tag together with any other
    datatype is rejected, as are numeric datatypes with non-numeric
    lexical forms.
    """

    lexical: str
    datatype: Iri = field(default=None)  # type: ignore[assignment]
    language: Optional[str] = None

    def __post_init__(self):
        if self.language is not None:
            if not _LANG_TAG_RE.match(self.language):
                raise InvalidLiteralError(f"bad language tag {self.language!r}")
            if self.datatype is None:
                object.__setattr__(self, "datatype", Iri(RDF_LANGSTRING))
            elif self.datatype.value != RDF_LANGSTRING:
                raise InvalidLiteralError(
                    "language tag requires the rdf:langString datatype"
                )
        elif self.datatype is None:
            object.__setattr__(self, "datatype", Iri(XSD_STRING))
        elif self.datatype.value == RDF_LANGSTRING:
            raise InvalidLiteralError("rdf:langString requires a language tag")
        if self.datatype.value in NUMERIC_DATATYPES:
            _check_numeric_lexical(self.lexical, self.datatype)


Term = Union[Iri, BlankNode, Literal]


def term_sort_key(t: Term):
    """Total order over terms: IRIs, then blank nodes, then literals."""
    if isinstance(t, Iri):
        return (0, t.value, "", "")
    if isinstance(t, BlankNode):
        return (1, t.label, "", "")
    return (2, t.lexical, t.datatype.value, t.language or "")


@dataclass(frozen=True, slots=True)
class Triple:
    """One RDF statement.  Subjects are IRIs or blank nodes, never literals."""

    subject: Term
    predicate: Iri
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise TypeError("triple subject cannot be a literal")
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"bad subject {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TypeError("triple predicate must be an IRI")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"bad object {self.object!r}")

    def sort_key(self):
        return (
            term_sort_key(self.subject),
            self.predicate.value,
            term_sort_key(self.object),
        )


class Graph:
    """An immutable set of triples plus a prefix map.

    Equality compares triple sets only; prefix maps are serialization
    hints.  Duplicate triples collapse (set semantics).
    """

    __slots__ = ("_triples", "_prefixes")

    def __init__(
        self,
        triples: Iterable[Triple] = (),
        prefixes: Optional[Mapping[str, str]] = None,
    ):
        self._triples = frozenset(triples)
        pfx = {}
        for name, ns in (prefixes or {}).items():
            if not _PREFIX_NAME_RE.match(name):
                raise ValueError(f"bad prefix name {name!r}")
            pfx[name] = Iri(ns).value if isinstance(ns, str) else Iri(ns.value).value
        self._prefixes = pfx

    @property
    def triples(self) -> frozenset:
        return self._triples

    @property
    def prefixes(self) -> Mapping[str, str]:
        return MappingProxyType(self._prefixes)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self):
        return hash(self._triples)

    def __repr__(self):
        return f"Graph({len(self._triples)} triples, {len(self._prefixes)} prefixes)"

    def sorted_triples(self) -> list:
        return sorted(self._triples, key=Triple.sort_key)

    def blank_labels(self) -> frozenset:
        labels = set()
        for t in self._triples:
            if isinstance(t.subject, BlankNode):
                labels.add(t.subject.label)
            if isinstance(t.object, BlankNode):
                labels.add(t.object.label)
        return frozenset(labels)

    def subjects(self) -> set:
        return {t.subject for t in self._triples}

    def with_prefixes(self, prefixes: Mapping[str, str]) -> "Graph":
        merged = dict(self._prefixes)
        merged.update(prefixes)
        return Graph(self._triples, merged)


def graph_insert(g: Graph, t: Triple) -> Graph:
    """Return a graph containing ``t``; size grows by zero or one."""
    if t in g:
        return g
    return Graph(g.triples | {t}, g._prefixes)


def _fresh_labels(count: int, taken: set) -> list:
    labels, i = [], 0
    while len(labels) < count:
        cand = f"b{i}"
        if cand not in taken:
            labels.append(cand)
        i += 1
    return labels


def _relabel_blanks(g: Graph, mapping: Mapping[str, str]) -> frozenset:
    def sub(term):
        if isinstance(term, BlankNode) and term.label in mapping:
            return BlankNode(mapping[term.label])
        return term

    return frozenset(
        Triple(sub(t.subject), t.predicate, sub(t.object)) for t in g
    )


def graph_merge(a: Graph, b: Graph, relabel: bool = False) -> Graph:
    """Union of two graphs.

    Blank node labels must be disjoint unless ``relabel`` is set, in which
    case ``b``'s blanks get fresh labels.  A prefix bound to two different
    namespaces keeps ``a``'s binding and rebinds ``b``'s under the first
    free numeric suffix (``ex`` becomes ``ex1``).
    """
    labels_a = a.blank_labels()
    labels_b = b.blank_labels()
    clash = labels_a & labels_b
    b_triples = b.triples
    if clash:
        if not relabel:
            raise BlankNodeCollisionError(
                f"blank node labels overlap: {sorted(clash)[:5]}"
            )
        taken = set(labels_a | labels_b)
        fresh = _fresh_labels(len(labels_b), taken)
        mapping = dict(zip(sorted(labels_b), fresh))
        b_triples = _relabel_blanks(b, mapping)

    prefixes = dict(a.prefixes)
    for name, ns in sorted(b.prefixes.items()):
        if name not in prefixes:
            prefixes[name] = ns
        elif prefixes[name] != ns:
            n = 1
            while f"{name}{n}" in prefixes:
                n += 1
            prefixes[f"{name}{n}"] = ns

    return Graph(a.triples | b_triples, prefixes)
