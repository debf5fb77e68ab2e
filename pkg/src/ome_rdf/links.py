"""Resolution of external bioresource identifiers (CURIEs) to IRIs.

The registry is a plain-text TSV config, one ``prefix<TAB>baseIri<TAB>
idPattern`` line per partner database; the default ships with the RIKEN
BioResource mouse-strain catalogue.  Liveness checking is optional and
runs through an injected fetch callable so everything here works offline.
"""

from __future__ import annotations

import re
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from .errors import (
    IdPatternMismatchError,
    LinkRegistryError,
    MalformedCurieError,
    UnknownPrefixError,
)
from .rdf import Iri

_PREFIX_RE = re.compile(r"^[a-z][a-z0-9_]*$")

DEFAULT_PARALLELISM = 8
DEFAULT_TIMEOUT_S = 5.0


@dataclass(frozen=True)
class LinkEntry:
    prefix: str
    base_iri: Iri
    id_pattern: str

    def __post_init__(self):
        if not _PREFIX_RE.match(self.prefix):
            raise LinkRegistryError(f"bad prefix {self.prefix!r}")
        try:
            re.compile(self.id_pattern)
        except re.error as e:
            raise LinkRegistryError(f"bad id pattern for {self.prefix!r}: {e}") from e


class LinkRegistry:
    """Ordered, immutable prefix-to-namespace table."""

    def __init__(self, entries):
        self._entries = {}
        for entry in entries:
            if entry.prefix in self._entries:
                raise LinkRegistryError(f"duplicate prefix {entry.prefix!r}")
            self._entries[entry.prefix] = entry

    @property
    def entries(self):
        return dict(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, prefix):
        return prefix in self._entries

    def resolve(self, curie: str) -> Iri:
        """Expand ``prefix:localId`` to ``baseIri + "/" + localId``."""
        if ":" not in curie:
            raise MalformedCurieError(f"{curie!r} has no prefix separator")
        prefix, local = curie.split(":", 1)
        if not prefix or not local:
            raise MalformedCurieError(f"{curie!r} has an empty prefix or local id")
        entry = self._entries.get(prefix)
        if entry is None:
            raise UnknownPrefixError(prefix)
        if not re.fullmatch(entry.id_pattern, local):
            raise IdPatternMismatchError(curie, entry.id_pattern)
        return Iri(entry.base_iri.value + "/" + local)

    # ---- file format

    @classmethod
    def loads(cls, text: str) -> "LinkRegistry":
        entries = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            cells = line.split("\t")
            if len(cells) != 3:
                raise LinkRegistryError(
                    f"line {lineno}: expected prefix<TAB>baseIri<TAB>idPattern")
            entries.append(LinkEntry(cells[0], Iri(cells[1]), cells[2]))
        return cls(entries)

    @classmethod
    def load(cls, path) -> "LinkRegistry":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    @classmethod
    def default(cls) -> "LinkRegistry":
        text = resources.files("ome_rdf").joinpath("data/link_registry.tsv").read_text(
            encoding="utf-8")
        return cls.loads(text)

    def dumps(self) -> str:
        return "".join(
            f"{e.prefix}\t{e.base_iri.value}\t{e.id_pattern}\n"
            for e in self._entries.values()
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.dumps())


def resolve(registry: LinkRegistry, curie: str) -> Iri:
    """Free-function form of :meth:`LinkRegistry.resolve`."""
    return registry.resolve(curie)


@dataclass(frozen=True)
class LinkCheckResult:
    iri: Iri
    status: str  # ok | unreachable | notChecked
    http_status: Optional[int] = None

    def __post_init__(self):
        if self.status not in ("ok", "unreachable", "notChecked"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "notChecked" and self.http_status is not None:
            raise ValueError("notChecked results carry no HTTP status")


Fetcher = Callable[[str], int]


def urllib_fetcher(timeout: float = DEFAULT_TIMEOUT_S) -> Fetcher:
    """HEAD-request fetcher used by the CLI when not offline."""

    def fetch(iri: str) -> int:
        req = urllib.request.Request(iri, method="HEAD")
        try:
            with urllib.request.urlopen(req, timeout=timeout) as resp:
                return resp.status
        except urllib.error.HTTPError as e:
            return e.code

    return fetch


def check_links(iris, fetcher: Optional[Fetcher] = None,
                parallelism: int = DEFAULT_PARALLELISM) -> list:
    """Probe each IRI through ``fetcher``; order follows the input.

    ``fetcher=None`` means offline: every result is ``notChecked``.
    Fetch exceptions become ``unreachable`` results, never raise.
    """
    iris = list(iris)
    if fetcher is None:
        return [LinkCheckResult(iri, "notChecked") for iri in iris]

    def probe(iri: Iri) -> LinkCheckResult:
        try:
            status = fetcher(iri.value)
        except Exception:
            return LinkCheckResult(iri, "unreachable")
        ok = 200 <= status < 400
        return LinkCheckResult(iri, "ok" if ok else "unreachable", status)

    if len(iris) <= 1 or parallelism <= 1:
        return [probe(iri) for iri in iris]
    with ThreadPoolExecutor(max_workers=min(parallelism, len(iris))) as pool:
        return list(pool.map(probe, iris))
