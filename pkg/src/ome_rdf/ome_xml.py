"""Parsers for OME-XML instance documents (subset) and EM annotation sidecars.

The OME-XML subset covers Image/Pixels/Instrument/Experimenter elements and
their reference attributes; references are resolved during parsing, so an
:class:`OmeImage` carries both the raw ref ids and the resolved records.
Sidecars are strict TSV files with a fixed header (see SIDECAR_COLUMNS);
one row annotates one image with biosample and imaging-condition details.

Timestamps must be ISO-8601 with an explicit timezone and are kept as the
original lexical strings so downstream RDF output stays byte-stable.
Decimal-valued fields use :class:`decimal.Decimal` for the same reason.
"""

from __future__ import annotations

import enum
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime
from decimal import Decimal, InvalidOperation
from typing import Optional

from .errors import (
    BadHeaderError,
    BadValueError,
    DanglingReferenceError,
    DuplicateIdError,
    DuplicateImageIdError,
    InvalidDimensionError,
    InvalidValueError,
    MalformedXmlError,
    MissingRequiredFieldError,
    OrphanAnnotationError,
    UnknownColumnError,
)

SIDECAR_COLUMNS = (
    "image_id", "sample_id", "container_id", "strain_id", "stain",
    "voltage_kv", "gun_type", "wavelength_pm", "phenotypes",
)

_CURIE_RE = re.compile(r"^[a-z][a-z0-9_]*:\S+$")

VOLTAGE_MAX_KV = Decimal("1000")


class InstrumentKind(enum.Enum):
    OPTICAL = "opticalMicroscope"
    ELECTRON = "electronMicroscope"


@dataclass(frozen=True)
class OmePixels:
    size_x: int
    size_y: int
    size_z: int
    size_c: int
    size_t: int
    physical_size_x: Optional[Decimal] = None  # micrometres
    physical_size_y: Optional[Decimal] = None


@dataclass(frozen=True)
class OmeInstrument:
    id: str
    kind: InstrumentKind
    model: Optional[str] = None


@dataclass(frozen=True)
class OmeExperimenter:
    id: str
    name: str
    email: Optional[str] = None


@dataclass(frozen=True)
class OmeImage:
    id: str
    name: str
    pixels: OmePixels
    acquisition_date: Optional[str] = None  # ISO-8601 with timezone
    instrument_ref: Optional[str] = None
    experimenter_ref: Optional[str] = None
    instrument: Optional[OmeInstrument] = None
    experimenter: Optional[OmeExperimenter] = None


@dataclass(frozen=True)
class OmeDocument:
    images: tuple
    instruments: tuple
    experimenters: tuple


@dataclass(frozen=True)
class EmAnnotation:
    """One sidecar row: EM and biosample context for one image."""

    image_id: str
    sample_id: str
    container_id: Optional[str] = None
    strain_id: Optional[str] = None  # CURIE, e.g. rikenbrc_mouse:RBRC00001
    staining_method: Optional[str] = None
    acceleration_voltage_kv: Optional[Decimal] = None
    electron_gun_type: Optional[str] = None
    electron_wavelength_pm: Optional[Decimal] = None
    phenotype_observations: tuple = field(default_factory=tuple)


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def _positive_int(el, attr, path):
    raw = el.get(attr)
    if raw is None:
        raise MissingRequiredFieldError(f"{path}@{attr}")
    try:
        value = int(raw)
    except ValueError:
        raise InvalidDimensionError(f"{path}@{attr}",
                                    f"{path}@{attr}: {raw!r} is not an integer") from None
    if value < 1:
        raise InvalidDimensionError(f"{path}@{attr}",
                                    f"{path}@{attr}: {value} violates >= 1")
    return value


def _positive_decimal(el, attr, path):
    raw = el.get(attr)
    if raw is None:
        return None
    try:
        value = Decimal(raw)
    except InvalidOperation:
        raise InvalidDimensionError(f"{path}@{attr}",
                                    f"{path}@{attr}: {raw!r} is not a decimal") from None
    if value <= 0:
        raise InvalidDimensionError(f"{path}@{attr}",
                                    f"{path}@{attr}: physical size must be > 0")
    return value


def _check_timestamp(raw, path):
    text = raw.replace("Z", "+00:00") if raw.endswith("Z") else raw
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        raise InvalidValueError(path, f"{raw!r} is not an ISO-8601 timestamp") from None
    if parsed.tzinfo is None:
        raise InvalidValueError(path, f"timestamp {raw!r} lacks a timezone")
    return raw


def _require(el, attr, path):
    value = el.get(attr)
    if value is None or value == "":
        raise MissingRequiredFieldError(f"{path}@{attr}")
    return value


def parse_ome_document(text: str) -> OmeDocument:
    """Parse an OME-XML document into fully resolved records.

    Duplicate ids and references to undeclared instruments/experimenters
    are errors; elements outside the supported subset are ignored.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as e:
        raise MalformedXmlError(f"not well-formed XML: {e}") from e
    if _local(root.tag) != "OME":
        raise MalformedXmlError(f"root element is {_local(root.tag)!r}, expected OME")

    instruments: dict = {}
    experimenters: dict = {}
    raw_images = []
    for child in root:
        tag = _local(child.tag)
        if tag == "Instrument":
            iid = _require(child, "ID", "/OME/Instrument")
            if iid in instruments:
                raise DuplicateIdError(iid)
            kind_raw = child.get("Kind", "Optical")
            try:
                kind = {"optical": InstrumentKind.OPTICAL,
                        "electron": InstrumentKind.ELECTRON}[kind_raw.lower()]
            except KeyError:
                raise InvalidValueError(
                    f"/OME/Instrument[{iid}]@Kind",
                    f"{kind_raw!r} is not Optical or Electron") from None
            instruments[iid] = OmeInstrument(iid, kind, child.get("Model"))
        elif tag == "Experimenter":
            eid = _require(child, "ID", "/OME/Experimenter")
            if eid in experimenters:
                raise DuplicateIdError(eid)
            experimenters[eid] = OmeExperimenter(
                eid, _require(child, "Name", f"/OME/Experimenter[{eid}]"),
                child.get("Email"))
        elif tag == "Image":
            raw_images.append(child)

    images = []
    seen_images = set()
    for el in raw_images:
        iid = _require(el, "ID", "/OME/Image")
        path = f"/OME/Image[{iid}]"
        if iid in seen_images:
            raise DuplicateIdError(iid)
        seen_images.add(iid)
        name = _require(el, "Name", path)
        pixels_el = None
        acq_date = None
        instrument_ref = None
        experimenter_ref = None
        for sub in el:
            tag = _local(sub.tag)
            if tag == "Pixels":
                pixels_el = sub
            elif tag == "AcquisitionDate":
                acq_date = _check_timestamp((sub.text or "").strip(),
                                            f"{path}/AcquisitionDate")
            elif tag == "InstrumentRef":
                instrument_ref = _require(sub, "ID", f"{path}/InstrumentRef")
            elif tag == "ExperimenterRef":
                experimenter_ref = _require(sub, "ID", f"{path}/ExperimenterRef")
        if pixels_el is None:
            raise MissingRequiredFieldError(f"{path}/Pixels")
        ppath = f"{path}/Pixels"
        pixels = OmePixels(
            size_x=_positive_int(pixels_el, "SizeX", ppath),
            size_y=_positive_int(pixels_el, "SizeY", ppath),
            size_z=_positive_int(pixels_el, "SizeZ", ppath),
            size_c=_positive_int(pixels_el, "SizeC", ppath),
            size_t=_positive_int(pixels_el, "SizeT", ppath),
            physical_size_x=_positive_decimal(pixels_el, "PhysicalSizeX", ppath),
            physical_size_y=_positive_decimal(pixels_el, "PhysicalSizeY", ppath),
        )
        if instrument_ref is not None and instrument_ref not in instruments:
            raise DanglingReferenceError(instrument_ref)
        if experimenter_ref is not None and experimenter_ref not in experimenters:
            raise DanglingReferenceError(experimenter_ref)
        images.append(OmeImage(
            id=iid, name=name, pixels=pixels, acquisition_date=acq_date,
            instrument_ref=instrument_ref, experimenter_ref=experimenter_ref,
            instrument=instruments.get(instrument_ref),
            experimenter=experimenters.get(experimenter_ref),
        ))
    return OmeDocument(tuple(images), tuple(instruments.values()),
                       tuple(experimenters.values()))


def _cell(value: str) -> Optional[str]:
    return value if value != "" else None


def _decimal_cell(raw, row, column):
    if raw == "":
        return None
    try:
        return Decimal(raw)
    except InvalidOperation:
        raise BadValueError(row, column, f"{raw!r} is not a number") from None


def parse_sidecar(text: str, strict: bool = True) -> list:
    """Parse a TSV sidecar into :class:`EmAnnotation` records.

    The header must match SIDECAR_COLUMNS exactly.  With ``strict`` (the
    default) out-of-range voltages and wavelengths are rejected here; with
    ``strict=False`` they parse and are left for the graph validator to
    flag.
    """
    lines = text.lstrip("﻿").splitlines()
    if not lines:
        raise BadHeaderError("empty sidecar, expected a header row")
    header = lines[0].split("\t")
    for name in header:
        if name not in SIDECAR_COLUMNS:
            raise UnknownColumnError(name)
    if tuple(header) != SIDECAR_COLUMNS:
        raise BadHeaderError(
            f"header {header!r} is not the required column list")

    records = []
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        cells = line.split("\t")
        if len(cells) != len(SIDECAR_COLUMNS):
            raise BadValueError(lineno, "row",
                                f"expected {len(SIDECAR_COLUMNS)} cells, found {len(cells)}")
        row = dict(zip(SIDECAR_COLUMNS, cells))
        image_id = row["image_id"]
        if not image_id:
            raise BadValueError(lineno, "image_id", "must not be empty")
        if image_id in seen:
            raise DuplicateImageIdError(image_id)
        seen.add(image_id)
        if not row["sample_id"]:
            raise BadValueError(lineno, "sample_id", "must not be empty")
        strain = _cell(row["strain_id"])
        if strain is not None and not _CURIE_RE.match(strain):
            raise BadValueError(lineno, "strain_id",
                                f"{strain!r} is not a prefix:localId CURIE")
        voltage = _decimal_cell(row["voltage_kv"], lineno, "voltage_kv")
        if strict and voltage is not None and not (0 < voltage <= VOLTAGE_MAX_KV):
            raise BadValueError(lineno, "voltage_kv",
                                f"{voltage} outside (0, {VOLTAGE_MAX_KV}]")
        wavelength = _decimal_cell(row["wavelength_pm"], lineno, "wavelength_pm")
        if strict and wavelength is not None and wavelength <= 0:
            raise BadValueError(lineno, "wavelength_pm", "must be > 0")
        phenotypes = tuple(
            p.strip() for p in row["phenotypes"].split(";") if p.strip()
        )
        records.append(EmAnnotation(
            image_id=image_id,
            sample_id=row["sample_id"],
            container_id=_cell(row["container_id"]),
            strain_id=strain,
            staining_method=_cell(row["stain"]),
            acceleration_voltage_kv=voltage,
            electron_gun_type=_cell(row["gun_type"]),
            electron_wavelength_pm=wavelength,
            phenotype_observations=phenotypes,
        ))
    return records


def join_annotations(doc: OmeDocument, annotations) -> list:
    """Pair every image with its annotation by image id.

    Output order and length follow ``doc.images``; images without a row
    pair with ``None``.  An annotation whose image id is not in the
    document raises :class:`OrphanAnnotationError`.
    """
    by_id = {}
    image_ids = {img.id for img in doc.images}
    for ann in annotations:
        if ann.image_id not in image_ids:
            raise OrphanAnnotationError(ann.image_id)
        by_id[ann.image_id] = ann
    return [(img, by_id.get(img.id)) for img in doc.images]
