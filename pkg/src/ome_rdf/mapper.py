"""Image-plus-annotation pairs to RDF instance graphs.

Every node is minted as a deterministic IRI derived from input ids
(skolemization), so identical inputs always produce byte-identical
canonical output and shared entities (a biosample appearing under several
images) collapse by plain set semantics when graphs merge.  The emitted
shape per image: the typed image node with its pixel dimensions, links to
typed experimenter/instrument nodes, and, when annotated, the chain
image -> biosample -> external strain IRI together with sample container,
sample preparation, imaging condition, and one phenotype-observation node
per recorded observation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from urllib.parse import quote

from .errors import (
    EmptyLocalIdError,
    LinkRegistryError,
    MappingFailedError,
    OrphanAnnotationError,
    UnknownClassInRegistryError,
    UnresolvableStrainError,
)
from .namespaces import (
    DEFAULT_INSTANCE_BASE,
    RDF_TYPE,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_INTEGER,
    XSD_NS,
)
from .ome_xml import EmAnnotation, InstrumentKind, OmeDocument, OmeImage, join_annotations
from .ontology import OntologyClass, OntologyRegistry
from .rdf import Graph, Iri, Literal, Triple


@dataclass(frozen=True)
class MintingPolicy:
    """Where and how instance IRIs are minted.

    ``skolemize`` is fixed true: this toolkit never emits blank nodes of
    its own, which is what keeps batch output canonical.
    """

    instance_base: Iri = Iri(DEFAULT_INSTANCE_BASE)
    skolemize: bool = True

    def __post_init__(self):
        if isinstance(self.instance_base, str):
            object.__setattr__(self, "instance_base", Iri(self.instance_base))
        if not self.instance_base.value.endswith(("/", "#")):
            raise ValueError("instance base must end with '/' or '#'")
        if not self.skolemize:
            raise ValueError("blank-node minting is not supported")


def mint_iri(policy: MintingPolicy, cls: OntologyClass, local_id: str) -> Iri:
    """``instanceBase + lowercased class label + "/" + percent-encoded id``."""
    if local_id == "":
        raise EmptyLocalIdError("cannot mint an IRI from an empty local id")
    return Iri(policy.instance_base.value + cls.label.lower() + "/"
               + quote(local_id, safe=""))


@dataclass(frozen=True)
class MappedRecord:
    image_iri: Iri
    graph: Graph
    triple_count: int
    external_links: tuple

    def __post_init__(self):
        if self.triple_count != len(self.graph):
            raise ValueError("triple_count out of sync with graph size")


def _class(registry: OntologyRegistry, label: str) -> OntologyClass:
    cls = registry.class_by_label(label)
    if cls is None:
        raise UnknownClassInRegistryError(f"registry has no {label!r} class")
    return cls


def _prop(registry: OntologyRegistry, label: str) -> Iri:
    p = registry.property_by_label(label)
    if p is None:
        raise UnknownClassInRegistryError(f"registry has no {label!r} property")
    return p.iri


def map_pair(
    img: OmeImage,
    ann: Optional[EmAnnotation],
    registry: OntologyRegistry,
    policy: MintingPolicy,
    links,
) -> MappedRecord:
    """Convert one image (and its optional annotation) to a graph.

    Pure and deterministic; the annotation, when given, must belong to the
    image.  Strain CURIEs resolve through ``links`` and surface in
    ``external_links``; resolution failures raise
    :class:`UnresolvableStrainError`.
    """
    if ann is not None and ann.image_id != img.id:
        raise ValueError(f"annotation {ann.image_id!r} does not belong to image {img.id!r}")

    rdf_type = Iri(RDF_TYPE)
    int_dt = Iri(XSD_INTEGER)
    dec_dt = Iri(XSD_DECIMAL)

    image_cls = _class(registry, "Image")
    image_iri = mint_iri(policy, image_cls, img.id)
    triples = [
        Triple(image_iri, rdf_type, image_cls.iri),
        Triple(image_iri, _prop(registry, "name"), Literal(img.name)),
        Triple(image_iri, _prop(registry, "sizeX"), Literal(str(img.pixels.size_x), int_dt)),
        Triple(image_iri, _prop(registry, "sizeY"), Literal(str(img.pixels.size_y), int_dt)),
        Triple(image_iri, _prop(registry, "sizeZ"), Literal(str(img.pixels.size_z), int_dt)),
        Triple(image_iri, _prop(registry, "sizeC"), Literal(str(img.pixels.size_c), int_dt)),
        Triple(image_iri, _prop(registry, "sizeT"), Literal(str(img.pixels.size_t), int_dt)),
    ]
    if img.pixels.physical_size_x is not None:
        triples.append(Triple(image_iri, _prop(registry, "physicalSizeX"),
                              Literal(str(img.pixels.physical_size_x), dec_dt)))
    if img.pixels.physical_size_y is not None:
        triples.append(Triple(image_iri, _prop(registry, "physicalSizeY"),
                              Literal(str(img.pixels.physical_size_y), dec_dt)))
    if img.acquisition_date is not None:
        triples.append(Triple(image_iri, _prop(registry, "acquisitionDate"),
                              Literal(img.acquisition_date, Iri(XSD_DATETIME))))

    if img.experimenter is not None:
        exp_iri = mint_iri(policy, _class(registry, "Experimenter"), img.experimenter.id)
        triples.append(Triple(image_iri, _prop(registry, "acquiredBy"), exp_iri))
        triples.append(Triple(exp_iri, rdf_type, _class(registry, "Experimenter").iri))
        triples.append(Triple(exp_iri, _prop(registry, "fullName"),
                              Literal(img.experimenter.name)))
        if img.experimenter.email is not None:
            triples.append(Triple(exp_iri, _prop(registry, "email"),
                                  Literal(img.experimenter.email)))

    if img.instrument is not None:
        # minted under the generic instrument path so the IRI is computable
        # from the ref alone; the type triple carries the specific class
        instr_iri = mint_iri(policy, _class(registry, "Instrument"), img.instrument.id)
        instr_cls = _class(
            registry,
            "ElectronMicroscope" if img.instrument.kind is InstrumentKind.ELECTRON
            else "Instrument",
        )
        triples.append(Triple(image_iri, _prop(registry, "acquiredWith"), instr_iri))
        triples.append(Triple(instr_iri, rdf_type, instr_cls.iri))
        if img.instrument.model is not None:
            triples.append(Triple(instr_iri, _prop(registry, "model"),
                                  Literal(img.instrument.model)))

    external = []
    if ann is not None:
        sample_iri = mint_iri(policy, _class(registry, "BioSample"), ann.sample_id)
        triples.append(Triple(sample_iri, rdf_type, _class(registry, "BioSample").iri))
        triples.append(Triple(image_iri, _prop(registry, "depicts"), sample_iri))

        if ann.container_id is not None:
            cont_iri = mint_iri(policy, _class(registry, "SampleContainer"), ann.container_id)
            triples.append(Triple(cont_iri, rdf_type,
                                  _class(registry, "SampleContainer").iri))
            triples.append(Triple(sample_iri, _prop(registry, "containedIn"), cont_iri))

        if ann.strain_id is not None:
            try:
                strain_iri = links.resolve(ann.strain_id)
            except LinkRegistryError as e:
                raise UnresolvableStrainError(ann.strain_id, str(e)) from e
            triples.append(Triple(sample_iri, _prop(registry, "derivedFrom"), strain_iri))
            external.append(strain_iri)

        if ann.staining_method is not None:
            prep_iri = mint_iri(policy, _class(registry, "SamplePreparation"), img.id)
            triples.append(Triple(prep_iri, rdf_type,
                                  _class(registry, "SamplePreparation").iri))
            triples.append(Triple(sample_iri, _prop(registry, "preparedBy"), prep_iri))
            triples.append(Triple(prep_iri, _prop(registry, "stainingMethod"),
                                  Literal(ann.staining_method)))

        if (ann.acceleration_voltage_kv is not None
                or ann.electron_gun_type is not None
                or ann.electron_wavelength_pm is not None):
            cond_iri = mint_iri(policy, _class(registry, "ImagingCondition"), img.id)
            triples.append(Triple(cond_iri, rdf_type,
                                  _class(registry, "ImagingCondition").iri))
            triples.append(Triple(image_iri, _prop(registry, "hasImagingCondition"),
                                  cond_iri))
            if ann.acceleration_voltage_kv is not None:
                triples.append(Triple(cond_iri, _prop(registry, "accelerationVoltage"),
                                      Literal(str(ann.acceleration_voltage_kv), dec_dt)))
            if ann.electron_gun_type is not None:
                triples.append(Triple(cond_iri, _prop(registry, "electronGunType"),
                                      Literal(ann.electron_gun_type)))
            if ann.electron_wavelength_pm is not None:
                triples.append(Triple(cond_iri, _prop(registry, "electronWavelength"),
                                      Literal(str(ann.electron_wavelength_pm), dec_dt)))

        pheno_cls = _class(registry, "PhenotypeData")
        has_obs = _prop(registry, "hasObservation")
        desc = _prop(registry, "description")
        for i, observation in enumerate(ann.phenotype_observations):
            pheno_iri = mint_iri(policy, pheno_cls, f"{img.id}-p{i}")
            triples.append(Triple(pheno_iri, rdf_type, pheno_cls.iri))
            triples.append(Triple(image_iri, has_obs, pheno_iri))
            triples.append(Triple(pheno_iri, desc, Literal(observation)))

    graph = Graph(triples, _instance_prefixes(registry, policy))
    return MappedRecord(image_iri, graph, len(graph), tuple(external))


def _instance_prefixes(registry: OntologyRegistry, policy: MintingPolicy) -> dict:
    return {
        "mo": registry.namespace.value,
        "res": policy.instance_base.value,
        "xsd": XSD_NS,
    }


@dataclass(frozen=True)
class SkippedRecord:
    image_id: str
    code: str
    message: str


@dataclass(frozen=True)
class MapResult:
    graph: Graph
    records: tuple
    skipped: tuple = ()


def map_all(
    pairs,
    registry: OntologyRegistry,
    policy: MintingPolicy,
    links,
    skip_errors: bool = False,
) -> MapResult:
    """Map many (image, annotation) pairs and merge their graphs.

    The merged graph equals a graph_merge fold of the per-record graphs
    (all nodes are skolem IRIs, so merging is plain set union).  Record
    order follows the input.  Without ``skip_errors`` the first failure
    raises :class:`MappingFailedError`; with it, failures become
    :class:`SkippedRecord` entries.
    """
    records = []
    skipped = []
    triples = []
    for img, ann in pairs:
        try:
            record = map_pair(img, ann, registry, policy, links)
        except Exception as e:
            if not skip_errors:
                raise MappingFailedError(img.id, e) from e
            skipped.append(SkippedRecord(img.id, getattr(e, "code", "Error"), str(e)))
            continue
        records.append(record)
        triples.extend(record.graph)
    merged = Graph(triples, _instance_prefixes(registry, policy))
    return MapResult(merged, tuple(records), tuple(skipped))


def map_document(
    doc: OmeDocument,
    annotations,
    registry: OntologyRegistry,
    policy: MintingPolicy,
    links,
    skip_errors: bool = False,
) -> MapResult:
    """Join a document with its sidecar annotations and map everything.

    With ``skip_errors``, orphan annotations (rows naming unknown images)
    are reported in ``skipped`` instead of raising.
    """
    skipped = []
    if skip_errors:
        known = {img.id for img in doc.images}
        kept = []
        for ann in annotations:
            if ann.image_id in known:
                kept.append(ann)
            else:
                err = OrphanAnnotationError(ann.image_id)
                skipped.append(SkippedRecord(ann.image_id, err.code, str(err)))
        annotations = kept
    pairs = join_annotations(doc, annotations)
    result = map_all(pairs, registry, policy, links, skip_errors=skip_errors)
    return MapResult(result.graph, result.records, tuple(skipped) + result.skipped)
