"""Namespaced tag vocabularies and incident classifications.

Namespaces are independently owned; a classification attaches one
(namespace, tag) pair to an incident. Search faceting and summaries are
driven from here but applied by the service layer.
"""

from __future__ import annotations

from datetime import date

from . import errors
from .models import Classification, TaxonomyNamespace

FACET_SEPARATOR = ":"


class TaxonomyStore:
    def __init__(self) -> None:
        self._namespaces: dict[str, TaxonomyNamespace] = {}
        # Insertion-ordered; keys are (incident, namespace, tag).
        self._classifications: dict[tuple[int, str, str], Classification] = {}

    # -- namespaces --------------------------------------------------------

    def register(self, definition: TaxonomyNamespace) -> None:
        name = definition.name
        if not name or FACET_SEPARATOR in name:
            raise errors.InvalidName(
                f"namespace name {name!r} is empty or contains {FACET_SEPARATOR!r}"
            )
        if name in self._namespaces:
            raise errors.DuplicateNamespace(f"namespace {name!r} already registered")
        tag_names = definition.tag_names()
        if len(set(tag_names)) != len(tag_names):
            raise errors.InvalidName(f"namespace {name!r} has duplicate tags")
        if any(not t for t in tag_names):
            raise errors.InvalidName(f"namespace {name!r} has an empty tag name")
        self._namespaces[name] = definition

    def namespace(self, name: str) -> TaxonomyNamespace:
        try:
            return self._namespaces[name]
        except KeyError:
            raise errors.UnknownNamespace(f"namespace {name!r} does not exist") from None

    def has_namespace(self, name: str) -> bool:
        return name in self._namespaces

    def namespaces(self) -> list[TaxonomyNamespace]:
        return [self._namespaces[k] for k in sorted(self._namespaces)]

    # -- classifications ----------------------------------------------------

    def classify(
        self, incident_number: int, namespace: str, tag: str, classifier: str, when: date
    ) -> Classification:
        definition = self.namespace(namespace)
        if tag not in definition.tag_names():
            raise errors.UnknownTag(f"tag {tag!r} not defined in namespace {namespace!r}")
        key = (incident_number, namespace, tag)
        if key in self._classifications:
            raise errors.DuplicateClassification(
                f"incident {incident_number} already classified {namespace}:{tag}"
            )
        classification = Classification(
            incident_number=incident_number,
            namespace=namespace,
            tag=tag,
            classifier=classifier,
            date=when,
        )
        self._classifications[key] = classification
        return classification

    def has_classification(self, incident_number: int, namespace: str, tag: str) -> bool:
        return (incident_number, namespace, tag) in self._classifications

    def declassify(self, incident_number: int, namespace: str, tag: str) -> Classification:
        key = (incident_number, namespace, tag)
        try:
            return self._classifications.pop(key)
        except KeyError:
            raise errors.UnknownClassification(
                f"incident {incident_number} is not classified {namespace}:{tag}"
            ) from None

    def drop_incident(self, incident_number: int) -> list[Classification]:
        """Remove every classification of a retired incident."""
        dropped = [
            c for key, c in self._classifications.items() if key[0] == incident_number
        ]
        for classification in dropped:
            del self._classifications[
                (incident_number, classification.namespace, classification.tag)
            ]
        return dropped

    def for_incident(self, incident_number: int) -> list[Classification]:
        return [
            c for key, c in sorted(self._classifications.items()) if key[0] == incident_number
        ]

    def incidents_with(self, namespace: str, tag: str) -> list[int]:
        return sorted(
            key[0]
            for key in self._classifications
            if key[1] == namespace and key[2] == tag
        )

    def classifications(self) -> list[Classification]:
        return [self._classifications[k] for k in sorted(self._classifications)]

    def tags_for_incident(self, incident_number: int) -> dict[str, set[str]]:
        """Facet values per namespace for one incident."""
        values: dict[str, set[str]] = {}
        for key in self._classifications:
            if key[0] == incident_number:
                values.setdefault(key[1], set()).add(key[2])
        return values
