"""Exception hierarchy shared by all rulegauge modules.

Plain I/O failures are reported with the builtin ``OSError`` family;
everything domain-specific derives from :class:`RuleGaugeError`.
"""

from __future__ import annotations


class RuleGaugeError(Exception):
    """Base class for all rulegauge errors."""


class MalformedDocument(RuleGaugeError):
    """Input is not a syntactically valid scenario document."""


class SchemaViolation(RuleGaugeError):
    """Document parsed, but a field is missing, ill-typed, or invalid.

    ``path`` is a JSON-pointer-like location of the offending field
    (e.g. ``/frames/0/vehicles/2/vx``); it is empty when the failure came
    from whole-scenario invariant validation, in which case ``violations``
    carries the full list of findings.
    """

    def __init__(self, path: str, detail: str, violations: list[str] | None = None):
        super().__init__(f"{path}: {detail}" if path else detail)
        self.path = path
        self.detail = detail
        self.violations = list(violations) if violations else []


class UnsupportedVersion(RuleGaugeError):
    """Document declares a schema version this build does not understand."""


class InvalidRate(RuleGaugeError):
    """Requested subsampling rate exceeds the scenario's native rate."""


class DegenerateVehicle(RuleGaugeError):
    """Vehicle footprint has non-positive length or width."""


class EmptyPolyline(RuleGaugeError):
    """Polyline has no points."""


class ZeroVector(RuleGaugeError):
    """Angle requested between vectors where at least one is zero."""


class MixedRules(RuleGaugeError):
    """Aggregation received samples from more than one rule."""


class EmptyScenario(RuleGaugeError):
    """Scenario-level mean requested over zero driver scores."""


class EmptyDataset(RuleGaugeError):
    """Dataset-level mean requested over zero scenario scores."""


class EmptyInput(RuleGaugeError):
    """Distribution summary requested over zero values."""


class InfeasibleSpec(RuleGaugeError):
    """Synthetic-generation spec cannot be realized as stated."""
