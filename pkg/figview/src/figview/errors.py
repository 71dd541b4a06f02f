"""Exception types for CSV ingestion and rendering."""


class FigviewError(Exception):
    """Base class for figview failures."""


class MissingColumnError(FigviewError):
    """A column referenced by the plot spec is absent from the CSV header."""


class RaggedGridError(FigviewError):
    """The CSV rows do not form a complete rectangular grid."""
