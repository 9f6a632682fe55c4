"""ontolint: quality assurance for RDF ontologies."""

__version__ = "0.1.0"
