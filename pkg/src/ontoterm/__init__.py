"""ontoterm: terminology extraction, genus-differentia ontologies, and
concept-based document retrieval for technical corpora."""

__version__ = "0.1.0"
