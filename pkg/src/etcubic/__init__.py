"""Edge-transitive cubic graphs: amalgam catalog, coset enumeration,
census pipeline, classification, and regular covers."""

__version__ = "0.1.0"
