"""Argus: assurance arguments whose evidence is discharged against guarded-command models."""

__version__ = "0.1.0"
