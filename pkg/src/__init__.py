"""BranchLab: consistent histories, quantum decision problems and their axioms."""

__version__ = "1.0.0"
