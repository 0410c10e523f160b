"""Command-line front door of BranchLab."""
