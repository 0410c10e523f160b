#!/usr/bin/env python3
"""
Main entry point for BranchLab.

    python run.py demo abc-bets
    python run.py check-axioms abc.json --strategy counting_eu
"""

import sys

from app.cli import run


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
