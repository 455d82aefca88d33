"""Runs the command-line interface via ``python -m ddsolve``."""

from __future__ import annotations

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
