#!/usr/bin/env python3
"""
Script to run the spectra command-line tool.
"""

from src.cli.main import main

if __name__ == "__main__":
    main()
