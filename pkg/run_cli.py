#!/usr/bin/env python3
"""
Command line startup script
Fit, print and render subgroup trees, e.g.

    python run_cli.py render --data intake.csv --formula "kcal24h0 ~ hunger + liking" --out fig.svg
"""
import sys
import os

# Add the project root to Python path so imports work
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from src.cli.main import main

if __name__ == "__main__":
    main()
