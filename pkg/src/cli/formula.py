"""
Model formulas of the form "outcome ~ cov1 + cov2 + ..."
"""
import re
from typing import List, Tuple

from src.app.errors import UsageError

_NAME = re.compile(r"^[A-Za-z_.][A-Za-z0-9_.]*$")


def _name(text: str, formula: str) -> str:
    name = text.strip()
    if not _NAME.match(name):
        raise UsageError(f"malformed formula '{formula}': '{name}' is not a column name", "BAD_FORMULA", "formula")
    return name


def parse_formula(text: str) -> Tuple[str, List[str]]:
    """
    Split a formula into its outcome and ordered covariate names

    Raises UsageError on malformed syntax, a repeated covariate or an
    outcome that also appears on the right-hand side.
    """
    if text is None or text.count("~") != 1:
        raise UsageError(f"malformed formula '{text}': expected 'outcome ~ cov1 + cov2'", "BAD_FORMULA", "formula")
    left, right = text.split("~")
    outcome = _name(left, text)
    covariates = [_name(term, text) for term in right.split("+")]

    seen = set()
    for name in covariates:
        if name == outcome:
            raise UsageError(f"outcome '{name}' also appears as a covariate", "DUPLICATE_COVARIATE", "formula")
        if name in seen:
            raise UsageError(f"covariate '{name}' appears twice", "DUPLICATE_COVARIATE", "formula")
        seen.add(name)
    return outcome, covariates
