"""
Error hierarchy shared by the data, fitting, tree model and rendering layers
Every error carries a machine readable code, the same way API results do
"""
from typing import Optional


class SubgroupTreeError(Exception):
    """
    Base error for everything this package raises on purpose
    """
    code: str = "SUBGROUP_TREE_ERROR"

    def __init__(self, message: str, code: Optional[str] = None, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        # offending option or input, when there is one
        self.field = field
        if code:
            self.code = code

    def __str__(self) -> str:
        return self.message


class DataError(SubgroupTreeError):
    """Ingestion and statistics failures (bad CSV, empty input, zero spread...)"""
    code = "DATA_ERROR"


class FitError(SubgroupTreeError):
    """Tree fitting failures (invalid controls, no admissible split...)"""
    code = "FIT_ERROR"


class TreeModelError(SubgroupTreeError):
    """Malformed trees, interchange documents and subgroup paths"""
    code = "TREE_MODEL_ERROR"


class RenderError(SubgroupTreeError):
    """Figure construction failures"""
    code = "RENDER_ERROR"


class UsageError(SubgroupTreeError):
    """Bad command line usage; maps to exit status 1"""
    code = "USAGE_ERROR"
