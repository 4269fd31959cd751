"""
Fitting controls: significance level, node size limits and depth cap
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.app.errors import FitError


class FitControls(BaseModel):
    """
    Controls for conditional inference tree growth

    alpha is the significance level applied to the Bonferroni adjusted
    p-value; mincriterion = 1 - alpha is the equivalent threshold on
    1 - adjusted p. maxdepth None means unlimited.
    """
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(0.05, gt=0.0, lt=1.0, description="Significance level")
    minbucket: int = Field(7, ge=1, description="Minimum rows in a terminal node")
    minsplit: int = Field(20, ge=2, description="Minimum rows for a node to be split")
    maxdepth: Optional[int] = Field(None, ge=1, description="Maximum depth, None for unlimited")

    @property
    def mincriterion(self) -> float:
        return 1.0 - self.alpha

    def allows_split(self, adjusted_p: float) -> bool:
        return adjusted_p <= self.alpha

    @classmethod
    def create(
        cls,
        alpha: Optional[float] = None,
        mincriterion: Optional[float] = None,
        minbucket: Optional[int] = None,
        minsplit: Optional[int] = None,
        maxdepth: Optional[int] = None,
    ) -> "FitControls":
        """
        Build controls from user input; at most one of alpha and
        mincriterion may be given, the other is derived
        """
        if alpha is not None and mincriterion is not None:
            raise FitError("give either alpha or mincriterion, not both", "INVALID_CONTROLS", "mincriterion")
        if mincriterion is not None:
            if not 0.0 < mincriterion < 1.0:
                raise FitError(f"mincriterion must lie in (0, 1), got {mincriterion}", "INVALID_CONTROLS", "mincriterion")
            alpha = 1.0 - mincriterion

        values = {
            "alpha": alpha,
            "minbucket": minbucket,
            "minsplit": minsplit,
            "maxdepth": maxdepth,
        }
        try:
            return cls(**{key: value for key, value in values.items() if value is not None})
        except ValidationError as exc:
            problem = exc.errors()[0]
            field_name = ".".join(str(part) for part in problem["loc"])
            raise FitError(f"invalid {field_name}: {problem['msg']}", "INVALID_CONTROLS", field_name)
