"""
Request models define what clients send to the API
These use Pydantic for automatic validation
"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class PrintTreeRequest(BaseModel):
    """
    A tree interchange document to list as text
    """
    tree: Dict[str, Any] = Field(..., description="Tree interchange document")

    model_config = {
        "json_schema_extra": {
            "example": {
                "tree": {
                    "version": 1,
                    "outcome": {"name": "y", "kind": "continuous"},
                    "covariates": [{"name": "x", "kind": "continuous"}],
                    "nodes": [{"id": 1, "n": 10, "terminal": {"mean": 1.5, "err": 2.0}}],
                }
            }
        }
    }


class FitParameters(BaseModel):
    """
    Model formula and tree controls sent as form fields next to a CSV upload
    """
    formula: str = Field(..., description="Model formula, e.g. 'kcal24h0 ~ hunger + liking'")
    alpha: Optional[float] = Field(None, description="Significance level (default 0.05)")
    mincriterion: Optional[float] = Field(None, description="1 - alpha; give either this or alpha")
    minbucket: Optional[int] = Field(None, description="Minimum rows per terminal node (default 7)")
    minsplit: Optional[int] = Field(None, description="Minimum rows to attempt a split (default 20)")
    maxdepth: Optional[int] = Field(None, description="Maximum depth, unlimited when omitted")
    cut: Optional[str] = Field(None, description="Quantile probabilities used to discretize the outcome")
    cut_breaks: Optional[str] = Field(None, description="Explicit breakpoints used to discretize the outcome")


class RenderParameters(BaseModel):
    """
    Display options for a rendered figure; omitted fields keep their defaults
    """
    color_type: Optional[int] = Field(None, description="1 rainbow, 2 heat, 3 terrain, 4 sequential, 5 diverging")
    bar_alpha: Optional[float] = Field(None, description="Opacity of the constraint bars")
    text_title: Optional[float] = None
    text_axis: Optional[float] = None
    text_main: Optional[float] = None
    text_label: Optional[float] = None
    text_bar: Optional[float] = None
    text_percentile: Optional[float] = None
    text_round: Optional[int] = None
    interval: Optional[bool] = None
    density_line: Optional[bool] = None
    add_h_axis: Optional[bool] = None
    add_p_axis: Optional[bool] = None
    width: Optional[int] = Field(None, description="Canvas width in pixels")
    height: Optional[int] = Field(None, description="Canvas height in pixels")
