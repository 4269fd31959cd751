"""
Display options for subgroup figures
"""
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.app.errors import RenderError


class RenderOptions(BaseModel):
    """
    Palette, transparency, text scaling, rounding, axes and overlays

    text_title scales subplot titles, text_main the figure heading,
    text_axis axis titles, text_label tick and bin labels, text_bar the
    constraint bar labels and text_percentile the percentile axis labels.
    """
    model_config = ConfigDict(frozen=True)

    color_type: int = Field(1, ge=1, le=5, description="1 rainbow, 2 heat, 3 terrain, 4 sequential, 5 diverging")
    alpha: float = Field(0.5, ge=0.0, le=1.0, description="Opacity of the constraint bars")
    text_title: float = Field(1.5, gt=0.0)
    text_axis: float = Field(1.5, gt=0.0)
    text_main: float = Field(1.5, gt=0.0)
    text_label: float = Field(1.5, gt=0.0)
    text_bar: float = Field(1.5, gt=0.0)
    text_percentile: float = Field(0.7, gt=0.0)
    text_round: int = Field(1, ge=0, le=12, description="Decimals in titles and bar labels")
    add_h_axis: bool = False
    add_p_axis: bool = False
    density_line: bool = True
    interval_mode: bool = False

    @classmethod
    def create(cls, **values) -> "RenderOptions":
        """Validate user supplied options; None values keep the defaults"""
        try:
            return cls(**{key: value for key, value in values.items() if value is not None})
        except ValidationError as exc:
            problem = exc.errors()[0]
            field_name = str(problem["loc"][0]) if problem["loc"] else "options"
            code = "INVALID_COLOR_TYPE" if field_name == "color_type" else "INVALID_OPTIONS"
            raise RenderError(f"invalid {field_name}: {problem['msg']}", code, field_name)
