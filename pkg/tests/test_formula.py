import pytest

from src.cli.formula import parse_formula
from src.app.errors import UsageError


@pytest.mark.parametrize(
    "text,expected",
    [
        ("y ~ x", ("y", ["x"])),
        ("kcal24h0 ~ hunger + liking", ("kcal24h0", ["hunger", "liking"])),
        ("  a.b~c_1+ .d  ", ("a.b", ["c_1", ".d"])),
    ],
)
def test_parse_formula(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text", ["y", "y ~", "~ x", "y ~ x ~ z", "y ~ x +", "y ~ 1x", "y ~ x * z", None])
def test_malformed_formula(text):
    with pytest.raises(UsageError) as caught:
        parse_formula(text)
    assert caught.value.code == "BAD_FORMULA"
    assert caught.value.field == "formula"


@pytest.mark.parametrize("text", ["y ~ x + x", "y ~ x + y"])
def test_repeated_names(text):
    with pytest.raises(UsageError) as caught:
        parse_formula(text)
    assert caught.value.code == "DUPLICATE_COVARIATE"
