"""
Typed tabular data: one outcome column plus ordered covariate columns
Loaded from CSV with pandas and frozen after construction
"""
import os
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.app.errors import DataError

CONTINUOUS = "continuous"
CATEGORICAL = "categorical"
COLUMN_KINDS = (CONTINUOUS, CATEGORICAL)

_INTERVAL_LABEL = re.compile(r"^[\[(]\s*([^,\s]+)\s*,\s*([^\]\s]+)\s*\]$")


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class Column:
    """
    A named column; continuous columns hold finite floats, categorical
    columns hold integer codes into an ordered label tuple
    """
    name: str
    kind: str
    values: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise DataError("column names must be non-empty", "INVALID_COLUMN")
        if self.kind not in COLUMN_KINDS:
            raise DataError(f"unknown column kind '{self.kind}' for {self.name}", "INVALID_COLUMN")
        if self.kind == CONTINUOUS:
            values = np.asarray(self.values, dtype=float)
            if not np.all(np.isfinite(values)):
                raise DataError(f"column '{self.name}' holds non-finite values", "MISSING_VALUE")
            object.__setattr__(self, "labels", ())
        else:
            values = np.asarray(self.values, dtype=np.int64)
            if values.size and (values.min() < 0 or values.max() >= len(self.labels)):
                raise DataError(f"column '{self.name}' has codes outside its label list", "INVALID_COLUMN")
            object.__setattr__(self, "labels", tuple(str(label) for label in self.labels))
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def continuous(cls, name: str, values: Iterable[float]) -> "Column":
        return cls(name, CONTINUOUS, np.asarray(list(values), dtype=float))

    @classmethod
    def categorical(cls, name: str, codes: Iterable[int], labels: Sequence[str]) -> "Column":
        return cls(name, CATEGORICAL, np.asarray(list(codes), dtype=np.int64), tuple(labels))

    @property
    def is_continuous(self) -> bool:
        return self.kind == CONTINUOUS

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def take(self, rows: np.ndarray) -> "Column":
        return Column(self.name, self.kind, self.values[rows], self.labels)

    def decoded(self) -> List[str]:
        """Category labels per row (categorical columns only)"""
        return [self.labels[code] for code in self.values]


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Outcome column plus m >= 1 covariates, all of length n_rows >= 1
    """
    outcome: Column
    covariates: Tuple[Column, ...]
    _index: Dict[str, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        covariates = tuple(self.covariates)
        object.__setattr__(self, "covariates", covariates)
        if not covariates:
            raise DataError("a dataset needs at least one covariate", "INVALID_DATASET")
        names = [self.outcome.name] + [column.name for column in covariates]
        if len(set(names)) != len(names):
            raise DataError(f"column names must be unique: {names}", "INVALID_DATASET")
        n_rows = len(self.outcome)
        if n_rows < 1:
            raise DataError("a dataset needs at least one row", "EMPTY_INPUT")
        for column in covariates:
            if len(column) != n_rows:
                raise DataError(
                    f"column '{column.name}' has {len(column)} rows, expected {n_rows}",
                    "INVALID_DATASET",
                )
        object.__setattr__(self, "_index", {column.name: i for i, column in enumerate(covariates)})

    @property
    def n_rows(self) -> int:
        return len(self.outcome)

    @property
    def m(self) -> int:
        return len(self.covariates)

    @property
    def covariate_names(self) -> Tuple[str, ...]:
        return tuple(column.name for column in self.covariates)

    def has_covariate(self, name: str) -> bool:
        return name in self._index

    def covariate_index(self, name: str) -> int:
        if name not in self._index:
            raise DataError(f"unknown covariate '{name}'", "MISSING_COLUMN")
        return self._index[name]

    def covariate(self, name: str) -> Column:
        return self.covariates[self.covariate_index(name)]

    def take(self, rows: Sequence[int]) -> "Dataset":
        """Row subset view, used by the fitter for each node"""
        rows = np.asarray(rows, dtype=np.int64)
        return Dataset(self.outcome.take(rows), tuple(column.take(rows) for column in self.covariates))

    def with_outcome(self, outcome: Column) -> "Dataset":
        return Dataset(outcome, self.covariates)

    def row(self, i: int) -> Dict[str, float]:
        """Covariate values of one row keyed by name"""
        return {column.name: float(column.values[i]) for column in self.covariates if column.is_continuous}


def label_sort_key(label: str):
    """
    Interval labels such as "(1561,1908]" sort by their lower endpoint,
    everything else sorts lexicographically after them
    """
    match = _INTERVAL_LABEL.match(label)
    if match:
        try:
            return (0, float(match.group(1)), label)
        except ValueError:
            pass
    return (1, 0.0, label)


def _parse_continuous(cells: pd.Series) -> Optional[np.ndarray]:
    numbers = pd.to_numeric(cells, errors="coerce").to_numpy(dtype=float)
    if np.all(np.isfinite(numbers)):
        return numbers
    return None


def _build_column(name: str, cells: pd.Series, kind_hint: Optional[str], path: str) -> Column:
    if kind_hint is not None and kind_hint not in COLUMN_KINDS:
        raise DataError(f"unknown kind hint '{kind_hint}' for column '{name}'", "INVALID_COLUMN")

    if kind_hint != CATEGORICAL:
        numbers = _parse_continuous(cells)
        if numbers is not None:
            return Column(name, CONTINUOUS, numbers)
        if kind_hint == CONTINUOUS:
            numeric = pd.to_numeric(cells, errors="coerce").to_numpy(dtype=float)
            bad = int(np.flatnonzero(~np.isfinite(numeric))[0])
            raise DataError(
                f"{path}: unparseable value '{cells.iloc[bad]}' in continuous column '{name}' (row {bad + 1})",
                "UNPARSEABLE_CELL",
            )

    labels = sorted(set(cells.tolist()), key=label_sort_key)
    lookup = {label: code for code, label in enumerate(labels)}
    codes = np.array([lookup[cell] for cell in cells.tolist()], dtype=np.int64)
    return Column(name, CATEGORICAL, codes, tuple(labels))


def _reject_long_row(line: List[str]):
    raise DataError(f"row with {len(line)} fields does not match the header", "FIELD_COUNT")


def load_csv(
    path: str,
    outcome_name: str,
    covariate_names: Sequence[str],
    kinds: Optional[Mapping[str, str]] = None,
) -> Dataset:
    """
    Read a comma separated, double-quoted, UTF-8 file with a header row

    Args:
        path: CSV file
        outcome_name: outcome column
        covariate_names: covariate columns, in the order the dataset keeps them
        kinds: optional per-column "continuous" / "categorical" overrides

    Returns:
        Dataset holding only the requested columns; a column is continuous
        when every cell parses as a finite number unless a hint says otherwise
    """
    kinds = dict(kinds or {})
    if not os.path.isfile(path):
        raise DataError(f"file not found: {path}", "MISSING_FILE")

    try:
        frame = pd.read_csv(
            path,
            sep=",",
            quotechar='"',
            encoding="utf-8-sig",
            header=None,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            engine="python",
            on_bad_lines=_reject_long_row,
        )
    except DataError as exc:
        raise DataError(f"{path}: {exc.message}", exc.code)
    except pd.errors.EmptyDataError:
        raise DataError(f"{path}: no header row", "EMPTY_INPUT")
    except UnicodeDecodeError:
        raise DataError(f"{path}: not valid UTF-8 text", "ENCODING")
    except (pd.errors.ParserError, ValueError) as exc:
        raise DataError(f"{path}: could not parse CSV: {exc}", "FIELD_COUNT")

    # the header row is read as data so that every line is field-count checked
    header = [str(name).strip() for name in frame.iloc[0].tolist()]
    frame = frame.iloc[1:].reset_index(drop=True)
    frame.columns = header
    repeated = sorted({name for name in header if header.count(name) > 1})
    if repeated:
        raise DataError(f"{path}: header repeats column '{repeated[0]}'", "DUPLICATE_COLUMN")
    for name in [outcome_name, *covariate_names]:
        if name not in frame.columns:
            raise DataError(f"{path}: missing column '{name}'", "MISSING_COLUMN")

    if frame.isna().to_numpy().any():
        row = int(np.flatnonzero(frame.isna().to_numpy().any(axis=1))[0])
        raise DataError(f"{path}: row {row + 1} has fewer fields than the header", "FIELD_COUNT")
    if frame.empty:
        raise DataError(f"{path}: no data rows", "EMPTY_INPUT")

    columns = []
    for name in [outcome_name, *covariate_names]:
        cells = frame[name].astype(str).str.strip()
        if (cells == "").any():
            row = int(np.flatnonzero((cells == "").to_numpy())[0])
            raise DataError(f"{path}: missing value in column '{name}' (row {row + 1})", "MISSING_VALUE")
        columns.append(_build_column(name, cells, kinds.get(name), path))

    return Dataset(columns[0], tuple(columns[1:]))


def dataset_from_arrays(
    outcome: Tuple[str, Sequence[float]],
    covariates: Mapping[str, Sequence[float]],
) -> Dataset:
    """Convenience constructor for all-continuous data held in memory"""
    outcome_name, outcome_values = outcome
    return Dataset(
        Column.continuous(outcome_name, outcome_values),
        tuple(Column.continuous(name, values) for name, values in covariates.items()),
    )
