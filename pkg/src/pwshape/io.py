"""Landmark TSV ingestion and result serialisation.

Input lines are ``group<TAB>specimen_id<TAB>landmark_index<TAB>x<TAB>y[<TAB>z]``.
Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import csv
import json
import math
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, InconsistentLandmarksError, ParseError
from .geometry import LandmarkConfig


@dataclass
class Dataset:
    """Specimens by group label, all sharing ``N`` landmarks in ``K`` dimensions."""

    groups: dict = field(default_factory=dict)
    N: int = 0
    K: int = 0

    def __getitem__(self, label: str) -> list:
        try:
            return self.groups[label]
        except KeyError:
            raise KeyError(f"no group {label!r}; have {sorted(self.groups)}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset) or (self.N, self.K) != (other.N, other.K):
            return False
        if list(self.groups) != list(other.groups):
            return False
        for g in self.groups:
            a, b = self.groups[g], other.groups[g]
            if len(a) != len(b):
                return False
            for x, y in zip(a, b):
                if x.specimen_id != y.specimen_id or not np.array_equal(x.X, y.X):
                    return False
        return True

    @property
    def specimens(self) -> list:
        return [s for g in self.groups.values() for s in g]


def _parse_line(raw: str, lineno: int):
    parts = raw.rstrip("\r\n").split("\t")
    if len(parts) not in (5, 6):
        raise ParseError(f"line {lineno}: expected 5 or 6 tab-separated fields, got {len(parts)}")
    group, sid, idx = parts[0], parts[1], parts[2]
    if not group or not sid:
        raise ParseError(f"line {lineno}: empty group or specimen id")
    try:
        index = int(idx)
    except ValueError:
        raise ParseError(f"line {lineno}: landmark index {idx!r} is not an integer") from None
    try:
        coords = [float(v) for v in parts[3:]]
    except ValueError:
        raise ParseError(f"line {lineno}: non-numeric coordinate in {parts[3:]}") from None
    if not all(math.isfinite(v) for v in coords):
        raise ParseError(f"line {lineno}: non-finite coordinate")
    return group, sid, index, coords


def read_landmarks(path) -> Dataset:
    """Parse a landmark TSV; landmarks are sorted by index within each specimen."""
    rows = OrderedDict()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip() or raw.startswith("#"):
                continue
            group, sid, index, coords = _parse_line(raw, lineno)
            key = (group, sid)
            rows.setdefault(key, {})
            if index in rows[key]:
                raise ParseError(f"line {lineno}: duplicate landmark {index} in specimen {sid!r}")
            rows[key][index] = (coords, lineno)
    if not rows:
        raise ParseError(f"{path}: no landmark records")

    N = K = None
    ds = Dataset()
    for (group, sid), marks in rows.items():
        dims = {len(c) for c, _ in marks.values()}
        if len(dims) != 1:
            raise InconsistentLandmarksError(f"specimen {sid!r} mixes 2-D and 3-D landmarks")
        k = dims.pop()
        n = len(marks)
        if N is None:
            N, K = n, k
        if n != N:
            raise InconsistentLandmarksError(
                f"specimen {sid!r} has {n} landmarks, expected {N}"
            )
        if k != K:
            raise InconsistentLandmarksError(
                f"specimen {sid!r} has {k}-D landmarks, expected {K}-D"
            )
        X = np.array([marks[i][0] for i in sorted(marks)])
        try:
            cfg = LandmarkConfig(X, specimen_id=sid, group=group)
        except DomainError as exc:
            raise InconsistentLandmarksError(f"specimen {sid!r}: {exc}") from exc
        ds.groups.setdefault(group, []).append(cfg)
    ds.N, ds.K = N, K
    return ds


def write_landmarks(dataset: Dataset, path) -> None:
    """Inverse of :func:`read_landmarks` (coordinates written with ``repr``)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for group, specimens in dataset.groups.items():
            for cfg in specimens:
                for i, row in enumerate(cfg.X, start=1):
                    fields = [group, cfg.specimen_id, str(i)] + [repr(float(v)) for v in row]
                    fh.write("\t".join(fields) + "\n")


def dataset_from_configs(configs) -> Dataset:
    ds = Dataset()
    for c in configs:
        ds.groups.setdefault(c.group, []).append(c)
    first = configs[0]
    ds.N, ds.K = first.N, first.K
    return ds


def convert_wide_table(src, dst, *, group: str, K: int = 2, delimiter: str = ",") -> None:
    """Convert a wide coordinate table to the landmark TSV.

    Each input row is ``specimen_id, x1, y1, x2, y2, ...`` (a header row
    starting with a non-numeric second field is skipped).  Coordinate
    tables from printed sources usually need exactly this reshaping.
    """
    out = []
    with open(src, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter=delimiter), start=1):
            row = [c.strip() for c in row if c.strip()]
            if not row:
                continue
            try:
                vals = [float(v) for v in row[1:]]
            except ValueError:
                if lineno == 1:
                    continue
                raise ParseError(f"line {lineno}: non-numeric coordinate") from None
            if len(vals) % K:
                raise ParseError(f"line {lineno}: {len(vals)} values is not a multiple of K={K}")
            X = np.array(vals).reshape(-1, K)
            out.append(LandmarkConfig(X, specimen_id=row[0], group=group))
    if not out:
        raise ParseError(f"{src}: no specimens")
    write_landmarks(dataset_from_configs(out), dst)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _num(x):
    # json writes floats with repr: the shortest string (<= 17 significant
    # digits) that reads back to the same double
    x = float(x)
    if math.isfinite(x):
        return x
    return None if math.isnan(x) else ("Infinity" if x > 0 else "-Infinity")


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def write_trace_csv(trace, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iteration", "logL"])
        for it, ll in trace:
            w.writerow([it, repr(float(ll))])
