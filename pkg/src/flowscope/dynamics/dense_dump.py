"""
Dense binary matrix dump for debugging: two little-endian int64 (rows, cols)
followed by the row-major float64 entries.
"""

from pathlib import Path
from typing import Union

import numpy as np

from ..errors import DimensionError, ParseError

HEADER = np.dtype("<i8")
ENTRY = np.dtype("<f8")


def dump_dense(matrix: np.ndarray, path: Union[str, Path]) -> None:
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise DimensionError("only 2-D matrices can be dumped")
    with open(path, "wb") as handle:
        np.asarray(matrix.shape, dtype=HEADER).tofile(handle)
        np.ascontiguousarray(matrix, dtype=ENTRY).tofile(handle)


def load_dense(path: Union[str, Path]) -> np.ndarray:
    with open(path, "rb") as handle:
        shape = np.fromfile(handle, dtype=HEADER, count=2)
        if shape.size != 2 or shape.min() < 0:
            raise ParseError("truncated matrix header", path=str(path))
        entries = np.fromfile(handle, dtype=ENTRY)
    rows, cols = int(shape[0]), int(shape[1])
    if entries.size != rows * cols:
        raise ParseError(f"expected {rows * cols} entries, found {entries.size}", path=str(path))
    return entries.reshape(rows, cols).astype(np.float64)
