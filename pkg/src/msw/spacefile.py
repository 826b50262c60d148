"""The on-disk space format ("msw-1") and its canonical serialization.

A space file is a JSON object with keys, in this order:

    version  the literal string "msw-1"
    p        the prime modulus
    rows     row count of the matrices
    cols     column count of the matrices
    basis    list of matrices, each a list of rows of ints in [0, p)

Writing always emits the canonical reduced basis with a fixed key order,
compact separators and a trailing newline, so parse-then-serialize is
byte-identical once the content is canonical.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import SpaceFileError
from .linalg import FieldSpec, is_prime, MAX_PRIME
from .spaces import MatrixSpace

FORMAT_VERSION = "msw-1"


def space_to_dict(space: MatrixSpace) -> dict:
    return {
        "version": FORMAT_VERSION,
        "p": space.field.p,
        "rows": space.rows,
        "cols": space.cols,
        "basis": [m.to_lists() for m in space.basis_matrices()],
    }


def dumps(space: MatrixSpace) -> str:
    return json.dumps(space_to_dict(space), separators=(",", ":")) + "\n"


def _fail(problems: list[str], source: str):
    raise SpaceFileError(f"invalid space file {source}: " + "; ".join(problems), tuple(problems))


def parse_dict(obj, source: str = "<memory>") -> MatrixSpace:
    problems: list[str] = []
    if not isinstance(obj, dict):
        _fail(["top level must be a JSON object"], source)
    if obj.get("version") != FORMAT_VERSION:
        problems.append(f"version must be {FORMAT_VERSION!r}, got {obj.get('version')!r}")
    p = obj.get("p")
    if not isinstance(p, int) or not (2 <= p <= MAX_PRIME) or not is_prime(p):
        problems.append(f"p must be a prime in [2, {MAX_PRIME}], got {p!r}")
        _fail(problems, source)
    rows = obj.get("rows")
    cols = obj.get("cols")
    for name, v in (("rows", rows), ("cols", cols)):
        if not isinstance(v, int) or v < 0:
            problems.append(f"{name} must be a non-negative int, got {v!r}")
    basis = obj.get("basis")
    if not isinstance(basis, list):
        problems.append("basis must be a list of matrices")
        _fail(problems, source)
    if problems:
        _fail(problems, source)
    mats = []
    for k, mat in enumerate(basis):
        if (
            not isinstance(mat, list)
            or len(mat) != rows
            or any(not isinstance(r, list) or len(r) != cols for r in mat)
        ):
            problems.append(f"basis[{k}] is not a {rows}x{cols} list of rows")
            continue
        for i, row in enumerate(mat):
            for j, v in enumerate(row):
                if not isinstance(v, int) or not (0 <= v < p):
                    problems.append(
                        f"basis[{k}] entry ({i},{j}) = {v!r} out of range [0, {p})"
                    )
        mats.append(mat)
    if problems:
        _fail(problems, source)
    field = FieldSpec(p)
    if not mats:
        return MatrixSpace.zero(field, rows, cols)
    vecs = np.array(mats, dtype=np.int64).reshape(len(mats), rows * cols)
    return MatrixSpace.from_vectorized(field, rows, cols, vecs)


def loads(text: str, source: str = "<memory>") -> MatrixSpace:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceFileError(
            f"invalid space file {source}: JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}",
            (f"line {exc.lineno}, column {exc.colno}: {exc.msg}",),
        ) from exc
    return parse_dict(obj, source)


def load(path: str) -> MatrixSpace:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpaceFileError(f"cannot read space file {path}: {exc}", (str(exc),)) from exc
    return loads(text, source=path)


def save(space: MatrixSpace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(space))
