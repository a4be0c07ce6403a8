"""JSON documents holding matrix sets and automata.

``{"schema":1,"kind":"matrix-set","n":<int>,"matrices":[[[0|1,...],...],...]}``

Entries may be any nonnegative numbers; only ``entry > 0`` is kept.  ``kind``
is advisory (``"matrix-set"`` or ``"automaton"``) and ``labels`` is optional.
Serialization is byte-stable so documents round-trip exactly.
"""
from __future__ import annotations

import json
import numbers
from typing import Optional, Sequence

from .core import BoolMatrix, MatrixSet

SCHEMA = 1
KINDS = ("matrix-set", "automaton")


class DocumentError(ValueError):
    pass


def set_to_document(s: MatrixSet, kind: str = "matrix-set",
                    labels: Optional[Sequence[str]] = None) -> dict:
    doc = {"schema": SCHEMA, "kind": kind, "n": s.n,
           "matrices": [a.to_lists() for a in s.mats]}
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def dumps(s: MatrixSet, kind: str = "matrix-set", labels: Optional[Sequence[str]] = None) -> str:
    return json.dumps(set_to_document(s, kind, labels), separators=(",", ":")) + "\n"


def document_to_set(doc) -> MatrixSet:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise DocumentError(f"unsupported schema {doc.get('schema')!r}; expected {SCHEMA}")
    kind = doc.get("kind", "matrix-set")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("'n' must be a positive integer")
    mats = doc.get("matrices")
    if not isinstance(mats, list) or not mats:
        raise DocumentError("'matrices' must be a nonempty list")
    out = []
    for k, mat in enumerate(mats, 1):
        if not isinstance(mat, list) or len(mat) != n:
            raise DocumentError(f"matrix {k} must have {n} rows")
        rows = []
        for i, row in enumerate(mat, 1):
            if not isinstance(row, list) or len(row) != n:
                raise DocumentError(f"matrix {k} row {i} must have {n} entries")
            bits = 0
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, numbers.Real):
                    raise DocumentError(f"matrix {k} entry ({i},{j + 1}) is not a number")
                if x < 0:
                    raise DocumentError(f"matrix {k} entry ({i},{j + 1}) is negative")
                if x > 0:
                    bits |= 1 << j
            rows.append(bits)
        out.append(BoolMatrix(n, tuple(rows)))
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != len(out)):
        raise DocumentError("'labels' must list one label per matrix")
    return MatrixSet(tuple(out))


def loads(text: str) -> MatrixSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    return document_to_set(doc)


def load(path) -> MatrixSet:
    with open(path) as fh:
        return loads(fh.read())


def dump(s: MatrixSet, path, kind: str = "matrix-set") -> None:
    with open(path, "w") as fh:
        fh.write(dumps(s, kind))
