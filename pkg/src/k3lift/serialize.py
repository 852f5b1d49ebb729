"""Canonical JSON encoding and payload loaders.

One wire format: JSON with every ring scalar as its coefficient array
[c_0, ..., c_{m-1}] of integers in [0, p^n).  No floats anywhere.  Output
is byte-deterministic: sorted keys, compact separators, trailing newline.

Loaders are lenient on input (plain ints are accepted wherever a scalar
is expected, flat row-major lists wherever a matrix is) but emitters
always produce the full coefficient-array form.
"""

from __future__ import annotations

import json
from typing import Any, IO

from .errors import InputError
from .witt import PadicScalar, RingContext
from .linalg import RingMat, RingVec
from .lattice import QuadLattice
from .isometry import Isometry
from .period import PeriodFrame, PeriodLine, from_generator
from .torelli import ConnectionData, DeformationPoint


def canonical_dumps(data: Any) -> str:
    """Deterministic JSON text: sorted keys, no spaces, one trailing newline."""
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def dump_stream(data: Any, stream: IO[str]) -> None:
    stream.write(canonical_dumps(data))


def load_stream(stream: IO[str]) -> Any:
    text = stream.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON input: {exc}") from exc


# -- payload loaders -----------------------------------------------------------
#
# Each loader takes the decoded JSON value plus the ring context the payload
# lives over.  Dict payloads produced by the matching to_json() are accepted
# back unchanged (the round-trip contract); bare arrays are accepted as a
# convenience for hand-written inputs.


def scalar_from_json(ctx: RingContext, data) -> PadicScalar:
    if isinstance(data, bool):
        raise InputError("expected a scalar, got a boolean")
    if isinstance(data, int) or (
        isinstance(data, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in data)
    ):
        return ctx.scalar(data)
    raise InputError("a scalar must be an integer or a coefficient array")


def vector_from_json(ctx: RingContext, data) -> RingVec:
    if not isinstance(data, list):
        raise InputError("a vector must be a list of scalars")
    return RingVec.from_entries(ctx, [scalar_from_json(ctx, e) for e in data])


def matrix_from_json(ctx: RingContext, data, rank: int | None = None) -> RingMat:
    """Rows-of-scalars; a flat list is reshaped when the rank is known."""
    if not isinstance(data, list) or not data:
        raise InputError("a matrix must be a nonempty list")
    if not isinstance(data[0], list) or (
        data[0] and isinstance(data[0][0], int)
    ):
        # flat row-major, or rows of plain ints in the m = 1 case; disambiguate:
        # rows of ints only make sense when len(row) == rank, flat otherwise
        if rank is not None and len(data) == rank * rank:
            data = [data[i * rank : (i + 1) * rank] for i in range(rank)]
        elif not isinstance(data[0], list):
            raise InputError("a matrix must be given as rows (or flat with known rank)")
    rows = [[scalar_from_json(ctx, e) for e in row] for row in data]
    if any(len(r) != len(rows[0]) for r in rows):
        raise InputError("matrix rows must all have the same length")
    return RingMat.from_rows(ctx, rows)


def lattice_from_json(data, ctx: RingContext | None = None) -> QuadLattice:
    if isinstance(data, dict):
        ring = data.get("ring")
        if ring == "Z":
            return QuadLattice(None, data["gram"])
        if ctx is None:
            if not isinstance(ring, dict):
                raise InputError("lattice payload carries no ring and no context was given")
            ctx = RingContext.from_json(ring)
        gram = data["gram"]
    else:
        if ctx is None:
            raise InputError("a bare Gram matrix needs an explicit ring context")
        gram = data
    if not isinstance(gram, list) or not gram:
        raise InputError("a Gram matrix must be a nonempty list of rows")
    return QuadLattice(ctx, matrix_from_json(ctx, gram))


def isometry_from_json(data: dict, ctx: RingContext | None = None) -> Isometry:
    if not isinstance(data, dict) or "matrix" not in data:
        raise InputError("an isometry payload needs 'matrix' and a lattice")
    if "lattice" in data:
        lat = lattice_from_json(data["lattice"], ctx)
    elif "gram" in data:
        lat = lattice_from_json({"ring": data.get("ring"), "gram": data["gram"]}, ctx)
    else:
        raise InputError("an isometry payload needs 'lattice' or 'gram'")
    order = data.get("order")
    if order is not None and (isinstance(order, bool) or not isinstance(order, int)):
        raise InputError("field 'order' must be an integer")
    if lat.ring is None:
        return Isometry(lat, data["matrix"], order=order)
    return Isometry(lat, matrix_from_json(lat.ring, data["matrix"], lat.rank), order=order)


def frame_from_json(data, ctx: RingContext | None = None) -> PeriodFrame:
    if isinstance(data, dict) and "gram" in data:
        return PeriodFrame.from_json(data, ctx)
    # bare Gram rows
    if ctx is None:
        raise InputError("a bare frame Gram matrix needs an explicit ring context")
    return PeriodFrame(QuadLattice(ctx, matrix_from_json(ctx, data)))


def line_from_json(data: dict, ctx: RingContext | None = None) -> PeriodLine:
    """Rebuild a line from its generator, re-deriving and re-validating."""
    if not isinstance(data, dict) or "frame" not in data or "generator" not in data:
        raise InputError("a line payload needs 'frame' and 'generator'")
    frame = frame_from_json(data["frame"], ctx)
    return from_generator(frame, vector_from_json(frame.ctx, data["generator"]))


def point_from_json(ctx: RingContext, data) -> DeformationPoint:
    if isinstance(data, dict):
        data = data.get("entries")
    if not isinstance(data, list):
        raise InputError("a deformation point is a list of scalars (or {'entries': ...})")
    return DeformationPoint(ctx, [scalar_from_json(ctx, e) for e in data])


def connection_from_json(data: dict, ctx: RingContext | None = None) -> ConnectionData:
    if not isinstance(data, dict) or "frame" not in data or "matrices" not in data:
        raise InputError("connection data needs 'frame' and 'matrices'")
    frame = frame_from_json(data["frame"], ctx)
    mats = [matrix_from_json(frame.ctx, mj, frame.rank) for mj in data["matrices"]]
    return ConnectionData(frame, mats)
