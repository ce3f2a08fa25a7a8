"""CSV and JSON shaping shared by the CLI and the service.

Float formatting uses the shortest round-trip representation so that a
fixed seed and configuration always produce byte-identical output.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .frame import WedgeBasis
from .operators import SymmetricMatrix, Spectrum
from .tensor import CurvatureTensor, canonical_quads


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if x == 0.0:  # normalize -0.0
            x = 0.0
        return repr(x)
    return str(x)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def pair_label(pair: tuple[int, int]) -> str:
    return f"{pair[0]}^{pair[1]}"


def spectrum_string(spectrum: Spectrum) -> str:
    return ";".join(f"{fmt(val)}:{mult}" for val, mult in spectrum.entries)


def tensor_rows(tensor: CurvatureTensor) -> list[tuple[int, int, int, int, float]]:
    """All canonical tuples with their values (zeros included)."""
    return [quad + (tensor.component(*quad),) for quad in canonical_quads(tensor.dim)]


def tensor_csv(tensor: CurvatureTensor) -> str:
    return csv_text(("i", "j", "k", "l", "value"), tensor_rows(tensor))


def operator_csv(matrix: SymmetricMatrix, basis: WedgeBasis) -> str:
    header = ["bivector"] + [pair_label(p) for p in basis.pairs]
    rows = [
        [pair_label(basis.pairs[p])] + [float(x) for x in matrix.data[p]]
        for p in range(matrix.order)
    ]
    return csv_text(header, rows)
