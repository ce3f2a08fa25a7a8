import json

from curvops.frame import ModelPoint, build_wedge_basis
from curvops.operators import assemble_operator, cluster_spectrum
from curvops.reports import (
    csv_text,
    fmt,
    json_text,
    operator_csv,
    pair_label,
    spectrum_string,
    tensor_csv,
    tensor_rows,
)
from curvops.tensor import canonical_quads, component_table


def test_fmt_normalizes_and_round_trips():
    assert fmt(True) == "true"
    assert fmt(False) == "false"
    assert fmt(-0.0) == "0.0"
    assert fmt(0.1025) == "0.1025"
    assert float(fmt(1 / 3)) == 1 / 3


def test_csv_and_json_shapes():
    text = csv_text(("a", "b"), [(1, 2.5), (3, -0.0)])
    assert text == "a,b\n1,2.5\n3,0.0\n"
    payload = json.loads(json_text({"b": 1, "a": [1.5]}))
    assert payload == {"a": [1.5], "b": 1}


def test_tensor_csv_covers_all_canonical_tuples():
    tensor = component_table(ModelPoint.complex_hyperbolic(2, 1.0))
    rows = tensor_rows(tensor)
    assert len(rows) == sum(1 for _ in canonical_quads(4))
    text = tensor_csv(tensor)
    lines = text.splitlines()
    assert lines[0] == "i,j,k,l,value"
    assert len(lines) == len(rows) + 1


def test_operator_csv_layout():
    basis = build_wedge_basis(2)
    op = assemble_operator(component_table(ModelPoint.complex_hyperbolic(2, 1.3)), basis)
    lines = operator_csv(op, basis).splitlines()
    assert lines[0] == "bivector," + ",".join(pair_label(p) for p in basis.pairs)
    assert len(lines) == 7
    assert lines[1].startswith("1^2,")


def test_spectrum_string_format():
    spec = cluster_spectrum([-6.0, -2.0, -2.0, 0.0])
    assert spectrum_string(spec) == "-6.0:1;-2.0:2;0.0:1"
