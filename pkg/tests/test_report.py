import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchidim.errors import DuplicateKey, MalformedHnf, ParseError
from bianchidim.report import (
    REPORT_HEADER,
    STATUS_LOWER_BOUND,
    STATUS_NOT_COMPUTABLE,
    NegativeGenuine,
    emit,
    genuine_report,
    has_errors,
    ingest,
    ingest_text,
    load_report,
    parse_level,
    to_classical_weight,
)

HEAD = "disc,hnf_a,hnf_b,hnf_c,weight,dim_new\n"


def _one(line):
    return genuine_report(ingest_text(HEAD + line + "\n"))[0]


def test_parse_level():
    assert parse_level(36, 0, 6).is_rational
    assert not parse_level(49, 15, 1).is_rational
    assert parse_level(4, 0, 2).is_rational and parse_level(4, 0, 2).norm == 4
    for bad in ((0, 0, 1), (6, 0, 2), (9, 1, 3), (7, 7, 1), (7, -1, 1)):
        with pytest.raises(MalformedHnf):
            parse_level(*bad)


def test_galois_stability():
    assert parse_level(7, 3, 1).is_galois_stable(-7)
    assert not parse_level(4, 1, 1).is_galois_stable(-7)
    assert parse_level(36, 0, 6).is_galois_stable(-19)


def test_weight_labels():
    assert to_classical_weight(4) == 4
    assert to_classical_weight(4, "k+2") == 4
    assert to_classical_weight(2, "k") == 4
    with pytest.raises(ValueError):
        to_classical_weight(2, "n")


def test_ingest_errors():
    with pytest.raises(ParseError) as e:
        ingest_text(HEAD + "-19,36,0,6,3,6\n-19,36,0,5,3,6\n")
    assert e.value.row == 3
    with pytest.raises(ParseError):
        ingest_text(HEAD + "-19,36,0,6,x,6\n")
    with pytest.raises(ParseError):
        ingest_text(HEAD + "-19,36,0,6\n")
    with pytest.raises(ParseError):
        ingest_text("a,b,c\n1,2,3\n")
    with pytest.raises(ParseError):
        ingest_text(HEAD + "-12,36,0,6,3,6\n")
    with pytest.raises(DuplicateKey):
        ingest_text(HEAD + "-19,36,0,6,3,6\n-19,36,0,6,3,7\n")


def test_empty_input():
    assert ingest_text("") == []
    assert emit([]) == ",".join(REPORT_HEADER) + "\n"


def test_extra_columns_allowed():
    rows = ingest_text("disc,hnf_a,hnf_b,hnf_c,weight,dim_new,source\n-19,36,0,6,3,6,table\n")
    assert rows[0].full_dim == 6


def test_rows():
    b = _one("-43,9,0,3,6,21")
    assert (b.bc, b.ng, b.genuine, b.ng_status) == (19, 19, 2, "exact")
    b = _one("-19,36,0,6,3,6")
    assert (b.ng, b.genuine) == (4, 2)
    b = _one("-7,7,3,1,2,0")
    assert b.ng == 0 and b.ng_status == "exact"
    b = _one("-23,4,1,1,2,1")
    assert b.ng_status == STATUS_LOWER_BOUND and b.ng == 0 and b.genuine == 1
    b = _one("-7,16,0,4,2,5")
    assert b.ng_status == STATUS_NOT_COMPUTABLE and b.ng is None and b.genuine is None


def test_row_errors_do_not_stop_the_run():
    # h = 2 breaks the square-free base-change hypotheses
    table = genuine_report(ingest_text(HEAD + "-15,4,0,2,2,0\n-19,36,0,6,3,6\n"))
    assert table[0].ng_status.startswith("error") and table[1].ng == 4
    assert has_errors(table)


def test_negative_genuine_raises():
    with pytest.raises(NegativeGenuine):
        _one("-43,9,0,3,6,10")


def test_emit_sorted_and_text(fixture_path):
    table = genuine_report(ingest(fixture_path))
    csv_out = emit(table)
    assert csv_out == emit(list(reversed(table)))
    text = emit(table, "text")
    assert "Discriminant -19" in text and "weight" in text
    with pytest.raises(ValueError):
        emit(table, "xml")


def test_fixture_roundtrip(fixture_path):
    table = genuine_report(ingest(fixture_path))
    out = emit(table)
    assert emit(load_report(out)) == out


rows = st.tuples(
    st.sampled_from([-7, -19, -23, -43]),
    st.integers(1, 12),
    st.integers(2, 8),
    st.integers(100, 400),
)


@settings(max_examples=40, deadline=None)
@given(st.lists(rows, max_size=8, unique_by=lambda r: (r[0], r[1], r[2])))
def test_roundtrip_property(recs):
    text = HEAD + "".join(f"{D},{N * N},0,{N},{k},{dim}\n" for D, N, k, dim in recs)
    table = genuine_report(ingest_text(text))
    out = emit(table)
    back = load_report(out)
    assert emit(back) == out
    assert [(b.ng, b.genuine, b.ng_status) for b in back] == [
        (b.ng, b.genuine, b.ng_status) for b in sorted(table, key=lambda b: (b.field.disc, b.level.norm, b.weight))
    ]
