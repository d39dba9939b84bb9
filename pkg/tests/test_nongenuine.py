from fractions import Fraction

import pytest

from bianchidim.arith import QuadField
from bianchidim.basechange import dim_basechange
from bianchidim.dim_engine import dim_new_gamma0, trace_form
from bianchidim.errors import MissingScConstants, PreconditionViolated
from bianchidim.invariants import gamma0_new_invariants
from bianchidim.nongenuine import (
    FITTED_NOTE,
    P2_CM_NOTE,
    DimBreakdown,
    LevelDescriptor,
    Multiplicities,
    RowKind,
    ScConstants,
    ScTable,
    breakdown,
    cps,
    default_sc_table,
    dim_nongenuine_ramified_p,
    dim_nongenuine_ramified_p2,
    dim_nongenuine_squarefree,
    printed_level_p_invariants,
    printed_rows,
    psquared_terms,
    reconstructed_rows,
)

F = QuadField.from_disc
RAMIFIED = [7, 11, 19, 43, 67]


def test_cps():
    assert cps(7) == -2 and cps(11) == 0 and cps(3) == 0 and cps(13) == -2
    with pytest.raises(ValueError):
        cps(9)


@pytest.mark.parametrize("D", [-23, -31, -7, -19])
def test_squarefree_factor_structure(D):
    f = F(D)
    for N in (1, 2, 5, 6):
        for k in (2, 4, 6, 8):
            bc = dim_basechange(f, N, k)
            assert dim_nongenuine_squarefree(f, N, k) == f.class_number * bc
            b = breakdown(f, LevelDescriptor("rational", N), k)
            assert (b.bc, b.tbc, b.cm) == (bc, (f.class_number - 1) * bc, 0)


@pytest.mark.parametrize("p", RAMIFIED)
def test_ramified_p(p):
    assert printed_level_p_invariants(p) == gamma0_new_invariants(p)
    for k in range(2, 25):
        want = dim_new_gamma0(p, k) if k % 2 == 0 else 0
        assert dim_nongenuine_ramified_p(F(-p), k) == want


@pytest.mark.parametrize("p,k,dim", [(7, 2, 0), (7, 6, 12), (11, 3, 14)])
def test_psquared_anchors(p, k, dim):
    assert dim_nongenuine_ramified_p2(F(-p), k) == dim


@pytest.mark.parametrize("p", RAMIFIED)
def test_reconstructed_rows_integral(p):
    sc = default_sc_table().get(p)
    rows = {r.kind: r.invariants for r in reconstructed_rows(p, sc)}
    for k in range(2, 31, 2):
        for kind in (RowKind.PRINCIPAL_ETA_ETA, RowKind.TWISTED_STEINBERG, RowKind.SUPERCUSPIDAL):
            assert trace_form(rows[kind], k).denominator == 1
        # half the CM form sits in the first row
        assert (trace_form(rows[RowKind.PRINCIPAL_OMEGA_OMEGA], k) - Fraction(1, 2)).denominator == 1
        v = dim_nongenuine_ramified_p2(F(-p), k)
        assert v >= 0


@pytest.mark.parametrize("p", [7, 11, 19])
def test_printed_rows_are_not_integral(p):
    sc = default_sc_table().get(p)
    bad = [k for k in range(2, 31, 2) if any(trace_form(r.invariants, k).denominator > 2 for r in printed_rows(p, sc))]
    assert bad


def test_printed_variant_config_fails_integrality():
    text = "psquared-multiplicities v1\nvariant printed\n" + "".join(f"{k.value} 1\n" for k in RowKind) + "cm 1/2\n"
    mult = Multiplicities.parse(text)
    totals = [sum(v for _, v in psquared_terms(F(-7), k, multiplicities=mult)) for k in range(2, 31, 2)]
    assert any(t.denominator != 1 for t in totals)


def test_multiplicity_parse_errors():
    with pytest.raises(ValueError):
        Multiplicities.parse("nope\n")
    with pytest.raises(ValueError):
        Multiplicities.parse("psquared-multiplicities v1\nvariant sideways\n")
    with pytest.raises(ValueError):
        Multiplicities.parse("psquared-multiplicities v1\nvariant printed\ncm 1/2\n")
    with pytest.raises(ValueError):
        Multiplicities.parse("psquared-multiplicities v1\nbogus_row 1\n")


def test_sc_table():
    t = default_sc_table()
    assert ScTable.parse(t.dumps()) == t
    assert t.get(7) == ScConstants(7, 0, -2)
    with pytest.raises(MissingScConstants):
        t.get(3)
    with pytest.raises(MissingScConstants):
        dim_nongenuine_ramified_p2(F(-7), 4, sc=ScTable.from_entries([ScConstants(11, 0, 2)]))


def test_preconditions():
    with pytest.raises(PreconditionViolated):
        dim_nongenuine_ramified_p2(F(-15), 2)
    with pytest.raises(PreconditionViolated):
        dim_nongenuine_ramified_p(F(-23), 2)  # h = 3


def test_breakdown_notes_and_validation():
    b = breakdown(F(-7), LevelDescriptor("p2", 1), 6)
    assert FITTED_NOTE in b.notes and b.ng == 12
    assert FITTED_NOTE not in breakdown(F(-7), LevelDescriptor("p2", 1), 5).notes
    assert P2_CM_NOTE in breakdown(F(-19), LevelDescriptor("rational", 6), 4).notes
    assert breakdown(F(-19), LevelDescriptor("rational", 5), 4).notes == []
    assert b.with_full(20).genuine == 8
    with pytest.raises(ValueError):
        DimBreakdown(F(-7), None, 2, bc=1, tbc=0, cm=0, ng=2)
    with pytest.raises(ValueError):
        DimBreakdown(F(-7), None, 2, bc=1, ng=None)
    empty = DimBreakdown(F(-7), None, 2, bc=None, tbc=None, cm=None, ng=None).with_full(5)
    assert empty.genuine is None
    with pytest.raises(ValueError):
        LevelDescriptor("q")
