from fractions import Fraction

import pytest

from bianchidim.arith import kronecker
from bianchidim.basechange import DPartProvider, default_provider
from bianchidim.derive import (
    _trace_counts,
    character_invariants,
    completeness_residuals,
    derive_all,
    derive_dpart_p2,
    derive_generic_sc,
    diff_against_shipped,
    fit_dpart_p,
    fit_elliptic_constants,
    generic_sc_character,
    sc3_row_residual,
    solve_exact,
    twist_invariant_sc_character,
)
from bianchidim.dim_engine import ELLIPTIC
from bianchidim.invariants import TypeInvariants
from bianchidim.nongenuine import ScConstants, ScTable, default_sc_table

PRIMES = [7, 11, 19, 23, 43]


def test_solve_exact_overdetermined():
    sol, res = solve_exact([[1, 1], [1, -1], [2, 0]], [3, 1, 4])
    assert sol == [2, 1] and res == [0, 0, 0]
    sol, res = solve_exact([[1, 0], [1, 0]], [1, 2], free_zero=(1,))
    assert any(res)
    with pytest.raises(ValueError):
        solve_exact([[1, 1], [2, 2]], [1, 2])


def test_elliptic_fit_reproduces_shipped_constants():
    fit = fit_elliptic_constants(levels=range(1, 25), weights=range(2, 20))
    assert not any(fit.residuals)
    assert fit.constants == ELLIPTIC
    assert all(name == "mu" and k % 2 for name, k in fit.unidentified)


@pytest.mark.parametrize("p", PRIMES)
def test_level_p_fit(p):
    inv, res = fit_dpart_p(p)
    assert not any(res)
    assert inv == TypeInvariants(p + 1, 2, 1 + kronecker(-3, p), 0, 0)


def _brute_trace_counts(p):
    counts = {}
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        central = b == 0 and c == 0 and a == d
                        key = ((a + d) % p, central)
                        counts[key] = counts.get(key, 0) + 1
    return counts


@pytest.mark.parametrize("p", [7, 11])
def test_class_counts_by_enumeration(p):
    assert _trace_counts(p) == _brute_trace_counts(p)


@pytest.mark.parametrize("p", PRIMES)
def test_twist_invariant_supercuspidal(p):
    tau, checks = derive_dpart_p2(p)
    assert not any(checks.values())
    assert tau == TypeInvariants(p - 1, 0, kronecker(-3, p) - 1, -2 * kronecker(2, p), 0)


@pytest.mark.parametrize("p", PRIMES)
def test_generic_supercuspidals_and_completeness(p):
    gen, checks = derive_generic_sc(p)
    assert not any(checks.values())
    assert gen.i1 == Fraction((p - 1) * (p - 3), 2)
    assert not any(completeness_residuals(p))
    assert sc3_row_residual(p) == 0


def test_characters_are_virtual_characters():
    # integral norms certify genuine (virtual) characters
    for p in (7, 11, 19):
        for chi in (twist_invariant_sc_character(p), generic_sc_character(p)):
            inv = character_invariants(chi, p)
            assert inv.is_integral()


def test_derive_all_matches_shipped_tables():
    der = derive_all([7, 11, 19, 43, 67, 163])
    assert der.max_residual() == 0
    assert diff_against_shipped(der, default_provider(), default_sc_table()) == []


def test_diff_detects_drift():
    der = derive_all([7])
    bad_sc = ScTable.from_entries([ScConstants(7, 1, -2)])
    problems = diff_against_shipped(der, default_provider(), bad_sc)
    assert problems and "SC constants p=7" in problems[0]
    empty = DPartProvider()
    assert any("missing" in x for x in diff_against_shipped(der, empty, default_sc_table()))


def test_derive_rejects_bad_primes():
    with pytest.raises(ValueError):
        derive_all([3])
    with pytest.raises(ValueError):
        derive_all([13])
