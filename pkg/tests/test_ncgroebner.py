import random
from fractions import Fraction

import pytest

from qpsing.errors import BasisOverflowError, InputError, TruncationMismatch
from qpsing.ncgroebner import ReductionSystem, groebner, normal_form, quotient_algebra
from qpsing.ncpoly import parse_quiver, parse_series

import oracles

LOOP = parse_quiver("vertices 1; arrows x:1->1")
TWO_LOOPS = parse_quiver("vertices 1; arrows x:1->1, y:1->1")
TWO_CYCLE = parse_quiver("vertices 1,2; arrows a:1->2, b:2->1")


def gb(texts, quiver=LOOP, trunc=8):
    gens = [parse_series(t, quiver, trunc) for t in texts]
    return groebner(gens, trunc)


def test_monomial_ideal_rules():
    system = gb(["x*x"])
    assert [(lead, tail) for lead, tail in system.rules] == [((0, 0), {})]


def test_monomial_quotient_dim2():
    algebra, cert = quotient_algebra(gb(["x*x"]))
    assert algebra.dim == 2
    assert [str(b) for b in algebra.basis] == ["e_1", "x"]
    assert cert.exact


def test_x3_plus_x4_truncated_chain():
    # oracle: exhaustive rewriting of x^3 by the chain x^3 -> -x^4 -> ... -> 0
    rules = {("x",) * 3: {("x",) * 4: Fraction(-1)}}
    nf = oracles.exhaustive_rewrite(rules, {("x",) * 3: Fraction(1)}, trunc=8)
    assert nf == {}
    system = gb(["x*x*x + x*x*x*x"], trunc=8)
    algebra, cert = quotient_algebra(system)
    assert algebra.dim == 3
    assert [str(b) for b in algebra.basis] == ["e_1", "x", "x*x"]


def test_local_orientation_lower_order_lead():
    # x^2 - x^3 generates the same closed ideal as x^2
    system = gb(["x*x - x*x*x"], trunc=8)
    algebra, cert = quotient_algebra(system)
    assert algebra.dim == 2
    assert cert.exact


def test_commutative_polynomial_ring_is_truncated():
    for trunc in (4, 6):
        system = gb(["x*y - y*x"], quiver=TWO_LOOPS, trunc=trunc)
        algebra, cert = quotient_algebra(system)
        assert cert.status == "truncated"


def test_normal_form_kills_multiples():
    system = gb(["x*x*x"])
    s = parse_series("x*x*x*x*x", LOOP, 8)
    assert normal_form(s, system).is_zero()


def test_normal_form_chain_via_oracle():
    system = gb(["x*x*x + x*x*x*x"], trunc=4)
    s = parse_series("x*x*x", LOOP, 4)
    got = normal_form(s, system)
    rules = {("x",) * 3: {("x",) * 4: Fraction(-1)}}
    want = oracles.exhaustive_rewrite(rules, {("x", "x", "x"): Fraction(1)}, trunc=4)
    assert {tuple("x" for _ in w): c for w, c in got.terms.items()} == want


def test_normal_form_fixes_idempotents():
    system = gb(["x*x*x + x*x*x*x"])
    e = parse_series("e_1", LOOP, 8)
    assert normal_form(e, system) == e


def test_normal_form_idempotent_and_linear():
    rng = random.Random(1)
    system = gb(["x*x*x + x*x*x*x"])
    zero = parse_series("0", LOOP, 8)
    for _ in range(20):
        s = zero
        for _ in range(4):
            length = rng.randrange(9)
            mono = "*".join(["x"] * length) if length else "e_1"
            s = s + parse_series(mono, LOOP, 8) * Fraction(rng.randint(-4, 4))
        nf1 = normal_form(s, system)
        assert normal_form(nf1, system) == nf1
    a = parse_series("x + x*x", LOOP, 8)
    b = parse_series("x*x*x - 2*x", LOOP, 8)
    assert normal_form(a + b, system) == normal_form(a, system) + normal_form(b, system)


def test_truncation_mismatch_rejected():
    system = gb(["x*x*x"], trunc=6)
    with pytest.raises(TruncationMismatch):
        normal_form(parse_series("x", LOOP, 8), system)


def test_ideal_membership_soundness():
    gens = ["x*x*x + x*x*x*x", "x*x*x*x*x"]
    system = gb(gens)
    for t in gens:
        assert normal_form(parse_series(t, LOOP, 8), system).is_zero()


def test_commutative_plus_linear_quotient():
    # {xy - yx, y, x^2}: the commutative oracle is k[x]/(x^2)
    system = gb(["x*y - y*x", "y", "x*x"], quiver=TWO_LOOPS, trunc=8)
    algebra, cert = quotient_algebra(system)
    assert algebra.dim == 2
    assert cert.exact


def test_quotient_k_x_mod_x3_table():
    algebra, cert = quotient_algebra(gb(["x*x*x"]))
    assert algebra.dim == 3 and cert.exact
    # table of k[x]/(x^3) in basis e, x, x^2
    assert algebra.table[1][1] == {2: Fraction(1)}
    assert algebra.table[1][2] == {}
    assert algebra.table[0][2] == {2: Fraction(1)}


def test_two_sided_quotient_on_two_cycle():
    system = gb(["a*b*a", "b*a*b"], quiver=TWO_CYCLE, trunc=8)
    algebra, cert = quotient_algebra(system)
    assert cert.exact
    assert sorted(algebra.basis) == sorted(["e_1", "e_2", "a", "b", "a*b", "b*a"])


def test_confluence_of_completed_systems():
    for texts, quiver in [
        (["x*x*x + x*x*x*x"], LOOP),
        (["x*y - y*x", "x*x + y*y"], TWO_LOOPS),
        (["a*b*a", "b*a*b"], TWO_CYCLE),
        (["x*x*y + y*x*x", "y*y - x*x"], TWO_LOOPS),
    ]:
        system = gb(texts, quiver=quiver)
        assert system.check_confluence()


def test_dimension_stability_across_truncations():
    dims = {}
    for trunc in (8, 13):
        algebra, cert = quotient_algebra(gb(["x*x*x + x*x*x*x"], trunc=trunc))
        dims[trunc] = algebra.dim
        assert cert.exact
    assert dims[8] == dims[13] == 3


def test_exactness_certificate_soundness():
    # when exact, recomputing at N+5 yields the same basis and table
    for texts, quiver in [
        (["x*x"], LOOP),
        (["x*x*x + x*x*x*x"], LOOP),
        (["a*b*a", "b*a*b"], TWO_CYCLE),
    ]:
        a1, c1 = quotient_algebra(gb(texts, quiver=quiver, trunc=8))
        assert c1.exact
        a2, c2 = quotient_algebra(gb(texts, quiver=quiver, trunc=13))
        assert a1.basis == a2.basis
        assert a1.table == a2.table


def test_constant_term_rejected():
    with pytest.raises(InputError, match="constant-term-free"):
        gb(["1 + x"])


def test_basis_cap():
    system = gb(["x*y - y*x"], quiver=TWO_LOOPS, trunc=8)
    with pytest.raises(BasisOverflowError):
        quotient_algebra(system, cap=5)


def test_empty_system_no_arrows_exact():
    quiver = parse_quiver("vertices 1,2;")
    system = ReductionSystem(quiver, 6, [])
    algebra, cert = quotient_algebra(system)
    assert algebra.dim == 2
    assert cert.exact
