import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpsing.errors import InputError, InvertibilityError, ParseError, TruncationMismatch
from qpsing.ncpoly import (
    AlgebraMorphismData,
    NCSeries,
    PathWord,
    Quiver,
    compose_morphisms,
    parse_quiver,
    parse_series,
    substitute,
)

import oracles

LOOP = parse_quiver("vertices 1; arrows x:1->1")
TWO_CYCLE = parse_quiver("vertices 1,2; arrows a:1->2, b:2->1")
TWO_LOOPS = parse_quiver("vertices 1; arrows x:1->1, y:1->1")


def s(text, quiver=LOOP, trunc=8):
    return parse_series(text, quiver, trunc)


# ---------- quiver parsing ----------

def test_parse_minimal_loop():
    q = LOOP
    assert q.vertices == ("1",)
    assert q.arrows == (("x", "1", "1"),)


def test_parse_two_cycle_order():
    q = TWO_CYCLE
    assert q.vertices == ("1", "2")
    assert [a[0] for a in q.arrows] == ["a", "b"]


def test_parse_dangling_vertex():
    with pytest.raises(ParseError, match="undeclared vertex"):
        parse_quiver("vertices 1,2; arrows x:1->3")


def test_parse_duplicate_label():
    with pytest.raises(ParseError, match="duplicate arrow label"):
        parse_quiver("vertices 1; arrows x:1->1, x:1->1")


def test_parse_syntax_error_position():
    try:
        parse_quiver("vertices 1;\narrows x:1->")
        assert False, "expected a syntax error"
    except ParseError as e:
        assert e.line == 2


def test_parse_no_arrows():
    q = parse_quiver("vertices 1,2;")
    assert q.n_arrows == 0


# ---------- series parsing ----------

def test_parse_cube_with_coefficient():
    out = s("1/3*x*x*x")
    assert oracles.series_as_label_dict(out) == {("x", "x", "x"): Fraction(1, 3)}


def test_noncomposable_product_vanishes():
    out = parse_series("a*a", TWO_CYCLE, 8)
    assert out.is_zero()


def test_commutator_parse():
    out = parse_series("x*y - y*x", TWO_LOOPS, 8)
    d = oracles.series_as_label_dict(out)
    assert d == {("x", "y"): Fraction(1), ("y", "x"): Fraction(-1)}


def test_unknown_label():
    with pytest.raises(ParseError, match="unknown label"):
        s("x*z")


def test_scalar_is_unit_multiple():
    out = parse_series("2", TWO_CYCLE, 4)
    d = oracles.series_as_label_dict(out)
    assert d == {("e", "1"): Fraction(2), ("e", "2"): Fraction(2)}


def test_idempotent_atom():
    out = parse_series("e_1 + a*b", TWO_CYCLE, 4)
    assert oracles.series_as_label_dict(out) == {
        ("e", "1"): Fraction(1),
        ("a", "b"): Fraction(1),
    }


# ---------- arithmetic ----------

def test_multiply_powers():
    x = s("x", trunc=5)
    assert (x * x) == s("x*x", trunc=5)


def test_multiply_truncates():
    x2 = s("x*x", trunc=3)
    assert (x2 * x2).is_zero()


def test_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        s("x", trunc=3) * s("x", trunc=4)


def test_idempotent_action():
    e1 = parse_series("e_1", TWO_CYCLE, 6)
    mixed = parse_series("a + b + e_2", TWO_CYCLE, 6)
    out = e1 * mixed
    # words starting at vertex 1 survive
    assert oracles.series_as_label_dict(out) == {("a",): Fraction(1)}


def _random_series(quiver, trunc, rng, max_terms=4, max_len=3):
    arrows = list(range(quiver.n_arrows))
    terms = {}
    for _ in range(rng.randrange(max_terms + 1)):
        length = rng.randrange(max_len + 1)
        if length == 0:
            word = (-1 - rng.randrange(quiver.n_vertices),)
        else:
            word = []
            for _ in range(length):
                if word:
                    options = [
                        a for a in arrows
                        if quiver.arrow_src[a] == quiver.arrow_tgt[word[-1]]
                    ]
                else:
                    options = arrows
                if not options:
                    break
                word.append(rng.choice(options))
            word = tuple(word)
            if len(word) != length:
                continue
        terms[word] = terms.get(word, 0) + Fraction(rng.randint(-3, 3))
    return NCSeries(quiver, trunc, terms)


@pytest.mark.parametrize("quiver", [LOOP, TWO_CYCLE, TWO_LOOPS])
def test_associativity_random(quiver):
    rng = random.Random(7)
    for _ in range(60):
        a = _random_series(quiver, 6, rng)
        b = _random_series(quiver, 6, rng)
        c = _random_series(quiver, 6, rng)
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("quiver", [LOOP, TWO_LOOPS])
def test_truncation_coherence_multiply(quiver):
    rng = random.Random(11)
    for _ in range(40):
        a = _random_series(quiver, 8, rng)
        b = _random_series(quiver, 8, rng)
        assert (a * b).truncate(5) == a.truncate(5) * b.truncate(5)


def test_multiply_against_oracle():
    rng = random.Random(3)
    for quiver in (LOOP, TWO_CYCLE, TWO_LOOPS):
        for _ in range(70):
            a = _random_series(quiver, 6, rng)
            b = _random_series(quiver, 6, rng)
            got = oracles.series_as_label_dict(a * b)
            want = oracles.naive_multiply(
                quiver, 6,
                oracles.series_as_label_dict(a),
                oracles.series_as_label_dict(b),
            )
            assert got == want


# ---------- printing round trip ----------

@pytest.mark.parametrize("quiver", [LOOP, TWO_CYCLE, TWO_LOOPS])
def test_parse_print_round_trip_random(quiver):
    rng = random.Random(23)
    for _ in range(80):
        a = _random_series(quiver, 6, rng)
        assert parse_series(str(a), quiver, 6) == a


@given(st.integers(min_value=-40, max_value=40), st.integers(min_value=1, max_value=9))
@settings(max_examples=60, deadline=None)
def test_round_trip_rational_coefficients(num, den):
    coeff = Fraction(num, den)
    series = NCSeries(LOOP, 6, {(0, 0): coeff})
    assert parse_series(str(series), LOOP, 6) == series


# ---------- substitution ----------

def test_substitute_identity():
    phi = AlgebraMorphismData(LOOP, {"x": s("x", trunc=6)})
    w = s("x*x", trunc=6)
    assert substitute(w, phi) == w


def test_substitute_cube_expansion():
    # oracle first: expand (x + x^2)^3 by brute force and truncate at 4
    images = {"x": {("x",): Fraction(1), ("x", "x"): Fraction(1)}}
    want = oracles.naive_substitute(
        LOOP, 4, {("x", "x", "x"): Fraction(1)}, images
    )
    assert want == {
        ("x", "x", "x"): Fraction(1),
        ("x", "x", "x", "x"): Fraction(3),
    }
    phi = AlgebraMorphismData(LOOP, {"x": s("x + x*x", trunc=4)})
    got = substitute(s("x*x*x", trunc=4), phi)
    assert oracles.series_as_label_dict(got) == want


def test_substitute_requires_invertible_linear_part():
    phi = AlgebraMorphismData(LOOP, {"x": s("x*x", trunc=6)})
    with pytest.raises(InvertibilityError):
        substitute(s("x*x*x", trunc=6), phi, require_invertible=True)


def test_substitute_image_validation():
    with pytest.raises(InputError, match="constant term"):
        AlgebraMorphismData(LOOP, {"x": s("1 + x", trunc=6)})
    with pytest.raises(InputError, match="not parallel"):
        AlgebraMorphismData(TWO_CYCLE, {
            "a": parse_series("b", TWO_CYCLE, 6),
            "b": parse_series("b", TWO_CYCLE, 6),
        })


def test_substitute_against_oracle():
    rng = random.Random(5)
    for _ in range(40):
        target = _random_series(TWO_LOOPS, 6, rng)
        img_x = _random_series(TWO_LOOPS, 6, rng)
        img_y = _random_series(TWO_LOOPS, 6, rng)
        images = {}
        for label, img in (("x", img_x), ("y", img_y)):
            terms = {
                w: c for w, c in img.terms.items()
                if w[0] >= 0
            }
            images[label] = NCSeries(TWO_LOOPS, 6, terms)
        phi = AlgebraMorphismData(TWO_LOOPS, images)
        got = substitute(target, phi)
        want = oracles.naive_substitute(
            TWO_LOOPS, 6,
            oracles.series_as_label_dict(target),
            {
                label: oracles.series_as_label_dict(img)
                for label, img in images.items()
            },
        )
        assert oracles.series_as_label_dict(got) == want


def test_substitution_composition_law():
    rng = random.Random(9)
    for seed in range(10):
        w = _random_series(TWO_LOOPS, 6, rng)
        phi = AlgebraMorphismData(TWO_LOOPS, {
            "x": parse_series("x + x*x", TWO_LOOPS, 6),
            "y": parse_series("y - y*y*x", TWO_LOOPS, 6),
        })
        psi = AlgebraMorphismData(TWO_LOOPS, {
            "x": parse_series("2*x + y*x", TWO_LOOPS, 6),
            "y": parse_series("y + x*x", TWO_LOOPS, 6),
        })
        composed = compose_morphisms(phi, psi)
        assert substitute(w, composed) == substitute(substitute(w, psi), phi)


def test_truncation_coherence_substitute():
    phi8 = AlgebraMorphismData(LOOP, {"x": s("x + x*x", trunc=8)})
    phi5 = AlgebraMorphismData(LOOP, {"x": s("x + x*x", trunc=5)})
    w8 = s("x*x*x + 2*x", trunc=8)
    assert substitute(w8, phi8).truncate(5) == substitute(w8.truncate(5), phi5)


# ---------- PathWord ----------

def test_pathword_round_trip():
    word = PathWord(("a", "b"))
    key = word.key(TWO_CYCLE)
    assert PathWord.from_key(key, TWO_CYCLE) == word
    e2 = PathWord((), "2")
    assert PathWord.from_key(e2.key(TWO_CYCLE), TWO_CYCLE) == e2


def test_pathword_composability_enforced():
    with pytest.raises(InputError):
        PathWord(("a", "a")).key(TWO_CYCLE)
