"""Potentials on quivers: cyclic words, derivatives and decision procedures.

A potential is a rational combination of cycles, stored in canonical
rotation (the deglex-least rotation).  The attached apparatus: cyclic
derivatives, the Jacobi algebra (via qpsing.ncgroebner), the canonical
class in the commutator quotient, weighted homogeneity, and the
computable necessary conditions for right equivalence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .errors import ExactnessError, InputError, UnsupportedError
from .findim import commutator_span
from .ncgroebner import (
    DEFAULT_BASIS_CAP,
    DEFAULT_TRUNCATION,
    ReductionSystem,
    groebner,
    quotient_algebra,
)
from .ncpoly import (
    AlgebraMorphismData,
    NCSeries,
    deglex_key,
    is_trivial,
    substitute,
    trivial_word,
)


def canonical_rotation(word):
    """Deglex-least rotation of a cycle word."""
    return min(
        (word[i:] + word[:i] for i in range(len(word))), key=deglex_key
    )


class Potential:
    """Finite rational combination of cycles, canonically rotated."""

    def __init__(self, quiver, trunc, cycles, reduced=False):
        self.quiver = quiver
        self.trunc = trunc
        clean = {}
        for word, coeff in cycles.items():
            coeff = Fraction(coeff)
            if not coeff:
                continue
            if is_trivial(word):
                raise InputError("potentials are constant-free")
            if quiver.word_source(word) != quiver.word_target(word):
                raise InputError(
                    f"potential term {quiver.word_str(word)} is not a cycle"
                )
            if not quiver.word_composable(word):
                raise InputError("non-composable potential term")
            if len(word) > trunc:
                continue
            canon = canonical_rotation(word)
            s = clean.get(canon, Fraction(0)) + coeff
            if s:
                clean[canon] = s
            else:
                del clean[canon]
        if reduced and any(len(w) <= 2 for w in clean):
            raise InputError("reduced potentials have no cycles of length <= 2")
        self.cycles = clean
        self.reduced = reduced

    @classmethod
    def from_series(cls, series, reduced=False):
        for word in series.terms:
            if is_trivial(word) or (
                series.quiver.word_source(word) != series.quiver.word_target(word)
            ):
                raise InputError(
                    f"potential term {series.quiver.word_str(word)} is not a cycle"
                )
        return cls(series.quiver, series.trunc, series.terms, reduced=reduced)

    def to_series(self, trunc=None):
        trunc = self.trunc if trunc is None else trunc
        return NCSeries(self.quiver, trunc, dict(self.cycles))

    def is_zero(self):
        return not self.cycles

    def min_cycle_len(self):
        return min((len(w) for w in self.cycles), default=0)

    def has_only_cubic_and_higher(self):
        return all(len(w) >= 3 for w in self.cycles)

    def __eq__(self, other):
        return (
            isinstance(other, Potential)
            and self.quiver == other.quiver
            and self.trunc == other.trunc
            and self.cycles == other.cycles
        )

    def __str__(self):
        return str(self.to_series())

    __repr__ = __str__


def cyclic_derivative(w, arrow):
    """D_a w: each decomposition p = u a v of a cycle contributes v u."""
    quiver = w.quiver
    a = quiver.arrow_index(arrow)
    out = {}
    for word, coeff in w.cycles.items():
        for pos, letter in enumerate(word):
            if letter != a:
                continue
            rest = word[pos + 1:] + word[:pos]
            if not rest:
                rest = trivial_word(quiver.arrow_src[a])
            s = out.get(rest, Fraction(0)) + coeff
            if s:
                out[rest] = s
            else:
                del out[rest]
    return NCSeries(quiver, w.trunc, out, _checked=True)


def jacobi_algebra(quiver, w, trunc=None, cap=DEFAULT_BASIS_CAP):
    """Quotient by the closed ideal of all cyclic derivatives of w."""
    trunc = w.trunc if trunc is None else trunc
    if w.trunc < trunc:
        raise InputError("potential truncated below the requested order")
    gens = []
    for label, _, _ in quiver.arrows:
        d = cyclic_derivative(w, label)
        if not d.is_zero():
            gens.append(d if d.trunc == trunc else d.truncate(trunc))
    if gens:
        system = groebner(gens, trunc)
    else:
        system = ReductionSystem(quiver, trunc, [])
    algebra, certificate = quotient_algebra(system, cap)
    algebra.system = system
    algebra.certificate = certificate
    return algebra, certificate


@dataclass
class CanonicalClass:
    """Image of the potential in the commutator quotient of its Jacobi algebra."""

    vector: list
    jacobi: object

    @property
    def is_zero(self):
        return not any(self.vector)


def _reduce_mod_span(vector, span_rows):
    red, pivots = (_linalg.rref(span_rows) if span_rows else ([], []))
    v = list(vector)
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            v = [x - f * y for x, y in zip(v, red[r])]
    return v


def canonical_class(quiver, w, algebra):
    """Class of w in Lambda/[Lambda,Lambda], coordinates in the normal-word basis.

    Refuses algebras with truncated certificates: the class would depend on
    the truncation artifacts.  Well-definedness under rotation is asserted
    by recomputing from a rotated representative.
    """
    certificate = getattr(algebra, "certificate", None)
    system = getattr(algebra, "system", None)
    if certificate is None or system is None:
        raise InputError("algebra was not produced by jacobi_algebra")
    if not certificate.exact:
        raise ExactnessError(
            "canonical class needs an exact Jacobi certificate"
        )
    index = {word: i for i, word in enumerate(algebra.words)}
    span = commutator_span(algebra)

    def class_vector(series):
        nf = system.normal_form(series)
        vec = [Fraction(0)] * algebra.dim
        for word, coeff in nf.terms.items():
            vec[index[word]] = coeff
        return _reduce_mod_span(vec, span)

    vec = class_vector(w.to_series(system.trunc))
    rotated = {
        (word[1:] + word[:1] if len(word) > 1 else word): coeff
        for word, coeff in w.cycles.items()
    }
    vec2 = class_vector(NCSeries(quiver, system.trunc, rotated))
    if vec != vec2:
        raise AssertionError("canonical class not rotation-invariant")
    return CanonicalClass(vec, algebra)


@dataclass(frozen=True)
class WeightVector:
    """Arrow weights, each strictly between 0 and 1/2."""

    weights: dict

    def __post_init__(self):
        for label, r in self.weights.items():
            if not (0 < r < Fraction(1, 2)):
                raise InputError(
                    f"weight of {label!r} must lie strictly between 0 and 1/2"
                )

    def weight_of_word(self, word, quiver):
        return sum(
            (self.weights[quiver.arrow_label(a)] for a in word), Fraction(0)
        )


def is_weighted_homogeneous(w, r):
    """True iff every cycle of w has total weight exactly 1."""
    return all(
        r.weight_of_word(word, w.quiver) == 1 for word in w.cycles
    )


def find_weight_witness(w):
    """A weight vector making w weighted-homogeneous, if a small one exists.

    Solves the linear system (one equation per cycle), then walks a small
    rational grid along the solution space looking for weights inside the
    open box (0, 1/2)^arrows.  Returns None when the search fails.
    """
    quiver = w.quiver
    n = quiver.n_arrows
    if not w.cycles or n == 0:
        return None
    rows = []
    for word in w.cycles:
        row = [Fraction(0)] * n
        for a in word:
            row[a] += 1
        rows.append(row)
    rhs = [Fraction(1)] * len(rows)
    particular = _linalg.solve(rows, rhs)
    if particular is None:
        return None
    null = _linalg.nullspace(rows, n)

    def in_box(vec):
        return all(0 < x < Fraction(1, 2) for x in vec)

    def to_witness(vec):
        return WeightVector(
            {quiver.arrow_label(a): vec[a] for a in range(n)}
        )

    if in_box(particular):
        return to_witness(particular)
    if not null:
        return None
    steps = [Fraction(k, 12) for k in range(-12, 13)]
    if len(null) == 1:
        for c in steps:
            vec = [p + c * u for p, u in zip(particular, null[0])]
            if in_box(vec):
                return to_witness(vec)
    elif len(null) == 2:
        for c1 in steps:
            for c2 in steps:
                vec = [
                    p + c1 * u + c2 * v
                    for p, u, v in zip(particular, null[0], null[1])
                ]
                if in_box(vec):
                    return to_witness(vec)
    return None


def saito_test(quiver, w, trunc=None):
    """Canonical-class vanishing plus a literal weight witness, one-vertex only."""
    if quiver.n_vertices != 1:
        raise UnsupportedError("the quasi-homogeneity test needs a one-vertex quiver")
    if not w.has_only_cubic_and_higher():
        raise UnsupportedError("potential must have only cubic terms and higher")
    algebra, certificate = jacobi_algebra(quiver, w, trunc)
    if not certificate.exact:
        raise ExactnessError(
            "quasi-homogeneity test needs an exact, finite-dimensional Jacobi algebra"
        )
    cls = canonical_class(quiver, w, algebra)
    witness = find_weight_witness(w)
    return {
        "class_is_zero": cls.is_zero,
        "witness_weights": (
            {label: str(r) for label, r in witness.weights.items()}
            if witness is not None
            else None
        ),
    }


def mather_yau_compare(quiver, w1, w2, trunc=None):
    """Computable necessary conditions for right equivalence of two potentials.

    Compares dimension, radical Hilbert function, commutator-quotient
    dimension and class vanishing.  Never claims a full isomorphism test.
    """
    from .findim import commutator_quotient, radical_hilbert

    a1, c1 = jacobi_algebra(quiver, w1, trunc)
    a2, c2 = jacobi_algebra(quiver, w2, trunc)
    if not (c1.exact and c2.exact):
        raise ExactnessError("comparison needs exact Jacobi certificates")
    inv1 = {
        "dim": a1.dim,
        "radical_hilbert": radical_hilbert(a1),
        "commutator_quotient_dim": commutator_quotient(a1)[0],
        "class_is_zero": canonical_class(quiver, w1, a1).is_zero,
    }
    inv2 = {
        "dim": a2.dim,
        "radical_hilbert": radical_hilbert(a2),
        "commutator_quotient_dim": commutator_quotient(a2)[0],
        "class_is_zero": canonical_class(quiver, w2, a2).is_zero,
    }
    equal = inv1 == inv2
    return {
        "first": inv1,
        "second": inv2,
        "verdict": (
            "inconclusive (necessary conditions hold)" if equal
            else "not right equivalent"
        ),
    }


def apply_right_equivalence(w, phi):
    """Transport w along an invertible substitution and re-normalize rotations."""
    series = substitute(w.to_series(), phi, require_invertible=True)
    return Potential.from_series(series, reduced=False)


def random_right_equivalence(quiver, trunc, seed=0, max_extra_len=3):
    """Seeded random substitution with invertible linear part."""
    rng = random.Random(seed)
    n = quiver.n_arrows

    def random_linear_blocks():
        images = {}
        for src in range(quiver.n_vertices):
            for tgt in range(quiver.n_vertices):
                block = [
                    a for a in range(n)
                    if quiver.arrow_src[a] == src and quiver.arrow_tgt[a] == tgt
                ]
                if not block:
                    continue
                while True:
                    mat = [
                        [Fraction(rng.randint(-2, 2)) for _ in block]
                        for _ in block
                    ]
                    if _linalg.det(mat) != 0:
                        break
                for row, a in zip(mat, block):
                    images[a] = {(b,): c for b, c in zip(block, row) if c}
        return images

    images = random_linear_blocks()
    # sprinkle a few higher-order parallel paths on top
    paths_by_ends = {}
    for a in range(n):
        key = (quiver.arrow_src[a], quiver.arrow_tgt[a])
        paths_by_ends.setdefault(key, [])
    frontier = {(quiver.arrow_src[a], quiver.arrow_tgt[a], (a,)) for a in range(n)}
    all_paths = list(frontier)
    for _ in range(max_extra_len - 1):
        nxt = set()
        for src, tgt, word in frontier:
            for b in range(n):
                if quiver.arrow_src[b] == tgt:
                    nxt.add((src, quiver.arrow_tgt[b], word + (b,)))
        all_paths.extend(nxt)
        frontier = nxt
    for src, tgt, word in all_paths:
        if len(word) < 2:
            continue
        paths_by_ends.setdefault((src, tgt), []).append(word)
    for a in range(n):
        key = (quiver.arrow_src[a], quiver.arrow_tgt[a])
        for word in paths_by_ends.get(key, []):
            if rng.random() < 0.5:
                c = rng.randint(-2, 2)
                if c:
                    terms = images[a]
                    terms[word] = terms.get(word, Fraction(0)) + c
    label_images = {
        quiver.arrow_label(a): NCSeries(quiver, trunc, images[a])
        for a in range(n)
    }
    return AlgebraMorphismData(quiver, label_images)
